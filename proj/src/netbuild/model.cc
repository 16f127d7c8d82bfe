// Copyright 2026 The eqquant Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eqq/netbuild/model.h"

#include <algorithm>
#include <cmath>

#include "eqq/common/error.h"
#include "eqq/common/rng.h"
#include "eqq/ffcore/transform.h"

namespace eqq {

std::string_view VariantName(Variant v) {
  return v == Variant::kEquivariant ? "equivariant" : "conventional";
}

Variant ParseVariant(std::string_view name) {
  if (name == "equivariant") return Variant::kEquivariant;
  if (name == "conventional") return Variant::kConventional;
  Fail(ErrorCode::kValidation,
       "variant must be 'equivariant' or 'conventional', got '" +
           std::string(name) + "'");
}

ConvKernel ConvLayer::ExpandedKernel() const {
  return is_equivariant() ? Expand(equiv()) : kernel();
}

int ConvLayer::stride() const {
  return is_equivariant() ? equiv().stride() : kernel().stride;
}

int ConvLayer::kernel_size() const {
  return is_equivariant() ? equiv().kernel_size() : kernel().kernel_size;
}

bool ConvLayer::is_depthwise() const {
  return is_equivariant() ? equiv().kind() == EquivKind::kDepthwise
                          : kernel().depthwise;
}

std::vector<const ConvLayer*> Model::Layers() const {
  std::vector<const ConvLayer*> out;
  for (const Block& b : blocks) {
    for (const ConvLayer& l : b.layers) out.push_back(&l);
  }
  return out;
}

std::vector<ConvLayer*> Model::MutableLayers() {
  std::vector<ConvLayer*> out;
  for (Block& b : blocks) {
    for (ConvLayer& l : b.layers) out.push_back(&l);
  }
  return out;
}

const ConvLayer& Model::Layer(std::string_view name) const {
  for (const ConvLayer* l : Layers()) {
    if (l->name == name) return *l;
  }
  Fail(ErrorCode::kValidation, "model has no layer '" + std::string(name) + "'");
}

ConvLayer& Model::MutableLayer(std::string_view name) {
  for (ConvLayer* l : MutableLayers()) {
    if (l->name == name) return *l;
  }
  Fail(ErrorCode::kValidation, "model has no layer '" + std::string(name) + "'");
}

bool Model::has_unfolded_bn() const {
  for (const ConvLayer* l : Layers()) {
    if (l->bn) return true;
  }
  return false;
}

bool Model::has_equivariant_layers() const {
  for (const ConvLayer* l : Layers()) {
    if (l->is_equivariant()) return true;
  }
  return false;
}

namespace {

int CeilDiv(int a, int b) { return (a + b - 1) / b; }

double GlorotBound(double fan_in, double fan_out) {
  return std::sqrt(6.0 / (fan_in + fan_out));
}

void FillUniform(std::span<float> values, double bound, Rng& rng) {
  for (float& v : values) v = static_cast<float>(rng.Uniform(-bound, bound));
}

// beta = 0 and mean = 0 keep a zero image mapping to zero features. The
// variance is set later from probe statistics.
BNStats RandomBatchNorm(const FieldType& layout, Rng& rng) {
  BNStats bn = BNStats::Identity(layout);
  for (int u = 0; u < bn.units(); ++u) {
    bn.gamma[u] = static_cast<float>(rng.Uniform(0.5, 1.5));
  }
  return bn;
}

constexpr int kProbeImages = 2;
constexpr uint64_t kProbeSeedSalt = 0x9e3779b97f4a7c15ULL;

// Sets every running variance to the second moment of the layer's conv
// output on seeded uniform images, unit by unit, so post-BN activations have
// roughly unit scale times gamma.
void SetVarianceFromProbe(Model& m, uint64_t seed) {
  Rng rng(seed ^ kProbeSeedSalt);
  const int size = m.plan.input_size;
  FeatureField x(m.input_type, kProbeImages, size, size);
  for (float& v : x.mutable_data()) v = static_cast<float>(rng.Unit());
  x = CircularMask(x);
  for (Block& block : m.blocks) {
    const FeatureField block_in = x;
    for (ConvLayer& layer : block.layers) {
      FeatureField y = Conv2d(x, layer.ExpandedKernel(), layer.out_type);
      BNStats& bn = *layer.bn;
      std::vector<double> sum(bn.units(), 0.0);
      std::vector<double> count(bn.units(), 0.0);
      const size_t plane = static_cast<size_t>(y.height()) * y.width();
      for (int b = 0; b < y.batch(); ++b) {
        for (int c = 0; c < y.channels(); ++c) {
          const int u = bn.layout.UnitOfChannel(c);
          for (float v : y.plane(b, c)) sum[u] += static_cast<double>(v) * v;
          count[u] += static_cast<double>(plane);
        }
      }
      for (int u = 0; u < bn.units(); ++u) {
        bn.var[u] = static_cast<float>(std::max(sum[u] / count[u], 1e-6));
      }
      y = BatchNormApply(y, bn);
      x = layer.relu ? Relu(y) : y;
    }
    if (block.residual) x = Add(x, block_in);
  }
}

// Null `rng` leaves zero weights and identity batch norm.
Model Assemble(const ArchConfig& arch, Variant variant, Rng* rng) {
  arch.Validate();
  Model m;
  m.variant = variant;
  m.arch = arch;
  m.plan = PlanGrid(arch.input_size, arch);
  m.group_pool = variant == Variant::kEquivariant;
  const int n = arch.group_order;
  const bool equivariant = variant == Variant::kEquivariant;
  auto type_of_width = [&](int width) {
    return equivariant ? FieldType::Regular(CeilDiv(width, n), n)
                       : FieldType::Trivial(width, n);
  };
  auto expanded = [&](const FieldType& t, int factor) {
    return equivariant ? FieldType::Regular(t.regular_mult() * factor, n)
                       : FieldType::Trivial(t.channels() * factor, n);
  };

  m.input_type = FieldType::Trivial(arch.input_channels, n);
  FieldType current = m.input_type;
  for (const BlockSkeleton& skel : EnumerateLayers(arch)) {
    Block block;
    block.name = skel.name;
    const FieldType block_in = current;
    int block_stride = 1;
    for (const LayerSkeleton& ls : skel.layers) {
      const PlannedLayer& planned = m.plan.Find(ls.name);
      FieldType out_type;
      switch (ls.role) {
        case LayerRole::kExpand:
          out_type = expanded(current, ls.out_width / ls.in_width);
          break;
        case LayerRole::kDepthwise:
          out_type = current;
          break;
        default:
          out_type = type_of_width(ls.out_width);
      }
      ConvLayer layer;
      layer.name = ls.name;
      layer.role = ls.role;
      layer.in_type = current;
      layer.out_type = out_type;
      layer.relu = ls.relu;
      const int k = ls.kernel_size;
      const double kk = static_cast<double>(k) * k;
      if (equivariant) {
        EquivKind kind = EquivKind::kPointwise;
        if (ls.role == LayerRole::kStem) kind = EquivKind::kLifting;
        if (ls.role == LayerRole::kDepthwise) kind = EquivKind::kDepthwise;
        EquivConvParams p = EquivConvParams::Make(
            kind, current, out_type, k, planned.stride, planned.padding);
        const double bound =
            kind == EquivKind::kDepthwise
                ? GlorotBound(kk, kk)
                : GlorotBound(current.channels() * kk, out_type.channels() * kk);
        if (rng) FillUniform(p.mutable_coeffs(), bound, *rng);
        layer.weights = std::move(p);
      } else {
        ConvKernel kern =
            ls.role == LayerRole::kDepthwise
                ? ConvKernel::Depthwise(current.channels(), k, planned.stride,
                                        planned.padding)
                : ConvKernel::Dense(out_type.channels(), current.channels(), k,
                                    planned.stride, planned.padding);
        const double bound =
            kern.depthwise
                ? GlorotBound(kk, kk)
                : GlorotBound(current.channels() * kk, out_type.channels() * kk);
        if (rng) FillUniform(kern.weights, bound, *rng);
        layer.weights = std::move(kern);
      }
      layer.bn = rng ? RandomBatchNorm(out_type, *rng) : BNStats::Identity(out_type);
      block_stride *= planned.stride;
      current = out_type;
      block.layers.push_back(std::move(layer));
    }
    const bool inverted_residual =
        skel.name != "stem" && skel.name != "head";
    block.residual =
        inverted_residual && block_stride == 1 && block_in == current;
    m.blocks.push_back(std::move(block));
  }

  const int features = m.group_pool ? current.units() : current.channels();
  m.classifier = Linear::Make(features, arch.num_classes);
  if (rng) {
    FillUniform(m.classifier.weight, GlorotBound(features, arch.num_classes),
                *rng);
    FillUniform(m.classifier.bias, 0.1, *rng);
  }
  return m;
}

}  // namespace

Model BuildModel(const ArchConfig& arch, Variant variant, uint64_t seed) {
  Rng rng(seed);
  Model m = Assemble(arch, variant, &rng);
  SetVarianceFromProbe(m, seed);
  return m;
}

Model BuildModelSkeleton(const ArchConfig& arch, Variant variant) {
  return Assemble(arch, variant, nullptr);
}

size_t FreeParameterCount(const Model& model) {
  size_t total = 0;
  for (const ConvLayer* l : model.Layers()) {
    if (l->is_equivariant()) {
      total += FreeParameterCount(l->equiv());
    } else {
      total += l->kernel().weights.size() + l->kernel().bias.size();
    }
    if (l->bn) total += 4 * static_cast<size_t>(l->bn->units());
  }
  total += model.classifier.weight.size() + model.classifier.bias.size();
  return total;
}

std::vector<std::string> ActivationSites(const Model& model) {
  std::vector<std::string> sites = {"input"};
  for (const Block& b : model.blocks) {
    for (const ConvLayer& l : b.layers) sites.push_back(l.name);
    if (b.residual) sites.push_back(b.name + ".add");
  }
  sites.push_back("pool");
  return sites;
}

int Logits::Argmax(int b) const {
  const auto r = row(b);
  return static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
}

FeatureField ApplyLayer(const ConvLayer& layer, const FeatureField& x) {
  Check(x.channels() == layer.in_type.channels(), ErrorCode::kDimension,
        "layer '" + layer.name + "' expects " + layer.in_type.ToString() +
            ", got " + x.type().ToString());
  FeatureField y = Conv2d(x, layer.ExpandedKernel(), layer.out_type);
  if (layer.bn) y = BatchNormApply(y, *layer.bn);
  if (layer.relu) y = Relu(y);
  return y;
}

namespace {

class SiteEmitter {
 public:
  SiteEmitter(const Model& model, const ForwardOptions& options)
      : model_(model), options_(options) {}

  void Emit(std::string_view site, FeatureField& value) const {
    if (model_.quant) {
      const auto it = model_.quant->activation_ranges.find(std::string(site));
      Check(it != model_.quant->activation_ranges.end(),
            ErrorCode::kValidation,
            "quantized model has no activation range for site '" +
                std::string(site) + "'");
      FakeQuantize(value.mutable_data(),
                   ChooseQuantParams(it->second, model_.quant->act_bits));
    }
    if (options_.site_hook) options_.site_hook(site, value);
  }

 private:
  const Model& model_;
  const ForwardOptions& options_;
};

}  // namespace

Logits Forward(const Model& model, const FeatureField& images,
               const ForwardOptions& options) {
  const int size = model.plan.input_size;
  Check(images.height() == size && images.width() == size,
        ErrorCode::kDimension,
        "model expects " + std::to_string(size) + "x" + std::to_string(size) +
            " images, got " + std::to_string(images.height()) + "x" +
            std::to_string(images.width()));
  Check(images.channels() == model.input_type.channels(), ErrorCode::kDimension,
        "model expects " + std::to_string(model.input_type.channels()) +
            " input channels, got " + std::to_string(images.channels()));
  const SiteEmitter emit(model, options);
  FeatureField x = CircularMask(images.Retyped(model.input_type));
  emit.Emit("input", x);
  for (const Block& block : model.blocks) {
    const FeatureField block_in = x;
    for (const ConvLayer& layer : block.layers) {
      if (options.layer_input_hook) options.layer_input_hook(layer, x);
      x = ApplyLayer(layer, x);
      emit.Emit(layer.name, x);
    }
    if (block.residual) {
      x = Add(x, block_in);
      emit.Emit(block.name + ".add", x);
    }
  }
  if (model.group_pool) x = GroupPool(x);
  FeatureField pooled = GlobalPoolMasked(x);
  emit.Emit("pool", pooled);
  Logits logits;
  logits.batch = images.batch();
  logits.classes = model.classifier.out_features;
  logits.values = ApplyLinear(model.classifier, pooled);
  return logits;
}

double RelativeError(std::span<const float> a, std::span<const float> b) {
  return MaxAbsDiff(a, b) / std::max(MaxAbs(b), 1e-12);
}

ExportResult ExportConventional(const Model& model) {
  ExportResult result{model, false, ""};
  if (!model.has_equivariant_layers()) {
    result.noop = true;
    result.warning = "model is already conventional; export is a no-op";
    return result;
  }
  Model& out = result.model;
  for (ConvLayer* layer : out.MutableLayers()) {
    if (layer->is_equivariant()) layer->weights = Expand(layer->equiv());
    if (layer->bn && !layer->bn->layout.is_trivial()) {
      layer->bn = layer->bn->Replicated();
    }
  }
  out.variant = Variant::kConventional;
  return result;
}

}  // namespace eqq
