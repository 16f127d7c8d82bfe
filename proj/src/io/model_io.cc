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


#include "eqq/io/model_io.h"

#include <set>

#include "eqq/common/error.h"

namespace eqq {

namespace {

constexpr char kStateName[] = "model.state";

enum StateField {
  kStateVariant,
  kStateRegular,
  kStateFolded,
  kStateQuantized,
  kStateWeightBits,
  kStateActBits,
  kStateFields,
};

std::vector<uint32_t> Dims(std::initializer_list<int> dims) {
  return {dims.begin(), dims.end()};
}

std::vector<uint32_t> KernelDims(const ConvKernel& k) {
  return Dims({k.out_channels, k.fan_in_channels(), k.kernel_size,
               k.kernel_size});
}

std::vector<uint32_t> CoeffDims(const EquivConvParams& p) {
  const std::vector<int> shape = p.CoeffShape();
  return {shape.begin(), shape.end()};
}

std::vector<float> RangeData(const Range& r) {
  return {static_cast<float>(r.lo), static_cast<float>(r.hi)};
}

std::string QRangeName(const std::string& tensor) { return tensor + ".qrange"; }
std::string ActRangeName(const std::string& site) {
  return "act." + site + ".qrange";
}

class StoreReader {
 public:
  explicit StoreReader(const WeightStore& store) : store_(store) {}

  const std::vector<float>& Read(const std::string& name,
                                 const std::vector<uint32_t>& dims) {
    const Tensor& t = store_.Get(name);
    Check(t.dims == dims, ErrorCode::kDimMismatch,
          "tensor '" + name + "' has dims " + DimsString(t.dims) +
              ", expected " + DimsString(dims));
    used_.insert(name);
    return t.data;
  }

  void ReadInto(const std::string& name, std::vector<float>& dst,
                const std::vector<uint32_t>& dims) {
    dst = Read(name, dims);
  }

  bool Has(const std::string& name) const { return store_.Has(name); }

  Range ReadRange(const std::string& name) {
    const std::vector<float>& d = Read(name, Dims({2}));
    return Range{d[0], d[1]};
  }

  void CheckAllUsed() const {
    for (const std::string& name : store_.names()) {
      Check(used_.count(name) == 1, ErrorCode::kUnknownTensor,
            "unexpected tensor '" + name + "' for this architecture");
    }
  }

 private:
  static std::string DimsString(const std::vector<uint32_t>& dims) {
    std::string s = "[";
    for (size_t i = 0; i < dims.size(); ++i) {
      s += (i ? "," : "") + std::to_string(dims[i]);
    }
    return s + "]";
  }

  const WeightStore& store_;
  std::set<std::string> used_;
};

bool IsRegularLayout(const Model& model) {
  return !model.blocks.empty() && !model.blocks.front().layers.empty() &&
         model.blocks.front().layers.front().out_type.regular_mult() > 0;
}

}  // namespace

WeightStore SaveWeights(const Model& model) {
  WeightStore store;
  std::vector<float> state(kStateFields, 0.0f);
  state[kStateVariant] = model.variant == Variant::kEquivariant ? 0.0f : 1.0f;
  state[kStateRegular] = IsRegularLayout(model) ? 1.0f : 0.0f;
  state[kStateFolded] = model.has_unfolded_bn() ? 0.0f : 1.0f;
  state[kStateQuantized] = model.quant ? 1.0f : 0.0f;
  state[kStateWeightBits] = model.quant ? model.quant->weight_bits : 0.0f;
  state[kStateActBits] = model.quant ? model.quant->act_bits : 0.0f;
  store.Put(kStateName, Dims({kStateFields}), state);

  for (const ConvLayer* l : model.Layers()) {
    if (l->is_equivariant()) {
      store.Put(l->name + ".coeffs", CoeffDims(l->equiv()), l->equiv().coeffs());
    } else {
      const ConvKernel& k = l->kernel();
      store.Put(l->name + ".weight", KernelDims(k), k.weights);
      store.Put(l->name + ".bias", Dims({k.out_channels}), k.bias);
    }
    if (l->bn) {
      const auto units = Dims({l->bn->units()});
      store.Put(l->name + ".bn.gamma", units, l->bn->gamma);
      store.Put(l->name + ".bn.beta", units, l->bn->beta);
      store.Put(l->name + ".bn.mean", units, l->bn->mean);
      store.Put(l->name + ".bn.var", units, l->bn->var);
    }
    if (l->act_stats) {
      const auto channels =
          Dims({static_cast<int>(l->act_stats->shift.size())});
      store.Put(l->name + ".act.beta", channels, l->act_stats->shift);
      store.Put(l->name + ".act.gamma", channels, l->act_stats->scale);
    }
  }
  const Linear& fc = model.classifier;
  store.Put("classifier.weight", Dims({fc.out_features, fc.in_features}),
            fc.weight);
  store.Put("classifier.bias", Dims({fc.out_features}), fc.bias);

  if (model.quant) {
    for (const auto& [name, r] : model.quant->weight_ranges) {
      store.Put(QRangeName(name + ".weight"), Dims({2}), RangeData(r));
    }
    for (const auto& [site, r] : model.quant->activation_ranges) {
      store.Put(ActRangeName(site), Dims({2}), RangeData(r));
    }
  }
  return store;
}

Model LoadWeights(const WeightStore& store, const ArchConfig& arch) {
  StoreReader in(store);
  const std::vector<float> state = in.Read(kStateName, Dims({kStateFields}));
  const bool equivariant = state[kStateVariant] == 0.0f;
  const bool regular = state[kStateRegular] != 0.0f;
  const bool folded = state[kStateFolded] != 0.0f;
  const bool quantized = state[kStateQuantized] != 0.0f;
  Check(regular || !equivariant, ErrorCode::kIntegrity,
        "model.state marks an equivariant model with trivial fields");

  Model m = BuildModelSkeleton(
      arch, regular ? Variant::kEquivariant : Variant::kConventional);
  if (!equivariant && regular) m = ExportConventional(m).model;

  for (ConvLayer* l : m.MutableLayers()) {
    if (l->is_equivariant()) {
      EquivConvParams p = l->equiv();
      in.ReadInto(l->name + ".coeffs", p.mutable_coeffs(), CoeffDims(p));
      l->weights = std::move(p);
    } else {
      ConvKernel& k = l->kernel();
      in.ReadInto(l->name + ".weight", k.weights, KernelDims(k));
      in.ReadInto(l->name + ".bias", k.bias, Dims({k.out_channels}));
    }
    if (folded) {
      l->bn.reset();
    } else {
      const auto units = Dims({l->bn->units()});
      in.ReadInto(l->name + ".bn.gamma", l->bn->gamma, units);
      in.ReadInto(l->name + ".bn.beta", l->bn->beta, units);
      in.ReadInto(l->name + ".bn.mean", l->bn->mean, units);
      in.ReadInto(l->name + ".bn.var", l->bn->var, units);
      l->bn->Validate();
    }
    if (in.Has(l->name + ".act.beta") || in.Has(l->name + ".act.gamma")) {
      const auto channels = Dims({l->out_type.channels()});
      ActivationStats st;
      in.ReadInto(l->name + ".act.beta", st.shift, channels);
      in.ReadInto(l->name + ".act.gamma", st.scale, channels);
      l->act_stats = std::move(st);
    }
  }
  Linear& fc = m.classifier;
  in.ReadInto("classifier.weight", fc.weight,
              Dims({fc.out_features, fc.in_features}));
  in.ReadInto("classifier.bias", fc.bias, Dims({fc.out_features}));

  if (quantized) {
    QuantState q;
    q.weight_bits = static_cast<int>(state[kStateWeightBits]);
    q.act_bits = static_cast<int>(state[kStateActBits]);
    for (const ConvLayer* l : m.Layers()) {
      q.weight_ranges[l->name] = in.ReadRange(QRangeName(l->name + ".weight"));
    }
    q.weight_ranges["classifier"] =
        in.ReadRange(QRangeName("classifier.weight"));
    for (const std::string& site : ActivationSites(m)) {
      q.activation_ranges[site] = in.ReadRange(ActRangeName(site));
    }
    m.quant = std::move(q);
  }
  in.CheckAllUsed();
  return m;
}

std::string SerializeModel(const Model& model) {
  return SaveWeights(model).Serialize();
}

Model DeserializeModel(std::string_view bytes, const ArchConfig& arch) {
  return LoadWeights(WeightStore::Parse(bytes), arch);
}

}  // namespace eqq
