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

#ifndef EQQ_NETBUILD_MODEL_H_
#define EQQ_NETBUILD_MODEL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eqq/dfq/quant_params.h"
#include "eqq/ffcore/field.h"
#include "eqq/layers/batchnorm.h"
#include "eqq/layers/conv.h"
#include "eqq/layers/equiv_conv.h"
#include "eqq/layers/ops.h"
#include "eqq/netbuild/arch.h"
#include "eqq/netbuild/grid_plan.h"

namespace eqq {

enum class Variant { kEquivariant, kConventional };

std::string_view VariantName(Variant v);
Variant ParseVariant(std::string_view name);

// Per-channel pre-activation statistics (post-BN shift and scale) kept after
// batch norm is folded away. Data-free passes read them.
struct ActivationStats {
  std::vector<float> shift;  // beta
  std::vector<float> scale;  // gamma
};

struct ConvLayer {
  std::string name;
  LayerRole role = LayerRole::kStem;
  FieldType in_type;
  FieldType out_type;
  std::variant<EquivConvParams, ConvKernel> weights;
  std::optional<BNStats> bn;
  std::optional<ActivationStats> act_stats;
  bool relu = true;

  bool is_equivariant() const {
    return std::holds_alternative<EquivConvParams>(weights);
  }
  const EquivConvParams& equiv() const {
    return std::get<EquivConvParams>(weights);
  }
  const ConvKernel& kernel() const { return std::get<ConvKernel>(weights); }
  ConvKernel& kernel() { return std::get<ConvKernel>(weights); }

  // Plain kernel, expanding coefficient-parameterised weights on demand.
  ConvKernel ExpandedKernel() const;
  int stride() const;
  int kernel_size() const;
  bool is_depthwise() const;
};

struct Block {
  std::string name;
  std::vector<ConvLayer> layers;
  bool residual = false;
};

// Simulated-quantization state. Ranges are float-representable so a model
// reloaded from a float32 container quantizes identically.
struct QuantState {
  int weight_bits = 8;
  int act_bits = 8;
  std::map<std::string, Range> weight_ranges;
  std::map<std::string, Range> activation_ranges;
};

struct Model {
  Variant variant = Variant::kEquivariant;
  ArchConfig arch;
  GridPlan plan;
  FieldType input_type;
  std::vector<Block> blocks;  // stem, inverted residuals, head
  bool group_pool = true;
  Linear classifier;
  std::optional<QuantState> quant;

  std::vector<const ConvLayer*> Layers() const;
  std::vector<ConvLayer*> MutableLayers();
  const ConvLayer& Layer(std::string_view name) const;
  ConvLayer& MutableLayer(std::string_view name);

  bool has_unfolded_bn() const;
  bool has_equivariant_layers() const;
};

// Deterministic random model. Throws kPlanning / kValidation when the
// architecture does not plan on its input size.
Model BuildModel(const ArchConfig& arch, Variant variant, uint64_t seed);

// Same shapes as BuildModel with zero weights and identity batch norm.
Model BuildModelSkeleton(const ArchConfig& arch, Variant variant);

// Free scalar parameters: coefficients for equivariant layers, kernel entries
// for plain ones, plus batch norm units and the classifier.
size_t FreeParameterCount(const Model& model);

// Activation sites, in forward order: "input", every layer name,
// "<block>.add" after residual sums, "pool".
std::vector<std::string> ActivationSites(const Model& model);

struct Logits {
  int batch = 0;
  int classes = 0;
  std::vector<float> values;  // [batch][classes]

  std::span<const float> row(int b) const {
    return {values.data() + static_cast<size_t>(b) * classes,
            static_cast<size_t>(classes)};
  }
  int Argmax(int b) const;
};

using SiteHook = std::function<void(std::string_view site, const FeatureField&)>;
using LayerInputHook =
    std::function<void(const ConvLayer& layer, const FeatureField& input)>;

struct ForwardOptions {
  SiteHook site_hook;
  LayerInputHook layer_input_hook;
};

// conv -> batch norm -> ReLU as configured on the layer.
FeatureField ApplyLayer(const ConvLayer& layer, const FeatureField& x);

// Masks the input, runs every block and the pooling head. When the model
// carries a QuantState, activations are fake-quantized at every site before
// hooks observe them. Throws kDimension on an input size mismatch.
Logits Forward(const Model& model, const FeatureField& images,
               const ForwardOptions& options = {});

// ||a - b||_inf / max(||b||_inf, 1e-12).
double RelativeError(std::span<const float> a, std::span<const float> b);

struct ExportResult {
  Model model;
  bool noop = false;
  std::string warning;
};

// Replaces every coefficient-parameterised layer with its expanded kernel and
// replicates block-shared batch norm per channel. Field types, the plan and
// the pooling head are kept, so the result still acts on regular fields.
ExportResult ExportConventional(const Model& model);

}  // namespace eqq

#endif  // EQQ_NETBUILD_MODEL_H_
