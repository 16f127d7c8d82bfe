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


#include "eqq/cli/commands.h"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <thread>

#include "eqq/common/error.h"
#include "eqq/common/rng.h"
#include "eqq/dfq/bias_absorb.h"
#include "eqq/dfq/equalize.h"
#include "eqq/dfq/fold.h"
#include "eqq/dfq/quantize_model.h"
#include "eqq/dfq/ranges.h"
#include "eqq/io/dataset.h"
#include "eqq/io/image.h"
#include "eqq/io/model_io.h"
#include "eqq/io/run_config.h"
#include "eqq/netbuild/audit.h"
#include "eqq/netbuild/model.h"

namespace eqq {

namespace {

constexpr uint64_t kProbeSalt = 0x5eed0f9a7e11ULL;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

// Long-format report rows: kind, name, metric, value.
class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {
    out_ << "kind\tname\tmetric\tvalue\n";
  }
  void Row(const std::string& kind, const std::string& name,
           const std::string& metric, const std::string& value) {
    out_ << kind << '\t' << name << '\t' << metric << '\t' << value << '\n';
  }

 private:
  std::ostream& out_;
};

struct Session {
  RunConfig config;
  uint64_t seed = 0;
};

Session ResolveSession(const CliOptions& o) {
  Session s;
  s.config = o.config_path.empty() ? ParseRunConfig("{}")
                                   : LoadRunConfig(o.config_path);
  RunConfig& c = s.config;
  if (!o.preset.empty()) {
    c.preset = o.preset;
    c.arch = PresetArch(o.preset);
  }
  if (o.group_order) c.arch.group_order = *o.group_order;
  if (o.input_size) c.arch.input_size = *o.input_size;
  c.arch.Validate();
  if (!o.variant.empty()) c.variant = ParseVariant(o.variant);
  if (o.bits) c.weight_bits = c.act_bits = *o.bits;
  if (!o.ranges.empty()) c.ranges = ParseRangeMode(o.ranges);
  s.seed = o.seed.value_or(c.seed);
  return s;
}

Model LoadOrBuild(const CliOptions& o, const Session& s) {
  if (!o.weights_path.empty()) {
    return DeserializeModel(ReadFileBytes(o.weights_path), s.config.arch);
  }
  return BuildModel(s.config.arch, s.config.variant, s.seed);
}

void SaveIfRequested(const CliOptions& o, const Model& model,
                     std::ostream& err) {
  if (o.out_path.empty()) return;
  WriteFileBytes(o.out_path, SerializeModel(model));
  err << "wrote " << o.out_path << "\n";
}

void RequireOut(const CliOptions& o, const char* command) {
  Check(!o.out_path.empty(), ErrorCode::kValidation,
        std::string(command) + " needs --out");
}

FeatureField ProbeBatch(const Model& model, int batch, uint64_t seed) {
  const int size = model.plan.input_size;
  FeatureField x(model.input_type, batch, size, size);
  Rng rng(seed ^ kProbeSalt);
  for (float& v : x.mutable_data()) v = static_cast<float>(rng.Unit());
  return x;
}

// Plain kernels with folded batch norm, as the data-free passes require.
Model PrepareForPasses(const Model& model, std::ostream& err) {
  Check(!model.quant, ErrorCode::kValidation, "model is already quantized");
  Model m = model;
  if (m.has_equivariant_layers()) {
    m = ExportConventional(m).model;
    err << "exported coefficient layers to plain kernels\n";
  }
  if (m.has_unfolded_bn()) m = FoldBatchNorm(m);
  return m;
}

void ReportEqualization(Report& rep, const EqualizationReport& eq) {
  rep.Row("equalize", "network", "sweeps", std::to_string(eq.sweeps));
  rep.Row("equalize", "network", "converged", eq.converged ? "1" : "0");
  rep.Row("equalize", "network", "last_max_step", Sci(eq.last_max_step));
  for (const PairEqualization& p : eq.pairs) {
    const std::string name = p.pair.first + ">" + p.pair.second;
    rep.Row("pair", name, "out_spread_before", Num(RangeSpread(p.r1_before)));
    rep.Row("pair", name, "out_spread_after", Num(RangeSpread(p.r1_after)));
    rep.Row("pair", name, "in_spread_before", Num(RangeSpread(p.r2_before)));
    rep.Row("pair", name, "in_spread_after", Num(RangeSpread(p.r2_after)));
    rep.Row("pair", name, "block_scale_spread", Sci(p.block_spread));
  }
}

void ReportAbsorption(Report& rep, const AbsorbReport& ab) {
  for (const AbsorbSite& s : ab.sites) {
    const std::string name = s.pair.first + ">" + s.pair.second;
    rep.Row("absorb", name, "status", std::string(AbsorbStatusName(s.status)));
    rep.Row("absorb", name, "max_shift", Num(s.max_shift));
  }
}

void ReportLayerRanges(Report& rep, const Model& before, const Model& after) {
  for (const ConvLayer* l : before.Layers()) {
    const auto r0 = ChannelRange(l->kernel(), RangeSide::kOutgoing);
    const auto r1 = ChannelRange(after.Layer(l->name).kernel(),
                                 RangeSide::kOutgoing);
    rep.Row("range", l->name, "spread_before", Num(RangeSpread(r0)));
    rep.Row("range", l->name, "spread_after", Num(RangeSpread(r1)));
    rep.Row("range", l->name, "max_before",
            Num(*std::max_element(r0.begin(), r0.end())));
    rep.Row("range", l->name, "max_after",
            Num(*std::max_element(r1.begin(), r1.end())));
  }
}

int CmdPlan(const CliOptions& o, std::ostream& out, std::ostream&) {
  const Session s = ResolveSession(o);
  const GridPlan plan = PlanGrid(s.config.arch.input_size, s.config.arch);
  out << "layer\tinput\tkernel\tstride\tpadding\toutput\n";
  for (const PlannedLayer& l : plan.layers) {
    out << l.name << '\t' << l.input_size << '\t' << l.kernel_size << '\t'
        << l.stride << '\t' << l.padding << '\t' << l.output_size << '\n';
  }
  return kExitOk;
}

int CmdBuild(const CliOptions& o, std::ostream& out, std::ostream& err) {
  RequireOut(o, "build");
  const Session s = ResolveSession(o);
  const Model m = BuildModel(s.config.arch, s.config.variant, s.seed);
  out << "layer\tin_type\tout_type\tkernel\tstride\tfree_params\n";
  for (const ConvLayer* l : m.Layers()) {
    const size_t params = l->is_equivariant()
                              ? FreeParameterCount(l->equiv())
                              : l->kernel().weights.size();
    out << l->name << '\t' << l->in_type.ToString() << '\t'
        << l->out_type.ToString() << '\t' << l->kernel_size() << '\t'
        << l->stride() << '\t' << params << '\n';
  }
  out << "total\t\t\t\t\t" << FreeParameterCount(m) << '\n';
  SaveIfRequested(o, m, err);
  return kExitOk;
}

int CmdAudit(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const Session s = ResolveSession(o);
  const Model m = LoadOrBuild(o, s);
  const AuditResult result = RunAudit(m, o.angles, s.seed);
  out << "angle\tscope\terror\n";
  for (const AuditRow& row : result.rows) {
    out << Num(row.degrees) << '\t' << row.scope << '\t' << Sci(row.error)
        << '\n';
  }
  if (const AuditRow* bad = result.first_failure()) {
    err << "quarter-turn check failed at " << Num(bad->degrees) << " deg in "
        << bad->scope << ": error " << Sci(bad->error) << " > "
        << Sci(kQuarterTurnTolerance) << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int CmdEqualize(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const Session s = ResolveSession(o);
  const Model prepared = PrepareForPasses(LoadOrBuild(o, s), err);
  EqualizationReport eq;
  const Model m = EqualizeNetwork(prepared, &eq);
  Report rep(out);
  ReportLayerRanges(rep, prepared, m);
  ReportEqualization(rep, eq);
  SaveIfRequested(o, m, err);
  return kExitOk;
}

int CmdAbsorb(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const Session s = ResolveSession(o);
  const Model prepared = PrepareForPasses(LoadOrBuild(o, s), err);
  AbsorbReport ab;
  const Model m = AbsorbHighBias(prepared, &ab);
  Report rep(out);
  ReportAbsorption(rep, ab);
  for (const AbsorbSite& site : ab.sites) {
    if (site.status == AbsorbStatus::kNoStatistics) {
      err << "warning: no statistics for " << site.pair.first
          << ", site skipped\n";
    }
  }
  SaveIfRequested(o, m, err);
  return kExitOk;
}

int CmdQuantize(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const Session s = ResolveSession(o);
  const Model source = LoadOrBuild(o, s);
  const Model prepared = PrepareForPasses(source, err);
  Model m = prepared;
  Report rep(out);
  if (!o.no_equalize) {
    EqualizationReport eq;
    m = EqualizeNetwork(m, &eq);
    ReportLayerRanges(rep, prepared, m);
    ReportEqualization(rep, eq);
  }
  if (!o.no_absorb) {
    AbsorbReport ab;
    m = AbsorbHighBias(m, &ab);
    ReportAbsorption(rep, ab);
  }
  const FeatureField probe = ProbeBatch(m, o.probe_batch, s.seed);
  const SiteRanges ranges = s.config.ranges == RangeMode::kCalibrate
                                ? Calibrate(m, probe)
                                : EstimateActivationRanges(m);
  const Model q = QuantizeModel(m, s.config.weight_bits, s.config.act_bits, ranges);
  for (const auto& [site, r] : q.quant->activation_ranges) {
    rep.Row("act_range", site, "lo", Num(r.lo));
    rep.Row("act_range", site, "hi", Num(r.hi));
  }

  const Logits ref = Forward(source, probe);
  const Logits got = Forward(q, probe);
  double mean = 0.0;
  for (int b = 0; b < ref.batch; ++b) mean += RelativeError(got.row(b), ref.row(b));
  mean /= ref.batch;
  rep.Row("deviation", "logits", "weight_bits", std::to_string(s.config.weight_bits));
  rep.Row("deviation", "logits", "act_bits", std::to_string(s.config.act_bits));
  rep.Row("deviation", "logits", "ranges", std::string(RangeModeName(s.config.ranges)));
  rep.Row("deviation", "logits", "mean_relative", Sci(mean));
  rep.Row("deviation", "logits", "max_relative",
          Sci(RelativeError(got.values, ref.values)));
  SaveIfRequested(o, q, err);
  return kExitOk;
}

int CmdInfer(const CliOptions& o, std::ostream& out, std::ostream&) {
  Check(!o.image_path.empty(), ErrorCode::kValidation, "infer needs --image");
  const Session s = ResolveSession(o);
  const Model m = LoadOrBuild(o, s);
  const FeatureField x =
      LoadImage(o.image_path, s.config.arch.input_size, s.config.arch.group_order);
  Check(x.channels() == m.input_type.channels(), ErrorCode::kDimension,
        "image has " + std::to_string(x.channels()) + " channels, model expects " +
            std::to_string(m.input_type.channels()));
  const Logits l = Forward(m, x);
  out << "class\tlogit\n";
  for (int c = 0; c < l.classes; ++c) out << c << '\t' << Num(l.values[c]) << '\n';
  out << "predicted\t" << l.Argmax(0) << '\n';
  return kExitOk;
}

int CmdEvaluate(const CliOptions& o, std::ostream& out, std::ostream&) {
  Check(!o.dataset_path.empty(), ErrorCode::kValidation,
        "evaluate needs --dataset");
  const Session s = ResolveSession(o);
  const Model m = LoadOrBuild(o, s);
  const std::vector<ManifestEntry> entries =
      LoadManifest(o.dataset_path, s.config.arch.num_classes);
  std::vector<int> predicted(entries.size(), -1);
  std::vector<std::string> failures(entries.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < entries.size(); i = next++) {
      try {
        const FeatureField x = LoadImage(entries[i].path, s.config.arch.input_size,
                                         s.config.arch.group_order);
        predicted[i] = Forward(m, x).Argmax(0);
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    }
  };
  const int threads =
      std::min<int>(EvaluationThreads(), static_cast<int>(entries.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::string problems;
  for (const std::string& f : failures) {
    if (!f.empty()) problems += "\n  " + f;
  }
  Check(problems.empty(), ErrorCode::kIngestion, "unreadable images:" + problems);
  long correct = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    correct += predicted[i] == entries[i].label ? 1 : 0;
  }
  char acc[16];
  std::snprintf(acc, sizeof(acc), "%.4f",
                static_cast<double>(correct) / entries.size());
  out << "count\tcorrect\taccuracy\n"
      << entries.size() << '\t' << correct << '\t' << acc << '\n';
  return kExitOk;
}

int CmdExport(const CliOptions& o, std::ostream& out, std::ostream& err) {
  RequireOut(o, "export-conventional");
  const Session s = ResolveSession(o);
  const ExportResult r = ExportConventional(LoadOrBuild(o, s));
  if (r.noop) err << "warning: " << r.warning << "\n";
  out << "layer\tkernel_weights\n";
  for (const ConvLayer* l : r.model.Layers()) {
    out << l->name << '\t' << l->ExpandedKernel().weights.size() << '\n';
  }
  SaveIfRequested(o, r.model, err);
  return kExitOk;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension:
    case ErrorCode::kType:
    case ErrorCode::kValidation:
    case ErrorCode::kPlanning:
      return kExitInvalid;
    default:
      return kExitIo;
  }
}

}  // namespace

int EvaluationThreads() {
  if (const char* env = std::getenv("EQQ_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int RunCommand(const std::string& command, const CliOptions& options,
               std::ostream& out, std::ostream& err) {
  using Handler = std::function<int(const CliOptions&, std::ostream&, std::ostream&)>;
  static const std::map<std::string, Handler> kHandlers = {
      {"plan", CmdPlan},         {"build", CmdBuild},
      {"audit", CmdAudit},       {"equalize", CmdEqualize},
      {"absorb", CmdAbsorb},     {"quantize", CmdQuantize},
      {"infer", CmdInfer},       {"evaluate", CmdEvaluate},
      {"export-conventional", CmdExport}};
  const auto it = kHandlers.find(command);
  if (it == kHandlers.end()) {
    err << "error: unknown command '" << command << "'\n";
    return kExitInvalid;
  }
  try {
    return it->second(options, out, err);
  } catch (const Error& e) {
    err << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
}

}  // namespace eqq
