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


// Command-line front end: eqq <command> [options].

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "eqq/cli/commands.h"

namespace {

void AddCommonOptions(CLI::App* cmd, eqq::CliOptions& o) {
  cmd->add_option("-c,--config", o.config_path, "JSON run config");
  cmd->add_option("--preset", o.preset, "architecture preset (toy, pcam95, mobilenetv2)");
  cmd->add_option("--group-order", o.group_order, "rotation group order N");
  cmd->add_option("--input-size", o.input_size, "input image side length");
  cmd->add_option("--variant", o.variant, "equivariant or conventional");
  cmd->add_option("-w,--weights", o.weights_path, "model container to load");
  cmd->add_option("-o,--out", o.out_path, "output model container");
  cmd->add_option("--seed", o.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation-equivariant CNN inference and data-free quantization"};
  app.require_subcommand(1);
  eqq::CliOptions o;

  AddCommonOptions(app.add_subcommand("plan", "print the grid plan"), o);
  AddCommonOptions(app.add_subcommand("build", "build a seeded random model"), o);
  auto* audit = app.add_subcommand("audit", "measure rotation equivariance");
  AddCommonOptions(audit, o);
  audit->add_option("--angles", o.angles, "rotation angles in degrees")
      ->delimiter(',');
  AddCommonOptions(app.add_subcommand("equalize", "cross-layer range equalization"), o);
  AddCommonOptions(app.add_subcommand("absorb", "high-bias absorption"), o);
  auto* quantize = app.add_subcommand("quantize", "fold, equalize, absorb, quantize");
  AddCommonOptions(quantize, o);
  quantize->add_option("--bits", o.bits, "weight and activation bit width");
  quantize->add_flag("--no-equalize", o.no_equalize, "skip equalization");
  quantize->add_flag("--no-absorb", o.no_absorb, "skip bias absorption");
  quantize->add_option("--ranges", o.ranges, "datafree or calibrate");
  quantize->add_option("--probe-batch", o.probe_batch, "probe images for deviation")
      ->check(CLI::PositiveNumber);
  auto* infer = app.add_subcommand("infer", "classify one PGM/PPM image");
  AddCommonOptions(infer, o);
  infer->add_option("--image", o.image_path, "input image")->required();
  auto* evaluate = app.add_subcommand("evaluate", "top-1 accuracy over a manifest");
  AddCommonOptions(evaluate, o);
  evaluate->add_option("--dataset", o.dataset_path, "CSV manifest")->required();
  AddCommonOptions(
      app.add_subcommand("export-conventional", "expand to plain kernels"), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : eqq::kExitInvalid;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return eqq::RunCommand(command, o, std::cout, std::cerr);
}
