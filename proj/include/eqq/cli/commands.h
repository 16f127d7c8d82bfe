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


#ifndef EQQ_CLI_COMMANDS_H_
#define EQQ_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eqq {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;  // validation, planning, shape errors
inline constexpr int kExitIo = 3;       // files, containers, ingestion, ranges

struct CliOptions {
  std::string config_path;  // JSON run config; defaults apply when empty
  std::string preset;       // overrides the config's preset
  std::optional<int> group_order;
  std::optional<int> input_size;
  std::string variant;
  std::string weights_path;  // model container to load instead of building
  std::string out_path;
  std::optional<uint64_t> seed;
  std::vector<double> angles = {0.0, 90.0, 180.0, 270.0};
  std::optional<int> bits;
  bool no_equalize = false;
  bool no_absorb = false;
  std::string ranges;
  std::string image_path;
  std::string dataset_path;
  int probe_batch = 8;
};

inline constexpr const char* kCommandNames[] = {
    "plan",     "build", "audit", "equalize",           "absorb",
    "quantize", "infer", "evaluate", "export-conventional"};

// Runs one command. Tables go to `out` as TSV, diagnostics to `err`. Errors
// are caught and mapped to the exit codes above.
int RunCommand(const std::string& command, const CliOptions& options,
               std::ostream& out, std::ostream& err);

// Worker count for evaluation: EQQ_THREADS when set to a positive integer,
// otherwise the hardware concurrency.
int EvaluationThreads();

}  // namespace eqq

#endif  // EQQ_CLI_COMMANDS_H_
