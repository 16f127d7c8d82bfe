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


#include "eqq/io/dataset.h"

#include <charconv>
#include <filesystem>
#include <sstream>

#include "eqq/common/error.h"
#include "eqq/io/weight_store.h"

namespace eqq {

namespace fs = std::filesystem;

std::vector<ManifestEntry> LoadManifest(const std::string& csv_path,
                                        int num_classes) {
  const std::string text = ReadFileBytes(csv_path);
  const fs::path dir = fs::path(csv_path).parent_path();
  std::vector<ManifestEntry> entries;
  std::vector<std::string> problems;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const size_t comma = line.rfind(',');
    const std::string where = "line " + std::to_string(line_no);
    if (comma == std::string::npos || comma == 0) {
      problems.push_back(where + ": expected 'filename,label'");
      continue;
    }
    const std::string name = line.substr(0, comma);
    const std::string label_text = line.substr(comma + 1);
    int label = -1;
    const auto [end, ec] = std::from_chars(
        label_text.data(), label_text.data() + label_text.size(), label);
    if (ec != std::errc() || end != label_text.data() + label_text.size() ||
        label < 0 || label >= num_classes) {
      problems.push_back(where + ": label '" + label_text +
                         "' is not an integer in [0, " +
                         std::to_string(num_classes) + ")");
      continue;
    }
    const fs::path path = dir / name;
    if (!fs::is_regular_file(path)) {
      problems.push_back(where + ": missing file " + path.string());
      continue;
    }
    entries.push_back({path.string(), label});
  }
  if (!problems.empty()) {
    std::string msg = "bad manifest " + csv_path + ":";
    for (const std::string& p : problems) msg += "\n  " + p;
    Fail(ErrorCode::kIngestion, msg);
  }
  Check(!entries.empty(), ErrorCode::kValidation,
        "manifest " + csv_path + " lists no images");
  return entries;
}

}  // namespace eqq
