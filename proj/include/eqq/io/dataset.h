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


#ifndef EQQ_IO_DATASET_H_
#define EQQ_IO_DATASET_H_

#include <string>
#include <vector>

namespace eqq {

struct ManifestEntry {
  std::string path;  // resolved against the manifest's directory
  int label = 0;
};

// Lines of `filename,label`; blank lines are skipped. Throws kValidation on
// an empty manifest and kIngestion listing every malformed row, out-of-range
// label or missing file.
std::vector<ManifestEntry> LoadManifest(const std::string& csv_path,
                                        int num_classes);

}  // namespace eqq

#endif  // EQQ_IO_DATASET_H_
