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


#ifndef EQQ_IO_WEIGHT_STORE_H_
#define EQQ_IO_WEIGHT_STORE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace eqq {

inline constexpr char kWeightStoreMagic[4] = {'E', 'Q', 'W', '1'};
inline constexpr uint32_t kWeightStoreVersion = 1;
inline constexpr uint8_t kDtypeFloat32 = 0;

struct Tensor {
  std::vector<uint32_t> dims;
  std::vector<float> data;
};

// Named float32 tensors kept in insertion order.
class WeightStore {
 public:
  // Throws kIntegrity on a duplicate name or when dims do not match the data.
  void Put(const std::string& name, std::vector<uint32_t> dims,
           std::vector<float> data);

  bool Has(std::string_view name) const;
  // Throws kMissingTensor.
  const Tensor& Get(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }
  size_t size() const { return names_.size(); }

  // "EQW1", version u32, count u32, then per tensor: name length u16, name,
  // dtype u8, rank u8, dims u32 each, data. All little-endian.
  std::string Serialize() const;

  // Throws kMagicMismatch, kVersionMismatch, kTruncated (file ends inside a
  // header field) or kIntegrity (payload length disagrees with the dims,
  // duplicate names, unknown dtype).
  static WeightStore Parse(std::string_view bytes);

 private:
  std::vector<std::string> names_;
  std::map<std::string, Tensor, std::less<>> tensors_;
};

std::string ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::string_view bytes);

}  // namespace eqq

#endif  // EQQ_IO_WEIGHT_STORE_H_
