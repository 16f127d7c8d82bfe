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


#include "eqq/io/weight_store.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "eqq/common/error.h"

namespace eqq {

static_assert(std::endian::native == std::endian::little,
              "the container codec assumes a little-endian host");

namespace {

size_t DimsProduct(const std::vector<uint32_t>& dims) {
  size_t n = 1;
  for (uint32_t d : dims) n *= d;
  return n;
}

template <typename T>
void Append(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T Read(const char* what) {
    Check(remaining() >= sizeof(T), ErrorCode::kTruncated,
          std::string("container ends inside ") + what);
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string_view Take(size_t n, ErrorCode code, const std::string& what) {
    Check(remaining() >= n, code, "container ends inside " + what);
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  size_t pos_ = 0;
};

}  // namespace

void WeightStore::Put(const std::string& name, std::vector<uint32_t> dims,
                      std::vector<float> data) {
  Check(!Has(name), ErrorCode::kIntegrity, "duplicate tensor '" + name + "'");
  Check(DimsProduct(dims) == data.size(), ErrorCode::kIntegrity,
        "tensor '" + name + "' dims do not match its data length");
  Check(name.size() <= 0xffff, ErrorCode::kIntegrity, "tensor name too long");
  Check(dims.size() <= 0xff, ErrorCode::kIntegrity, "tensor rank too large");
  names_.push_back(name);
  tensors_.emplace(name, Tensor{std::move(dims), std::move(data)});
}

bool WeightStore::Has(std::string_view name) const {
  return tensors_.find(name) != tensors_.end();
}

const Tensor& WeightStore::Get(std::string_view name) const {
  const auto it = tensors_.find(name);
  Check(it != tensors_.end(), ErrorCode::kMissingTensor,
        "missing tensor '" + std::string(name) + "'");
  return it->second;
}

std::string WeightStore::Serialize() const {
  std::string out(kWeightStoreMagic, sizeof(kWeightStoreMagic));
  Append<uint32_t>(out, kWeightStoreVersion);
  Append<uint32_t>(out, static_cast<uint32_t>(names_.size()));
  for (const std::string& name : names_) {
    const Tensor& t = tensors_.at(name);
    Append<uint16_t>(out, static_cast<uint16_t>(name.size()));
    out += name;
    Append<uint8_t>(out, kDtypeFloat32);
    Append<uint8_t>(out, static_cast<uint8_t>(t.dims.size()));
    for (uint32_t d : t.dims) Append<uint32_t>(out, d);
    out.append(reinterpret_cast<const char*>(t.data.data()),
               t.data.size() * sizeof(float));
  }
  return out;
}

WeightStore WeightStore::Parse(std::string_view bytes) {
  Reader in(bytes);
  const std::string_view magic =
      in.Take(sizeof(kWeightStoreMagic), ErrorCode::kTruncated, "the magic");
  Check(magic == std::string_view(kWeightStoreMagic, sizeof(kWeightStoreMagic)),
        ErrorCode::kMagicMismatch, "not a weight container (bad magic)");
  const uint32_t version = in.Read<uint32_t>("the version");
  Check(version == kWeightStoreVersion, ErrorCode::kVersionMismatch,
        "unsupported container version " + std::to_string(version));
  const uint32_t count = in.Read<uint32_t>("the tensor count");
  WeightStore store;
  for (uint32_t t = 0; t < count; ++t) {
    const uint16_t name_len = in.Read<uint16_t>("a tensor name length");
    const std::string name(
        in.Take(name_len, ErrorCode::kTruncated, "a tensor name"));
    const uint8_t dtype = in.Read<uint8_t>("a dtype");
    Check(dtype == kDtypeFloat32, ErrorCode::kIntegrity,
          "tensor '" + name + "' has unknown dtype " + std::to_string(dtype));
    const uint8_t rank = in.Read<uint8_t>("a rank");
    std::vector<uint32_t> dims(rank);
    for (uint32_t& d : dims) d = in.Read<uint32_t>("tensor dims");
    const size_t n = DimsProduct(dims);
    Check(n <= in.remaining() / sizeof(float), ErrorCode::kIntegrity,
          "tensor '" + name + "' declares more data than the container holds");
    const std::string_view raw =
        in.Take(n * sizeof(float), ErrorCode::kIntegrity, "tensor data");
    std::vector<float> data(n);
    std::memcpy(data.data(), raw.data(), raw.size());
    store.Put(name, std::move(dims), std::move(data));
  }
  Check(in.remaining() == 0, ErrorCode::kIntegrity,
        std::to_string(in.remaining()) + " trailing bytes after the last tensor");
  return store;
}

std::string ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Check(in.good(), ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileBytes(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Check(out.good(), ErrorCode::kIo, "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  Check(out.good(), ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace eqq
