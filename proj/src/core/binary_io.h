// Copyright 2026 The ogsum Authors.
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

#ifndef OGSUM_CORE_BINARY_IO_H_
#define OGSUM_CORE_BINARY_IO_H_

#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "core/error.h"

namespace ogsum {

// Little-endian checkpoint primitives. Layout of every checkpoint:
//   4-byte magic | u8 format version | u32 header length | header text | body
class BinaryWriter {
 public:
  explicit BinaryWriter(const std::string& path)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorCode::kIo, "cannot write " + path);
  }

  void Magic(const char (&magic)[5], uint8_t version) {
    out_.write(magic, 4);
    U8(version);
  }
  void U8(uint8_t v) { out_.put(static_cast<char>(v)); }
  void U32(uint32_t v) { Raw(&v, sizeof v); }
  void U64(uint64_t v) { Raw(&v, sizeof v); }
  void String(const std::string& s) {
    U32(static_cast<uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void Doubles(std::span<const double> v) {
    U64(v.size());
    Raw(v.data(), v.size() * sizeof(double));
  }
  void Finish() {
    out_.flush();
    if (!out_) throw Error(ErrorCode::kIo, "write failed for " + path_);
  }

 private:
  void Raw(const void* p, size_t n) {
    out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  }

  std::string path_;
  std::ofstream out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const std::string& path)
      : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw Error(ErrorCode::kIo, "cannot open " + path);
  }

  // Returns the format version after checking the magic.
  uint8_t Magic(const char (&magic)[5]) {
    char got[4];
    Raw(got, 4);
    if (std::memcmp(got, magic, 4) != 0) {
      throw Error(ErrorCode::kFormat, path_ + ": not a " +
                                          std::string(magic, 4) + " file");
    }
    return U8();
  }
  uint8_t U8() {
    uint8_t v;
    Raw(&v, 1);
    return v;
  }
  uint32_t U32() {
    uint32_t v;
    Raw(&v, sizeof v);
    return v;
  }
  uint64_t U64() {
    uint64_t v;
    Raw(&v, sizeof v);
    return v;
  }
  std::string String() {
    const uint32_t n = U32();
    if (n > (1u << 26)) throw Error(ErrorCode::kFormat, path_ + ": bad string");
    std::string s(n, '\0');
    Raw(s.data(), n);
    return s;
  }
  std::vector<double> Doubles() {
    const uint64_t n = U64();
    if (n > (1ull << 32)) throw Error(ErrorCode::kFormat, path_ + ": bad array");
    std::vector<double> v(n);
    Raw(v.data(), n * sizeof(double));
    return v;
  }

 private:
  void Raw(void* p, size_t n) {
    in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) {
      throw Error(ErrorCode::kFormat, path_ + ": truncated file");
    }
  }

  std::string path_;
  std::ifstream in_;
};

}  // namespace ogsum

#endif  // OGSUM_CORE_BINARY_IO_H_
