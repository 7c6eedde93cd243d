// Copyright 2026 The Authors.
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

#ifndef IEVM_SRC_BINARY_IO_HPP_
#define IEVM_SRC_BINARY_IO_HPP_

// Little-endian encoding helpers shared by the feature and model formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ievm::detail {

class ByteWriter {
 public:
  void bytes(std::string_view data) {
    buffer_.insert(buffer_.end(), data.begin(), data.end());
  }
  void u8(std::uint8_t v) { buffer_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }

  const std::string& buffer() const { return buffer_; }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) {
      buffer_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
    }
  }

  std::string buffer_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::string_view bytes(std::size_t n) {
    need(n);
    auto out = data_.substr(offset_, n);
    offset_ += n;
    return out;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    return std::string(bytes(n));
  }

  std::size_t offset() const { return offset_; }
  std::size_t remaining() const { return data_.size() - offset_; }

 private:
  void need(std::size_t n) const {
    if (n > data_.size() - offset_) {
      throw std::runtime_error("unexpected end of data at offset " +
                               std::to_string(offset_));
    }
  }
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(
               static_cast<unsigned char>(data_[offset_ + static_cast<std::size_t>(i)]))
           << (8 * i);
    }
    offset_ += static_cast<std::size_t>(width);
    return v;
  }

  std::string_view data_;
  std::size_t offset_ = 0;
};

inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace ievm::detail

#endif  // IEVM_SRC_BINARY_IO_HPP_
