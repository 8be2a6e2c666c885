// Copyright 2026 The TopTree Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace toptree {

class BitStreamOverrun : public std::runtime_error {
 public:
  BitStreamOverrun() : std::runtime_error("read past end of bit segment") {}
};

// Appends bits MSB-first.
class BitWriter {
 public:
  void put_bit(bool bit);
  // Low `width` bits of value, most significant first. width <= 64.
  void put_bits(std::uint64_t value, unsigned width);

  std::uint64_t bit_size() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bits_ = 0;
};

// Reads bits MSB-first from [begin, end) bit positions of a byte buffer.
class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t begin_bit,
            std::uint64_t end_bit);

  bool get_bit();
  std::uint64_t get_bits(unsigned width);

  std::uint64_t position() const { return pos_; }
  std::uint64_t remaining() const { return end_ - pos_; }
  bool at_end() const { return pos_ == end_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t pos_;
  std::uint64_t end_;
};

}  // namespace toptree
