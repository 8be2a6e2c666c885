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

#include "toptree/bit_io.hpp"

namespace toptree {

void BitWriter::put_bit(bool bit) {
  if ((bits_ & 7) == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ & 7));
  ++bits_;
}

void BitWriter::put_bits(std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) put_bit((value >> i) & 1u);
}

BitReader::BitReader(std::span<const std::uint8_t> bytes,
                     std::uint64_t begin_bit, std::uint64_t end_bit)
    : bytes_(bytes), pos_(begin_bit), end_(end_bit) {
  if (begin_bit > end_bit || end_bit > 8 * static_cast<std::uint64_t>(bytes.size())) {
    throw BitStreamOverrun();
  }
}

bool BitReader::get_bit() {
  if (pos_ >= end_) throw BitStreamOverrun();
  const bool bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::get_bits(unsigned width) {
  if (width > end_ - pos_) throw BitStreamOverrun();
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) value = (value << 1) | get_bit();
  return value;
}

}  // namespace toptree
