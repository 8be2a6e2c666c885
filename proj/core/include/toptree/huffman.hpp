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
#include <unordered_map>
#include <utility>
#include <vector>

#include "toptree/bit_io.hpp"

namespace toptree {

struct SymbolCount {
  std::uint64_t symbol = 0;
  std::uint64_t count = 0;
};

// Canonical Huffman code. Lengths come from the usual merge-two-lightest
// construction (ties broken by symbol, then creation order); codes are then
// assigned canonically in (length, symbol) order. A one-symbol alphabet gets
// the single code "0".
class HuffmanCode {
 public:
  struct Entry {
    std::uint64_t symbol = 0;
    unsigned length = 0;
    std::uint64_t code = 0;
  };

  // Symbols with a zero count are ignored. Throws std::invalid_argument when
  // no symbol remains.
  static HuffmanCode build(std::span<const SymbolCount> frequencies);
  // Counts occurrences and builds the code.
  static HuffmanCode from_symbols(std::span<const std::uint64_t> symbols);

  // Canonical order: (length, symbol).
  std::span<const Entry> entries() const { return entries_; }
  const Entry& entry(std::uint64_t symbol) const;
  unsigned length(std::uint64_t symbol) const { return entry(symbol).length; }

  void encode(BitWriter& out, std::uint64_t symbol) const;

  // Code tree shape (two bits per inner node in pre-order: is the left / right
  // child an inner node) followed by the leaf symbols, each symbol_width bits.
  void write_table(BitWriter& out, unsigned symbol_width) const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

class HuffmanDecoder {
 public:
  // Throws BitStreamOverrun when the table runs past the segment.
  static HuffmanDecoder read_table(BitReader& in, unsigned symbol_width);

  std::uint64_t decode(BitReader& in) const;
  std::size_t leaf_count() const { return leaf_count_; }

 private:
  struct Node {
    std::uint32_t child[2] = {0, 0};
    std::uint64_t symbol = 0;
    bool leaf = false;
  };
  std::vector<Node> nodes_;
  std::size_t leaf_count_ = 0;
};

}  // namespace toptree
