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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "toptree/merge_type.hpp"
#include "toptree/top_dag.hpp"
#include "toptree/tree.hpp"

namespace toptree {

// Spanning "core" tree of the DAG plus the references it leaves out.
//
// Leaves are numbered by label id (0..L-1) and core inner nodes by
// L + pre-order rank. Each inner node keeps its first incoming edge in a
// depth-first pre-order walk; every other edge becomes a back-reference.
struct CoreDecomposition {
  std::uint64_t label_count = 0;  // L
  std::uint64_t inner_count = 0;  // I
  // Two bits per core node in pre-order: left child is a core inner node,
  // right child is a core inner node.
  std::vector<bool> core_bits;
  std::vector<MergeType> merge_types;  // per core node, pre-order
  // Children that are not core edges, ordered by the pre-order rank of the
  // referencing node, left before right. Values < L name a leaf label;
  // values >= L name core node (value - L).
  std::vector<std::uint64_t> child_refs;

  friend bool operator==(const CoreDecomposition&,
                         const CoreDecomposition&) = default;
};

enum class FormatErrc {
  kBadMagic,
  kBadVersion,
  kTruncated,
  kSizeMismatch,
  kBadHuffmanTable,
  kReferenceOutOfRange,
  kStructureMismatch,
  kBadLabels,
  kHeaderMismatch,
};

std::string_view to_string(FormatErrc code);

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  FormatErrc code() const { return code_; }

 private:
  FormatErrc code_;
};

// The DAG's leaves must be exactly the ids 0..L-1 with label == id.
CoreDecomposition core_decompose(const TopDag& dag);
// Throws FormatError on inconsistent arrays or references.
TopDag recompose(const CoreDecomposition& core);

inline constexpr std::array<char, 4> kFileMagic = {'T', 'T', 'C', '1'};
inline constexpr std::uint32_t kFileVersion = 1;
inline constexpr std::size_t kHeaderBytes = 4 + 4 + 8 * 8;

// File layout (integers little-endian):
//   magic "TTC1", u32 version,
//   u64 node count, u64 label count L, u64 core inner count I,
//   u64 label string bytes, u64 x 4 segment bit lengths,
//   then the four segments as one MSB-first bit stream, zero-padded to a
//   byte boundary:
//     1. core bitstring in 8-bit blocks, Huffman coded
//     2. merge types, Huffman coded
//     3. child references, Huffman coded
//     4. zero-terminated label strings, Huffman coded per byte
//   Each non-empty segment starts with its code table (HuffmanCode::
//   write_table) followed by the coded symbols.
struct FileHeader {
  std::uint32_t version = kFileVersion;
  std::uint64_t node_count = 0;
  std::uint64_t label_count = 0;
  std::uint64_t inner_count = 0;
  std::uint64_t label_bytes = 0;
  std::array<std::uint64_t, 4> segment_bits{};

  friend bool operator==(const FileHeader&, const FileHeader&) = default;
};

struct DecodedFile {
  FileHeader header;
  TopDag dag;
  LabelTable labels;
};

std::vector<std::uint8_t> encode_file(const TopDag& dag,
                                      const LabelTable& labels);
// Throws FormatError; never reads outside `bytes`.
DecodedFile decode_file(std::span<const std::uint8_t> bytes);
FileHeader read_header(std::span<const std::uint8_t> bytes);

// Zero-terminated concatenation of all labels.
std::string label_string(const LabelTable& labels);
// Label following the i-th zero byte (i = 0: from the start), up to the next
// zero byte or the end. Throws std::out_of_range when there is no such label.
std::string_view select0_label(std::string_view label_string, std::size_t i);

}  // namespace toptree
