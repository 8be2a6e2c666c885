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

#include "toptree/codec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <string>
#include <utility>

#include "toptree/bit_io.hpp"
#include "toptree/huffman.hpp"

namespace toptree {
namespace {

constexpr std::uint64_t kUnranked = std::numeric_limits<std::uint64_t>::max();

unsigned ref_width(std::uint64_t label_count, std::uint64_t inner_count) {
  const std::uint64_t alphabet = label_count + inner_count;
  return alphabet <= 2 ? 1u : static_cast<unsigned>(std::bit_width(alphabet - 1));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> bytes, std::size_t at,
                     int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= static_cast<std::uint64_t>(bytes[at + static_cast<std::size_t>(i)]) << (8 * i);
  }
  return v;
}

void write_segment(BitWriter& out, std::span<const std::uint64_t> symbols,
                   unsigned width) {
  if (symbols.empty()) return;
  const HuffmanCode code = HuffmanCode::from_symbols(symbols);
  code.write_table(out, width);
  for (std::uint64_t s : symbols) code.encode(out, s);
}

std::vector<std::uint64_t> read_segment(std::span<const std::uint8_t> payload,
                                        std::uint64_t begin, std::uint64_t end,
                                        unsigned width, std::uint64_t count,
                                        const char* name) {
  std::vector<std::uint64_t> symbols;
  if (count == 0) {
    if (begin != end) {
      throw FormatError(FormatErrc::kSizeMismatch,
                        std::string(name) + " segment should be empty");
    }
    return symbols;
  }
  BitReader in(payload, begin, end);
  HuffmanDecoder decoder = [&] {
    try {
      return HuffmanDecoder::read_table(in, width);
    } catch (const BitStreamOverrun&) {
      throw FormatError(FormatErrc::kBadHuffmanTable,
                        std::string(name) + " code table overruns segment");
    }
  }();
  symbols.reserve(count);
  try {
    for (std::uint64_t i = 0; i < count; ++i) symbols.push_back(decoder.decode(in));
  } catch (const BitStreamOverrun&) {
    throw FormatError(FormatErrc::kTruncated,
                      std::string(name) + " segment ends early");
  }
  if (!in.at_end()) {
    throw FormatError(FormatErrc::kSizeMismatch,
                      std::string(name) + " segment has trailing bits");
  }
  return symbols;
}

}  // namespace

std::string_view to_string(FormatErrc code) {
  switch (code) {
    case FormatErrc::kBadMagic: return "bad magic";
    case FormatErrc::kBadVersion: return "unsupported version";
    case FormatErrc::kTruncated: return "truncated";
    case FormatErrc::kSizeMismatch: return "size mismatch";
    case FormatErrc::kBadHuffmanTable: return "bad Huffman table";
    case FormatErrc::kReferenceOutOfRange: return "reference out of range";
    case FormatErrc::kStructureMismatch: return "structure mismatch";
    case FormatErrc::kBadLabels: return "bad labels";
    case FormatErrc::kHeaderMismatch: return "header mismatch";
  }
  return "unknown";
}

CoreDecomposition core_decompose(const TopDag& dag) {
  if (dag.empty() || dag.root() == kNoDagNode) {
    throw DagError("core_decompose: empty DAG");
  }
  const std::uint64_t labels = dag.leaf_count();
  for (DagId id = 0; id < dag.size(); ++id) {
    const DagNode& n = dag.node(id);
    if ((id < labels) != n.leaf || (n.leaf && n.label() != id)) {
      throw DagError("core_decompose: leaves must be ids 0..L-1 by label");
    }
  }

  CoreDecomposition core;
  core.label_count = labels;
  if (dag.node(dag.root()).leaf) return core;

  std::vector<std::uint64_t> rank(dag.size(), kUnranked);
  std::vector<DagId> order;
  std::vector<std::uint8_t> core_child;  // per rank: bit0 left, bit1 right
  struct Frame {
    DagId id;
    std::uint8_t stage;
  };
  std::vector<Frame> stack;
  auto enter = [&](DagId id) {
    rank[id] = order.size();
    order.push_back(id);
    core_child.push_back(0);
    stack.push_back({id, 0});
  };
  enter(dag.root());
  while (!stack.empty()) {
    const std::size_t top = stack.size() - 1;
    const DagId id = stack[top].id;
    if (stack[top].stage == 2) {
      stack.pop_back();
      continue;
    }
    const std::uint8_t side = stack[top].stage++;
    const DagNode& n = dag.node(id);
    const DagId child = side == 0 ? n.left : n.right;
    if (!dag.node(child).leaf && rank[child] == kUnranked) {
      core_child[rank[id]] |= static_cast<std::uint8_t>(1u << side);
      enter(child);
    }
  }

  core.inner_count = order.size();
  core.core_bits.reserve(2 * order.size());
  core.merge_types.reserve(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const DagNode& n = dag.node(order[r]);
    core.core_bits.push_back(core_child[r] & 1u);
    core.core_bits.push_back(core_child[r] & 2u);
    core.merge_types.push_back(n.type);
    for (int side = 0; side < 2; ++side) {
      if (core_child[r] & (1u << side)) continue;
      const DagId child = side == 0 ? n.left : n.right;
      core.child_refs.push_back(dag.node(child).leaf ? child
                                                     : labels + rank[child]);
    }
  }
  return core;
}

TopDag recompose(const CoreDecomposition& core) {
  const std::uint64_t labels = core.label_count;
  const std::uint64_t inner = core.inner_count;
  if (labels == 0) {
    throw FormatError(FormatErrc::kStructureMismatch, "no labels");
  }
  if (labels + inner >= kNoDagNode) {
    throw FormatError(FormatErrc::kStructureMismatch, "DAG too large");
  }
  if (core.core_bits.size() != 2 * inner || core.merge_types.size() != inner) {
    throw FormatError(FormatErrc::kStructureMismatch,
                      "core bits / merge types do not match node count");
  }

  TopDag dag;
  dag.reserve(labels + inner);
  for (LabelId l = 0; l < labels; ++l) dag.intern_leaf(l);
  if (inner == 0) {
    if (!core.child_refs.empty() || labels != 1) {
      throw FormatError(FormatErrc::kStructureMismatch,
                        "single-leaf DAG with references");
    }
    dag.set_root(0);
    return dag;
  }

  // Rebuild the core tree shape from the pre-order bits.
  constexpr std::uint64_t kNone = kUnranked;
  std::vector<std::array<std::uint64_t, 2>> child(inner, {kNone, kNone});
  std::vector<std::pair<std::uint64_t, int>> slots;
  for (std::uint64_t r = 0; r < inner; ++r) {
    if (r > 0) {
      if (slots.empty()) {
        throw FormatError(FormatErrc::kStructureMismatch,
                          "core bits describe fewer nodes than declared");
      }
      auto [p, side] = slots.back();
      slots.pop_back();
      child[p][static_cast<std::size_t>(side)] = r;
    }
    if (core.core_bits[2 * r + 1]) slots.emplace_back(r, 1);
    if (core.core_bits[2 * r]) slots.emplace_back(r, 0);
  }
  if (!slots.empty()) {
    throw FormatError(FormatErrc::kStructureMismatch,
                      "core bits describe more nodes than declared");
  }
  std::vector<std::uint64_t> subtree(inner, 1);
  for (std::uint64_t r = inner; r-- > 0;) {
    for (std::uint64_t c : child[r]) {
      if (c != kNone) subtree[r] += subtree[c];
    }
  }

  // Resolve the non-core children. A back-reference must name a core node
  // whose walk finished before the referencing slot was reached.
  struct Ref {
    bool leaf;
    std::uint64_t value;
  };
  std::vector<std::array<Ref, 2>> refs(inner);
  std::size_t next_ref = 0;
  for (std::uint64_t r = 0; r < inner; ++r) {
    for (int side = 0; side < 2; ++side) {
      const auto s = static_cast<std::size_t>(side);
      if (child[r][s] != kNone) {
        refs[r][s] = Ref{false, child[r][s]};
        continue;
      }
      if (next_ref >= core.child_refs.size()) {
        throw FormatError(FormatErrc::kStructureMismatch,
                          "too few child references");
      }
      const std::uint64_t v = core.child_refs[next_ref++];
      if (v < labels) {
        refs[r][s] = Ref{true, v};
        continue;
      }
      const std::uint64_t target = v - labels;
      const std::uint64_t slot_time =
          r + 1 + (side == 1 && child[r][0] != kNone ? subtree[child[r][0]] : 0);
      const bool open_ancestor = target <= r && r < target + subtree[target];
      if (target >= inner || target >= slot_time || open_ancestor) {
        throw FormatError(FormatErrc::kReferenceOutOfRange,
                          "back-reference " + std::to_string(v) +
                              " does not name an earlier finished node");
      }
      refs[r][s] = Ref{false, target};
    }
  }
  if (next_ref != core.child_refs.size()) {
    throw FormatError(FormatErrc::kStructureMismatch,
                      "too many child references");
  }

  // Intern in post-order; every reference points to a finished node.
  std::vector<DagId> dag_id(inner, kNoDagNode);
  std::vector<std::pair<std::uint64_t, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [r, expanded] = stack.back();
    if (!expanded) {
      stack.back().second = true;
      for (int side = 1; side >= 0; --side) {
        const std::uint64_t c = child[r][static_cast<std::size_t>(side)];
        if (c != kNone) stack.emplace_back(c, false);
      }
      continue;
    }
    stack.pop_back();
    DagId ids[2];
    for (int side = 0; side < 2; ++side) {
      const Ref& ref = refs[r][static_cast<std::size_t>(side)];
      ids[side] = ref.leaf ? static_cast<DagId>(ref.value) : dag_id[ref.value];
    }
    auto [id, inserted] =
        dag.try_intern_inner(core.merge_types[r], ids[0], ids[1]);
    if (!inserted) {
      throw FormatError(FormatErrc::kStructureMismatch,
                        "duplicate cluster in DAG");
    }
    dag_id[r] = id;
  }
  dag.set_root(dag_id[0]);
  return dag;
}

std::string label_string(const LabelTable& labels) {
  std::string out;
  out.reserve(labels.byte_size() + labels.size());
  for (const auto& label : labels.labels()) {
    out += label;
    out.push_back('\0');
  }
  return out;
}

std::string_view select0_label(std::string_view label_string, std::size_t i) {
  std::size_t start = 0;
  for (std::size_t zeros = 0; zeros < i; ++zeros) {
    const std::size_t z = label_string.find('\0', start);
    if (z == std::string_view::npos) throw std::out_of_range("select0_label");
    start = z + 1;
  }
  if (start >= label_string.size()) throw std::out_of_range("select0_label");
  const std::size_t end = label_string.find('\0', start);
  return label_string.substr(
      start, end == std::string_view::npos ? std::string_view::npos : end - start);
}

std::vector<std::uint8_t> encode_file(const TopDag& dag,
                                      const LabelTable& labels) {
  const CoreDecomposition core = core_decompose(dag);
  if (core.label_count != labels.size()) {
    throw DagError("encode_file: label table does not match DAG leaves");
  }
  const std::string text = label_string(labels);

  std::vector<std::uint64_t> blocks((core.core_bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < core.core_bits.size(); ++i) {
    if (core.core_bits[i]) blocks[i / 8] |= 0x80u >> (i % 8);
  }
  std::vector<std::uint64_t> types;
  types.reserve(core.merge_types.size());
  for (MergeType t : core.merge_types) types.push_back(static_cast<std::uint64_t>(t));
  std::vector<std::uint64_t> text_bytes;
  text_bytes.reserve(text.size());
  for (char c : text) text_bytes.push_back(static_cast<unsigned char>(c));

  BitWriter payload;
  FileHeader header;
  header.node_count = unfolded_leaf_count(dag);
  header.label_count = core.label_count;
  header.inner_count = core.inner_count;
  header.label_bytes = text.size();
  const auto segment = [&](std::size_t index, std::span<const std::uint64_t> symbols,
                           unsigned width) {
    const std::uint64_t begin = payload.bit_size();
    write_segment(payload, symbols, width);
    header.segment_bits[index] = payload.bit_size() - begin;
  };
  segment(0, blocks, 8);
  segment(1, types, 3);
  segment(2, core.child_refs, ref_width(core.label_count, core.inner_count));
  segment(3, text_bytes, 8);

  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + payload.bytes().size());
  out.insert(out.end(), kFileMagic.begin(), kFileMagic.end());
  put_u32(out, header.version);
  put_u64(out, header.node_count);
  put_u64(out, header.label_count);
  put_u64(out, header.inner_count);
  put_u64(out, header.label_bytes);
  for (std::uint64_t bits : header.segment_bits) put_u64(out, bits);
  out.insert(out.end(), payload.bytes().begin(), payload.bytes().end());
  return out;
}

FileHeader read_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFileMagic.size() ||
      !std::equal(kFileMagic.begin(), kFileMagic.end(), bytes.begin())) {
    throw FormatError(FormatErrc::kBadMagic, "not a TTC1 file");
  }
  if (bytes.size() < kHeaderBytes) {
    throw FormatError(FormatErrc::kTruncated, "header is incomplete");
  }
  FileHeader h;
  h.version = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
  if (h.version != kFileVersion) {
    throw FormatError(FormatErrc::kBadVersion,
                      "version " + std::to_string(h.version));
  }
  h.node_count = get_le(bytes, 8, 8);
  h.label_count = get_le(bytes, 16, 8);
  h.inner_count = get_le(bytes, 24, 8);
  h.label_bytes = get_le(bytes, 32, 8);
  for (std::size_t i = 0; i < 4; ++i) h.segment_bits[i] = get_le(bytes, 40 + 8 * i, 8);
  return h;
}

DecodedFile decode_file(std::span<const std::uint8_t> bytes) {
  DecodedFile file;
  FileHeader& h = file.header;
  h = read_header(bytes);

  const std::uint64_t max_bits = 8 * static_cast<std::uint64_t>(bytes.size());
  std::uint64_t total_bits = 0;
  for (std::uint64_t bits : h.segment_bits) {
    if (bits > max_bits || total_bits + bits > max_bits) {
      throw FormatError(FormatErrc::kTruncated, "segments exceed file size");
    }
    total_bits += bits;
  }
  const std::uint64_t payload_bytes = (total_bits + 7) / 8;
  if (bytes.size() - kHeaderBytes < payload_bytes) {
    throw FormatError(FormatErrc::kTruncated, "payload is incomplete");
  }
  if (bytes.size() - kHeaderBytes > payload_bytes) {
    throw FormatError(FormatErrc::kSizeMismatch, "trailing bytes after payload");
  }
  const auto payload = bytes.subspan(kHeaderBytes);
  if (total_bits % 8 != 0 &&
      (payload.back() & (0xffu >> (total_bits % 8))) != 0) {
    throw FormatError(FormatErrc::kSizeMismatch, "nonzero padding bits");
  }

  // Every coded symbol takes at least one bit, which bounds the allocations
  // below by the file size.
  const std::uint64_t L = h.label_count;
  const std::uint64_t I = h.inner_count;
  if (L == 0 || h.node_count == 0 || L >= kNoDagNode || I >= kNoDagNode ||
      L + I >= kNoDagNode || (2 * I + 7) / 8 > h.segment_bits[0] ||
      I > h.segment_bits[1] || h.label_bytes > h.segment_bits[3] ||
      h.label_bytes < L) {
    throw FormatError(FormatErrc::kHeaderMismatch, "inconsistent counts");
  }

  std::uint64_t at = 0;
  const auto bounds = [&](std::size_t i) {
    const std::uint64_t begin = at;
    at += h.segment_bits[i];
    return std::pair{begin, at};
  };

  CoreDecomposition core;
  core.label_count = L;
  core.inner_count = I;
  {
    auto [b, e] = bounds(0);
    const auto blocks = read_segment(payload, b, e, 8, (2 * I + 7) / 8, "core");
    core.core_bits.resize(2 * I);
    for (std::uint64_t i = 0; i < 8 * blocks.size(); ++i) {
      const bool bit = (blocks[i / 8] >> (7 - i % 8)) & 1u;
      if (i < 2 * I) {
        core.core_bits[i] = bit;
      } else if (bit) {
        throw FormatError(FormatErrc::kStructureMismatch,
                          "nonzero core padding bits");
      }
    }
  }
  {
    auto [b, e] = bounds(1);
    for (std::uint64_t v : read_segment(payload, b, e, 3, I, "merge type")) {
      auto type = merge_type_from_int(v);
      if (!type) {
        throw FormatError(FormatErrc::kStructureMismatch, "invalid merge type");
      }
      core.merge_types.push_back(*type);
    }
  }
  {
    auto [b, e] = bounds(2);
    const auto zeros = static_cast<std::uint64_t>(
        std::count(core.core_bits.begin(), core.core_bits.end(), false));
    if (zeros > h.segment_bits[2]) {
      throw FormatError(FormatErrc::kHeaderMismatch,
                        "reference segment too short");
    }
    core.child_refs = read_segment(payload, b, e, ref_width(L, I), zeros, "reference");
  }
  {
    auto [b, e] = bounds(3);
    const auto text = read_segment(payload, b, e, 8, h.label_bytes, "label");
    if (text.back() != 0) {
      throw FormatError(FormatErrc::kBadLabels, "label string not terminated");
    }
    std::vector<std::string> names(1);
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
      if (text[i] == 0) {
        names.emplace_back();
      } else {
        names.back().push_back(static_cast<char>(text[i]));
      }
    }
    if (names.size() != L) {
      throw FormatError(FormatErrc::kBadLabels, "label count does not match header");
    }
    try {
      file.labels = LabelTable::from_labels(std::move(names));
    } catch (const TreeError& e) {
      throw FormatError(FormatErrc::kBadLabels, e.what());
    }
  }

  file.dag = recompose(core);
  if (unfolded_leaf_count(file.dag) != h.node_count) {
    throw FormatError(FormatErrc::kHeaderMismatch,
                      "node count does not match the DAG");
  }
  return file;
}

}  // namespace toptree
