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

#include "toptree/huffman.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

namespace toptree {

HuffmanCode HuffmanCode::build(std::span<const SymbolCount> frequencies) {
  std::vector<SymbolCount> symbols;
  for (const SymbolCount& f : frequencies) {
    if (f.count > 0) symbols.push_back(f);
  }
  if (symbols.empty()) {
    throw std::invalid_argument("Huffman code over an empty alphabet");
  }
  std::sort(symbols.begin(), symbols.end(),
            [](const SymbolCount& a, const SymbolCount& b) {
              return a.symbol < b.symbol;
            });
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    if (symbols[i].symbol == symbols[i - 1].symbol) {
      throw std::invalid_argument("duplicate symbol in Huffman frequencies");
    }
  }

  const std::size_t k = symbols.size();
  std::vector<unsigned> lengths(k, 1);
  if (k > 1) {
    // Nodes 0..k-1 are the symbols, later ids the merged subtrees.
    std::vector<std::size_t> parent(2 * k - 1, 0);
    using Item = std::tuple<std::uint64_t, std::size_t>;  // (weight, node)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t i = 0; i < k; ++i) heap.emplace(symbols[i].count, i);
    std::size_t next = k;
    while (heap.size() > 1) {
      auto [wa, a] = heap.top();
      heap.pop();
      auto [wb, b] = heap.top();
      heap.pop();
      parent[a] = parent[b] = next;
      heap.emplace(wa + wb, next++);
    }
    const std::size_t root = next - 1;
    std::vector<unsigned> depth(2 * k - 1, 0);
    for (std::size_t v = root; v-- > 0;) depth[v] = depth[parent[v]] + 1;
    for (std::size_t i = 0; i < k; ++i) lengths[i] = depth[i];
  }

  HuffmanCode code;
  code.entries_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (lengths[i] > 64) throw std::length_error("Huffman code longer than 64 bits");
    code.entries_[i] = Entry{symbols[i].symbol, lengths[i], 0};
  }
  std::stable_sort(code.entries_.begin(), code.entries_.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.length < b.length;
                   });
  std::uint64_t next_code = 0;
  unsigned prev_length = code.entries_.front().length;
  for (std::size_t i = 0; i < k; ++i) {
    Entry& e = code.entries_[i];
    if (i > 0) {
      next_code = (next_code + 1) << (e.length - prev_length);
    }
    e.code = next_code;
    prev_length = e.length;
    code.index_.emplace(e.symbol, i);
  }
  return code;
}

HuffmanCode HuffmanCode::from_symbols(std::span<const std::uint64_t> symbols) {
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s : symbols) ++counts[s];
  std::vector<SymbolCount> freqs;
  freqs.reserve(counts.size());
  for (auto [s, c] : counts) freqs.push_back({s, c});
  return build(freqs);
}

const HuffmanCode::Entry& HuffmanCode::entry(std::uint64_t symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) throw std::out_of_range("symbol not in Huffman code");
  return entries_[it->second];
}

void HuffmanCode::encode(BitWriter& out, std::uint64_t symbol) const {
  const Entry& e = entry(symbol);
  out.put_bits(e.code, e.length);
}

void HuffmanCode::write_table(BitWriter& out, unsigned symbol_width) const {
  // Materialize the code trie; a lone symbol gets a phantom sibling so that
  // every inner node has two children.
  struct TrieNode {
    std::int64_t child[2] = {-1, -1};
    std::uint64_t symbol = 0;
    bool leaf = false;
  };
  std::vector<TrieNode> trie(1);
  for (const Entry& e : entries_) {
    std::size_t at = 0;
    for (unsigned i = e.length; i-- > 0;) {
      const int bit = (e.code >> i) & 1;
      if (trie[at].child[bit] < 0) {
        trie[at].child[bit] = static_cast<std::int64_t>(trie.size());
        trie.emplace_back();
      }
      at = static_cast<std::size_t>(trie[at].child[bit]);
    }
    trie[at].leaf = true;
    trie[at].symbol = e.symbol;
  }
  if (entries_.size() == 1) {
    trie[0].child[1] = static_cast<std::int64_t>(trie.size());
    trie.push_back(TrieNode{{-1, -1}, entries_.front().symbol, true});
  }

  std::vector<std::uint64_t> leaf_symbols;
  std::vector<std::size_t> pending{0};
  while (!pending.empty()) {
    const TrieNode& node = trie[pending.back()];
    pending.pop_back();
    if (node.leaf) {
      leaf_symbols.push_back(node.symbol);
      continue;
    }
    const auto& l = trie[static_cast<std::size_t>(node.child[0])];
    const auto& r = trie[static_cast<std::size_t>(node.child[1])];
    out.put_bit(!l.leaf);
    out.put_bit(!r.leaf);
    pending.push_back(static_cast<std::size_t>(node.child[1]));
    pending.push_back(static_cast<std::size_t>(node.child[0]));
  }
  for (std::uint64_t s : leaf_symbols) out.put_bits(s, symbol_width);
}

HuffmanDecoder HuffmanDecoder::read_table(BitReader& in,
                                          unsigned symbol_width) {
  HuffmanDecoder dec;
  dec.nodes_.emplace_back();
  std::vector<std::size_t> leaves;  // pre-order
  // Pending child slots: (parent node, side, is_inner).
  struct Slot {
    std::uint32_t parent;
    std::uint8_t side;
    bool inner;
  };
  std::vector<Slot> pending;
  auto read_inner = [&](std::uint32_t id) {
    const bool left_inner = in.get_bit();
    const bool right_inner = in.get_bit();
    pending.push_back({id, 1, right_inner});
    pending.push_back({id, 0, left_inner});
  };
  read_inner(0);
  while (!pending.empty()) {
    const Slot slot = pending.back();
    pending.pop_back();
    const auto id = static_cast<std::uint32_t>(dec.nodes_.size());
    dec.nodes_.emplace_back();
    dec.nodes_[slot.parent].child[slot.side] = id;
    if (slot.inner) {
      read_inner(id);
    } else {
      dec.nodes_[id].leaf = true;
      leaves.push_back(id);
    }
  }
  for (std::size_t leaf : leaves) {
    dec.nodes_[leaf].symbol = in.get_bits(symbol_width);
  }
  dec.leaf_count_ = leaves.size();
  return dec;
}

std::uint64_t HuffmanDecoder::decode(BitReader& in) const {
  std::uint32_t at = 0;
  while (!nodes_[at].leaf) at = nodes_[at].child[in.get_bit() ? 1 : 0];
  return nodes_[at].symbol;
}

}  // namespace toptree
