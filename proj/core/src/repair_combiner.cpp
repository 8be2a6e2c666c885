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

#include "toptree/repair_combiner.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

namespace toptree {
namespace {

struct DigramKey {
  ClusterHash left;
  ClusterHash right;
  MergeType type;
  friend bool operator==(const DigramKey&, const DigramKey&) = default;
};

struct DigramKeyHash {
  std::size_t operator()(const DigramKey& k) const noexcept {
    return static_cast<std::size_t>(
        hash_combine(hash_combine(k.left, k.right), static_cast<int>(k.type)));
  }
};

}  // namespace

std::vector<Digram> collect_digrams(const AuxTree& aux) {
  std::vector<Digram> digrams;
  std::unordered_map<DigramKey, std::size_t, DigramKeyHash> index;
  for (NodeId v : aux.live_nodes()) {
    if (!aux.alive(v) || aux.child_count(v) < 2) continue;
    for (NodeId c = aux.first_child(v), n = aux.next_sibling(c); n != kNoNode;
         c = n, n = aux.next_sibling(n)) {
      if (!aux.horizontally_mergeable(c, n)) continue;
      const DigramKey key{aux.cluster(c).hash, aux.cluster(n).hash,
                          horizontal_merge_type(aux.is_leaf(c),
                                                aux.is_leaf(n))};
      auto [it, inserted] = index.try_emplace(key, digrams.size());
      if (inserted) {
        digrams.push_back(Digram{key.left, key.right, key.type, {}});
      }
      digrams[it->second].occurrences.emplace_back(c, n);
    }
  }
  // Insertion order is document order of first occurrence, so a stable sort
  // keeps that as the last tie-breaker.
  std::stable_sort(digrams.begin(), digrams.end(),
                   [](const Digram& a, const Digram& b) {
                     if (a.count() != b.count()) return a.count() > b.count();
                     return std::tie(a.left, a.right, a.type) <
                            std::tie(b.left, b.right, b.type);
                   });
  return digrams;
}

std::size_t repair_horizontal_step(const AuxTree& aux, const MergeFn& merge,
                                   std::size_t min_count) {
  std::size_t merges = 0;
  for (const Digram& digram : collect_digrams(aux)) {
    if (digram.count() < min_count) break;
    for (auto [left, right] : digram.occurrences) {
      // An earlier merge may have consumed either edge.
      if (!aux.horizontally_mergeable(left, right)) continue;
      merge(left, right);
      ++merges;
    }
  }
  return merges;
}

}  // namespace toptree
