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
#include <string_view>
#include <utility>
#include <vector>

#include "toptree/aux_tree.hpp"
#include "toptree/hash.hpp"
#include "toptree/merge_type.hpp"
#include "toptree/top_tree.hpp"

namespace toptree {

constexpr ClusterHash leaf_cluster_hash(std::uint64_t seed, LabelId label) {
  return hash_combine(hash_combine(seed, 0x1eafULL), label);
}

constexpr ClusterHash inner_cluster_hash(std::uint64_t seed, MergeType type,
                                         ClusterHash left, ClusterHash right) {
  return hash_combine(
      hash_combine(hash_combine(seed, 0x100ULL + static_cast<int>(type)), left),
      right);
}

// Adjacent sibling edges whose clusters can be merged horizontally,
// identified by the two cluster hashes and the resulting merge type.
struct Digram {
  ClusterHash left = 0;
  ClusterHash right = 0;
  MergeType type = MergeType::kE;
  // (left, right) aux nodes in document order; may overlap.
  std::vector<std::pair<NodeId, NodeId>> occurrences;

  std::size_t count() const { return occurrences.size(); }
};

// Every eligible adjacent pair exactly once, ordered by descending count,
// then (left, right, type), then first occurrence.
std::vector<Digram> collect_digrams(const AuxTree& aux);

// Merges the non-overlapping occurrences of each digram seen at least
// min_count times, most frequent digram first.
std::size_t repair_horizontal_step(const AuxTree& aux, const MergeFn& merge,
                                   std::size_t min_count = 2);

class RepairCombiner final : public HorizontalCombiner {
 public:
  explicit RepairCombiner(std::size_t min_count = 2) : min_count_(min_count) {}

  std::string_view name() const override { return "repair"; }
  std::size_t horizontal_step(const AuxTree& aux,
                              const MergeFn& merge) override {
    return repair_horizontal_step(aux, merge, min_count_);
  }

 private:
  std::size_t min_count_;
};

}  // namespace toptree
