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
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "toptree/aux_tree.hpp"
#include "toptree/merge_type.hpp"
#include "toptree/top_dag.hpp"
#include "toptree/tree.hpp"

namespace toptree {

inline constexpr double kDefaultMinMergeRatio = 1.26;
inline constexpr std::uint64_t kDefaultHashSeed = 0x70b7ee5eedULL;

struct TopTreeNode {
  bool leaf = true;
  MergeType type = MergeType::kA;
  std::uint32_t left = 0;  // label id for leaves
  std::uint32_t right = 0;

  friend bool operator==(const TopTreeNode&, const TopTreeNode&) = default;
};

// Full binary merge tree. Node v < leaf_count is the leaf cluster of the edge
// into input node v (node 0 being the dummy edge above the root); inner nodes
// follow in creation order.
struct TopTree {
  std::vector<TopTreeNode> nodes;
  std::uint32_t root = 0;
  std::size_t leaf_count = 0;
  std::size_t height = 0;      // edges on the longest root-to-leaf path
  std::size_t iterations = 0;  // merge rounds before the final root merge
};

using MergeFn = std::function<void(NodeId left, NodeId right)>;

// Decides which horizontal merges happen in one iteration. Implementations
// call merge(left, right) for adjacent siblings whose edges are still
// unmerged in this iteration and return the number of merges performed.
class HorizontalCombiner {
 public:
  virtual ~HorizontalCombiner() = default;
  virtual std::string_view name() const = 0;
  virtual std::size_t horizontal_step(const AuxTree& aux,
                                      const MergeFn& merge) = 0;
};

// Left-to-right greedy pairing of adjacent unmerged siblings where at least
// one of the two is a leaf of the auxiliary tree.
std::size_t standard_horizontal_step(const AuxTree& aux, const MergeFn& merge);

// Pairs consecutive edges top-down along every path of single-child nodes.
std::size_t vertical_step(AuxTree& aux);

class ClassicCombiner final : public HorizontalCombiner {
 public:
  std::string_view name() const override { return "classic"; }
  std::size_t horizontal_step(const AuxTree& aux,
                              const MergeFn& merge) override {
    return standard_horizontal_step(aux, merge);
  }
};

enum class CombinerKind { kClassic, kRepair };

std::unique_ptr<HorizontalCombiner> make_combiner(CombinerKind kind);
std::optional<CombinerKind> parse_combiner_kind(std::string_view name);
std::string_view combiner_name(CombinerKind kind);

struct BuildOptions {
  // The standard step also runs when the combiner alone reduces the edge
  // count by less than this factor.
  double min_merge_ratio = kDefaultMinMergeRatio;
  std::uint64_t hash_seed = kDefaultHashSeed;
  // Skip materializing the top tree when only the DAG is needed.
  bool keep_top_tree = true;
};

struct IterationStats {
  std::size_t edges_before = 0;
  std::size_t combiner_merges = 0;
  bool fallback = false;
  std::size_t fallback_merges = 0;
  std::size_t vertical_merges = 0;
  std::size_t edges_after = 0;
};

struct BuildResult {
  TopTree top_tree;  // empty nodes when keep_top_tree is false
  TopDag dag;
  std::vector<IterationStats> iterations;
  std::size_t height = 0;
};

// Builds the top tree and, simultaneously, its hash-consed top DAG.
BuildResult build_top_tree(const LabelledTree& tree,
                           HorizontalCombiner& combiner,
                           const BuildOptions& options = {});
BuildResult build_top_tree(const LabelledTree& tree, CombinerKind kind,
                           const BuildOptions& options = {});

}  // namespace toptree
