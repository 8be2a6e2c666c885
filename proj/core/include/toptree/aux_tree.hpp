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
#include <span>
#include <vector>

#include "toptree/merge_type.hpp"
#include "toptree/top_dag.hpp"
#include "toptree/tree.hpp"

namespace toptree {

using ClusterHash = std::uint64_t;

// What an auxiliary-tree edge currently stands for.
struct Cluster {
  std::uint32_t top_node = kNoNode;  // top-tree node, kNoNode if not recorded
  DagId dag_node = kNoDagNode;
  ClusterHash hash = 0;
  std::uint32_t height = 0;  // height of the cluster's top-tree subtree
};

// Working copy of the input tree during top tree construction. Every node v
// owns the edge from its parent into v; the root's edge is the dummy edge
// above the root, which only takes part in the final merge. Merged edges
// collapse onto the surviving lower endpoint.
class AuxTree {
 public:
  using ClusterFactory =
      std::function<Cluster(MergeType, const Cluster&, const Cluster&)>;

  // leaf_clusters[v] is the cluster of the edge into input node v.
  AuxTree(const LabelledTree& tree, std::vector<Cluster> leaf_clusters,
          ClusterFactory factory);

  NodeId root() const { return 0; }
  // Live edges excluding the dummy edge.
  std::size_t edge_count() const { return edge_count_; }
  std::uint32_t iteration() const { return iteration_; }

  // Pre-order snapshot taken at the start of the iteration. Entries may have
  // been removed by merges since; check alive().
  std::span<const NodeId> live_nodes() const { return live_; }

  bool alive(NodeId v) const { return alive_[v] != 0; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  NodeId first_child(NodeId v) const { return first_child_[v]; }
  NodeId next_sibling(NodeId v) const { return next_sibling_[v]; }
  std::uint32_t child_count(NodeId v) const { return child_count_[v]; }
  bool is_leaf(NodeId v) const { return child_count_[v] == 0; }
  // Whether the edge into v was produced by a merge in this iteration.
  bool merged(NodeId v) const { return merged_in_[v] == iteration_; }
  const Cluster& cluster(NodeId v) const { return cluster_[v]; }

  void begin_iteration();

  // Merges the edges into adjacent siblings left and right (C, D or E).
  // Returns the node that now owns the merged edge.
  NodeId merge_horizontal(NodeId left, NodeId right);
  // Merges the edge into upper with the edge into its only child (A or B).
  NodeId merge_vertical(NodeId upper);
  // Type-A merge of the dummy edge with the last remaining edge.
  Cluster merge_root();

  bool horizontally_mergeable(NodeId left, NodeId right) const;
  bool vertically_mergeable(NodeId upper) const;

 private:
  void unlink(NodeId v);

  ClusterFactory factory_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> first_child_;
  std::vector<NodeId> next_sibling_;
  std::vector<NodeId> prev_sibling_;
  std::vector<std::uint32_t> child_count_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> merged_in_;
  std::vector<Cluster> cluster_;
  std::vector<NodeId> live_;
  std::size_t edge_count_ = 0;
  std::uint32_t iteration_ = 0;
};

constexpr MergeType horizontal_merge_type(bool left_is_leaf,
                                          bool right_is_leaf) {
  if (left_is_leaf && right_is_leaf) return MergeType::kE;
  return left_is_leaf ? MergeType::kD : MergeType::kC;
}

}  // namespace toptree
