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

#include "toptree/aux_tree.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace toptree {

AuxTree::AuxTree(const LabelledTree& tree, std::vector<Cluster> leaf_clusters,
                 ClusterFactory factory)
    : factory_(std::move(factory)), cluster_(std::move(leaf_clusters)) {
  const std::size_t n = tree.size();
  if (cluster_.size() != n) {
    throw std::invalid_argument("AuxTree: one leaf cluster per node required");
  }
  parent_.resize(n);
  first_child_.assign(n, kNoNode);
  next_sibling_.assign(n, kNoNode);
  prev_sibling_.assign(n, kNoNode);
  child_count_.resize(n);
  alive_.assign(n, 1);
  merged_in_.assign(n, std::numeric_limits<std::uint32_t>::max());
  live_.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    parent_[v] = tree.parent(v);
    const auto kids = tree.children(v);
    child_count_[v] = static_cast<std::uint32_t>(kids.size());
    if (!kids.empty()) first_child_[v] = kids.front();
    for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
      next_sibling_[kids[i]] = kids[i + 1];
      prev_sibling_[kids[i + 1]] = kids[i];
    }
    live_[v] = v;
  }
  edge_count_ = n == 0 ? 0 : n - 1;
}

void AuxTree::begin_iteration() {
  ++iteration_;
  std::erase_if(live_, [this](NodeId v) { return alive_[v] == 0; });
}

void AuxTree::unlink(NodeId v) {
  const NodeId p = parent_[v];
  const NodeId prev = prev_sibling_[v];
  const NodeId next = next_sibling_[v];
  if (prev != kNoNode) {
    next_sibling_[prev] = next;
  } else {
    first_child_[p] = next;
  }
  if (next != kNoNode) prev_sibling_[next] = prev;
  --child_count_[p];
  alive_[v] = 0;
  --edge_count_;
}

bool AuxTree::horizontally_mergeable(NodeId left, NodeId right) const {
  return left != root() && alive(left) && alive(right) &&
         next_sibling_[left] == right && !merged(left) && !merged(right) &&
         (is_leaf(left) || is_leaf(right));
}

bool AuxTree::vertically_mergeable(NodeId upper) const {
  if (upper == root() || !alive(upper) || merged(upper)) return false;
  if (child_count_[upper] != 1) return false;
  return !merged(first_child_[upper]);
}

NodeId AuxTree::merge_horizontal(NodeId left, NodeId right) {
  if (!horizontally_mergeable(left, right)) {
    throw std::logic_error("merge_horizontal: edges are not mergeable");
  }
  const MergeType type = horizontal_merge_type(is_leaf(left), is_leaf(right));
  Cluster merged = factory_(type, cluster_[left], cluster_[right]);
  const NodeId survivor = type == MergeType::kD ? right : left;
  const NodeId dropped = survivor == left ? right : left;
  unlink(dropped);
  cluster_[survivor] = merged;
  merged_in_[survivor] = iteration_;
  return survivor;
}

NodeId AuxTree::merge_vertical(NodeId upper) {
  if (!vertically_mergeable(upper)) {
    throw std::logic_error("merge_vertical: edges are not mergeable");
  }
  const NodeId lower = first_child_[upper];
  const MergeType type = is_leaf(lower) ? MergeType::kB : MergeType::kA;
  Cluster merged = factory_(type, cluster_[upper], cluster_[lower]);

  // lower takes over upper's slot in the parent's child list.
  const NodeId p = parent_[upper];
  const NodeId prev = prev_sibling_[upper];
  const NodeId next = next_sibling_[upper];
  parent_[lower] = p;
  prev_sibling_[lower] = prev;
  next_sibling_[lower] = next;
  if (prev != kNoNode) {
    next_sibling_[prev] = lower;
  } else {
    first_child_[p] = lower;
  }
  if (next != kNoNode) prev_sibling_[next] = lower;
  alive_[upper] = 0;
  --edge_count_;

  cluster_[lower] = merged;
  merged_in_[lower] = iteration_;
  return lower;
}

Cluster AuxTree::merge_root() {
  if (edge_count_ != 1 || child_count_[root()] != 1) {
    throw std::logic_error("merge_root: exactly one edge besides the dummy");
  }
  const NodeId last = first_child_[root()];
  Cluster merged = factory_(MergeType::kA, cluster_[root()], cluster_[last]);
  alive_[last] = 0;
  child_count_[root()] = 0;
  first_child_[root()] = kNoNode;
  edge_count_ = 0;
  cluster_[root()] = merged;
  return merged;
}

}  // namespace toptree
