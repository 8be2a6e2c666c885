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

#include "toptree/top_dag.hpp"

#include <algorithm>
#include <utility>

#include "toptree/hash.hpp"

namespace toptree {

std::size_t TopDag::KeyHash::operator()(const Key& k) const noexcept {
  return static_cast<std::size_t>(mix64(k.packed_head ^ mix64(k.right)));
}

TopDag::Key TopDag::key_of(const DagNode& n) {
  const std::uint64_t head = (n.leaf ? 1ULL << 40 : 0ULL) |
                             (static_cast<std::uint64_t>(n.type) << 32) |
                             n.left;
  return Key{head, n.leaf ? 0U : n.right};
}

void TopDag::reserve(std::size_t nodes) {
  nodes_.reserve(nodes);
  index_.reserve(nodes);
}

DagId TopDag::intern_leaf(LabelId label) {
  DagNode node{true, MergeType::kA, label, 0};
  auto [it, inserted] =
      index_.try_emplace(key_of(node), static_cast<DagId>(nodes_.size()));
  if (inserted) {
    nodes_.push_back(node);
    ++leaf_count_;
  }
  return it->second;
}

std::pair<DagId, bool> TopDag::try_intern_inner(MergeType type, DagId left,
                                                DagId right) {
  if (left >= nodes_.size() || right >= nodes_.size()) {
    throw DagError("intern_inner: unknown child id");
  }
  DagNode node{false, type, left, right};
  auto [it, inserted] =
      index_.try_emplace(key_of(node), static_cast<DagId>(nodes_.size()));
  if (inserted) nodes_.push_back(node);
  return {it->second, inserted};
}

DagId TopDag::intern_inner(MergeType type, DagId left, DagId right) {
  return try_intern_inner(type, left, right).first;
}

void TopDag::set_root(DagId root) {
  if (root >= nodes_.size()) throw DagError("set_root: unknown node id");
  root_ = root;
}

DagStats dag_stats(const TopDag& dag) {
  DagStats stats;
  stats.nodes = dag.size();
  stats.edges = 2 * dag.inner_count();
  stats.total = stats.nodes + stats.edges;
  if (dag.empty() || dag.root() == kNoDagNode) return stats;
  std::vector<std::uint32_t> depth(dag.size(), 0);
  for (DagId id = 0; id <= dag.root(); ++id) {
    const DagNode& n = dag.node(id);
    if (!n.leaf) depth[id] = 1 + std::max(depth[n.left], depth[n.right]);
  }
  stats.depth = depth[dag.root()];
  return stats;
}

std::uint64_t unfolded_leaf_count(const TopDag& dag) {
  if (dag.empty() || dag.root() == kNoDagNode) return 0;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> count(dag.size(), 1);
  for (DagId id = 0; id <= dag.root(); ++id) {
    const DagNode& n = dag.node(id);
    if (n.leaf) continue;
    const std::uint64_t l = count[n.left];
    const std::uint64_t r = count[n.right];
    count[id] = l > kMax - r ? kMax : l + r;
  }
  return count[dag.root()];
}

bool dag_equivalent(const TopDag& a, const TopDag& b) {
  if (a.size() != b.size() || a.leaf_count() != b.leaf_count()) return false;
  if (a.empty()) return true;
  if (a.root() == kNoDagNode || b.root() == kNoDagNode) {
    return a.root() == b.root();
  }
  std::vector<DagId> a_to_b(a.size(), kNoDagNode);
  std::vector<DagId> b_to_a(b.size(), kNoDagNode);
  std::vector<std::pair<DagId, DagId>> pending{{a.root(), b.root()}};
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    if (a_to_b[x] != kNoDagNode || b_to_a[y] != kNoDagNode) {
      if (a_to_b[x] != y || b_to_a[y] != x) return false;
      continue;
    }
    const DagNode& nx = a.node(x);
    const DagNode& ny = b.node(y);
    if (nx.leaf != ny.leaf) return false;
    if (nx.leaf) {
      if (nx.label() != ny.label()) return false;
    } else {
      if (nx.type != ny.type) return false;
      pending.emplace_back(nx.left, ny.left);
      pending.emplace_back(nx.right, ny.right);
    }
    a_to_b[x] = y;
    b_to_a[y] = x;
  }
  return true;
}

}  // namespace toptree
