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
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "toptree/merge_type.hpp"
#include "toptree/tree.hpp"

namespace toptree {

using DagId = std::uint32_t;

inline constexpr DagId kNoDagNode = std::numeric_limits<DagId>::max();

class DagError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct DagNode {
  bool leaf = true;
  MergeType type = MergeType::kA;  // inner nodes only
  std::uint32_t left = 0;          // label id for leaves
  std::uint32_t right = 0;

  LabelId label() const { return left; }

  friend bool operator==(const DagNode&, const DagNode&) = default;
};

struct DagStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t total = 0;  // nodes + edges
  std::size_t depth = 0;  // edges on the longest root-to-leaf path

  friend bool operator==(const DagStats&, const DagStats&) = default;
};

// Hash-consed top DAG. Node ids follow creation order and every child id is
// smaller than its parent's. Builders intern all leaves before any inner node
// so that a leaf's DAG id equals its label id.
class TopDag {
 public:
  TopDag() = default;

  DagId intern_leaf(LabelId label);
  // Throws DagError when a child id does not exist.
  DagId intern_inner(MergeType type, DagId left, DagId right);

  // Like intern_inner, but reports whether the node was newly created.
  std::pair<DagId, bool> try_intern_inner(MergeType type, DagId left,
                                          DagId right);

  void set_root(DagId root);
  DagId root() const { return root_; }

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const DagNode& node(DagId id) const { return nodes_[id]; }
  std::span<const DagNode> nodes() const { return nodes_; }
  std::size_t leaf_count() const { return leaf_count_; }
  std::size_t inner_count() const { return nodes_.size() - leaf_count_; }

  void reserve(std::size_t nodes);

  friend bool operator==(const TopDag& a, const TopDag& b) {
    return a.nodes_ == b.nodes_ && a.root_ == b.root_;
  }

 private:
  struct Key {
    std::uint64_t packed_head;  // leaf flag, type, left
    std::uint32_t right;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  static Key key_of(const DagNode& n);

  std::vector<DagNode> nodes_;
  std::unordered_map<Key, DagId, KeyHash> index_;
  std::size_t leaf_count_ = 0;
  DagId root_ = kNoDagNode;
};

DagStats dag_stats(const TopDag& dag);

// Number of top-tree leaves the DAG unfolds to, i.e. the node count of the
// encoded tree. Saturates at UINT64_MAX.
std::uint64_t unfolded_leaf_count(const TopDag& dag);

// True when both DAGs unfold to the same top tree and have the same number of
// nodes, independent of node numbering.
bool dag_equivalent(const TopDag& a, const TopDag& b);

}  // namespace toptree
