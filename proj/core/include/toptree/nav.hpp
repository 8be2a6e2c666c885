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
#include <span>
#include <vector>

#include "toptree/top_dag.hpp"
#include "toptree/tree.hpp"

namespace toptree {

struct DagStackEntry {
  DagId node = kNoDagNode;
  bool right = false;  // descended into the right child

  friend bool operator==(const DagStackEntry&, const DagStackEntry&) = default;
};

// A node of the original tree, addressed as the path from the DAG root down
// to the leaf cluster of the edge entering that node. The tree stack keeps
// the DAG stack of every ancestor so Parent is a pop.
//
// Moves return false and leave the cursor unchanged when the target node
// does not exist. Every query walks at most dag_stack().size() entries.
class NavCursor {
 public:
  static NavCursor at_root(const TopDag& dag);

  LabelId label() const { return dag_->node(current_).label(); }
  DagId current() const { return current_; }

  bool is_leaf() const;
  bool is_last_child() const;

  bool first_child();
  bool next_sibling();
  bool parent();

  std::span<const DagStackEntry> dag_stack() const { return stack_; }
  std::size_t tree_depth() const { return tree_stack_.size(); }
  // Stack entries inspected by the most recent query or move.
  std::size_t last_walk_length() const { return last_walk_; }

  friend bool operator==(const NavCursor& a, const NavCursor& b) {
    return a.dag_ == b.dag_ && a.stack_ == b.stack_ &&
           a.current_ == b.current_;
  }

 private:
  explicit NavCursor(const TopDag& dag) : dag_(&dag) {}

  // Index of the stack entry that ends the upward search, or npos when the
  // search stops with the answer "absent".
  std::size_t find_first_child_entry() const;
  std::size_t find_next_sibling_entry() const;
  void descend_right_then_left(std::size_t entry);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const TopDag* dag_;
  std::vector<DagStackEntry> stack_;
  DagId current_ = kNoDagNode;
  std::vector<std::vector<DagStackEntry>> tree_stack_;
  mutable std::size_t last_walk_ = 0;
};

struct DecompressStats {
  std::size_t clusters_visited = 0;
};

// Rebuilds the original tree by replaying the merges. Throws DagError on a
// malformed DAG.
LabelledTree decompress(const TopDag& dag, const LabelTable& labels,
                        DecompressStats* stats = nullptr);

}  // namespace toptree
