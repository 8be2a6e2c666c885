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

#include "toptree/nav.hpp"

namespace toptree {

NavCursor NavCursor::at_root(const TopDag& dag) {
  if (dag.empty() || dag.root() == kNoDagNode) {
    throw DagError("cursor on an empty DAG");
  }
  NavCursor cursor(dag);
  DagId id = dag.root();
  // The tree root is the dummy edge: leftmost leaf of the final A merge.
  while (!dag.node(id).leaf) {
    cursor.stack_.push_back({id, false});
    id = dag.node(id).left;
  }
  cursor.current_ = id;
  return cursor;
}

std::size_t NavCursor::find_first_child_entry() const {
  last_walk_ = 0;
  for (std::size_t i = stack_.size(); i-- > 0;) {
    ++last_walk_;
    const DagStackEntry& e = stack_[i];
    const MergeType type = dag_->node(e.node).type;
    const bool from_left = !e.right;
    switch (type) {
      case MergeType::kA:
        if (from_left) return i;
        break;  // lower cluster's bottom boundary stays the bottom boundary
      case MergeType::kB:
        if (from_left) return i;
        return npos;
      case MergeType::kC:
        if (!from_left) return npos;
        break;
      case MergeType::kD:
        if (from_left) return npos;
        break;
      case MergeType::kE:
        return npos;
    }
  }
  return npos;
}

std::size_t NavCursor::find_next_sibling_entry() const {
  last_walk_ = 0;
  for (std::size_t i = stack_.size(); i-- > 0;) {
    ++last_walk_;
    const DagStackEntry& e = stack_[i];
    const MergeType type = dag_->node(e.node).type;
    if (is_vertical(type)) {
      if (e.right) return npos;  // reached the parent
    } else if (!e.right) {
      return i;
    }
  }
  return npos;
}

bool NavCursor::is_leaf() const { return find_first_child_entry() == npos; }

bool NavCursor::is_last_child() const {
  return find_next_sibling_entry() == npos;
}

void NavCursor::descend_right_then_left(std::size_t entry) {
  stack_.resize(entry + 1);
  stack_.back().right = true;
  DagId id = dag_->node(stack_.back().node).right;
  while (!dag_->node(id).leaf) {
    stack_.push_back({id, false});
    id = dag_->node(id).left;
  }
  last_walk_ += stack_.size() - entry;
  current_ = id;
}

bool NavCursor::first_child() {
  const std::size_t entry = find_first_child_entry();
  if (entry == npos) return false;
  tree_stack_.push_back(stack_);
  descend_right_then_left(entry);
  return true;
}

bool NavCursor::next_sibling() {
  const std::size_t entry = find_next_sibling_entry();
  if (entry == npos) return false;
  descend_right_then_left(entry);
  return true;
}

bool NavCursor::parent() {
  last_walk_ = 0;
  if (tree_stack_.empty()) return false;
  stack_ = std::move(tree_stack_.back());
  tree_stack_.pop_back();
  const DagStackEntry& top = stack_.back();
  const DagNode& n = dag_->node(top.node);
  current_ = top.right ? n.right : n.left;
  last_walk_ = 1;
  return true;
}

}  // namespace toptree
