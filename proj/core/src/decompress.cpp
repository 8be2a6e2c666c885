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

#include <algorithm>
#include <utility>
#include <vector>

namespace toptree {
namespace {

// Pointer tree assembled in merge-replay order; converted to pre-order ids at
// the end.
struct Scratch {
  std::vector<LabelId> label;
  std::vector<NodeId> first_child;
  std::vector<NodeId> last_child;
  std::vector<NodeId> next_sibling;

  NodeId add(NodeId parent, LabelId l) {
    const auto id = static_cast<NodeId>(label.size());
    label.push_back(l);
    first_child.push_back(kNoNode);
    last_child.push_back(kNoNode);
    next_sibling.push_back(kNoNode);
    if (parent != kNoNode) {
      if (last_child[parent] == kNoNode) {
        first_child[parent] = id;
      } else {
        next_sibling[last_child[parent]] = id;
      }
      last_child[parent] = id;
    }
    return id;
  }
};

struct Frame {
  DagId node;
  NodeId top;
  std::uint8_t stage;
  NodeId first_bottom;
};

}  // namespace

LabelledTree decompress(const TopDag& dag, const LabelTable& labels,
                        DecompressStats* stats) {
  if (dag.empty() || dag.root() == kNoDagNode) {
    throw DagError("decompress: empty DAG");
  }
  for (const DagNode& n : dag.nodes()) {
    if (n.leaf ? n.label() >= labels.size()
               : (n.left >= dag.size() || n.right >= dag.size())) {
      throw DagError("decompress: dangling reference");
    }
  }

  Scratch tree;
  bool have_root = false;
  std::size_t visited = 0;

  // expand(cluster, top) returns the cluster's bottom attachment node: the
  // child endpoint for a leaf edge, and for inner clusters the bottom of the
  // side that keeps it.
  std::vector<Frame> stack{{dag.root(), kNoNode, 0, kNoNode}};
  NodeId returned = kNoNode;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const DagNode& n = dag.node(f.node);
    if (n.leaf) {
      ++visited;
      if (f.top == kNoNode) {
        if (have_root) throw DagError("decompress: more than one root");
        have_root = true;
      }
      returned = tree.add(f.top, n.label());
      stack.pop_back();
      continue;
    }
    switch (f.stage) {
      case 0:
        ++visited;
        f.stage = 1;
        stack.push_back({n.left, f.top, 0, kNoNode});
        break;
      case 1: {
        f.stage = 2;
        f.first_bottom = returned;
        const NodeId top = is_vertical(n.type) ? returned : f.top;
        stack.push_back({n.right, top, 0, kNoNode});
        break;
      }
      default: {
        const NodeId right_bottom = returned;
        switch (n.type) {
          case MergeType::kA:
          case MergeType::kB:
          case MergeType::kD:
            returned = right_bottom;
            break;
          case MergeType::kC:
          case MergeType::kE:
            returned = f.first_bottom;
            break;
        }
        stack.pop_back();
        break;
      }
    }
    if (stack.size() > dag.size() + 1) {
      throw DagError("decompress: cyclic DAG");
    }
  }
  if (stats) stats->clusters_visited = visited;

  TreeBuilder builder(labels);
  builder.reserve(tree.label.size());
  std::vector<NodeId> pending{0};
  while (!pending.empty()) {
    const NodeId v = pending.back();
    pending.pop_back();
    if (v == kNoNode) {
      builder.close();
      continue;
    }
    builder.open(tree.label[v]);
    pending.push_back(kNoNode);
    // Push children in reverse so the first child is opened first.
    const std::size_t mark = pending.size();
    for (NodeId c = tree.first_child[v]; c != kNoNode; c = tree.next_sibling[c]) {
      pending.push_back(c);
    }
    std::reverse(pending.begin() + static_cast<std::ptrdiff_t>(mark),
                 pending.end());
  }
  return std::move(builder).finish();
}

}  // namespace toptree
