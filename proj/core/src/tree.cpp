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

#include "toptree/tree.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <utility>

namespace toptree {

LabelTable LabelTable::from_labels(std::vector<std::string> labels) {
  LabelTable table;
  table.labels_.reserve(labels.size());
  for (auto& label : labels) {
    if (table.find(label)) throw TreeError("duplicate label '" + label + "'");
    table.intern(label);
  }
  return table;
}

LabelId LabelTable::intern(std::string_view label) {
  if (label.find('\0') != std::string_view::npos) {
    throw TreeError("label contains a zero byte");
  }
  auto [it, inserted] = index_.try_emplace(
      std::string(label), static_cast<LabelId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

std::optional<LabelId> LabelTable::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t LabelTable::byte_size() const {
  std::size_t total = 0;
  for (const auto& label : labels_) total += label.size();
  return total;
}

TreeBuilder::TreeBuilder(LabelTable labels)
    : labels_(std::move(labels)), fixed_labels_(true) {}

void TreeBuilder::reserve(std::size_t nodes) {
  label_.reserve(nodes);
  parent_.reserve(nodes);
}

void TreeBuilder::open(std::string_view label) {
  if (fixed_labels_) {
    auto id = labels_.find(label);
    if (!id) throw TreeError("unknown label '" + std::string(label) + "'");
    push(*id);
    return;
  }
  push(labels_.intern(label));
}

void TreeBuilder::open(LabelId label) {
  if (label >= labels_.size()) throw TreeError("label id out of range");
  push(label);
}

void TreeBuilder::push(LabelId label) {
  if (complete()) throw TreeError("more than one top-level node");
  if (label_.size() == kNoNode) throw TreeError("tree too large");
  const auto id = static_cast<NodeId>(label_.size());
  label_.push_back(label);
  parent_.push_back(stack_.empty() ? kNoNode : stack_.back());
  stack_.push_back(id);
}

void TreeBuilder::close() {
  if (stack_.empty()) throw TreeError("close without matching open");
  stack_.pop_back();
}

const std::string& TreeBuilder::open_label() const {
  if (stack_.empty()) throw TreeError("no open node");
  return labels_[label_[stack_.back()]];
}

LabelledTree TreeBuilder::finish() && {
  if (label_.empty()) throw TreeError("empty tree");
  if (!stack_.empty()) {
    throw TreeError("unbalanced events: " + std::to_string(stack_.size()) +
                    " node(s) left open");
  }
  LabelledTree tree;
  const std::size_t n = label_.size();
  tree.child_begin_.assign(n + 1, 0);
  for (std::size_t v = 1; v < n; ++v) ++tree.child_begin_[parent_[v] + 1];
  for (std::size_t v = 0; v < n; ++v) {
    tree.child_begin_[v + 1] += tree.child_begin_[v];
  }
  tree.child_list_.resize(n == 0 ? 0 : n - 1);
  std::vector<std::uint32_t> fill(tree.child_begin_.begin(),
                                  tree.child_begin_.end() - 1);
  // Pre-order ids keep each child list sorted by document order.
  for (std::size_t v = 1; v < n; ++v) {
    tree.child_list_[fill[parent_[v]]++] = static_cast<NodeId>(v);
  }
  tree.labels_ = std::move(labels_);
  tree.label_ = std::move(label_);
  tree.parent_ = std::move(parent_);
  return tree;
}

LabelledTree build_tree(std::span<const TreeEvent> events) {
  TreeBuilder builder;
  for (const auto& event : events) {
    if (event.kind == TreeEvent::Kind::kOpen) {
      builder.open(std::string_view(event.label));
    } else {
      builder.close();
    }
  }
  return std::move(builder).finish();
}

std::vector<TreeEvent> preorder_events(const LabelledTree& tree) {
  std::vector<TreeEvent> events;
  events.reserve(2 * tree.size());
  // Closing events for the nodes on the current root path are emitted when
  // the next pre-order node is not their descendant.
  std::vector<NodeId> path;
  for (NodeId v = 0; v < tree.size(); ++v) {
    const NodeId p = tree.parent(v);
    while (!path.empty() && path.back() != p) {
      events.push_back(TreeEvent::close());
      path.pop_back();
    }
    events.push_back(TreeEvent::open(tree.label_name(v)));
    path.push_back(v);
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    events.push_back(TreeEvent::close());
  }
  return events;
}

TreeStats tree_stats(const LabelledTree& tree) {
  TreeStats stats;
  stats.nodes = tree.size();
  stats.distinct_labels = tree.label_table().size();
  std::vector<std::uint32_t> depth(tree.size(), 1);
  for (NodeId v = 1; v < tree.size(); ++v) {
    depth[v] = depth[tree.parent(v)] + 1;
  }
  if (!depth.empty()) stats.height = *std::max_element(depth.begin(), depth.end());
  return stats;
}

std::uint64_t succinct_size_bits(const LabelledTree& tree) {
  const std::uint64_t n = tree.size();
  const std::uint64_t labels = tree.label_table().size();
  const std::uint64_t index_bits =
      labels <= 2 ? 1 : std::bit_width(labels - 1);
  const std::uint64_t string_bytes = tree.label_table().byte_size() + labels;
  return 2 * n + n * index_bits + 8 * string_bytes;
}

LabelledTree read_event_text(std::istream& in) {
  TreeBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line == "close") {
      builder.close();
    } else if (line.starts_with("open ")) {
      builder.open(std::string_view(line).substr(5));
    } else {
      throw TreeError("line " + std::to_string(line_no) +
                      ": expected 'open <label>' or 'close'");
    }
  }
  return std::move(builder).finish();
}

void write_event_text(std::ostream& out, const LabelledTree& tree) {
  for (const auto& event : preorder_events(tree)) {
    if (event.kind == TreeEvent::Kind::kOpen) {
      out << "open " << event.label << '\n';
    } else {
      out << "close\n";
    }
  }
}

}  // namespace toptree
