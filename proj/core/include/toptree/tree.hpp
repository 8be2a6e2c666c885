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
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace toptree {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Distinct byte-string labels, numbered densely from 0 in insertion order.
// Labels never contain a zero byte; the encoded label string uses it as the
// separator.
class LabelTable {
 public:
  LabelTable() = default;

  // Throws TreeError on duplicates or embedded zero bytes.
  static LabelTable from_labels(std::vector<std::string> labels);

  // Returns the existing id when the label is already present.
  LabelId intern(std::string_view label);
  std::optional<LabelId> find(std::string_view label) const;

  const std::string& operator[](LabelId id) const { return labels_[id]; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::span<const std::string> labels() const { return labels_; }

  // Total bytes over all labels, separators not included.
  std::size_t byte_size() const;

  friend bool operator==(const LabelTable& a, const LabelTable& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, LabelId> index_;
};

struct TreeEvent {
  enum class Kind : std::uint8_t { kOpen, kClose };

  Kind kind = Kind::kClose;
  std::string label;  // empty for kClose

  static TreeEvent open(std::string_view label) {
    return {Kind::kOpen, std::string(label)};
  }
  static TreeEvent close() { return {Kind::kClose, {}}; }

  friend bool operator==(const TreeEvent&, const TreeEvent&) = default;
};

// Immutable ordered labelled tree. Node ids are assigned in pre-order, so the
// root is 0 and every child has a larger id than its parent.
class LabelledTree {
 public:
  LabelledTree() = default;

  std::size_t size() const { return label_.size(); }
  bool empty() const { return label_.empty(); }
  NodeId root() const { return 0; }

  LabelId label(NodeId v) const { return label_[v]; }
  const std::string& label_name(NodeId v) const { return labels_[label_[v]]; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  std::span<const NodeId> children(NodeId v) const {
    return {child_list_.data() + child_begin_[v],
            child_list_.data() + child_begin_[v + 1]};
  }
  std::size_t child_count(NodeId v) const {
    return child_begin_[v + 1] - child_begin_[v];
  }
  bool is_leaf(NodeId v) const { return child_count(v) == 0; }

  std::span<const LabelId> node_labels() const { return label_; }
  const LabelTable& label_table() const { return labels_; }

  friend bool operator==(const LabelledTree& a, const LabelledTree& b) {
    return a.label_ == b.label_ && a.parent_ == b.parent_ &&
           a.labels_ == b.labels_;
  }

 private:
  friend class TreeBuilder;

  LabelTable labels_;
  std::vector<LabelId> label_;
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> child_begin_;  // size() + 1 offsets
  std::vector<NodeId> child_list_;
};

// Incremental pre-order construction from open/close events.
//
// The default-constructed builder interns label strings in first-seen order.
// A builder seeded with a LabelTable accepts label ids directly and keeps the
// table unchanged.
class TreeBuilder {
 public:
  TreeBuilder() = default;
  explicit TreeBuilder(LabelTable labels);

  void reserve(std::size_t nodes);

  void open(std::string_view label);
  void open(LabelId label);
  void close();

  // Label of the innermost open node; throws when nothing is open.
  const std::string& open_label() const;
  std::size_t depth() const { return stack_.size(); }
  bool complete() const { return !label_.empty() && stack_.empty(); }

  // Throws TreeError when the events are unbalanced or empty.
  LabelledTree finish() &&;

 private:
  void push(LabelId label);

  LabelTable labels_;
  bool fixed_labels_ = false;
  std::vector<LabelId> label_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> stack_;
};

struct TreeStats {
  std::size_t nodes = 0;
  std::size_t height = 0;  // nodes on the longest root-to-leaf path
  std::size_t distinct_labels = 0;

  friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

LabelledTree build_tree(std::span<const TreeEvent> events);
std::vector<TreeEvent> preorder_events(const LabelledTree& tree);
TreeStats tree_stats(const LabelledTree& tree);

// Size of the parenthesis-bitstring baseline: 2 bits per node, one
// fixed-width label index per node, and the zero-terminated label strings.
std::uint64_t succinct_size_bits(const LabelledTree& tree);
inline std::uint64_t succinct_size_bytes(const LabelledTree& tree) {
  return (succinct_size_bits(tree) + 7) / 8;
}

// Line-oriented event text: "open <label>" or "close", one per line. Blank
// lines are ignored.
LabelledTree read_event_text(std::istream& in);
void write_event_text(std::ostream& out, const LabelledTree& tree);

}  // namespace toptree
