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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toptree/top_dag.hpp"
#include "toptree/top_tree.hpp"
#include "toptree/tree.hpp"

namespace toptree::testing {

// Plain pointer tree rebuilt from open/close events without touching the
// library's tree representation.
struct PointerTree {
  struct Node {
    std::string label;
    std::size_t parent = SIZE_MAX;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;  // nodes[0] is the root

  static PointerTree from_events(const std::vector<TreeEvent>& events);
  static PointerTree from_tree(const LabelledTree& tree);
  std::size_t height() const;
};

// Cursor over a PointerTree with the same operation set as NavCursor.
class OracleCursor {
 public:
  explicit OracleCursor(const PointerTree& tree) : tree_(&tree) {}

  const std::string& label() const { return tree_->nodes[at_].label; }
  std::size_t node() const { return at_; }
  bool is_leaf() const { return tree_->nodes[at_].children.empty(); }
  bool is_last_child() const;
  bool first_child();
  bool next_sibling();
  bool parent();

 private:
  const PointerTree* tree_;
  std::size_t at_ = 0;
};

// Records the events of a tree by walking it recursively.
std::vector<TreeEvent> record_events(const PointerTree& tree);

// Random balanced event sequence with `nodes` opens; labels drawn from
// `alphabet` names "l0".."l{alphabet-1}".
std::vector<TreeEvent> random_events(std::size_t nodes, std::size_t alphabet,
                                     std::mt19937_64& rng);

// Tree shapes produced without the library's random tree generator.
enum class Shape { kRecursive, kChain, kStar, kCaterpillar, kBushy, kRepetitive };
LabelledTree generate_tree(Shape shape, std::size_t nodes, std::size_t alphabet,
                           std::mt19937_64& rng);
// A mix of all shapes.
LabelledTree any_tree(std::size_t max_nodes, std::mt19937_64& rng);

// Checks that the DAG unfolds to exactly the given top tree.
bool dag_unfolds_to(const TopDag& dag, const TopTree& top);

// Optimal prefix-code cost sum(count * length) computed by repeated merging
// of the two lightest weights in a sorted list.
std::uint64_t optimal_code_cost(std::vector<std::uint64_t> weights);

// All ordered trees with n nodes as parenthesis strings of their child
// forests, e.g. "()()" for a root with two leaf children.
std::vector<std::string> enumerate_shapes(std::size_t n);
std::string shape_of(const LabelledTree& tree);

// Nested-element XML fixtures shipped in tests/data.
std::vector<std::string> fixture_paths();

}  // namespace toptree::testing
