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

#include "toptree/top_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "toptree/repair_combiner.hpp"

namespace toptree {

std::size_t standard_horizontal_step(const AuxTree& aux, const MergeFn& merge) {
  std::size_t merges = 0;
  for (NodeId v : aux.live_nodes()) {
    if (!aux.alive(v) || aux.child_count(v) < 2) continue;
    NodeId c = aux.first_child(v);
    while (c != kNoNode) {
      const NodeId n = aux.next_sibling(c);
      if (n == kNoNode) break;
      if (aux.horizontally_mergeable(c, n)) {
        const NodeId after = aux.next_sibling(n);
        merge(c, n);
        ++merges;
        c = after;
      } else {
        c = n;
      }
    }
  }
  return merges;
}

std::size_t vertical_step(AuxTree& aux) {
  std::size_t merges = 0;
  // Pre-order visits the upper edge of every pair first, so the greedy
  // pairing runs top-down along each single-child path.
  for (NodeId v : aux.live_nodes()) {
    if (aux.vertically_mergeable(v)) {
      aux.merge_vertical(v);
      ++merges;
    }
  }
  return merges;
}

std::unique_ptr<HorizontalCombiner> make_combiner(CombinerKind kind) {
  switch (kind) {
    case CombinerKind::kClassic:
      return std::make_unique<ClassicCombiner>();
    case CombinerKind::kRepair:
      return std::make_unique<RepairCombiner>();
  }
  return nullptr;
}

std::optional<CombinerKind> parse_combiner_kind(std::string_view name) {
  if (name == "classic") return CombinerKind::kClassic;
  if (name == "repair") return CombinerKind::kRepair;
  return std::nullopt;
}

std::string_view combiner_name(CombinerKind kind) {
  return kind == CombinerKind::kClassic ? "classic" : "repair";
}

BuildResult build_top_tree(const LabelledTree& tree,
                           HorizontalCombiner& combiner,
                           const BuildOptions& options) {
  if (tree.empty()) throw std::invalid_argument("build_top_tree: empty tree");
  const std::size_t n = tree.size();
  const std::uint64_t seed = options.hash_seed;

  BuildResult result;
  TopTree& top = result.top_tree;
  TopDag& dag = result.dag;

  for (LabelId label = 0; label < tree.label_table().size(); ++label) {
    dag.intern_leaf(label);
  }

  std::vector<Cluster> leaves(n);
  if (options.keep_top_tree) top.nodes.reserve(2 * n - 1);
  for (NodeId v = 0; v < n; ++v) {
    const LabelId label = tree.label(v);
    Cluster& c = leaves[v];
    if (options.keep_top_tree) {
      c.top_node = v;
      top.nodes.push_back(TopTreeNode{true, MergeType::kA, label, 0});
    }
    c.dag_node = label;
    c.hash = leaf_cluster_hash(seed, label);
  }
  top.leaf_count = n;

  auto factory = [&](MergeType type, const Cluster& a, const Cluster& b) {
    Cluster c;
    if (options.keep_top_tree) {
      c.top_node = static_cast<std::uint32_t>(top.nodes.size());
      top.nodes.push_back(TopTreeNode{false, type, a.top_node, b.top_node});
    }
    c.dag_node = dag.intern_inner(type, a.dag_node, b.dag_node);
    c.hash = inner_cluster_hash(seed, type, a.hash, b.hash);
    c.height = 1 + std::max(a.height, b.height);
    return c;
  };

  AuxTree aux(tree, std::move(leaves), factory);
  const MergeFn merge = [&aux](NodeId left, NodeId right) {
    aux.merge_horizontal(left, right);
  };

  while (aux.edge_count() > 1) {
    aux.begin_iteration();
    IterationStats stats;
    stats.edges_before = aux.edge_count();
    combiner.horizontal_step(aux, merge);
    stats.combiner_merges = stats.edges_before - aux.edge_count();
    const double ratio = static_cast<double>(stats.edges_before) /
                         static_cast<double>(aux.edge_count());
    if (ratio < options.min_merge_ratio) {
      stats.fallback = true;
      const std::size_t before = aux.edge_count();
      standard_horizontal_step(aux, merge);
      stats.fallback_merges = before - aux.edge_count();
    }
    const std::size_t before_vertical = aux.edge_count();
    vertical_step(aux);
    stats.vertical_merges = before_vertical - aux.edge_count();
    stats.edges_after = aux.edge_count();
    if (stats.edges_after == stats.edges_before) {
      throw std::logic_error("build_top_tree: iteration made no progress");
    }
    result.iterations.push_back(stats);
  }

  const Cluster root = aux.edge_count() == 1 ? aux.merge_root()
                                             : aux.cluster(aux.root());
  top.root = options.keep_top_tree ? root.top_node : 0;
  top.height = root.height;
  top.iterations = result.iterations.size();
  result.height = root.height;
  dag.set_root(root.dag_node);
  return result;
}

BuildResult build_top_tree(const LabelledTree& tree, CombinerKind kind,
                           const BuildOptions& options) {
  auto combiner = make_combiner(kind);
  return build_top_tree(tree, *combiner, options);
}

}  // namespace toptree
