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

#include <benchmark/benchmark.h>

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "toptree/codec.hpp"
#include "toptree/nav.hpp"
#include "toptree/random_tree.hpp"
#include "toptree/top_tree.hpp"

namespace toptree {
namespace {

const LabelledTree& sample_tree(std::size_t n) {
  static std::vector<std::pair<std::size_t, LabelledTree>> cache;
  for (const auto& [size, tree] : cache) {
    if (size == n) return tree;
  }
  cache.emplace_back(n, random_tree(n, 4, 0xbe7c4ULL + n));
  return cache.back().second;
}

void BM_Build(benchmark::State& state, CombinerKind kind) {
  const LabelledTree& tree = sample_tree(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    BuildResult built = build_top_tree(tree, kind, {.keep_top_tree = false});
    benchmark::DoNotOptimize(built.dag.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Build, classic, CombinerKind::kClassic)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK_CAPTURE(BM_Build, repair, CombinerKind::kRepair)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_Encode(benchmark::State& state) {
  const LabelledTree& tree = sample_tree(static_cast<std::size_t>(state.range(0)));
  const TopDag dag = build_top_tree(tree, CombinerKind::kClassic).dag;
  for (auto _ : state) {
    std::vector<std::uint8_t> bytes = encode_file(dag, tree.label_table());
    benchmark::DoNotOptimize(bytes.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Encode)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_Decode(benchmark::State& state) {
  const LabelledTree& tree = sample_tree(static_cast<std::size_t>(state.range(0)));
  const std::vector<std::uint8_t> bytes =
      encode_file(build_top_tree(tree, CombinerKind::kClassic).dag, tree.label_table());
  for (auto _ : state) {
    DecodedFile file = decode_file(bytes);
    benchmark::DoNotOptimize(file.dag.size());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_Decode)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_Decompress(benchmark::State& state) {
  const LabelledTree& tree = sample_tree(static_cast<std::size_t>(state.range(0)));
  const TopDag dag = build_top_tree(tree, CombinerKind::kClassic).dag;
  for (auto _ : state) {
    LabelledTree out = decompress(dag, tree.label_table());
    benchmark::DoNotOptimize(out.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decompress)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_Navigate(benchmark::State& state) {
  const LabelledTree& tree = sample_tree(static_cast<std::size_t>(state.range(0)));
  const TopDag dag = build_top_tree(tree, CombinerKind::kClassic).dag;
  std::mt19937_64 rng(7);
  NavCursor cursor = NavCursor::at_root(dag);
  for (auto _ : state) {
    bool moved = false;
    switch (rng() % 3) {
      case 0: moved = cursor.first_child(); break;
      case 1: moved = cursor.next_sibling(); break;
      default: moved = cursor.parent(); break;
    }
    benchmark::DoNotOptimize(moved);
  }
}
BENCHMARK(BM_Navigate)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

}  // namespace
}  // namespace toptree

BENCHMARK_MAIN();
