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
#include <random>
#include <span>
#include <vector>

#include "toptree/top_tree.hpp"
#include "toptree/tree.hpp"

namespace toptree {

// Parenthesis words use true for an opening (up) step.
//
// Maps any word with equally many up and down steps to a balanced word. Each
// balanced word of length 2m has exactly m + 1 preimages, so a uniformly
// shuffled input yields a uniformly random balanced word.
std::vector<bool> balance_word(const std::vector<bool>& word);

// Uniformly random balanced word with `pairs` up and `pairs` down steps.
std::vector<bool> random_balanced_word(std::size_t pairs, std::mt19937_64& rng);

// The word describes the forest below an extra root; node i in pre-order gets
// labels[i]. Throws TreeError on unbalanced words or a label count other
// than pairs + 1.
LabelledTree tree_from_word(const std::vector<bool>& word,
                            std::span<const std::uint32_t> labels);

// Label names used by random trees: "s0", "s1", ...
std::string symbol_name(std::uint32_t symbol);

// Uniform over ordered trees with n nodes; labels i.i.d. uniform over
// sigma symbols. Throws std::invalid_argument when n or sigma is zero.
LabelledTree random_tree(std::size_t n, std::uint32_t sigma, std::uint64_t seed);

// Seed of the generator used for one trial of the ratio experiment.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial);

// n / (edges * log_b n) with b = max(2, sigma).
double compression_ratio(double edges, std::size_t n, std::uint32_t sigma);

struct RatioRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_edges = 0;
  double mean_nodes = 0;
  double ratio = 0;         // compression_ratio(mean_edges, n, sigma)
  double ratio_stddev = 0;  // sample deviation of the per-trial ratios
};

struct RatioOptions {
  std::uint32_t sigma = 2;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  CombinerKind combiner = CombinerKind::kClassic;
  double min_merge_ratio = kDefaultMinMergeRatio;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Throws std::invalid_argument for sizes below 2 or zero trials. Rows do not
// depend on the thread count.
std::vector<RatioRow> ratio_experiment(std::span<const std::size_t> sizes,
                                       const RatioOptions& options);

}  // namespace toptree
