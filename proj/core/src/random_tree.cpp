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

#include "toptree/random_tree.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "toptree/hash.hpp"
#include "toptree/top_dag.hpp"

namespace toptree {

std::vector<bool> balance_word(const std::vector<bool>& word) {
  std::vector<bool> out;
  out.reserve(word.size());
  // Tails of negative factors, emitted after everything that follows them.
  std::vector<std::vector<bool>> tails;
  std::size_t start = 0;
  std::int64_t height = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    height += word[i] ? 1 : -1;
    if (height != 0) continue;
    if (word[start]) {
      out.insert(out.end(), word.begin() + static_cast<std::ptrdiff_t>(start),
                 word.begin() + static_cast<std::ptrdiff_t>(i + 1));
    } else {
      // Factor ")t(" becomes "(" rest ")" flip(t).
      out.push_back(true);
      std::vector<bool> tail{false};
      for (std::size_t j = start + 1; j < i; ++j) tail.push_back(!word[j]);
      tails.push_back(std::move(tail));
    }
    start = i + 1;
  }
  if (height != 0) {
    throw std::invalid_argument("balance_word: unequal up and down steps");
  }
  for (auto it = tails.rbegin(); it != tails.rend(); ++it) {
    out.insert(out.end(), it->begin(), it->end());
  }
  return out;
}

std::vector<bool> random_balanced_word(std::size_t pairs, std::mt19937_64& rng) {
  std::vector<bool> word(2 * pairs, false);
  std::fill(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pairs), true);
  std::shuffle(word.begin(), word.end(), rng);
  return balance_word(word);
}

std::string symbol_name(std::uint32_t symbol) {
  return "s" + std::to_string(symbol);
}

LabelledTree tree_from_word(const std::vector<bool>& word,
                            std::span<const std::uint32_t> labels) {
  if (labels.size() != word.size() / 2 + 1 || word.size() % 2 != 0) {
    throw TreeError("tree_from_word: label count does not match word");
  }
  TreeBuilder builder;
  builder.reserve(labels.size());
  std::size_t next = 0;
  builder.open(symbol_name(labels[next++]));
  for (bool up : word) {
    if (up) {
      builder.open(symbol_name(labels[next++]));
    } else {
      if (builder.depth() <= 1) throw TreeError("tree_from_word: unbalanced word");
      builder.close();
    }
  }
  builder.close();
  return std::move(builder).finish();
}

LabelledTree random_tree(std::size_t n, std::uint32_t sigma, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_tree: n must be positive");
  if (sigma == 0) throw std::invalid_argument("random_tree: sigma must be positive");
  std::mt19937_64 rng(seed);
  const std::vector<bool> word = random_balanced_word(n - 1, rng);
  std::uniform_int_distribution<std::uint32_t> symbol(0, sigma - 1);
  std::vector<std::uint32_t> labels(n);
  for (auto& l : labels) l = symbol(rng);
  return tree_from_word(word, labels);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial) {
  return hash_combine(hash_combine(mix64(seed), n), trial);
}

double compression_ratio(double edges, std::size_t n, std::uint32_t sigma) {
  const double base = std::max(2.0, static_cast<double>(sigma));
  const double log_n = std::log(static_cast<double>(n)) / std::log(base);
  return static_cast<double>(n) / (edges * log_n);
}

std::vector<RatioRow> ratio_experiment(std::span<const std::size_t> sizes,
                                       const RatioOptions& options) {
  if (options.trials == 0) {
    throw std::invalid_argument("ratio_experiment: trials must be positive");
  }
  for (std::size_t n : sizes) {
    if (n < 2) throw std::invalid_argument("ratio_experiment: sizes must be >= 2");
  }
  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, options.trials));

  BuildOptions build;
  build.min_merge_ratio = options.min_merge_ratio;
  build.keep_top_tree = false;

  std::vector<RatioRow> rows;
  for (std::size_t n : sizes) {
    std::vector<DagStats> stats(options.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t; (t = next.fetch_add(1)) < options.trials;) {
        const LabelledTree tree =
            random_tree(n, options.sigma, trial_seed(options.seed, n, t));
        stats[t] = dag_stats(build_top_tree(tree, options.combiner, build).dag);
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    RatioRow row;
    row.n = n;
    row.trials = options.trials;
    for (const DagStats& s : stats) {
      row.mean_edges += static_cast<double>(s.edges);
      row.mean_nodes += static_cast<double>(s.nodes);
    }
    row.mean_edges /= static_cast<double>(options.trials);
    row.mean_nodes /= static_cast<double>(options.trials);
    row.ratio = compression_ratio(row.mean_edges, n, options.sigma);
    if (options.trials > 1) {
      double sum = 0;
      for (const DagStats& s : stats) {
        const double d =
            compression_ratio(static_cast<double>(s.edges), n, options.sigma) - row.ratio;
        sum += d * d;
      }
      row.ratio_stddev = std::sqrt(sum / static_cast<double>(options.trials - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace toptree
