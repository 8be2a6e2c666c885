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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "oracles.hpp"
#include "toptree/codec.hpp"
#include "toptree/nav.hpp"
#include "toptree/random_tree.hpp"
#include "toptree/repair_combiner.hpp"
#include "toptree/top_tree.hpp"
#include "toptree/xml.hpp"

namespace toptree {
namespace {

namespace fs = std::filesystem;

constexpr double kRoundTripSeconds = 60.0;
constexpr double kNavSeconds = 60.0;
constexpr double kRatioSeconds = 600.0;
constexpr double kRatioLow = 0.085;
constexpr double kRatioHigh = 0.095;
constexpr double kSlopeTolerance = 0.002;
constexpr std::size_t kRatioTrials = 100;
constexpr double kRepairWinShare = 0.6;
constexpr double kNasaClassicBytes = 42077.0;
constexpr double kNasaClassicTolerance = 0.25;
constexpr double kNasaSuccinctBytes = 341161.0;
constexpr double kNasaSuccinctTolerance = 0.02;
constexpr std::size_t kFuzzFiles = 10000;

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::uint8_t> compress(const LabelledTree& tree, CombinerKind kind) {
  const BuildResult built = build_top_tree(tree, kind, {.keep_top_tree = false});
  return encode_file(built.dag, tree.label_table());
}

LabelledTree round_trip(const LabelledTree& tree, CombinerKind kind) {
  const std::vector<std::uint8_t> bytes = compress(tree, kind);
  const DecodedFile file = decode_file(bytes);
  return decompress(file.dag, file.labels);
}

Outcome round_trip_criterion() {
  const auto start = Clock::now();
  std::mt19937_64 rng(0x5eed0001);
  const std::uint32_t sigmas[] = {1, 2, 16};
  std::size_t failures = 0;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10000)(rng);
    const std::uint32_t sigma = sigmas[i % 3];
    const LabelledTree tree = random_tree(n, sigma, rng());
    const CombinerKind kind = i % 2 == 0 ? CombinerKind::kClassic : CombinerKind::kRepair;
    if (!(round_trip(tree, kind) == tree)) ++failures;
    ++checked;
  }
  for (const std::string& path : testing::fixture_paths()) {
    const LabelledTree tree = parse_xml_file(path);
    for (CombinerKind kind : {CombinerKind::kClassic, CombinerKind::kRepair}) {
      if (!(round_trip(tree, kind) == tree)) ++failures;
      ++checked;
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << checked << " round trips, " << failures << " mismatches, " << elapsed << " s";
  const bool ok = failures == 0 && testing::fixture_paths().size() >= 10 &&
                  elapsed < kRoundTripSeconds;
  return {ok ? Verdict::kPass : Verdict::kFail, detail.str()};
}

Outcome navigation_criterion() {
  const auto start = Clock::now();
  std::mt19937_64 rng(0x5eed0002);
  std::size_t ops = 0;
  std::size_t mismatches = 0;
  std::size_t trees = 0;
  while (ops < 100000) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10000)(rng);
    const LabelledTree tree = trees % 2 == 0
                                  ? random_tree(n, 1 + static_cast<std::uint32_t>(rng() % 16), rng())
                                  : testing::any_tree(n, rng);
    ++trees;
    const BuildResult built = build_top_tree(
        tree, trees % 3 == 0 ? CombinerKind::kRepair : CombinerKind::kClassic,
        {.keep_top_tree = false});
    const testing::PointerTree oracle_tree = testing::PointerTree::from_tree(tree);
    testing::OracleCursor oracle(oracle_tree);
    NavCursor cursor = NavCursor::at_root(built.dag);
    const LabelTable& labels = tree.label_table();
    for (int step = 0; step < 2000 && ops < 100000; ++step, ++ops) {
      bool expected = true;
      bool actual = true;
      switch (rng() % 6) {
        case 0:
          expected = oracle.first_child();
          actual = cursor.first_child();
          break;
        case 1:
          expected = oracle.next_sibling();
          actual = cursor.next_sibling();
          break;
        case 2:
          expected = oracle.parent();
          actual = cursor.parent();
          break;
        case 3:
          expected = oracle.is_leaf();
          actual = cursor.is_leaf();
          break;
        case 4:
          expected = oracle.is_last_child();
          actual = cursor.is_last_child();
          break;
        default:
          break;
      }
      if (expected != actual || labels[cursor.label()] != oracle.label()) {
        ++mismatches;
        break;
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << ops << " operations over " << trees << " trees, " << mismatches
         << " mismatches, " << elapsed << " s";
  const bool ok = mismatches == 0 && elapsed < kNavSeconds;
  return {ok ? Verdict::kPass : Verdict::kFail, detail.str()};
}

Outcome height_criterion() {
  const auto start = Clock::now();
  std::mt19937_64 rng(0x5eed0003);
  const double log_base = std::log(8.0 / 7.0);
  std::vector<std::size_t> sizes;
  for (int i = 0; i < 150; ++i) {
    const double e = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
    sizes.push_back(static_cast<std::size_t>(std::pow(10.0, e)));
  }
  sizes.insert(sizes.end(), {300000, 1000000, 1000000});
  std::size_t height_violations = 0;
  std::size_t iteration_violations = 0;
  std::size_t built_count = 0;
  std::size_t worst_slack = SIZE_MAX;
  auto check = [&](const LabelledTree& tree, CombinerKind kind) {
    const BuildResult built = build_top_tree(tree, kind, {.keep_top_tree = false});
    ++built_count;
    const double leaves = static_cast<double>(tree.size());
    const auto height_bound =
        static_cast<std::size_t>(std::floor(std::log(2.0 * leaves) / log_base));
    if (built.height > height_bound) ++height_violations;
    worst_slack = std::min(worst_slack, height_bound - std::min(height_bound, built.height));
    if (kind == CombinerKind::kClassic) {
      const auto iteration_bound = static_cast<std::size_t>(
                                       std::ceil(std::log(leaves) / log_base)) +
                                   1;
      if (built.iterations.size() > iteration_bound) ++iteration_violations;
    }
  };
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t n = std::max<std::size_t>(1, sizes[i]);
    const LabelledTree tree = random_tree(n, 1 + static_cast<std::uint32_t>(i % 4), rng());
    check(tree, CombinerKind::kClassic);
    if (n <= 300000) check(tree, CombinerKind::kRepair);
  }
  for (int i = 0; i < 60; ++i) {
    const LabelledTree tree = testing::any_tree(20000, rng);
    check(tree, CombinerKind::kClassic);
    check(tree, CombinerKind::kRepair);
  }
  std::ostringstream detail;
  detail << built_count << " top trees, " << height_violations << " height and "
         << iteration_violations << " iteration violations, min slack " << worst_slack
         << ", " << seconds_since(start) << " s";
  const bool ok = height_violations == 0 && iteration_violations == 0;
  return {ok ? Verdict::kPass : Verdict::kFail, detail.str()};
}

Outcome ratio_criterion() {
  const auto start = Clock::now();
  std::vector<std::size_t> sizes;
  for (int e = 10; e <= 18; ++e) sizes.push_back(std::size_t{1} << e);
  RatioOptions options;
  options.sigma = 2;
  options.trials = kRatioTrials;
  options.seed = 1;
  const std::vector<RatioRow> rows = ratio_experiment(sizes, options);
  bool in_band = true;
  std::ostringstream detail;
  detail.precision(4);
  detail << "ratios";
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double x = static_cast<double>(i);
    const double y = rows[i].ratio;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    in_band = in_band && y >= kRatioLow && y <= kRatioHigh;
    detail << ' ' << y;
  }
  const double k = static_cast<double>(rows.size());
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double elapsed = seconds_since(start);
  detail << ", slope per doubling " << slope << ", " << elapsed << " s";
  const bool ok = in_band && std::abs(slope) <= kSlopeTolerance && elapsed < kRatioSeconds;
  return {ok ? Verdict::kPass : Verdict::kFail, detail.str()};
}

std::vector<LabelledTree> repair_corpus() {
  std::vector<LabelledTree> corpus;
  std::mt19937_64 rng(0x5eed0005);
  for (int i = 0; i < 20; ++i) {
    const std::size_t nodes = 2000 + static_cast<std::size_t>(rng() % 30000);
    const std::size_t alphabet = 3 + static_cast<std::size_t>(rng() % 12);
    corpus.push_back(testing::generate_tree(testing::Shape::kRepetitive, nodes, alphabet, rng));
  }
  return corpus;
}

std::string nasa_path() {
  if (const char* env = std::getenv("TOPTREE_NASA_XML"); env && *env) return env;
  return std::string(TOPTREE_TEST_DATA_DIR) + "/nasa.xml";
}

Outcome repair_criterion() {
  std::vector<LabelledTree> corpus = repair_corpus();
  if (fs::exists(nasa_path())) corpus.push_back(parse_xml_file(nasa_path()));
  std::size_t wins = 0;
  double classic_total = 0;
  double repair_total = 0;
  for (const LabelledTree& tree : corpus) {
    const std::size_t classic = compress(tree, CombinerKind::kClassic).size();
    const std::size_t repair = compress(tree, CombinerKind::kRepair).size();
    if (repair <= classic) ++wins;
    classic_total += static_cast<double>(classic);
    repair_total += static_cast<double>(repair);
  }
  const double share = static_cast<double>(wins) / static_cast<double>(corpus.size());
  std::ostringstream detail;
  detail.precision(4);
  detail << "repair <= classic on " << wins << "/" << corpus.size()
         << " files, mean size change " << 100.0 * (repair_total / classic_total - 1.0) << "%";
  const bool ok = share >= kRepairWinShare && repair_total < classic_total;
  return {ok ? Verdict::kPass : Verdict::kFail, detail.str()};
}

Outcome nasa_criterion() {
  const std::string path = nasa_path();
  if (!fs::exists(path)) return {Verdict::kSkip, "nasa.xml not supplied"};
  const LabelledTree tree = parse_xml_file(path);
  const double classic = static_cast<double>(compress(tree, CombinerKind::kClassic).size());
  const double succinct = static_cast<double>(succinct_size_bytes(tree));
  std::ostringstream detail;
  detail << "classic " << classic << " bytes, succinct " << succinct << " bytes";
  const bool ok =
      std::abs(classic - kNasaClassicBytes) <= kNasaClassicTolerance * kNasaClassicBytes &&
      std::abs(succinct - kNasaSuccinctBytes) <= kNasaSuccinctTolerance * kNasaSuccinctBytes;
  return {ok ? Verdict::kPass : Verdict::kFail, detail.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism_criterion() {
  const fs::path dir =
      fs::temp_directory_path() / ("toptree_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::mt19937_64 rng(0x5eed0007);
  {
    std::ofstream(dir / "random.xml") << to_nested_xml(random_tree(50000, 4, rng()));
    std::ofstream(dir / "repetitive.xml")
        << to_nested_xml(testing::generate_tree(testing::Shape::kRepetitive, 20000, 5, rng));
  }
  std::vector<std::string> inputs = testing::fixture_paths();
  inputs.push_back((dir / "random.xml").string());
  inputs.push_back((dir / "repetitive.xml").string());
  std::size_t runs = 0;
  std::size_t differences = 0;
  std::ostringstream sink;
  for (const std::string& input : inputs) {
    for (const char* combiner : {"classic", "repair"}) {
      std::string outputs[2];
      for (int r = 0; r < 2; ++r) {
        const fs::path out = dir / ("out" + std::to_string(r) + ".ttc");
        const int rc = cli::run({"toptree", "compress", input, out.string(), "--combiner",
                                 combiner, "--seed", "42"},
                                sink, sink);
        outputs[r] = rc == cli::kExitOk ? slurp(out) : std::string();
        ++runs;
      }
      if (outputs[0].empty() || outputs[0] != outputs[1]) ++differences;
    }
  }
  fs::remove_all(dir);
  std::ostringstream detail;
  detail << runs << " compress runs, " << differences << " differing pairs";
  return {differences == 0 ? Verdict::kPass : Verdict::kFail, detail.str()};
}

Outcome fuzz_criterion() {
  std::mt19937_64 rng(0x5eed0008);
  std::vector<std::vector<std::uint8_t>> seeds;
  for (std::size_t n : {1, 2, 5, 40, 300, 3000}) {
    seeds.push_back(compress(random_tree(n, 3, rng()), CombinerKind::kClassic));
  }
  seeds.push_back(compress(testing::generate_tree(testing::Shape::kRepetitive, 2000, 4, rng),
                           CombinerKind::kRepair));
  std::size_t rejected = 0;
  std::size_t accepted = 0;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < kFuzzFiles; ++i) {
    std::vector<std::uint8_t> bytes = seeds[rng() % seeds.size()];
    switch (rng() % 4) {
      case 0:
        bytes.resize(rng() % bytes.size());
        break;
      case 1:
        for (int k = 1 + static_cast<int>(rng() % 4); k > 0; --k) {
          bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        }
        break;
      case 2:
        bytes[rng() % bytes.size()] = static_cast<std::uint8_t>(rng());
        break;
      default:
        bytes.insert(bytes.begin() + static_cast<std::ptrdiff_t>(rng() % bytes.size()),
                     static_cast<std::uint8_t>(rng()));
        break;
    }
    try {
      const DecodedFile file = decode_file(bytes);
      const std::vector<std::uint8_t> again = encode_file(file.dag, file.labels);
      const DecodedFile reread = decode_file(again);
      if (!(reread.dag == file.dag) || !(reread.labels == file.labels) ||
          encode_file(reread.dag, reread.labels) != again) {
        ++bad;
      }
      ++accepted;
    } catch (const FormatError&) {
      ++rejected;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  std::ostringstream detail;
  detail << kFuzzFiles << " inputs, " << rejected << " rejected, " << accepted
         << " accepted, " << bad << " unstructured failures";
  return {bad == 0 ? Verdict::kPass : Verdict::kFail, detail.str()};
}

}  // namespace
}  // namespace toptree

int main() {
  using toptree::Outcome;
  using toptree::Verdict;
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {"round-trip", toptree::round_trip_criterion},
      {"navigation-oracle", toptree::navigation_criterion},
      {"height-bound", toptree::height_criterion},
      {"random-tree-ratio", toptree::ratio_criterion},
      {"repair-benefit", toptree::repair_criterion},
      {"nasa-spot-check", toptree::nasa_criterion},
      {"determinism", toptree::determinism_criterion},
      {"fuzz-robustness", toptree::fuzz_criterion},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = outcome.verdict == Verdict::kPass   ? "PASS"
                      : outcome.verdict == Verdict::kSkip ? "SKIP"
                                                          : "FAIL";
    if (outcome.verdict == Verdict::kFail) ++failures;
    std::printf("%s %d %s: %s\n", tag, index, c.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
