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

#include "toptree/huffman.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "oracles.hpp"

namespace toptree {
namespace {

double kraft_sum(const HuffmanCode& code) {
  double sum = 0;
  for (const auto& e : code.entries()) sum += std::ldexp(1.0, -static_cast<int>(e.length));
  return sum;
}

TEST(HuffmanTest, TwoSymbols) {
  const std::vector<SymbolCount> f{{'a', 1}, {'b', 1}};
  const HuffmanCode code = HuffmanCode::build(f);
  EXPECT_EQ(code.length('a'), 1u);
  EXPECT_EQ(code.length('b'), 1u);
}

TEST(HuffmanTest, SkewedThreeSymbols) {
  const std::vector<SymbolCount> f{{'a', 5}, {'b', 2}, {'c', 1}};
  const HuffmanCode code = HuffmanCode::build(f);
  EXPECT_EQ(code.length('a'), 1u);
  EXPECT_EQ(code.length('b'), 2u);
  EXPECT_EQ(code.length('c'), 2u);
  // Canonical assignment: 0, 10, 11.
  EXPECT_EQ(code.entry('a').code, 0b0u);
  EXPECT_EQ(code.entry('b').code, 0b10u);
  EXPECT_EQ(code.entry('c').code, 0b11u);
}

TEST(HuffmanTest, SingleSymbolGetsOneBit) {
  const std::vector<SymbolCount> f{{42, 7}};
  const HuffmanCode code = HuffmanCode::build(f);
  EXPECT_EQ(code.length(42), 1u);
  EXPECT_EQ(code.entry(42).code, 0u);
}

TEST(HuffmanTest, RejectsBadAlphabets) {
  EXPECT_THROW(HuffmanCode::build({}), std::invalid_argument);
  const std::vector<SymbolCount> zero{{1, 0}};
  EXPECT_THROW(HuffmanCode::build(zero), std::invalid_argument);
  const std::vector<SymbolCount> dup{{1, 2}, {1, 3}};
  EXPECT_THROW(HuffmanCode::build(dup), std::invalid_argument);
  const HuffmanCode code = HuffmanCode::build(std::vector<SymbolCount>{{1, 1}, {2, 0}});
  EXPECT_EQ(code.entries().size(), 1u);
  EXPECT_THROW(code.entry(2), std::out_of_range);
}

TEST(HuffmanTest, OptimalCanonicalAndComplete) {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = 2 + rng() % 300;
    std::vector<SymbolCount> f;
    std::vector<std::uint64_t> weights;
    for (std::size_t s = 0; s < k; ++s) {
      const std::uint64_t w = 1 + (rng() % 4 == 0 ? rng() % 100000 : rng() % 10);
      f.push_back({s * 7 + 3, w});
      weights.push_back(w);
    }
    const HuffmanCode code = HuffmanCode::build(f);
    EXPECT_DOUBLE_EQ(kraft_sum(code), 1.0);
    std::uint64_t cost = 0;
    for (const auto& sc : f) cost += sc.count * code.length(sc.symbol);
    EXPECT_EQ(cost, testing::optimal_code_cost(weights));

    const auto entries = code.entries();
    for (std::size_t j = 1; j < entries.size(); ++j) {
      const auto& a = entries[j - 1];
      const auto& b = entries[j];
      ASSERT_TRUE(a.length < b.length || (a.length == b.length && a.symbol < b.symbol));
      // Canonical codes increase when read as left-aligned fractions.
      ASSERT_LT(std::ldexp(static_cast<double>(a.code), -static_cast<int>(a.length)),
                std::ldexp(static_cast<double>(b.code), -static_cast<int>(b.length)));
    }
  }
}

void round_trip(const std::vector<std::uint64_t>& symbols, unsigned width) {
  const HuffmanCode code = HuffmanCode::from_symbols(symbols);
  BitWriter w;
  code.write_table(w, width);
  for (std::uint64_t s : symbols) code.encode(w, s);
  const std::uint64_t bits = w.bit_size();
  const auto bytes = std::move(w).take();
  BitReader r(bytes, 0, bits);
  const HuffmanDecoder dec = HuffmanDecoder::read_table(r, width);
  EXPECT_EQ(dec.leaf_count(), std::max<std::size_t>(2, code.entries().size()));
  for (std::uint64_t s : symbols) ASSERT_EQ(dec.decode(r), s);
  EXPECT_TRUE(r.at_end());
}

TEST(HuffmanTest, TableAndDataRoundTrip) {
  round_trip({5}, 3);
  round_trip({5, 5, 5}, 3);
  round_trip({0, 1}, 1);
  std::mt19937_64 rng(82);
  for (int i = 0; i < 200; ++i) {
    const unsigned width = 1 + static_cast<unsigned>(rng() % 20);
    std::vector<std::uint64_t> symbols(1 + rng() % 2000);
    const std::uint64_t range = 1 + rng() % ((1ULL << width) - 1);
    std::geometric_distribution<std::uint64_t> geo(0.2);
    for (auto& s : symbols) s = std::min(range - 1, geo(rng));
    round_trip(symbols, width);
  }
}

TEST(HuffmanTest, TruncatedTableThrows) {
  const std::vector<std::uint64_t> symbols{1, 2, 3, 3, 4};
  const HuffmanCode code = HuffmanCode::from_symbols(symbols);
  BitWriter w;
  code.write_table(w, 8);
  const std::uint64_t bits = w.bit_size();
  const auto bytes = std::move(w).take();
  for (std::uint64_t cut = 0; cut < bits; ++cut) {
    BitReader r(bytes, 0, cut);
    EXPECT_THROW(HuffmanDecoder::read_table(r, 8), BitStreamOverrun);
  }
}

}  // namespace
}  // namespace toptree
