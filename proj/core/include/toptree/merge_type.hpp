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

#include <cstdint>
#include <optional>

namespace toptree {

// The five cluster merges. A and B are vertical (left child = upper cluster),
// C, D and E horizontal (left child = left sibling group).
//
//   A  upper + lower, result keeps the lower cluster's bottom boundary
//   B  upper + lower, result has no bottom boundary
//   C  left + right, result keeps the left cluster's bottom boundary
//   D  left + right, result keeps the right cluster's bottom boundary
//   E  left + right, result has no bottom boundary
enum class MergeType : std::uint8_t { kA = 0, kB = 1, kC = 2, kD = 3, kE = 4 };

inline constexpr int kMergeTypeCount = 5;

constexpr bool is_vertical(MergeType t) {
  return t == MergeType::kA || t == MergeType::kB;
}

constexpr char merge_type_char(MergeType t) {
  return static_cast<char>('A' + static_cast<int>(t));
}

constexpr std::optional<MergeType> merge_type_from_int(std::uint64_t v) {
  if (v >= static_cast<std::uint64_t>(kMergeTypeCount)) return std::nullopt;
  return static_cast<MergeType>(v);
}

}  // namespace toptree
