//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_SPLIT_H_
#define ASEMOL_SPLIT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace asemol {

using SplitRatios = std::array<double, 3>;

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> valid;
  std::vector<std::size_t> test;
  // Scaffold split fell back to a random split.
  bool fallback = false;
};

// Throws ConfigError unless ratios are non-negative and sum to 1.
void validate_ratios(const SplitRatios &ratios);

// Shuffled with `seed`, then cut at round(n * ratio).
SplitIndices random_split(std::size_t n, const SplitRatios &ratios, std::uint64_t seed);

/// Groups indices by scaffold key, orders groups by descending size (ties by
/// key) and fills train, then valid, each until its share is reached; the
/// rest is test. Fewer than three groups falls back to random_split.
SplitIndices scaffold_split(std::span<const std::string> keys,
                            const SplitRatios &ratios, std::uint64_t seed);

}  // namespace asemol

#endif  // ASEMOL_SPLIT_H_
