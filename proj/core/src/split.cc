//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/split.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "asemol/error.h"
#include "asemol/log.h"
#include "asemol/rng.h"

namespace asemol {

void validate_ratios(const SplitRatios &ratios) {
  double total = 0.0;
  for (double r : ratios) {
    if (!(r >= 0.0)) throw ConfigError("split ratios must be non-negative");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("split ratios must sum to 1");
}

SplitIndices random_split(std::size_t n, const SplitRatios &ratios, std::uint64_t seed) {
  validate_ratios(ratios);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng = make_rng(seed, SeedStream::kSplit);
  std::shuffle(idx.begin(), idx.end(), rng);
  const auto n_train = static_cast<std::size_t>(std::llround(ratios[0] * static_cast<double>(n)));
  const auto n_valid = std::min(
      n - n_train, static_cast<std::size_t>(std::llround(ratios[1] * static_cast<double>(n))));
  SplitIndices s;
  s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.valid.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                 idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid));
  s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid), idx.end());
  for (auto *part : {&s.train, &s.valid, &s.test}) std::sort(part->begin(), part->end());
  return s;
}

SplitIndices scaffold_split(std::span<const std::string> keys,
                            const SplitRatios &ratios, std::uint64_t seed) {
  validate_ratios(ratios);
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < keys.size(); ++i) groups[keys[i]].push_back(i);
  if (groups.size() < 3) {
    log_warn("scaffold_split: only " + std::to_string(groups.size())
             + " scaffold groups; falling back to a random split");
    SplitIndices s = random_split(keys.size(), ratios, seed);
    s.fallback = true;
    return s;
  }
  std::vector<const std::pair<const std::string, std::vector<std::size_t>> *> order;
  for (const auto &g : groups) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(), [](const auto *a, const auto *b) {
    return a->second.size() > b->second.size();
  });
  const double n = static_cast<double>(keys.size());
  SplitIndices s;
  for (const auto *g : order) {
    std::vector<std::size_t> *dst = &s.test;
    if (static_cast<double>(s.train.size()) < ratios[0] * n - 1e-9) {
      dst = &s.train;
    } else if (static_cast<double>(s.valid.size()) < ratios[1] * n - 1e-9) {
      dst = &s.valid;
    }
    dst->insert(dst->end(), g->second.begin(), g->second.end());
  }
  for (auto *part : {&s.train, &s.valid, &s.test}) std::sort(part->begin(), part->end());
  return s;
}

}  // namespace asemol
