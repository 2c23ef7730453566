//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "asemol/error.h"
#include "asemol/split.h"

namespace asemol {
namespace {

void expect_partition(const SplitIndices &s, std::size_t n) {
  std::vector<std::size_t> all;
  for (const auto *part : {&s.train, &s.valid, &s.test}) {
    EXPECT_TRUE(std::is_sorted(part->begin(), part->end()));
    all.insert(all.end(), part->begin(), part->end());
  }
  std::sort(all.begin(), all.end());
  ASSERT_EQ(all.size(), n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(all[i], i);
}

TEST(RandomSplit, SizesAndDeterminism) {
  auto a = random_split(100, {0.8, 0.1, 0.1}, 3);
  EXPECT_EQ(a.train.size(), 80u);
  EXPECT_EQ(a.valid.size(), 10u);
  EXPECT_EQ(a.test.size(), 10u);
  expect_partition(a, 100);
  auto b = random_split(100, {0.8, 0.1, 0.1}, 3);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  auto c = random_split(100, {0.8, 0.1, 0.1}, 4);
  EXPECT_NE(a.train, c.train);
}

TEST(RandomSplit, RoundsCutPoints) {
  auto s = random_split(7, {0.5, 0.25, 0.25}, 1);
  EXPECT_EQ(s.train.size(), 4u);  // 3.5 rounds away from zero
  EXPECT_EQ(s.valid.size(), 2u);
  EXPECT_EQ(s.test.size(), 1u);
}

TEST(ScaffoldSplit, LargestGroupsFillTrainFirst) {
  const std::vector<std::string> keys = {"A", "B", "A", "C", "A", "B", "D", "A", "B", "A"};
  auto s = scaffold_split(keys, {0.8, 0.1, 0.1}, 0);
  EXPECT_FALSE(s.fallback);
  EXPECT_EQ(s.train, (std::vector<std::size_t>{0, 1, 2, 4, 5, 7, 8, 9}));
  EXPECT_EQ(s.valid, (std::vector<std::size_t>{3}));
  EXPECT_EQ(s.test, (std::vector<std::size_t>{6}));
}

TEST(ScaffoldSplit, GroupsNeverStraddle) {
  std::vector<std::string> keys;
  for (int i = 0; i < 300; ++i) keys.push_back("g" + std::to_string((i * i) % 37));
  auto s = scaffold_split(keys, {0.8, 0.1, 0.1}, 0);
  expect_partition(s, keys.size());
  std::set<std::string> seen[3];
  const std::vector<std::size_t> *parts[] = {&s.train, &s.valid, &s.test};
  for (int p = 0; p < 3; ++p)
    for (auto i : *parts[p]) seen[p].insert(keys[i]);
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q)
      for (const auto &k : seen[p]) EXPECT_EQ(seen[q].count(k), 0u) << k;
}

TEST(ScaffoldSplit, FallsBackWithFewGroups) {
  const std::vector<std::string> keys = {"A", "A", "B", "A", "B", "A", "A", "B", "A", "B"};
  auto s = scaffold_split(keys, {0.8, 0.1, 0.1}, 5);
  EXPECT_TRUE(s.fallback);
  expect_partition(s, keys.size());
}

TEST(Ratios, Validation) {
  EXPECT_THROW(validate_ratios({0.8, 0.1, 0.2}), ConfigError);
  EXPECT_THROW(validate_ratios({1.1, -0.1, 0.0}), ConfigError);
  EXPECT_NO_THROW(validate_ratios({1.0, 0.0, 0.0}));
}

}  // namespace
}  // namespace asemol
