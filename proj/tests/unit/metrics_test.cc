//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "asemol/metrics.h"
#include "asemol/rng.h"

namespace asemol {
namespace {

// Area under the ROC polyline built by sweeping thresholds over distinct
// scores; ties move diagonally, which is the half-credit convention.
double trapezoid_auc(const std::vector<double> &s, const std::vector<std::int8_t> &y) {
  std::map<double, std::pair<int, int>, std::greater<>> by_score;
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] < 0) continue;
    auto &[p, n] = by_score[s[i]];
    if (y[i] == 1) {
      ++p;
      ++pos;
    } else {
      ++n;
      ++neg;
    }
  }
  double area = 0, tpr = 0, fpr = 0;
  for (const auto &[score, pn] : by_score) {
    const double ntpr = tpr + static_cast<double>(pn.first) / pos;
    const double nfpr = fpr + static_cast<double>(pn.second) / neg;
    area += (nfpr - fpr) * (tpr + ntpr) / 2.0;
    tpr = ntpr;
    fpr = nfpr;
  }
  return area;
}

TEST(Auc, PerfectAndInverted) {
  const std::vector<double> s = {0.1, 0.2, 0.8, 0.9};
  const std::vector<std::int8_t> y = {0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(roc_auc_single(s, y), 1.0);
  const std::vector<std::int8_t> inv = {1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(roc_auc_single(s, inv), 0.0);
}

TEST(Auc, TiesGetHalfCredit) {
  const std::vector<double> s = {0.5, 0.5};
  const std::vector<std::int8_t> y = {0, 1};
  EXPECT_DOUBLE_EQ(roc_auc_single(s, y), 0.5);
}

TEST(Auc, SingleClassIsNaN) {
  const std::vector<double> s = {0.1, 0.7};
  const std::vector<std::int8_t> y = {1, 1};
  EXPECT_TRUE(std::isnan(roc_auc_single(s, y)));
}

TEST(Auc, MatchesTrapezoidOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng() % 60;
    std::vector<double> s(n);
    std::vector<std::int8_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse scores so ties are common.
      s[i] = static_cast<double>(rng() % 7) / 7.0;
      const auto r = rng() % 5;
      y[i] = r == 0 ? kMissingLabel : static_cast<std::int8_t>(r % 2);
    }
    y[0] = 0;
    y[1] = 1;
    EXPECT_NEAR(roc_auc_single(s, y), trapezoid_auc(s, y), 1e-12);
  }
}

TEST(Auc, MultiTaskSkipsSingleClassTasks) {
  // Row-major: 4 molecules x 3 tasks. Task 2 only has positives.
  const std::vector<double> s = {0.9, 0.2, 0.5, 0.1, 0.8, 0.6, 0.7, 0.3, 0.1, 0.3, 0.6, 0.9};
  const std::vector<std::int8_t> y = {1, 0, 1, 0, 1, kMissingLabel, 1, 1, 1, 0, 0, 1};
  auto r = roc_auc(s, y, 3);
  ASSERT_EQ(r.per_task.size(), 3u);
  EXPECT_EQ(r.valid_tasks, 2u);
  EXPECT_DOUBLE_EQ(r.per_task[0], 1.0);
  EXPECT_DOUBLE_EQ(r.per_task[1], 0.75);
  EXPECT_TRUE(std::isnan(r.per_task[2]));
  EXPECT_DOUBLE_EQ(r.mean, 0.875);
}

TEST(Auc, NoValidTask) {
  const std::vector<double> s = {0.1, 0.2};
  const std::vector<std::int8_t> y = {1, 1};
  auto r = roc_auc(s, y, 1);
  EXPECT_EQ(r.valid_tasks, 0u);
  EXPECT_TRUE(std::isnan(r.mean));
}

TEST(TaskLoss, IgnoresMissing) {
  auto x = Tensor::from_values({2, 1}, {0.0, 100.0});
  const std::int8_t y[] = {1, kMissingLabel};
  EXPECT_NEAR(task_loss(x, y).item(), std::log(2.0), 1e-12);
}

}  // namespace
}  // namespace asemol
