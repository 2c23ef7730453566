//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "asemol/error.h"
#include "asemol/log.h"

namespace asemol {

Tensor task_loss(const Tensor &logits, std::span<const std::int8_t> labels) {
  return bce_with_logits(logits, labels);
}

double roc_auc_single(std::span<const double> scores,
                      std::span<const std::int8_t> labels) {
  if (scores.size() != labels.size())
    throw ContractError("roc_auc: scores and labels differ in length");
  std::vector<std::pair<double, bool>> obs;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 0 || labels[i] == 1) obs.emplace_back(scores[i], labels[i] == 1);
  }
  std::sort(obs.begin(), obs.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  double pos = 0.0, neg = 0.0, pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < obs.size();) {
    std::size_t j = i;
    while (j < obs.size() && obs[j].first == obs[i].first) ++j;
    // Average 1-based rank of the tie block.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (obs[k].second) {
        pos += 1.0;
        pos_rank_sum += rank;
      } else {
        neg += 1.0;
      }
    }
    i = j;
  }
  if (pos == 0.0 || neg == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (pos_rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

AucResult roc_auc(std::span<const double> scores,
                  std::span<const std::int8_t> labels, std::size_t num_tasks) {
  if (num_tasks == 0 || scores.size() != labels.size()
      || scores.size() % num_tasks != 0)
    throw ContractError("roc_auc: inconsistent score/label sizes");
  const std::size_t rows = scores.size() / num_tasks;
  AucResult result;
  double total = 0.0;
  std::vector<double> s(rows);
  std::vector<std::int8_t> y(rows);
  for (std::size_t t = 0; t < num_tasks; ++t) {
    for (std::size_t i = 0; i < rows; ++i) {
      s[i] = scores[i * num_tasks + t];
      y[i] = labels[i * num_tasks + t];
    }
    const double auc = roc_auc_single(s, y);
    result.per_task.push_back(auc);
    if (std::isnan(auc)) {
      log_debug("roc_auc: task " + std::to_string(t) + " has a single class; excluded");
      continue;
    }
    total += auc;
    ++result.valid_tasks;
  }
  result.mean = result.valid_tasks > 0
                    ? total / static_cast<double>(result.valid_tasks)
                    : std::numeric_limits<double>::quiet_NaN();
  return result;
}

}  // namespace asemol
