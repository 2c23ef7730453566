//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_METRICS_H_
#define ASEMOL_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "asemol/tensor.h"

namespace asemol {

inline constexpr std::int8_t kMissingLabel = -1;

// Mean binary cross-entropy with logits over observed labels.
Tensor task_loss(const Tensor &logits, std::span<const std::int8_t> labels);

// Mann-Whitney AUC with half credit for ties over observed entries. NaN when
// either class is absent.
double roc_auc_single(std::span<const double> scores,
                      std::span<const std::int8_t> labels);

struct AucResult {
  double mean = 0.0;              // NaN when no task is valid
  std::vector<double> per_task;   // NaN for single-class tasks
  std::size_t valid_tasks = 0;
};

// `scores` and `labels` are row-major num_rows x num_tasks.
AucResult roc_auc(std::span<const double> scores,
                  std::span<const std::int8_t> labels, std::size_t num_tasks);

}  // namespace asemol

#endif  // ASEMOL_METRICS_H_
