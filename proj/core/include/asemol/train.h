//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_TRAIN_H_
#define ASEMOL_TRAIN_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asemol/attribution.h"
#include "asemol/config.h"
#include "asemol/dataset.h"
#include "asemol/metrics.h"
#include "asemol/model.h"
#include "asemol/optim.h"
#include "asemol/split.h"

namespace asemol {

enum class Phase { kRecognition = 1, kExperts = 2 };

/// One record per epoch. Fields that do not apply to the phase are empty.
struct LossReport {
  Phase phase = Phase::kRecognition;
  std::size_t epoch = 0;  // 1-based within the phase
  double l_task = 0.0;
  std::optional<double> l_margin;
  std::optional<double> l_rec;  // l_task + alpha * l_margin
  std::optional<double> l_imp;
  std::optional<double> l_total;  // l_task + beta * l_imp
  std::optional<double> auc_valid;
  std::optional<double> auc_test;
  // Recognition phase: records whose motifs differ from the previous epoch.
  std::optional<std::size_t> motifs_changed;
};

using ReportCallback = std::function<void(const LossReport &)>;

struct TrainResult {
  Model model;
  std::vector<LossReport> reports{};
  // Frozen motifs for every dataset record, index-aligned.
  std::vector<MotifAssignment> motifs{};
  std::size_t recognition_epochs = 0;
  bool recognition_early_stop = false;
  std::size_t best_epoch = 0;  // expert-phase epoch of the selected weights
  double best_valid_auc = 0.0;
  AucResult test_auc{};
  bool diverged = false;
  std::string divergence_message{};
  Phase final_phase = Phase::kRecognition;
  ParameterList optimizer_state{};
  std::string shuffle_rng{};  // generator states at the end of training
  std::string noise_rng{};
};

SplitIndices make_split(const Dataset &dataset, const TrainConfig &cfg);

/// One pass of the recognition loss L_task + alpha * L_margin over `records`
/// in shuffled batches, using the fixed `motifs` (index-aligned).
/// Throws DivergenceError on a non-finite loss before the update.
LossReport recognition_epoch(const Model &model, Optimizer &optimizer,
                             std::span<const Record *const> records,
                             std::span<const MotifAssignment> motifs,
                             const TrainConfig &cfg, Rng &shuffle);

/// One pass of L_task + beta * L_imp through the MoE head.
LossReport expert_epoch(const Model &model, Optimizer &optimizer,
                        std::span<const Record *const> records,
                        std::span<const MotifAssignment> motifs,
                        const TrainConfig &cfg, Rng &shuffle, Rng &noise);

/// Two-phase training. Phase 1 recomputes motifs each epoch from the
/// recognition head and stops when they stay unchanged for `patience`
/// epochs or after epochs_rec. Motifs are then frozen (held-out molecules
/// use the head's predictions as labels) and phase 2 trains encoder and
/// MoE for epochs_total epochs, keeping the weights with the best
/// validation ROC-AUC. A non-finite loss restores the last good weights and
/// ends training with `diverged` set.
TrainResult train(const Dataset &dataset, const TrainConfig &cfg,
                  const SplitIndices &split, const ReportCallback &on_report = {});

// Labels of `records`, row-major records x T.
std::vector<std::int8_t> stack_labels(std::span<const Record *const> records);

}  // namespace asemol

#endif  // ASEMOL_TRAIN_H_
