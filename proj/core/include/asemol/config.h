//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_CONFIG_H_
#define ASEMOL_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "asemol/encoder.h"
#include "asemol/split.h"

namespace asemol {

enum class SplitKind { kScaffold, kRandom };
enum class OptimizerKind { kSgd, kAdamW };

std::string to_string(SplitKind k);
std::string to_string(OptimizerKind k);
SplitKind parse_split_kind(std::string_view text);
OptimizerKind parse_optimizer_kind(std::string_view text);

/// Every training hyper-parameter. Defaults sit at the middle of the search
/// grids; see docs/config.md for the key-by-key schema.
struct TrainConfig {
  std::uint64_t seed = 0;
  EncoderConfig encoder;

  std::size_t batch_size = 256;
  double learning_rate = 0.001;
  double weight_decay = 1e-5;
  OptimizerKind optimizer = OptimizerKind::kSgd;

  // Recognition phase.
  double psi = 0.2;
  double alpha = 0.1;
  double margin = 0.5;
  std::size_t epochs_rec = 100;
  std::size_t patience = 3;

  // Expert phase.
  std::size_t num_experts = 5;
  double beta = 0.1;
  double gamma = 0.1;
  double tau = 0.1;
  double noise_scale = -1.0;  // negative: 1 / num_experts
  std::size_t epochs_total = 200;

  SplitKind split = SplitKind::kScaffold;
  SplitRatios split_ratios = {0.8, 0.1, 0.1};

  // Empty: detect 0/1 columns automatically.
  std::vector<std::string> task_columns;

  // Off-grid values are errors instead of warnings.
  bool strict_grid = false;

  /// Range checks always throw ConfigError. Values outside the documented
  /// search grids are logged, or rejected when strict_grid is set.
  void validate() const;
};

// Overlays the keys present in `json` onto `cfg`. Unknown keys and
// mistyped values throw ConfigError.
void apply_config_json(TrainConfig &cfg, std::string_view json);
TrainConfig load_config(const std::filesystem::path &path);

// Complete, stable (sorted-key) JSON encoding of every field.
std::string config_to_json(const TrainConfig &cfg);
TrainConfig config_from_json(std::string_view json);

// Key names accepted by apply_config_json.
std::vector<std::string> config_keys();

}  // namespace asemol

#endif  // ASEMOL_CONFIG_H_
