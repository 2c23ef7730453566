//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "asemol/config.h"
#include "asemol/error.h"

namespace asemol {
namespace {

TEST(Config, DefaultsAreGridMidpoints) {
  TrainConfig cfg;
  EXPECT_EQ(cfg.batch_size, 256u);
  EXPECT_EQ(cfg.learning_rate, 0.001);
  EXPECT_EQ(cfg.weight_decay, 1e-5);
  EXPECT_EQ(cfg.num_experts, 5u);
  EXPECT_EQ(cfg.alpha, 0.1);
  EXPECT_EQ(cfg.beta, 0.1);
  EXPECT_EQ(cfg.psi, 0.2);
  EXPECT_EQ(cfg.encoder.hidden_dim, 300u);
  EXPECT_EQ(cfg.encoder.num_layers, 5u);
  cfg.strict_grid = true;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, UnknownKeyRejected) {
  TrainConfig cfg;
  EXPECT_THROW(apply_config_json(cfg, R"({"learning_rte": 0.001})"), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, R"({"psi": "high"})"), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, "[1, 2]"), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, "{not json"), ConfigError);
}

TEST(Config, AppliesKnownKeys) {
  TrainConfig cfg;
  apply_config_json(cfg, R"({"encoder": "gin", "hidden_dim": 64, "num_experts": 3,
                             "split": "random", "optimizer": "adamw",
                             "split_ratios": [0.7, 0.2, 0.1], "task_columns": ["p_np"]})");
  EXPECT_EQ(cfg.encoder.variant, EncoderVariant::kGin);
  EXPECT_EQ(cfg.encoder.hidden_dim, 64u);
  EXPECT_EQ(cfg.num_experts, 3u);
  EXPECT_EQ(cfg.split, SplitKind::kRandom);
  EXPECT_EQ(cfg.optimizer, OptimizerKind::kAdamW);
  EXPECT_EQ(cfg.split_ratios[1], 0.2);
  EXPECT_EQ(cfg.task_columns, (std::vector<std::string>{"p_np"}));
}

TEST(Config, JsonRoundTrip) {
  TrainConfig cfg;
  cfg.seed = 42;
  cfg.psi = 0.3;
  cfg.encoder.readout = ReadoutKind::kMax;
  const auto text = config_to_json(cfg);
  auto back = config_from_json(text);
  EXPECT_EQ(config_to_json(back), text);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.encoder.readout, ReadoutKind::kMax);
}

TEST(Config, KeysCoverSerializedFields) {
  const auto keys = config_keys();
  const auto text = config_to_json(TrainConfig{});
  for (const auto &k : keys) EXPECT_NE(text.find("\"" + k + "\""), std::string::npos) << k;
}

TEST(Config, RangeChecksAlwaysThrow) {
  TrainConfig cfg;
  cfg.psi = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.tau = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.num_experts = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.split_ratios = {0.5, 0.5, 0.5};
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Config, OffGridWarnsOrThrows) {
  TrainConfig cfg;
  cfg.psi = 1.0;
  cfg.beta = 0.0;
  EXPECT_NO_THROW(cfg.validate());
  cfg.strict_grid = true;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Config, EnumNames) {
  EXPECT_EQ(parse_split_kind("scaffold"), SplitKind::kScaffold);
  EXPECT_EQ(to_string(OptimizerKind::kSgd), "sgd");
  EXPECT_THROW(parse_optimizer_kind("lbfgs"), ConfigError);
}

}  // namespace
}  // namespace asemol
