//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>

#include <gtest/gtest.h>

#include "asemol/report.h"
#include "asemol/train.h"
#include "synthetic.h"

namespace asemol {
namespace {

TrainConfig tiny_config() {
  TrainConfig cfg;
  cfg.seed = 3;
  cfg.encoder.variant = EncoderVariant::kGin;
  cfg.encoder.hidden_dim = 12;
  cfg.encoder.num_layers = 2;
  cfg.batch_size = 128;
  cfg.learning_rate = 0.005;
  cfg.optimizer = OptimizerKind::kAdamW;
  cfg.num_experts = 3;
  cfg.epochs_rec = 3;
  cfg.epochs_total = 3;
  cfg.split = SplitKind::kRandom;
  return cfg;
}

class TrainTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { data = new Dataset(testing::planted_amide_dataset(80, 5)); }
  static void TearDownTestSuite() { delete data; }
  static Dataset *data;
};
Dataset *TrainTest::data = nullptr;

std::vector<std::string> run_reports(const Dataset &ds, const TrainConfig &cfg) {
  std::vector<std::string> lines;
  auto result = train(ds, cfg, make_split(ds, cfg),
                      [&](const LossReport &r) { lines.push_back(report_to_json(r)); });
  lines.push_back(summary_to_json(result, cfg, ds.size()));
  return lines;
}

TEST_F(TrainTest, PhasesAndReports) {
  auto cfg = tiny_config();
  std::vector<LossReport> seen;
  auto result = train(*data, cfg, make_split(*data, cfg),
                      [&](const LossReport &r) { seen.push_back(r); });
  EXPECT_FALSE(result.diverged);
  EXPECT_EQ(result.final_phase, Phase::kExperts);
  ASSERT_EQ(seen.size(), result.reports.size());
  ASSERT_EQ(seen.size(), result.recognition_epochs + cfg.epochs_total);
  EXPECT_LE(result.recognition_epochs, cfg.epochs_rec);
  for (std::size_t i = 0; i < result.recognition_epochs; ++i) {
    const auto &r = seen[i];
    EXPECT_EQ(r.phase, Phase::kRecognition);
    EXPECT_EQ(r.epoch, i + 1);
    ASSERT_TRUE(r.l_margin && r.l_rec && r.motifs_changed);
    EXPECT_NEAR(*r.l_rec, r.l_task + cfg.alpha * *r.l_margin, 1e-12);
    EXPECT_LE(*r.l_margin, 0.0);
    EXPECT_GE(*r.l_margin, -(1.0 + cfg.margin));
  }
  for (std::size_t i = result.recognition_epochs; i < seen.size(); ++i) {
    const auto &r = seen[i];
    EXPECT_EQ(r.phase, Phase::kExperts);
    ASSERT_TRUE(r.l_imp && r.l_total);
    EXPECT_NEAR(*r.l_total, r.l_task + cfg.beta * *r.l_imp, 1e-12);
    EXPECT_FALSE(r.l_margin.has_value());
  }
  EXPECT_EQ(result.motifs.size(), data->size());
  EXPECT_GE(result.best_epoch, 1u);
  EXPECT_EQ(result.optimizer_state.size(), 2 * result.model.expert_parameters().size() + 1);
  EXPECT_FALSE(std::isnan(result.test_auc.mean));
}

TEST_F(TrainTest, SameSeedIsBitIdentical) {
  auto cfg = tiny_config();
  EXPECT_EQ(run_reports(*data, cfg), run_reports(*data, cfg));
}

TEST_F(TrainTest, SeedChangesTrajectory) {
  auto cfg = tiny_config();
  auto a = run_reports(*data, cfg);
  cfg.seed = 4;
  EXPECT_NE(a, run_reports(*data, cfg));
}

TEST_F(TrainTest, EarlyStopOnStableMotifs) {
  auto cfg = tiny_config();
  cfg.learning_rate = 1e-12;  // weights barely move, so motifs stay fixed
  cfg.epochs_rec = 10;
  cfg.patience = 2;
  cfg.epochs_total = 1;
  auto result = train(*data, cfg, make_split(*data, cfg));
  EXPECT_TRUE(result.recognition_early_stop);
  EXPECT_EQ(result.recognition_epochs, cfg.patience);
}

TEST_F(TrainTest, StackLabelsIsRowMajor) {
  std::vector<const Record *> recs = {&data->records[0], &data->records[1]};
  auto y = stack_labels(recs);
  ASSERT_EQ(y.size(), 2u);
  EXPECT_EQ(y[0], data->records[0].labels[0]);
  EXPECT_EQ(y[1], data->records[1].labels[0]);
}

TEST(Synthetic, LabelsFollowAmideRule) {
  auto ds = testing::planted_amide_dataset(200, 9);
  ASSERT_EQ(ds.size(), 200u);
  std::size_t pos = 0;
  for (const auto &r : ds.records) {
    bool amide = false;
    for (const auto &f : r.fragments)
      for (const auto &id : f.rule_ids) amide = amide || id == "amide-CN";
    EXPECT_EQ(amide, r.labels[0] == 1) << r.smiles;
    pos += r.labels[0] == 1;
  }
  EXPECT_EQ(pos, 100u);
}

}  // namespace
}  // namespace asemol
