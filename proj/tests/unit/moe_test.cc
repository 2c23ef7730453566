//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>

#include <gtest/gtest.h>

#include "asemol/error.h"
#include "asemol/moe.h"
#include "asemol/rng.h"
#include "gradcheck.h"

namespace asemol {
namespace {

Tensor random_matrix(std::size_t r, std::size_t c, Rng &rng) {
  std::vector<double> v(r * c);
  for (auto &x : v) x = normal_draw(rng);
  return Tensor::from_values({r, c}, std::move(v));
}

MoEConfig small_config() {
  MoEConfig cfg;
  cfg.num_experts = 3;
  cfg.dim = 6;
  cfg.num_tasks = 2;
  return cfg;
}

TEST(MoE, PredictionShapes) {
  Rng rng(1);
  MoEHead head(small_config(), rng);
  auto hp = random_matrix(4, 6, rng);
  auto hn = random_matrix(4, 6, rng);
  auto p = head.predict(hp, hn, nullptr);
  ASSERT_EQ(p.experts_pos.size(), 3u);
  EXPECT_EQ(p.experts_pos[0].shape(), (Shape{4, 2}));
  EXPECT_EQ(p.r_pos.shape(), (Shape{4, 3}));
  EXPECT_EQ(p.r_neg.shape(), (Shape{4, 3}));
  EXPECT_EQ(p.logits.shape(), (Shape{4, 2}));
}

TEST(MoE, CombinerStartsAsMean) {
  Rng rng(2);
  MoEHead head(small_config(), rng);
  auto p = head.predict(random_matrix(3, 6, rng), random_matrix(3, 6, rng), nullptr);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t t = 0; t < 2; ++t)
      EXPECT_NEAR(p.logits.at(i, t), 0.5 * (p.o_pos.at(i, t) + p.o_neg.at(i, t)), 1e-12);
}

TEST(MoE, MixIsRoutingWeightedSum) {
  auto e0 = Tensor::from_values({2, 1}, {1.0, 2.0});
  auto e1 = Tensor::from_values({2, 1}, {10.0, 20.0});
  auto r = Tensor::from_values({2, 2}, {0.25, 0.75, 1.0, 0.0});
  auto o = mix_experts({e0, e1}, r);
  EXPECT_DOUBLE_EQ(o.at(0, 0), 7.75);
  EXPECT_DOUBLE_EQ(o.at(1, 0), 2.0);
  EXPECT_THROW(mix_experts({e0}, r), DimensionError);
}

TEST(MoE, ExpertBankIsLinear) {
  Rng rng(3);
  ExpertBank bank(BankKind::kPositive, 2, 3, 1, rng);
  auto h = Tensor::from_values({1, 3}, {1.0, -2.0, 0.5});
  auto out = bank.forward(h);
  const auto w = bank.weights()[1].values();
  EXPECT_NEAR(out[1].item(), w[0] - 2.0 * w[1] + 0.5 * w[2], 1e-12);
  EXPECT_THROW(bank.forward(Tensor::zeros({1, 4})), ConfigError);
}

TEST(MoE, JointRouterReadsNegativeMotif) {
  Rng rng(4);
  Router joint(RouterKind::kJointNegative, 3, 6, 0.1, 0.0, rng);
  Router pos(RouterKind::kPositive, 3, 6, 0.1, 0.0, rng);
  EXPECT_EQ(joint.routing_matrix().shape(), (Shape{3, 12}));
  EXPECT_EQ(pos.routing_matrix().shape(), (Shape{3, 6}));
  auto hp = random_matrix(2, 6, rng);
  auto a = joint.logits(hp, random_matrix(2, 6, rng), nullptr);
  auto b = joint.logits(hp, random_matrix(2, 6, rng), nullptr);
  EXPECT_NE(a.values()[0], b.values()[0]);
}

TEST(MoE, NoiseScaleDefaultsToInverseExperts) {
  MoEConfig cfg = small_config();
  EXPECT_DOUBLE_EQ(cfg.effective_noise_scale(), 1.0 / 3.0);
  cfg.noise_scale = 0.0;
  EXPECT_DOUBLE_EQ(cfg.effective_noise_scale(), 0.0);
  cfg.tau = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(MoE, NoiseIsReproducibleBySeed) {
  Rng rng(5);
  Router r(RouterKind::kPositive, 3, 6, 0.1, 0.5, rng);
  auto h = random_matrix(4, 6, rng);
  Rng n1(77), n2(77);
  auto a = r.route(h, h, &n1);
  auto b = r.route(h, h, &n2);
  for (std::size_t i = 0; i < a.numel(); ++i) EXPECT_EQ(a.values()[i], b.values()[i]);
  auto clean = r.route(h, h, nullptr);
  EXPECT_NE(clean.values()[0], a.values()[0]);
}

TEST(ImportanceLoss, EqualImportanceIsZeroWithZeroGradient) {
  auto r = Tensor::from_values({2, 2}, {0.5, 0.5, 0.5, 0.5}, true);
  auto l = importance_loss(r, 0.1);
  EXPECT_EQ(l.item(), 0.0);
  l.backward();
  if (r.has_grad()) {
    for (double g : r.grad()) EXPECT_EQ(g, 0.0);
  }
}

TEST(ImportanceLoss, ThreeToOne) {
  auto r = Tensor::from_values({4, 2}, {0.75, 0.25, 0.75, 0.25, 0.75, 0.25, 0.75, 0.25}, true);
  auto l = importance_loss(r, 0.1);
  EXPECT_NEAR(l.item(), 0.25, 1e-15);
  auto check = testing::check_gradients([&] { return importance_loss(r, 0.1); }, {r});
  EXPECT_LT(check.max_rel_error, 1e-4);
  l.backward();
  double norm = 0;
  for (double g : r.grad()) norm += std::abs(g);
  EXPECT_GT(norm, 0.0);
}

TEST(ImportanceLoss, GateBlocksGradientBelowThreshold) {
  auto r = Tensor::from_values({4, 2}, {0.75, 0.25, 0.75, 0.25, 0.75, 0.25, 0.75, 0.25}, true);
  auto l = importance_loss(r, 0.3);
  EXPECT_NEAR(l.item(), 0.25, 1e-15);
  l.backward();
  EXPECT_FALSE(r.has_grad() && std::any_of(r.grad().begin(), r.grad().end(),
                                           [](double g) { return g != 0.0; }));
}

TEST(ImportanceLoss, GradientReachesRouterWeights) {
  Rng rng(6);
  Router router(RouterKind::kJointNegative, 3, 4, 1.0, 0.0, rng);
  auto hp = random_matrix(5, 4, rng);
  auto hn = random_matrix(5, 4, rng);
  ParameterList params;
  router.collect(params, "router");
  std::vector<Tensor> inputs;
  for (const auto &p : params) inputs.push_back(p.tensor);
  auto loss = [&] { return importance_loss(router.route(hp, hn, nullptr), 0.0); };
  ASSERT_GT(loss().item(), 0.0);
  auto check = testing::check_gradients(loss, inputs);
  EXPECT_LT(check.max_rel_error, 1e-4);
  loss().backward();
  double norm = 0;
  for (double g : router.routing_matrix().grad()) norm += std::abs(g);
  EXPECT_GT(norm, 0.0);
}

TEST(TotalLoss, AddsWeightedImportance) {
  auto t = Tensor::scalar(0.7);
  auto i = Tensor::scalar(0.25);
  EXPECT_DOUBLE_EQ(total_loss(t, i, 0.1).item(), 0.725);
}

}  // namespace
}  // namespace asemol
