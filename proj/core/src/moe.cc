//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/moe.h"

#include <cassert>

#include "asemol/error.h"

namespace asemol {

ExpertBank::ExpertBank(BankKind kind, std::size_t num_experts, std::size_t dim,
                       std::size_t num_tasks, Rng &rng)
    : kind_(kind) {
  if (num_experts < 1) throw ConfigError("expert bank needs at least one expert");
  for (std::size_t k = 0; k < num_experts; ++k)
    weights_.push_back(xavier_uniform(dim, num_tasks, rng));
}

std::vector<Tensor> ExpertBank::forward(const Tensor &h) const {
  if (h.cols() != weights_.front().rows())
    throw ConfigError("expert input width " + std::to_string(h.cols())
                      + " != expert dim " + std::to_string(weights_.front().rows()));
  std::vector<Tensor> out;
  out.reserve(weights_.size());
  for (const Tensor &w : weights_) out.push_back(matmul(h, w));
  return out;
}

void ExpertBank::collect(ParameterList &out, const std::string &prefix) const {
  for (std::size_t k = 0; k < weights_.size(); ++k)
    out.push_back({prefix + ".expert" + std::to_string(k), weights_[k]});
}

Router::Router(RouterKind kind, std::size_t num_experts, std::size_t dim,
               double tau, double noise_scale, Rng &rng)
    : kind_(kind), projection_(dim, dim, rng),
      routing_(xavier_uniform(num_experts,
                              kind == RouterKind::kPositive ? dim : 2 * dim, rng)),
      tau_(tau), noise_scale_(noise_scale) {
  if (tau <= 0.0) throw ConfigError("router temperature must be positive");
}

Tensor Router::logits(const Tensor &h_pos, const Tensor &h_neg, Rng *noise) const {
  Tensor z = projection_.forward(h_pos);
  if (kind_ == RouterKind::kJointNegative)
    z = concat({z, projection_.forward(h_neg)}, 1);
  Tensor out = scale(matmul(z, transpose(routing_)), 1.0 / tau_);
  if (noise != nullptr && noise_scale_ > 0.0) {
    std::vector<double> eps(out.numel());
    for (double &e : eps) e = noise_scale_ * normal_draw(*noise);
    out = add(out, Tensor::from_values(out.shape(), std::move(eps)));
  }
  return out;
}

Tensor Router::route(const Tensor &h_pos, const Tensor &h_neg, Rng *noise) const {
  return softmax(logits(h_pos, h_neg, noise), 1);
}

void Router::collect(ParameterList &out, const std::string &prefix) const {
  projection_.collect(out, prefix + ".projection");
  out.push_back({prefix + ".routing", routing_});
}

double MoEConfig::effective_noise_scale() const {
  return noise_scale < 0.0 ? 1.0 / static_cast<double>(num_experts) : noise_scale;
}

void MoEConfig::validate() const {
  if (num_experts < 1) throw ConfigError("num_experts must be at least 1");
  if (dim < 1 || num_tasks < 1) throw ConfigError("MoE dims must be positive");
  if (tau <= 0.0) throw ConfigError("tau must be positive");
}

Tensor mix_experts(const std::vector<Tensor> &experts, const Tensor &r) {
  if (experts.size() != r.cols())
    throw DimensionError("mix_experts: " + std::to_string(experts.size())
                         + " experts vs routing " + shape_string(r.shape()));
  Tensor out;
  for (std::size_t k = 0; k < experts.size(); ++k) {
    Tensor term = row_scale(experts[k], slice_cols(r, k, k + 1));
    out = out.defined() ? add(out, term) : term;
  }
  return out;
}

MoEHead::MoEHead(const MoEConfig &cfg, Rng &rng) : cfg_(cfg) {
  cfg_.validate();
  const double noise = cfg_.effective_noise_scale();
  pos_bank_ = ExpertBank(BankKind::kPositive, cfg_.num_experts, cfg_.dim, cfg_.num_tasks, rng);
  neg_bank_ = ExpertBank(BankKind::kNegative, cfg_.num_experts, cfg_.dim, cfg_.num_tasks, rng);
  pos_router_ = Router(RouterKind::kPositive, cfg_.num_experts, cfg_.dim, cfg_.tau, noise, rng);
  neg_router_ = Router(RouterKind::kJointNegative, cfg_.num_experts, cfg_.dim, cfg_.tau, noise, rng);
  combiner_ = Linear(2 * cfg_.num_tasks, cfg_.num_tasks, rng);
  auto w = combiner_.weight();
  auto values = w.mutable_values();
  const std::size_t t_count = cfg_.num_tasks;
  for (std::size_t i = 0; i < 2 * t_count; ++i)
    for (std::size_t j = 0; j < t_count; ++j)
      values[i * t_count + j] = (i % t_count == j) ? 0.5 : 0.0;
}

MoEPrediction MoEHead::predict(const Tensor &h_pos, const Tensor &h_neg,
                               Rng *noise) const {
  MoEPrediction p;
  p.experts_pos = pos_bank_.forward(h_pos);
  p.experts_neg = neg_bank_.forward(h_neg);
  p.r_pos = pos_router_.route(h_pos, h_neg, noise);
  p.r_neg = neg_router_.route(h_pos, h_neg, noise);
  p.o_pos = mix_experts(p.experts_pos, p.r_pos);
  p.o_neg = mix_experts(p.experts_neg, p.r_neg);
  p.logits = combiner_.forward(concat({p.o_pos, p.o_neg}, 1));
  return p;
}

void MoEHead::collect(ParameterList &out, const std::string &prefix) const {
  pos_bank_.collect(out, prefix + ".pos_bank");
  neg_bank_.collect(out, prefix + ".neg_bank");
  pos_router_.collect(out, prefix + ".pos_router");
  neg_router_.collect(out, prefix + ".neg_router");
  combiner_.collect(out, prefix + ".combiner");
}

Tensor importance_loss(const Tensor &routing, double gamma) {
  const std::size_t k = routing.cols();
  const Tensor imp = sum(routing, 0);
  const Tensor mu = mean(imp);
  assert(mu.item() > 0.0);
  const Tensor diff = sub(imp, expand_scalar(mu, 1, k));
  const Tensor cv2 = div(mean(mul(diff, diff)), mul(mu, mu));
  return cv2.item() < gamma ? stop_gradient(cv2) : cv2;
}

Tensor importance_loss(const MoEPrediction &prediction, double gamma) {
  return add(importance_loss(prediction.r_pos, gamma),
             importance_loss(prediction.r_neg, gamma));
}

Tensor total_loss(const Tensor &task, const Tensor &importance, double beta) {
  return add(task, scale(importance, beta));
}

}  // namespace asemol
