//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/optim.h"

#include <cmath>

namespace asemol {

void Optimizer::zero_grad() {
  for (auto &p : params_) p.tensor.zero_grad();
}

Sgd::Sgd(ParameterList params, double lr, double weight_decay)
    : Optimizer(std::move(params)), lr_(lr), wd_(weight_decay) {}

void Sgd::step() {
  for (auto &p : params_) {
    auto w = p.tensor.mutable_values();
    const bool has = p.tensor.has_grad();
    const auto g = has ? p.tensor.grad() : std::span<const double>{};
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double decay = lr_ * wd_ * w[i];
      if (has) w[i] -= lr_ * g[i];
      w[i] -= decay;
    }
  }
}

AdamW::AdamW(ParameterList params, double lr, double weight_decay, double beta1,
             double beta2, double eps)
    : Optimizer(std::move(params)), lr_(lr), wd_(weight_decay), beta1_(beta1),
      beta2_(beta2), eps_(eps), step_count_(Tensor::scalar(0.0)) {
  for (const auto &p : params_) {
    m_.push_back(Tensor::zeros(p.tensor.shape()));
    v_.push_back(Tensor::zeros(p.tensor.shape()));
  }
}

void AdamW::step() {
  const double t = step_count_.item() + 1.0;
  step_count_.mutable_values()[0] = t;
  const double c1 = 1.0 - std::pow(beta1_, t);
  const double c2 = 1.0 - std::pow(beta2_, t);
  for (std::size_t k = 0; k < params_.size(); ++k) {
    auto w = params_[k].tensor.mutable_values();
    auto m = m_[k].mutable_values();
    auto v = v_[k].mutable_values();
    const bool has = params_[k].tensor.has_grad();
    const auto g = has ? params_[k].tensor.grad() : std::span<const double>{};
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double gi = has ? g[i] : 0.0;
      m[i] = beta1_ * m[i] + (1.0 - beta1_) * gi;
      v[i] = beta2_ * v[i] + (1.0 - beta2_) * gi * gi;
      w[i] -= lr_ * wd_ * w[i];
      w[i] -= lr_ * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps_);
    }
  }
}

ParameterList AdamW::state() const {
  ParameterList out;
  for (std::size_t k = 0; k < params_.size(); ++k) {
    out.push_back({params_[k].name + "/m", m_[k]});
    out.push_back({params_[k].name + "/v", v_[k]});
  }
  out.push_back({"step", step_count_});
  return out;
}

std::unique_ptr<Optimizer> make_optimizer(const TrainConfig &cfg, ParameterList params) {
  if (cfg.optimizer == OptimizerKind::kAdamW)
    return std::make_unique<AdamW>(std::move(params), cfg.learning_rate, cfg.weight_decay);
  return std::make_unique<Sgd>(std::move(params), cfg.learning_rate, cfg.weight_decay);
}

}  // namespace asemol
