//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_MOE_H_
#define ASEMOL_MOE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "asemol/layers.h"
#include "asemol/rng.h"
#include "asemol/tensor.h"

namespace asemol {

enum class BankKind { kPositive, kNegative };

/// K linear experts, each d x T without bias.
class ExpertBank {
 public:
  ExpertBank() = default;
  ExpertBank(BankKind kind, std::size_t num_experts, std::size_t dim,
             std::size_t num_tasks, Rng &rng);

  BankKind kind() const { return kind_; }
  std::size_t num_experts() const { return weights_.size(); }

  // One B x T logit matrix per expert. Throws ConfigError when h is not B x d.
  std::vector<Tensor> forward(const Tensor &h) const;

  const std::vector<Tensor> &weights() const { return weights_; }
  void collect(ParameterList &out, const std::string &prefix) const;

 private:
  BankKind kind_ = BankKind::kPositive;
  std::vector<Tensor> weights_;
};

enum class RouterKind { kPositive, kJointNegative };

/// Softmax gate over K experts. The positive router scores projection(H+);
/// the joint negative router scores [projection(H+), projection(H-)] with a
/// single shared projection. Logits are <Z, M_k> / tau plus Gaussian noise
/// of scale noise_scale when a noise generator is supplied.
class Router {
 public:
  Router() = default;
  Router(RouterKind kind, std::size_t num_experts, std::size_t dim, double tau,
         double noise_scale, Rng &rng);

  RouterKind kind() const { return kind_; }
  std::size_t num_experts() const { return routing_.rows(); }
  double tau() const { return tau_; }
  double noise_scale() const { return noise_scale_; }

  // Pre-softmax logits, B x K. `noise` may be null (evaluation).
  Tensor logits(const Tensor &h_pos, const Tensor &h_neg, Rng *noise) const;
  Tensor route(const Tensor &h_pos, const Tensor &h_neg, Rng *noise) const;

  const Linear &projection() const { return projection_; }
  const Tensor &routing_matrix() const { return routing_; }
  void collect(ParameterList &out, const std::string &prefix) const;

 private:
  RouterKind kind_ = RouterKind::kPositive;
  Linear projection_;
  Tensor routing_;  // K x d or K x 2d
  double tau_ = 0.1;
  double noise_scale_ = 0.0;
};

struct MoEConfig {
  std::size_t num_experts = 5;
  std::size_t dim = 300;
  std::size_t num_tasks = 1;
  double tau = 0.1;
  // Negative selects the default 1 / num_experts.
  double noise_scale = -1.0;

  double effective_noise_scale() const;
  void validate() const;
};

struct MoEPrediction {
  std::vector<Tensor> experts_pos;  // K of B x T
  std::vector<Tensor> experts_neg;
  Tensor r_pos;   // B x K
  Tensor r_neg;   // B x K
  Tensor o_pos;   // B x T
  Tensor o_neg;   // B x T
  Tensor logits;  // B x T
};

// sum_k r[:, k] * experts[k]
Tensor mix_experts(const std::vector<Tensor> &experts, const Tensor &r);

class MoEHead {
 public:
  MoEHead() = default;
  MoEHead(const MoEConfig &cfg, Rng &rng);

  const MoEConfig &config() const { return cfg_; }

  MoEPrediction predict(const Tensor &h_pos, const Tensor &h_neg, Rng *noise) const;

  const ExpertBank &positive_bank() const { return pos_bank_; }
  const ExpertBank &negative_bank() const { return neg_bank_; }
  const Router &positive_router() const { return pos_router_; }
  const Router &negative_router() const { return neg_router_; }
  // Linear 2T -> T over [o+, o-], initialized to the mean of the two.
  const Linear &combiner() const { return combiner_; }

  void collect(ParameterList &out, const std::string &prefix) const;

 private:
  MoEConfig cfg_;
  ExpertBank pos_bank_;
  ExpertBank neg_bank_;
  Router pos_router_;
  Router neg_router_;
  Linear combiner_;
};

/// Squared coefficient of variation of per-expert importance (column sums
/// of the B x K routing matrix), population variance. Below `gamma` the
/// value is returned without gradient.
Tensor importance_loss(const Tensor &routing, double gamma);

// importance_loss over both banks, summed.
Tensor importance_loss(const MoEPrediction &prediction, double gamma);

// task + beta * importance
Tensor total_loss(const Tensor &task, const Tensor &importance, double beta);

}  // namespace asemol

#endif  // ASEMOL_MOE_H_
