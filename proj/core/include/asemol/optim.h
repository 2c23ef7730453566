//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_OPTIM_H_
#define ASEMOL_OPTIM_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "asemol/config.h"
#include "asemol/layers.h"

namespace asemol {

class Optimizer {
 public:
  explicit Optimizer(ParameterList params) : params_(std::move(params)) {}
  virtual ~Optimizer() = default;

  // Applies one update from the current gradients; parameters without a
  // gradient are only decayed.
  virtual void step() = 0;

  // Drops every parameter's gradient buffer.
  void zero_grad();

  const ParameterList &parameters() const { return params_; }

  // Optimizer-specific buffers, named "<param>/<slot>".
  virtual ParameterList state() const { return {}; }

 protected:
  ParameterList params_;
};

/// p <- p - lr * g - lr * wd * p
class Sgd : public Optimizer {
 public:
  Sgd(ParameterList params, double lr, double weight_decay);
  void step() override;

 private:
  double lr_;
  double wd_;
};

/// Adam moments with decoupled weight decay.
class AdamW : public Optimizer {
 public:
  AdamW(ParameterList params, double lr, double weight_decay, double beta1 = 0.9,
        double beta2 = 0.999, double eps = 1e-8);
  void step() override;
  ParameterList state() const override;

 private:
  double lr_, wd_, beta1_, beta2_, eps_;
  std::vector<Tensor> m_, v_;
  Tensor step_count_;  // restorable, so the bias correction resumes
};

std::unique_ptr<Optimizer> make_optimizer(const TrainConfig &cfg, ParameterList params);

}  // namespace asemol

#endif  // ASEMOL_OPTIM_H_
