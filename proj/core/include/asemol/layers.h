//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_LAYERS_H_
#define ASEMOL_LAYERS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "asemol/rng.h"
#include "asemol/tensor.h"

namespace asemol {

struct NamedParameter {
  std::string name;
  Tensor tensor;
};

using ParameterList = std::vector<NamedParameter>;

// Uniform in +-sqrt(6 / (rows + cols)), requires_grad set.
Tensor xavier_uniform(std::size_t rows, std::size_t cols, Rng &rng);

/// y = x W + b with W stored in x out.
class Linear {
 public:
  Linear() = default;
  Linear(std::size_t in, std::size_t out, Rng &rng, bool bias = true);

  Tensor forward(const Tensor &x) const;

  std::size_t in_features() const { return weight_.rows(); }
  std::size_t out_features() const { return weight_.cols(); }

  const Tensor &weight() const { return weight_; }
  const Tensor &bias() const { return bias_; }

  void collect(ParameterList &out, const std::string &prefix) const;

 private:
  Tensor weight_;
  Tensor bias_;
};

// Linear -> ReLU -> Linear.
class Mlp {
 public:
  Mlp() = default;
  Mlp(std::size_t in, std::size_t hidden, std::size_t out, Rng &rng);

  Tensor forward(const Tensor &x) const;

  void collect(ParameterList &out, const std::string &prefix) const;

 private:
  Linear first_;
  Linear second_;
};

}  // namespace asemol

#endif  // ASEMOL_LAYERS_H_
