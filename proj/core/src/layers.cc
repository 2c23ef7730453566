//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/layers.h"

#include <cmath>

namespace asemol {

Tensor xavier_uniform(std::size_t rows, std::size_t cols, Rng &rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::vector<double> v(rows * cols);
  for (double &x : v) x = uniform_draw(rng, -limit, limit);
  return Tensor::from_values({rows, cols}, std::move(v), true);
}

Linear::Linear(std::size_t in, std::size_t out, Rng &rng, bool bias)
    : weight_(xavier_uniform(in, out, rng)) {
  if (bias) bias_ = Tensor::zeros({1, out}, true);
}

Tensor Linear::forward(const Tensor &x) const {
  Tensor y = matmul(x, weight_);
  if (bias_.defined()) y = add(y, broadcast_row(bias_, y.rows()));
  return y;
}

void Linear::collect(ParameterList &out, const std::string &prefix) const {
  out.push_back({prefix + ".weight", weight_});
  if (bias_.defined()) out.push_back({prefix + ".bias", bias_});
}

Mlp::Mlp(std::size_t in, std::size_t hidden, std::size_t out, Rng &rng)
    : first_(in, hidden, rng), second_(hidden, out, rng) {}

Tensor Mlp::forward(const Tensor &x) const {
  return second_.forward(relu(first_.forward(x)));
}

void Mlp::collect(ParameterList &out, const std::string &prefix) const {
  first_.collect(out, prefix + ".0");
  second_.collect(out, prefix + ".1");
}

}  // namespace asemol
