//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gradcheck.h"

#include <algorithm>
#include <cmath>

namespace asemol::testing {

GradCheck check_gradients(const std::function<Tensor()> &loss,
                          const std::vector<Tensor> &inputs, double h, double floor) {
  for (auto t : inputs) t.zero_grad();
  loss().backward();
  std::vector<std::vector<double>> analytic;
  for (const auto &t : inputs) {
    if (t.has_grad()) {
      analytic.emplace_back(t.grad().begin(), t.grad().end());
    } else {
      analytic.emplace_back(t.numel(), 0.0);
    }
  }
  GradCheck out;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    Tensor t = inputs[k];
    auto v = t.mutable_values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double orig = v[i];
      v[i] = orig + h;
      const double up = loss().item();
      v[i] = orig - h;
      const double down = loss().item();
      v[i] = orig;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic[k][i];
      const double abs_err = std::abs(a - numeric);
      const double rel = abs_err / std::max({std::abs(a), std::abs(numeric), floor});
      out.max_abs_error = std::max(out.max_abs_error, abs_err);
      out.max_rel_error = std::max(out.max_rel_error, rel);
      ++out.checked;
    }
  }
  for (auto t : inputs) t.zero_grad();
  return out;
}

}  // namespace asemol::testing
