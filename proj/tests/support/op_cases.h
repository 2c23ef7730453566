//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_TESTS_OP_CASES_H_
#define ASEMOL_TESTS_OP_CASES_H_

#include <functional>
#include <string>
#include <vector>

#include "asemol/tensor.h"

namespace asemol::testing {

// A scalar loss over `inputs` that exercises one differentiable op.
struct OpCase {
  std::string name;
  std::vector<Tensor> inputs;
  std::function<Tensor()> loss;
};

// One case per autodiff op, with inputs kept away from kinks and poles.
std::vector<OpCase> op_cases(std::uint64_t seed);

}  // namespace asemol::testing

#endif  // ASEMOL_TESTS_OP_CASES_H_
