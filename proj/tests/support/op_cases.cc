//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "op_cases.h"

#include <cstdint>

#include "asemol/rng.h"

namespace asemol::testing {

namespace {

// Values in +-[0.2, 1.2], away from the relu kink.
Tensor away_from_zero(Shape shape, Rng &rng) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  std::vector<double> v(n);
  for (auto &x : v) {
    const double m = uniform_draw(rng, 0.2, 1.2);
    x = rng() % 2 == 0 ? m : -m;
  }
  return Tensor::from_values(std::move(shape), std::move(v), true);
}

Tensor positive(Shape shape, Rng &rng) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  std::vector<double> v(n);
  for (auto &x : v) x = uniform_draw(rng, 0.5, 2.0);
  return Tensor::from_values(std::move(shape), std::move(v), true);
}

// Contracts with a fixed random weight so every output element matters.
std::function<Tensor(const Tensor &)> projector(Rng &rng) {
  auto cache = std::make_shared<std::vector<double>>();
  for (int i = 0; i < 64; ++i) cache->push_back(uniform_draw(rng, -1.0, 1.0));
  return [cache](const Tensor &t) {
    std::vector<double> w(t.numel());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (*cache)[i % cache->size()];
    return sum(mul(t, Tensor::from_values(t.shape(), std::move(w))));
  };
}

}  // namespace

std::vector<OpCase> op_cases(std::uint64_t seed) {
  Rng rng(seed);
  auto proj = projector(rng);
  std::vector<OpCase> cases;
  auto unary = [&](std::string name, Tensor x, std::function<Tensor(const Tensor &)> f) {
    cases.push_back({std::move(name), {x}, [x, f, proj] { return proj(f(x)); }});
  };
  auto binary = [&](std::string name, Tensor a, Tensor b,
                    std::function<Tensor(const Tensor &, const Tensor &)> f) {
    cases.push_back({std::move(name), {a, b}, [a, b, f, proj] { return proj(f(a, b)); }});
  };

  binary("matmul", away_from_zero({3, 4}, rng), away_from_zero({4, 2}, rng), matmul);
  unary("transpose", away_from_zero({3, 2}, rng), transpose);
  binary("add", away_from_zero({2, 3}, rng), away_from_zero({2, 3}, rng), add);
  binary("sub", away_from_zero({2, 3}, rng), away_from_zero({2, 3}, rng), sub);
  binary("mul", away_from_zero({2, 3}, rng), away_from_zero({2, 3}, rng), mul);
  binary("div", away_from_zero({2, 3}, rng), positive({2, 3}, rng), div);
  unary("scale", away_from_zero({2, 3}, rng), [](const Tensor &x) { return scale(x, -1.7); });
  unary("add_scalar", away_from_zero({2, 3}, rng),
        [](const Tensor &x) { return mul(add_scalar(x, 0.3), x); });
  binary("scale_by", away_from_zero({2, 3}, rng), away_from_zero({}, rng), scale_by);
  binary("row_scale", away_from_zero({3, 2}, rng), away_from_zero({3, 1}, rng), row_scale);
  unary("broadcast_row", away_from_zero({1, 3}, rng),
        [](const Tensor &x) { return broadcast_row(x, 4); });
  unary("expand_scalar", away_from_zero({}, rng),
        [](const Tensor &x) { return expand_scalar(x, 2, 3); });
  unary("sigmoid", away_from_zero({2, 3}, rng), [](const Tensor &x) { return sigmoid(x); });
  unary("relu", away_from_zero({2, 3}, rng), [](const Tensor &x) { return relu(x); });
  unary("max_with_zero", away_from_zero({2, 3}, rng),
        [](const Tensor &x) { return max_with_zero(x); });
  unary("exp", away_from_zero({2, 3}, rng), [](const Tensor &x) { return exp(x); });
  unary("log", positive({2, 3}, rng), [](const Tensor &x) { return log(x); });
  unary("softmax_rows", away_from_zero({3, 4}, rng),
        [](const Tensor &x) { return softmax(x, 1); });
  unary("softmax_cols", away_from_zero({3, 4}, rng),
        [](const Tensor &x) { return softmax(x, 0); });
  unary("sum_all", away_from_zero({2, 3}, rng),
        [](const Tensor &x) { return mul(sum(x), sum(x)); });
  unary("sum_axis0", away_from_zero({2, 3}, rng), [](const Tensor &x) { return sum(x, 0); });
  unary("sum_axis1", away_from_zero({2, 3}, rng), [](const Tensor &x) { return sum(x, 1); });
  unary("mean_all", away_from_zero({2, 3}, rng),
        [](const Tensor &x) { return mul(mean(x), mean(x)); });
  unary("mean_axis0", away_from_zero({2, 3}, rng), [](const Tensor &x) { return mean(x, 0); });
  unary("mean_axis1", away_from_zero({2, 3}, rng), [](const Tensor &x) { return mean(x, 1); });
  binary("concat_rows", away_from_zero({2, 3}, rng), away_from_zero({1, 3}, rng),
         [](const Tensor &a, const Tensor &b) { return concat({a, b}, 0); });
  binary("concat_cols", away_from_zero({2, 3}, rng), away_from_zero({2, 1}, rng),
         [](const Tensor &a, const Tensor &b) { return concat({a, b}, 1); });
  unary("slice_cols", away_from_zero({2, 5}, rng),
        [](const Tensor &x) { return slice_cols(x, 1, 4); });
  unary("gather_rows", away_from_zero({3, 2}, rng), [](const Tensor &x) {
    const std::size_t idx[] = {2, 0, 2, 1};
    return gather_rows(x, idx);
  });
  unary("scatter_add_rows", away_from_zero({4, 2}, rng), [](const Tensor &x) {
    const std::size_t idx[] = {1, 0, 1, 2};
    return scatter_add_rows(x, idx, 4);
  });
  {
    // Distinct values so each segment maximum is unique.
    std::vector<double> v;
    for (int i = 0; i < 10; ++i) v.push_back(0.37 * ((i * 7) % 10) - 1.1);
    Tensor x = Tensor::from_values({5, 2}, v, true);
    unary("segment_max", x, [](const Tensor &t) {
      const std::size_t seg[] = {0, 1, 0, 1, 1};
      return segment_max(t, seg, 3);
    });
  }
  {
    Tensor x = away_from_zero({3, 2}, rng);
    cases.push_back({"bce_with_logits", {x}, [x] {
                       const std::int8_t y[] = {1, 0, -1, 1, 0, 0};
                       return bce_with_logits(x, y);
                     }});
  }
  return cases;
}

}  // namespace asemol::testing
