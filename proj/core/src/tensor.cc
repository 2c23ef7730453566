//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/tensor.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "asemol/error.h"

namespace asemol {

namespace internal {

struct Node {
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;
  bool requires_grad = false;
  std::uint64_t id = 0;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node &)> backward;
};

struct NodeAccess {
  static Tensor wrap(std::shared_ptr<Node> node) {
    return Tensor(std::move(node));
  }
  static Node &node(const Tensor &t) { return t.node(); }
  static const std::shared_ptr<Node> &ptr(const Tensor &t) { return t.node_; }
};

}  // namespace internal

using internal::Node;
using internal::NodeAccess;

std::string shape_string(const Shape &shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) os << ", ";
    os << shape[i];
  }
  os << ')';
  return os.str();
}

namespace {

std::atomic<std::uint64_t> next_node_id{1};

std::size_t product(const Shape &shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

struct Dims {
  std::size_t rows;
  std::size_t cols;

  bool operator==(const Dims &) const = default;
};

Dims dims_of(const Shape &shape) {
  switch (shape.size()) {
  case 0:
    return {1, 1};
  case 1:
    return {1, shape[0]};
  case 2:
    return {shape[0], shape[1]};
  default:
    throw DimensionError("operation requires rank <= 2, got shape "
                         + shape_string(shape));
  }
}

Dims dims_of(const Tensor &t) { return dims_of(t.shape()); }

Node &node_of(const Tensor &t) { return NodeAccess::node(t); }

std::vector<double> &grad_buffer(Node &n) {
  if (n.grad.empty()) n.grad.assign(n.value.size(), 0.0);
  return n.grad;
}

// Parent i of an op node, or nullptr when it needs no gradient.
Node *grad_parent(Node &self, std::size_t i) {
  Node *p = self.parents[i].get();
  return p->requires_grad ? p : nullptr;
}

Tensor record(Shape shape, std::vector<double> value,
              std::initializer_list<const Tensor *> inputs,
              std::function<void(Node &)> backward) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->value = std::move(value);
  node->id = next_node_id.fetch_add(1, std::memory_order_relaxed);
  bool needs_grad = false;
  for (const Tensor *t : inputs) needs_grad |= node_of(*t).requires_grad;
  if (needs_grad) {
    node->requires_grad = true;
    node->parents.reserve(inputs.size());
    for (const Tensor *t : inputs) node->parents.push_back(NodeAccess::ptr(*t));
    node->backward = std::move(backward);
  }
  return NodeAccess::wrap(std::move(node));
}

void require_defined(const Tensor &t, const char *op) {
  if (!t.defined())
    throw ContractError(std::string(op) + ": undefined tensor argument");
}

void require_same_dims(const Tensor &a, const Tensor &b, const char *op) {
  require_defined(a, op);
  require_defined(b, op);
  if (!(dims_of(a) == dims_of(b))) {
    throw DimensionError(std::string(op) + ": shape mismatch "
                         + shape_string(a.shape()) + " vs "
                         + shape_string(b.shape()));
  }
}

// C(m x n) += A(m x k) * B(k x n). Each output element accumulates over k in
// ascending order, so a row's result does not depend on the other rows.
void gemm_acc(const double *a, const double *b, double *c, std::size_t m,
              std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double *crow = c + i * n;
    const double *arow = a + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double *brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

std::vector<double> transposed(const double *a, std::size_t rows,
                               std::size_t cols) {
  std::vector<double> out(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j * rows + i] = a[i * cols + j];
  return out;
}

template <class Fwd, class Deriv>
Tensor unary(const Tensor &a, const char *op, Fwd fwd, Deriv deriv) {
  require_defined(a, op);
  const auto &av = a.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < av.size(); ++i) out[i] = fwd(av[i]);
  return record(a.shape(), std::move(out), {&a}, [deriv](Node &self) {
    Node *pa = grad_parent(self, 0);
    if (pa == nullptr) return;
    auto &ga = grad_buffer(*pa);
    for (std::size_t i = 0; i < ga.size(); ++i)
      ga[i] += self.grad[i] * deriv(pa->value[i], self.value[i]);
  });
}

int normalize_axis(int axis, const char *op) {
  if (axis != 0 && axis != 1) {
    throw DimensionError(std::string(op) + ": axis must be 0 or 1, got "
                         + std::to_string(axis));
  }
  return axis;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tensor

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  return full(std::move(shape), 0.0, requires_grad);
}

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  const std::size_t n = product(shape);
  return from_values(std::move(shape), std::vector<double>(n, value),
                     requires_grad);
}

Tensor Tensor::from_values(Shape shape, std::vector<double> values,
                           bool requires_grad) {
  if (product(shape) != values.size()) {
    throw DimensionError("from_values: shape " + shape_string(shape)
                         + " holds " + std::to_string(product(shape))
                         + " elements, got " + std::to_string(values.size()));
  }
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->value = std::move(values);
  node->requires_grad = requires_grad;
  node->id = next_node_id.fetch_add(1, std::memory_order_relaxed);
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return from_values({}, {value}, requires_grad);
}

Node &Tensor::node() const {
  if (!node_) throw ContractError("use of an undefined tensor");
  return *node_;
}

const Shape &Tensor::shape() const { return node().shape; }

std::size_t Tensor::numel() const { return node().value.size(); }

std::size_t Tensor::rows() const { return dims_of(shape()).rows; }

std::size_t Tensor::cols() const { return dims_of(shape()).cols; }

std::span<const double> Tensor::values() const { return node().value; }

std::span<double> Tensor::mutable_values() { return node().value; }

double Tensor::item() const {
  if (numel() != 1) {
    throw ContractError("item() requires a single-element tensor, got shape "
                        + shape_string(shape()));
  }
  return node().value[0];
}

double Tensor::at(std::size_t row, std::size_t col) const {
  const Dims d = dims_of(shape());
  if (row >= d.rows || col >= d.cols) {
    throw IndexError("at(" + std::to_string(row) + ", " + std::to_string(col)
                     + ") out of bounds for shape " + shape_string(shape()));
  }
  return node().value[row * d.cols + col];
}

bool Tensor::requires_grad() const { return node().requires_grad; }

void Tensor::set_requires_grad(bool requires_grad) {
  if (!is_leaf())
    throw ContractError("requires_grad can only be changed on leaf tensors");
  node().requires_grad = requires_grad;
}

bool Tensor::is_leaf() const { return !node().backward; }

bool Tensor::has_grad() const { return !node().grad.empty(); }

std::span<const double> Tensor::grad() const { return node().grad; }

std::span<double> Tensor::mutable_grad() { return grad_buffer(node()); }

void Tensor::zero_grad() {
  node().grad.clear();
  node().grad.shrink_to_fit();
}

void Tensor::backward() const {
  ComputationTape tape(*this);
  tape.run_backward();
}

// ---------------------------------------------------------------------------
// ComputationTape

ComputationTape::ComputationTape(const Tensor &loss) : loss_(loss) {
  const Node &root = loss.node();
  if (root.value.size() != 1) {
    throw ContractError("backward() requires a single-element loss, got shape "
                        + shape_string(root.shape));
  }
  if (!root.requires_grad) return;

  std::unordered_set<const Node *> seen;
  std::vector<std::shared_ptr<Node>> stack{loss.node_};
  seen.insert(loss.node_.get());
  while (!stack.empty()) {
    auto n = std::move(stack.back());
    stack.pop_back();
    for (const auto &p : n->parents) {
      if (p->requires_grad && seen.insert(p.get()).second) stack.push_back(p);
    }
    nodes_.push_back(std::move(n));
  }
  std::sort(nodes_.begin(), nodes_.end(),
            [](const auto &x, const auto &y) { return x->id < y->id; });
}

std::vector<std::uint64_t> ComputationTape::operation_ids() const {
  std::vector<std::uint64_t> ids;
  ids.reserve(nodes_.size());
  for (const auto &n : nodes_) ids.push_back(n->id);
  return ids;
}

void ComputationTape::run_backward() {
  if (nodes_.empty()) return;
  for (auto &n : nodes_) {
    if (n->backward) n->grad.assign(n->value.size(), 0.0);
  }
  Node &root = *nodes_.back();
  grad_buffer(root)[0] += 1.0;
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    Node &n = **it;
    if (n.backward) n.backward(n);
  }
}

// ---------------------------------------------------------------------------
// Linear algebra

Tensor matmul(const Tensor &a, const Tensor &b) {
  require_defined(a, "matmul");
  require_defined(b, "matmul");
  const Dims da = dims_of(a), db = dims_of(b);
  if (da.cols != db.rows) {
    throw DimensionError("matmul: shape mismatch " + shape_string(a.shape())
                         + " vs " + shape_string(b.shape()));
  }
  const std::size_t m = da.rows, k = da.cols, n = db.cols;
  std::vector<double> out(m * n, 0.0);
  gemm_acc(a.values().data(), b.values().data(), out.data(), m, k, n);
  return record({m, n}, std::move(out), {&a, &b}, [m, k, n](Node &self) {
    Node *pa = grad_parent(self, 0);
    Node *pb = grad_parent(self, 1);
    if (pa != nullptr) {
      // dA = dC * B^T
      const auto bt = transposed(self.parents[1]->value.data(), k, n);
      gemm_acc(self.grad.data(), bt.data(), grad_buffer(*pa).data(), m, n, k);
    }
    if (pb != nullptr) {
      // dB = A^T * dC
      const auto at = transposed(self.parents[0]->value.data(), m, k);
      gemm_acc(at.data(), self.grad.data(), grad_buffer(*pb).data(), k, m, n);
    }
  });
}

Tensor transpose(const Tensor &a) {
  require_defined(a, "transpose");
  const Dims d = dims_of(a);
  auto out = transposed(a.values().data(), d.rows, d.cols);
  return record({d.cols, d.rows}, std::move(out), {&a}, [d](Node &self) {
    Node *pa = grad_parent(self, 0);
    if (pa == nullptr) return;
    auto &ga = grad_buffer(*pa);
    for (std::size_t i = 0; i < d.rows; ++i)
      for (std::size_t j = 0; j < d.cols; ++j)
        ga[i * d.cols + j] += self.grad[j * d.rows + i];
  });
}

// ---------------------------------------------------------------------------
// Elementwise binary

Tensor add(const Tensor &a, const Tensor &b) {
  require_same_dims(a, b, "add");
  const auto av = a.values(), bv = b.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] + bv[i];
  return record(a.shape(), std::move(out), {&a, &b}, [](Node &self) {
    for (std::size_t p = 0; p < 2; ++p) {
      if (Node *pn = grad_parent(self, p)) {
        auto &g = grad_buffer(*pn);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
      }
    }
  });
}

Tensor sub(const Tensor &a, const Tensor &b) {
  require_same_dims(a, b, "sub");
  const auto av = a.values(), bv = b.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] - bv[i];
  return record(a.shape(), std::move(out), {&a, &b}, [](Node &self) {
    if (Node *pa = grad_parent(self, 0)) {
      auto &g = grad_buffer(*pa);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    }
    if (Node *pb = grad_parent(self, 1)) {
      auto &g = grad_buffer(*pb);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= self.grad[i];
    }
  });
}

Tensor mul(const Tensor &a, const Tensor &b) {
  require_same_dims(a, b, "mul");
  const auto av = a.values(), bv = b.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  return record(a.shape(), std::move(out), {&a, &b}, [](Node &self) {
    const auto &av = self.parents[0]->value;
    const auto &bv = self.parents[1]->value;
    if (Node *pa = grad_parent(self, 0)) {
      auto &g = grad_buffer(*pa);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * bv[i];
    }
    if (Node *pb = grad_parent(self, 1)) {
      auto &g = grad_buffer(*pb);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * av[i];
    }
  });
}

Tensor div(const Tensor &a, const Tensor &b) {
  require_same_dims(a, b, "div");
  const auto av = a.values(), bv = b.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] / bv[i];
  return record(a.shape(), std::move(out), {&a, &b}, [](Node &self) {
    const auto &bv = self.parents[1]->value;
    if (Node *pa = grad_parent(self, 0)) {
      auto &g = grad_buffer(*pa);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] / bv[i];
    }
    if (Node *pb = grad_parent(self, 1)) {
      auto &g = grad_buffer(*pb);
      for (std::size_t i = 0; i < g.size(); ++i)
        g[i] -= self.grad[i] * self.value[i] / bv[i];
    }
  });
}

Tensor scale(const Tensor &a, double factor) {
  return unary(
      a, "scale", [factor](double x) { return x * factor; },
      [factor](double, double) { return factor; });
}

Tensor add_scalar(const Tensor &a, double offset) {
  return unary(
      a, "add_scalar", [offset](double x) { return x + offset; },
      [](double, double) { return 1.0; });
}

Tensor scale_by(const Tensor &a, const Tensor &factor) {
  require_defined(a, "scale_by");
  require_defined(factor, "scale_by");
  if (factor.numel() != 1) {
    throw DimensionError("scale_by: factor must hold one element, got shape "
                         + shape_string(factor.shape()) + " for operand "
                         + shape_string(a.shape()));
  }
  const double f = factor.values()[0];
  const auto av = a.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * f;
  return record(a.shape(), std::move(out), {&a, &factor}, [](Node &self) {
    const auto &av = self.parents[0]->value;
    const double f = self.parents[1]->value[0];
    if (Node *pa = grad_parent(self, 0)) {
      auto &g = grad_buffer(*pa);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * f;
    }
    if (Node *pf = grad_parent(self, 1)) {
      double acc = 0.0;
      for (std::size_t i = 0; i < av.size(); ++i) acc += self.grad[i] * av[i];
      grad_buffer(*pf)[0] += acc;
    }
  });
}

Tensor row_scale(const Tensor &a, const Tensor &column) {
  require_defined(a, "row_scale");
  require_defined(column, "row_scale");
  const Dims d = dims_of(a);
  if (column.numel() != d.rows) {
    throw DimensionError("row_scale: shape mismatch " + shape_string(a.shape())
                         + " vs " + shape_string(column.shape()));
  }
  const auto av = a.values(), cv = column.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j)
      out[i * d.cols + j] = av[i * d.cols + j] * cv[i];
  return record(a.shape(), std::move(out), {&a, &column}, [d](Node &self) {
    const auto &av = self.parents[0]->value;
    const auto &cv = self.parents[1]->value;
    if (Node *pa = grad_parent(self, 0)) {
      auto &g = grad_buffer(*pa);
      for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j)
          g[i * d.cols + j] += self.grad[i * d.cols + j] * cv[i];
    }
    if (Node *pc = grad_parent(self, 1)) {
      auto &g = grad_buffer(*pc);
      for (std::size_t i = 0; i < d.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d.cols; ++j)
          acc += self.grad[i * d.cols + j] * av[i * d.cols + j];
        g[i] += acc;
      }
    }
  });
}

Tensor broadcast_row(const Tensor &row, std::size_t rows) {
  require_defined(row, "broadcast_row");
  const Dims d = dims_of(row);
  if (d.rows != 1) {
    throw DimensionError("broadcast_row: expected a single row, got shape "
                         + shape_string(row.shape()));
  }
  const auto rv = row.values();
  std::vector<double> out(rows * d.cols);
  for (std::size_t i = 0; i < rows; ++i)
    std::copy(rv.begin(), rv.end(), out.begin() + i * d.cols);
  return record({rows, d.cols}, std::move(out), {&row},
                [rows, d](Node &self) {
                  Node *pr = grad_parent(self, 0);
                  if (pr == nullptr) return;
                  auto &g = grad_buffer(*pr);
                  for (std::size_t i = 0; i < rows; ++i)
                    for (std::size_t j = 0; j < d.cols; ++j)
                      g[j] += self.grad[i * d.cols + j];
                });
}

Tensor expand_scalar(const Tensor &value, std::size_t rows, std::size_t cols) {
  require_defined(value, "expand_scalar");
  if (value.numel() != 1) {
    throw DimensionError("expand_scalar: expected one element, got shape "
                         + shape_string(value.shape()));
  }
  std::vector<double> out(rows * cols, value.values()[0]);
  return record({rows, cols}, std::move(out), {&value}, [](Node &self) {
    Node *pv = grad_parent(self, 0);
    if (pv == nullptr) return;
    double acc = 0.0;
    for (double g : self.grad) acc += g;
    grad_buffer(*pv)[0] += acc;
  });
}

// ---------------------------------------------------------------------------
// Elementwise unary

Tensor sigmoid(const Tensor &a) {
  return unary(
      a, "sigmoid",
      [](double x) {
        if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor relu(const Tensor &a) {
  return unary(
      a, "relu", [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor max_with_zero(const Tensor &a) { return relu(a); }

Tensor exp(const Tensor &a) {
  return unary(
      a, "exp", [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Tensor log(const Tensor &a) {
  return unary(
      a, "log", [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Tensor softmax(const Tensor &a, int axis) {
  require_defined(a, "softmax");
  normalize_axis(axis, "softmax");
  const Dims d = dims_of(a);
  const auto av = a.values();
  // Lines are rows for axis 1 and columns for axis 0.
  const std::size_t lines = axis == 1 ? d.rows : d.cols;
  const std::size_t len = axis == 1 ? d.cols : d.rows;
  const std::size_t line_stride = axis == 1 ? d.cols : 1;
  const std::size_t elem_stride = axis == 1 ? 1 : d.cols;
  std::vector<double> out(av.size());
  for (std::size_t l = 0; l < lines; ++l) {
    const std::size_t base = l * line_stride;
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < len; ++e)
      mx = std::max(mx, av[base + e * elem_stride]);
    double total = 0.0;
    for (std::size_t e = 0; e < len; ++e) {
      const double v = std::exp(av[base + e * elem_stride] - mx);
      out[base + e * elem_stride] = v;
      total += v;
    }
    for (std::size_t e = 0; e < len; ++e) out[base + e * elem_stride] /= total;
  }
  return record(a.shape(), std::move(out), {&a},
                [lines, len, line_stride, elem_stride](Node &self) {
                  Node *pa = grad_parent(self, 0);
                  if (pa == nullptr) return;
                  auto &g = grad_buffer(*pa);
                  for (std::size_t l = 0; l < lines; ++l) {
                    const std::size_t base = l * line_stride;
                    double dot = 0.0;
                    for (std::size_t e = 0; e < len; ++e) {
                      const std::size_t i = base + e * elem_stride;
                      dot += self.grad[i] * self.value[i];
                    }
                    for (std::size_t e = 0; e < len; ++e) {
                      const std::size_t i = base + e * elem_stride;
                      g[i] += self.value[i] * (self.grad[i] - dot);
                    }
                  }
                });
}

// ---------------------------------------------------------------------------
// Reductions

Tensor sum(const Tensor &a) {
  require_defined(a, "sum");
  double acc = 0.0;
  for (double v : a.values()) acc += v;
  return record({}, {acc}, {&a}, [](Node &self) {
    Node *pa = grad_parent(self, 0);
    if (pa == nullptr) return;
    auto &g = grad_buffer(*pa);
    for (double &x : g) x += self.grad[0];
  });
}

Tensor sum(const Tensor &a, int axis) {
  require_defined(a, "sum");
  normalize_axis(axis, "sum");
  const Dims d = dims_of(a);
  const auto av = a.values();
  if (axis == 0) {
    std::vector<double> out(d.cols, 0.0);
    for (std::size_t i = 0; i < d.rows; ++i)
      for (std::size_t j = 0; j < d.cols; ++j) out[j] += av[i * d.cols + j];
    return record({1, d.cols}, std::move(out), {&a}, [d](Node &self) {
      Node *pa = grad_parent(self, 0);
      if (pa == nullptr) return;
      auto &g = grad_buffer(*pa);
      for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j)
          g[i * d.cols + j] += self.grad[j];
    });
  }
  std::vector<double> out(d.rows, 0.0);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j) out[i] += av[i * d.cols + j];
  return record({d.rows, 1}, std::move(out), {&a}, [d](Node &self) {
    Node *pa = grad_parent(self, 0);
    if (pa == nullptr) return;
    auto &g = grad_buffer(*pa);
    for (std::size_t i = 0; i < d.rows; ++i)
      for (std::size_t j = 0; j < d.cols; ++j)
        g[i * d.cols + j] += self.grad[i];
  });
}

Tensor mean(const Tensor &a) {
  require_defined(a, "mean");
  if (a.numel() == 0) throw ContractError("mean of an empty tensor");
  // Shifted by the first element and clamped to the input range, so equal
  // inputs give that value exactly and rounding never leaves [min, max].
  const auto av = a.values();
  const double x0 = av[0];
  double lo = x0, hi = x0, acc = 0.0;
  for (double v : av) {
    acc += v - x0;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double n = static_cast<double>(av.size());
  const double value = std::clamp(x0 + acc / n, lo, hi);
  return record({}, {value}, {&a}, [n](Node &self) {
    Node *pa = grad_parent(self, 0);
    if (pa == nullptr) return;
    auto &g = grad_buffer(*pa);
    for (double &x : g) x += self.grad[0] / n;
  });
}

Tensor mean(const Tensor &a, int axis) {
  require_defined(a, "mean");
  normalize_axis(axis, "mean");
  const Dims d = dims_of(a);
  const std::size_t n = axis == 0 ? d.rows : d.cols;
  if (n == 0) throw ContractError("mean over an empty axis");
  return scale(sum(a, axis), 1.0 / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Structural

Tensor concat(std::span<const Tensor> parts, int axis) {
  normalize_axis(axis, "concat");
  if (parts.empty()) throw ContractError("concat of zero tensors");
  for (const auto &p : parts) require_defined(p, "concat");
  const Dims first = dims_of(parts[0]);
  std::vector<Dims> dims;
  dims.reserve(parts.size());
  std::size_t total = 0;
  for (const auto &p : parts) {
    const Dims d = dims_of(p);
    const bool ok = axis == 0 ? d.cols == first.cols : d.rows == first.rows;
    if (!ok) {
      throw DimensionError("concat: shape mismatch "
                           + shape_string(parts[0].shape()) + " vs "
                           + shape_string(p.shape()));
    }
    total += axis == 0 ? d.rows : d.cols;
    dims.push_back(d);
  }
  const Dims out_dims =
      axis == 0 ? Dims{total, first.cols} : Dims{first.rows, total};
  std::vector<double> out(out_dims.rows * out_dims.cols);
  std::size_t offset = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto v = parts[p].values();
    const Dims d = dims[p];
    if (axis == 0) {
      std::copy(v.begin(), v.end(), out.begin() + offset * out_dims.cols);
      offset += d.rows;
    } else {
      for (std::size_t i = 0; i < d.rows; ++i)
        std::copy(v.begin() + i * d.cols, v.begin() + (i + 1) * d.cols,
                  out.begin() + i * out_dims.cols + offset);
      offset += d.cols;
    }
  }

  auto node = std::make_shared<Node>();
  node->shape = {out_dims.rows, out_dims.cols};
  node->value = std::move(out);
  node->id = next_node_id.fetch_add(1, std::memory_order_relaxed);
  bool needs_grad = false;
  for (const auto &p : parts) needs_grad |= p.requires_grad();
  if (needs_grad) {
    node->requires_grad = true;
    for (const auto &p : parts) node->parents.push_back(NodeAccess::ptr(p));
    node->backward = [axis, dims, out_dims](Node &self) {
      std::size_t offset = 0;
      for (std::size_t p = 0; p < dims.size(); ++p) {
        const Dims d = dims[p];
        if (Node *pn = grad_parent(self, p)) {
          auto &g = grad_buffer(*pn);
          for (std::size_t i = 0; i < d.rows; ++i)
            for (std::size_t j = 0; j < d.cols; ++j) {
              const std::size_t src =
                  axis == 0 ? (offset + i) * out_dims.cols + j
                            : i * out_dims.cols + offset + j;
              g[i * d.cols + j] += self.grad[src];
            }
        }
        offset += axis == 0 ? d.rows : d.cols;
      }
    };
  }
  return NodeAccess::wrap(std::move(node));
}

Tensor concat(std::initializer_list<Tensor> parts, int axis) {
  return concat(std::span<const Tensor>(parts.begin(), parts.size()), axis);
}

Tensor slice_cols(const Tensor &a, std::size_t begin, std::size_t end) {
  require_defined(a, "slice_cols");
  const Dims d = dims_of(a);
  if (begin > end || end > d.cols) {
    throw IndexError("slice_cols: range [" + std::to_string(begin) + ", "
                     + std::to_string(end) + ") out of bounds for shape "
                     + shape_string(a.shape()));
  }
  const std::size_t w = end - begin;
  const auto av = a.values();
  std::vector<double> out(d.rows * w);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < w; ++j)
      out[i * w + j] = av[i * d.cols + begin + j];
  return record({d.rows, w}, std::move(out), {&a}, [d, begin, w](Node &self) {
    Node *pa = grad_parent(self, 0);
    if (pa == nullptr) return;
    auto &g = grad_buffer(*pa);
    for (std::size_t i = 0; i < d.rows; ++i)
      for (std::size_t j = 0; j < w; ++j)
        g[i * d.cols + begin + j] += self.grad[i * w + j];
  });
}

Tensor gather_rows(const Tensor &a, std::span<const std::size_t> indices) {
  require_defined(a, "gather_rows");
  const Dims d = dims_of(a);
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  std::vector<double> out(idx.size() * d.cols);
  const auto av = a.values();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= d.rows) {
      throw IndexError("gather_rows: index " + std::to_string(idx[r])
                       + " out of bounds for shape " + shape_string(a.shape()));
    }
    std::copy(av.begin() + idx[r] * d.cols, av.begin() + (idx[r] + 1) * d.cols,
              out.begin() + r * d.cols);
  }
  const std::size_t n = idx.size();
  return record({n, d.cols}, std::move(out), {&a},
                [idx = std::move(idx), d](Node &self) {
                  Node *pa = grad_parent(self, 0);
                  if (pa == nullptr) return;
                  auto &g = grad_buffer(*pa);
                  for (std::size_t r = 0; r < idx.size(); ++r) {
                    double *dst = g.data() + idx[r] * d.cols;
                    const double *src = self.grad.data() + r * d.cols;
                    for (std::size_t j = 0; j < d.cols; ++j) dst[j] += src[j];
                  }
                });
}

Tensor scatter_add_rows(const Tensor &a, std::span<const std::size_t> indices,
                        std::size_t num_rows) {
  require_defined(a, "scatter_add_rows");
  const Dims d = dims_of(a);
  if (indices.size() != d.rows) {
    throw DimensionError("scatter_add_rows: " + std::to_string(indices.size())
                         + " indices for shape " + shape_string(a.shape()));
  }
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  std::vector<double> out(num_rows * d.cols, 0.0);
  const auto av = a.values();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= num_rows) {
      throw IndexError("scatter_add_rows: index " + std::to_string(idx[r])
                       + " out of bounds for " + std::to_string(num_rows)
                       + " output rows");
    }
    double *dst = out.data() + idx[r] * d.cols;
    const double *src = av.data() + r * d.cols;
    for (std::size_t j = 0; j < d.cols; ++j) dst[j] += src[j];
  }
  return record({num_rows, d.cols}, std::move(out), {&a},
                [idx = std::move(idx), d](Node &self) {
                  Node *pa = grad_parent(self, 0);
                  if (pa == nullptr) return;
                  auto &g = grad_buffer(*pa);
                  for (std::size_t r = 0; r < idx.size(); ++r) {
                    double *dst = g.data() + r * d.cols;
                    const double *src = self.grad.data() + idx[r] * d.cols;
                    for (std::size_t j = 0; j < d.cols; ++j) dst[j] += src[j];
                  }
                });
}

Tensor segment_max(const Tensor &a, std::span<const std::size_t> segments,
                   std::size_t num_segments) {
  require_defined(a, "segment_max");
  const Dims d = dims_of(a);
  if (segments.size() != d.rows) {
    throw DimensionError("segment_max: " + std::to_string(segments.size())
                         + " segment ids for shape " + shape_string(a.shape()));
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> argmax(num_segments * d.cols, kNone);
  std::vector<double> out(num_segments * d.cols, 0.0);
  const auto av = a.values();
  for (std::size_t r = 0; r < d.rows; ++r) {
    const std::size_t s = segments[r];
    if (s >= num_segments) {
      throw IndexError("segment_max: segment " + std::to_string(s)
                       + " out of bounds for " + std::to_string(num_segments)
                       + " segments");
    }
    for (std::size_t j = 0; j < d.cols; ++j) {
      const std::size_t o = s * d.cols + j;
      const double v = av[r * d.cols + j];
      if (argmax[o] == kNone || v > out[o]) {
        out[o] = v;
        argmax[o] = r;
      }
    }
  }
  return record({num_segments, d.cols}, std::move(out), {&a},
                [argmax = std::move(argmax), d](Node &self) {
                  Node *pa = grad_parent(self, 0);
                  if (pa == nullptr) return;
                  auto &g = grad_buffer(*pa);
                  for (std::size_t o = 0; o < argmax.size(); ++o) {
                    if (argmax[o] == kNone) continue;
                    g[argmax[o] * d.cols + o % d.cols] += self.grad[o];
                  }
                });
}

Tensor stop_gradient(const Tensor &a) {
  require_defined(a, "stop_gradient");
  const auto v = a.values();
  return Tensor::from_values(a.shape(), std::vector<double>(v.begin(), v.end()),
                             false);
}

Tensor bce_with_logits(const Tensor &logits,
                       std::span<const std::int8_t> labels) {
  require_defined(logits, "bce_with_logits");
  if (labels.size() != logits.numel()) {
    throw DimensionError("bce_with_logits: " + std::to_string(labels.size())
                         + " labels for logits of shape "
                         + shape_string(logits.shape()));
  }
  std::vector<std::int8_t> y(labels.begin(), labels.end());
  const auto x = logits.values();
  std::size_t observed = 0;
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0) continue;
    ++observed;
    const double t = y[i] > 0 ? 1.0 : 0.0;
    acc += std::max(x[i], 0.0) - x[i] * t + std::log1p(std::exp(-std::abs(x[i])));
  }
  if (observed == 0)
    throw ContractError("bce_with_logits: no observed labels in batch");
  const double inv = 1.0 / static_cast<double>(observed);
  return record({}, {acc * inv}, {&logits},
                [y = std::move(y), inv](Node &self) {
                  Node *pl = grad_parent(self, 0);
                  if (pl == nullptr) return;
                  auto &g = grad_buffer(*pl);
                  const auto &x = pl->value;
                  for (std::size_t i = 0; i < y.size(); ++i) {
                    if (y[i] < 0) continue;
                    const double t = y[i] > 0 ? 1.0 : 0.0;
                    const double s = x[i] >= 0.0
                                         ? 1.0 / (1.0 + std::exp(-x[i]))
                                         : std::exp(x[i]) / (1.0 + std::exp(x[i]));
                    g[i] += self.grad[0] * (s - t) * inv;
                  }
                });
}

}  // namespace asemol
