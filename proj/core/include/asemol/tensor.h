//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_TENSOR_H_
#define ASEMOL_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace asemol {

using Shape = std::vector<std::size_t>;

std::string shape_string(const Shape &shape);

namespace internal {
struct Node;
struct NodeAccess;
}  // namespace internal

class ComputationTape;

/// Dense row-major array of doubles with reverse-mode gradient bookkeeping.
///
/// A Tensor is a cheap handle; copies share the same storage. Every operation
/// whose inputs require gradients records its output on the implicit tape,
/// keyed by a monotonically increasing creation id, so creation order is a
/// valid topological order of the computation.
///
/// All operations view tensors as matrices: rank 0 is 1x1, rank 1 of length n
/// is 1xn, rank 2 is itself. Higher ranks are storage-only.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor from_values(Shape shape, std::vector<double> values,
                            bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const noexcept { return node_ != nullptr; }

  const Shape &shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t numel() const;
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> values() const;
  // Direct write access; intended for initializers and optimizers acting on
  // leaf parameters between backward passes.
  std::span<double> mutable_values();

  double item() const;
  double at(std::size_t row, std::size_t col) const;

  bool requires_grad() const;
  void set_requires_grad(bool requires_grad);
  bool is_leaf() const;

  bool has_grad() const;
  std::span<const double> grad() const;
  std::span<double> mutable_grad();
  // Drops the gradient buffer; has_grad() is false afterwards.
  void zero_grad();

  /// Accumulates d(this)/d(leaf) into every reachable leaf requiring
  /// gradients. Intermediate gradients are recomputed from scratch on every
  /// call. Throws ContractError unless numel() == 1.
  void backward() const;

  // Identity of the underlying storage.
  const void *id() const noexcept { return node_.get(); }

 private:
  explicit Tensor(std::shared_ptr<internal::Node> node)
      : node_(std::move(node)) {}

  internal::Node &node() const;

  std::shared_ptr<internal::Node> node_;

  friend struct internal::NodeAccess;
  friend class ComputationTape;
};

/// The recorded operations reachable from a scalar loss, ordered so that each
/// operation appears after its inputs. Running it visits every operation
/// exactly once in reverse order.
class ComputationTape {
 public:
  explicit ComputationTape(const Tensor &loss);

  std::size_t size() const noexcept { return nodes_.size(); }
  // Creation ids in recording (topological) order.
  std::vector<std::uint64_t> operation_ids() const;

  void run_backward();

 private:
  Tensor loss_;
  std::vector<std::shared_ptr<internal::Node>> nodes_;
};

// ---------------------------------------------------------------------------
// Forward operations. Shape errors raise DimensionError naming both shapes;
// out-of-range indices raise IndexError.

Tensor matmul(const Tensor &a, const Tensor &b);
Tensor transpose(const Tensor &a);

Tensor add(const Tensor &a, const Tensor &b);
Tensor sub(const Tensor &a, const Tensor &b);
Tensor mul(const Tensor &a, const Tensor &b);
Tensor div(const Tensor &a, const Tensor &b);

Tensor scale(const Tensor &a, double factor);
Tensor add_scalar(const Tensor &a, double offset);
// Multiplies every element by the single element of `factor`.
Tensor scale_by(const Tensor &a, const Tensor &factor);
// out(i, j) = a(i, j) * column(i); column is rows(a) x 1.
Tensor row_scale(const Tensor &a, const Tensor &column);
// Repeats a 1 x n row `rows` times.
Tensor broadcast_row(const Tensor &row, std::size_t rows);
// Repeats the single element of `value` into a rows x cols matrix.
Tensor expand_scalar(const Tensor &value, std::size_t rows, std::size_t cols);

Tensor sigmoid(const Tensor &a);
Tensor relu(const Tensor &a);
// max(a, 0) elementwise; subgradient 0 at exactly 0.
Tensor max_with_zero(const Tensor &a);
Tensor exp(const Tensor &a);
Tensor log(const Tensor &a);
Tensor softmax(const Tensor &a, int axis);

Tensor sum(const Tensor &a);
Tensor sum(const Tensor &a, int axis);
// Exact for equal elements and never outside [min(a), max(a)].
Tensor mean(const Tensor &a);
Tensor mean(const Tensor &a, int axis);

Tensor concat(std::span<const Tensor> parts, int axis);
Tensor concat(std::initializer_list<Tensor> parts, int axis);
Tensor slice_cols(const Tensor &a, std::size_t begin, std::size_t end);

Tensor gather_rows(const Tensor &a, std::span<const std::size_t> indices);
// out(indices[i], :) += a(i, :); out has `num_rows` rows.
Tensor scatter_add_rows(const Tensor &a, std::span<const std::size_t> indices,
                        std::size_t num_rows);
// Column-wise max of a's rows per segment; empty segments yield zeros.
Tensor segment_max(const Tensor &a, std::span<const std::size_t> segments,
                   std::size_t num_segments);

// Value-identical copy through which no gradient flows.
Tensor stop_gradient(const Tensor &a);

/// Mean binary cross-entropy with logits over observed entries. `labels`
/// holds 0, 1, or a negative value for missing, aligned with `logits`.
/// Throws ContractError when no entry is observed.
Tensor bce_with_logits(const Tensor &logits,
                       std::span<const std::int8_t> labels);

}  // namespace asemol

#endif  // ASEMOL_TENSOR_H_
