#ifndef PARITYLAB_PARITY_TENSOR_H_
#define PARITYLAB_PARITY_TENSOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "paritylab/sign_graph.h"

namespace paritylab {

// The order-r parity tensor of a graph: for distinct k_1..k_r the entry is
// prod_{i<j} sign(k_i, k_j), and any entry with a repeated index is 0.
//
// Multilinear form:
//   A(x1, ..., xr) = sum over distinct (k_1..k_r) of A_k * x1[k_1] * ... * xr[k_r]
//
// Writing M for the sign matrix with its diagonal zeroed, the entry is
// prod_{i<j} M[k_i][k_j] for every tuple, repeated or not, because a repeated
// index pulls in a zero diagonal factor. Orders 2 and 3 use this to evaluate
// through dense matrix products:
//   A(x, y)    = x' M y
//   A(x, y, z) = x' (M o (M diag(z) M)) y         (o = Hadamard product)
// Orders 4 and 5 enumerate tuples directly.

using Vector = std::vector<double>;

// Guards against accidental blow-ups. These are configuration, never silent
// truncation: exceeding one raises ResourceLimitError.
struct TensorLimits {
  int max_order = 5;
  // n^r cap for DenseMaterialize.
  double max_dense_entries = 1e7;
  // n^r cap for the direct-enumeration path (orders >= 4, EvaluateEnumerated).
  double max_enumeration_terms = 2e9;
  // n cap for the dense n x n sign matrix used by orders 2 and 3.
  int max_matrix_dim = 8192;
};

// Order r plus an optional disjoint block partition selecting A|_{V1 x .. x Vr}.
struct TensorQuery {
  int order = 2;
  std::vector<VertexSet> blocks;  // empty => the full tensor

  bool has_blocks() const { return !blocks.empty(); }
  // Throws std::invalid_argument when blocks overlap, are empty, leave
  // [0, n), or do not match the order.
  void Validate(int n) const;
};

// Dense r-way array in row-major order: entry (k_1..k_r) is stored at
// sum_i k_i * n^(r-1-i).
struct DenseTensor {
  int n = 0;
  int order = 0;
  std::vector<std::int8_t> entries;

  std::size_t Offset(std::span<const Vertex> k) const;
  int at(std::span<const Vertex> k) const { return entries[Offset(k)]; }
};

// Single entry; k.size() is the order. Throws std::invalid_argument for an
// order below 2 or an index outside [0, n).
int TensorEntry(const SignGraph& g, std::span<const Vertex> k);

// Caches the zero-diagonal sign matrix of one graph so repeated evaluations
// (power iteration, experiments) do not rebuild it. Holds a reference to the
// graph, which must outlive it.
class ParityForm {
 public:
  ParityForm(const SignGraph& g, int order, TensorLimits limits = {});

  int order() const { return order_; }
  int size() const { return graph_->size(); }
  const SignGraph& graph() const { return *graph_; }

  // A(xs[0], ..., xs[r-1]).
  double Evaluate(std::span<const Vector> xs) const;
  // A(x, ..., x).
  double EvaluateSymmetric(std::span<const double> x) const;
  // grad_i A(x, ..., x) = r * A(e_i, x, ..., x).
  Vector Gradient(std::span<const double> x) const;

 private:
  void CheckVector(std::span<const double> x) const;

  const SignGraph* graph_;
  int order_;
  TensorLimits limits_;
  Eigen::MatrixXd m_;  // zero-diagonal sign matrix; empty for orders >= 4
};

// One-shot wrappers over ParityForm. The order is xs.size().
double Evaluate(const SignGraph& g, std::span<const Vector> xs,
                const TensorLimits& limits = {});
Vector Gradient(const SignGraph& g, int order, std::span<const double> x,
                const TensorLimits& limits = {});

// Reference evaluation: visits distinct tuples in lexicographic order and
// accumulates into one double. O(n^r); subject to max_enumeration_terms.
double EvaluateEnumerated(const SignGraph& g, std::span<const Vector> xs,
                          const TensorLimits& limits = {});

// Off-diagonal block form A|_V(xs) computed by the B-tensor recursion
//   B^(k_1..k_l)(x_{l+1}, ..., x_r)
//     = sum_{k in V_{l+1}} x_{l+1}[k] * prod_{i<=l} sign(k_i, k)
//                                     * B^(k_1..k_l, k)(x_{l+2}, ..., x_r)
// with B^(k_1..k_r) = 1. Only coordinates inside the blocks are read.
double EvaluateBlock(const SignGraph& g, const TensorQuery& query,
                     std::span<const Vector> xs);

// B^(prefix)(tail[0], ..., tail[r-l-1]) for l = prefix.size(). prefix[i]
// must lie in query.blocks[i]; tail supplies slots l+1..r.
double BEval(const SignGraph& g, const TensorQuery& query,
             std::span<const Vertex> prefix, std::span<const Vector> tail);

// Exact integer sum of entries over S_1 x ... x S_r (repeats contribute 0).
// A(chi^S1/sqrt|S1|, ...) is this value divided by sqrt(prod |S_i|).
std::int64_t IndicatorSum(const SignGraph& g, std::span<const VertexSet> supports);

DenseTensor DenseMaterialize(const SignGraph& g, int order,
                             const TensorLimits& limits = {});

}  // namespace paritylab

#endif  // PARITYLAB_PARITY_TENSOR_H_
