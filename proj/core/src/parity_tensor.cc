#include "paritylab/parity_tensor.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "paritylab/errors.h"

namespace paritylab {

namespace {

void CheckOrder(int order, const TensorLimits& limits) {
  if (order < 2) throw std::invalid_argument("tensor order must be at least 2");
  if (order > limits.max_order) {
    throw ResourceLimitError("tensor order " + std::to_string(order) +
                             " exceeds the configured maximum " +
                             std::to_string(limits.max_order));
  }
}

void CheckLength(std::span<const double> x, int n) {
  if (x.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                " does not match n = " + std::to_string(n));
  }
}

void CheckEnumeration(int n, int order, const TensorLimits& limits) {
  if (std::pow(static_cast<double>(n), order) > limits.max_enumeration_terms) {
    throw ResourceLimitError("enumerating n^r = " + std::to_string(n) + "^" +
                             std::to_string(order) +
                             " tuples exceeds max_enumeration_terms");
  }
}

// Copies into aligned storage. Eigen peels reductions over a Map according to
// the runtime address, so reading caller memory in place makes the low bits
// depend on where the vector happens to live.
Eigen::VectorXd AsEigen(std::span<const double> x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

// Depth-first walk over distinct tuples k_1 < ... (lexicographic, not
// increasing) with k_d restricted to candidates[d]. Calls leaf(sign, k) on
// every complete tuple.
template <typename Leaf>
class TupleWalker {
 public:
  TupleWalker(const SignGraph& g, std::span<const VertexSet> candidates, Leaf& leaf)
      : g_(g), candidates_(candidates), leaf_(leaf), k_(candidates.size()) {}

  void Run() { Walk(0, 1); }

 private:
  void Walk(std::size_t depth, int sign) {
    if (depth == candidates_.size()) {
      leaf_(sign, std::span<const Vertex>(k_));
      return;
    }
    for (Vertex v : candidates_[depth]) {
      int s = sign;
      bool repeated = false;
      for (std::size_t e = 0; e < depth; ++e) {
        if (k_[e] == v) {
          repeated = true;
          break;
        }
        if (!g_.adjacent(k_[e], v)) s = -s;
      }
      if (repeated) continue;
      k_[depth] = v;
      Walk(depth + 1, s);
    }
  }

  const SignGraph& g_;
  std::span<const VertexSet> candidates_;
  Leaf& leaf_;
  std::vector<Vertex> k_;
};

VertexSet Support(std::span<const double> x) {
  VertexSet s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) s.push_back(static_cast<Vertex>(i));
  return s;
}

double EnumerateForm(const SignGraph& g, std::span<const Vector> xs) {
  std::vector<VertexSet> candidates;
  candidates.reserve(xs.size());
  for (const Vector& x : xs) candidates.push_back(Support(x));
  double acc = 0.0;
  auto leaf = [&](int sign, std::span<const Vertex> k) {
    double term = sign;
    for (std::size_t d = 0; d < k.size(); ++d) term *= xs[d][static_cast<std::size_t>(k[d])];
    acc += term;
  };
  TupleWalker walker(g, candidates, leaf);
  walker.Run();
  return acc;
}

Eigen::MatrixXd ZeroDiagonalSigns(const SignGraph& g) {
  const int n = g.size();
  Eigen::MatrixXd m(n, n);
  for (Vertex j = 0; j < n; ++j) {
    for (Vertex i = 0; i < n; ++i) m(i, j) = i == j ? 0.0 : g.sign(i, j);
  }
  return m;
}

// Lower triangle of (M diag(x) M) o M, built as two symmetric rank-k updates
// M_+ M_+^T - M_- M_-^T with M_+- = M diag(sqrt(x_+-)) so only half of the
// product is formed. The upper triangle is unspecified. The result lives in a
// per-thread buffer that the next call on the same thread overwrites.
const Eigen::MatrixXd& MaskedCongruenceLower(const Eigen::MatrixXd& m, std::span<const double> x) {
  thread_local Eigen::MatrixXd a_pos;
  thread_local Eigen::MatrixXd a_neg;
  thread_local Eigen::MatrixXd w;
  const Eigen::Index n = m.rows();
  Eigen::Index pos = 0;
  Eigen::Index neg = 0;
  for (double v : x) {
    pos += v > 0.0 ? 1 : 0;
    neg += v < 0.0 ? 1 : 0;
  }
  a_pos.resize(n, pos);
  a_neg.resize(n, neg);
  pos = 0;
  neg = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double v = x[static_cast<std::size_t>(j)];
    if (v > 0.0) a_pos.col(pos++) = m.col(j) * std::sqrt(v);
    if (v < 0.0) a_neg.col(neg++) = m.col(j) * std::sqrt(-v);
  }
  w.setZero(n, n);
  // Eigen's blocking heuristic divides by the depth, so skip empty updates.
  if (pos > 0) w.selfadjointView<Eigen::Lower>().rankUpdate(a_pos, 1.0);
  if (neg > 0) w.selfadjointView<Eigen::Lower>().rankUpdate(a_neg, -1.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) w(i, j) *= m(i, j);
  }
  return w;
}

}  // namespace

void TensorQuery::Validate(int n) const {
  if (order < 2) throw std::invalid_argument("tensor order must be at least 2");
  if (!has_blocks()) return;
  if (blocks.size() != static_cast<std::size_t>(order)) {
    throw std::invalid_argument("block count must equal the tensor order");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const VertexSet& block : blocks) {
    if (block.empty()) throw std::invalid_argument("blocks must be nonempty");
    for (Vertex v : block) {
      if (v < 0 || v >= n) throw std::invalid_argument("block vertex outside [0, n)");
      if (seen[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument("blocks must be pairwise disjoint (vertex " +
                                    std::to_string(v) + " repeats)");
      }
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
}

std::size_t DenseTensor::Offset(std::span<const Vertex> k) const {
  std::size_t off = 0;
  for (Vertex v : k) off = off * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  return off;
}

int TensorEntry(const SignGraph& g, std::span<const Vertex> k) {
  if (k.size() < 2) throw std::invalid_argument("tensor order must be at least 2");
  for (Vertex v : k) {
    if (v < 0 || v >= g.size()) throw std::invalid_argument("index outside [0, n)");
  }
  int sign = 1;
  for (std::size_t a = 0; a < k.size(); ++a) {
    for (std::size_t b = a + 1; b < k.size(); ++b) {
      if (k[a] == k[b]) return 0;
      if (!g.adjacent(k[a], k[b])) sign = -sign;
    }
  }
  return sign;
}

ParityForm::ParityForm(const SignGraph& g, int order, TensorLimits limits)
    : graph_(&g), order_(order), limits_(limits) {
  CheckOrder(order, limits_);
  if (order <= 3) {
    if (g.size() > limits_.max_matrix_dim) {
      throw ResourceLimitError("n = " + std::to_string(g.size()) +
                               " exceeds max_matrix_dim for the dense sign matrix");
    }
    m_ = ZeroDiagonalSigns(g);
  } else {
    CheckEnumeration(g.size(), order, limits_);
  }
}

void ParityForm::CheckVector(std::span<const double> x) const { CheckLength(x, size()); }

double ParityForm::Evaluate(std::span<const Vector> xs) const {
  if (xs.size() != static_cast<std::size_t>(order_)) {
    throw std::invalid_argument("expected " + std::to_string(order_) + " vectors, got " +
                                std::to_string(xs.size()));
  }
  for (const Vector& x : xs) CheckVector(x);
  if (order_ == 2) {
    return AsEigen(xs[0]).dot(m_ * AsEigen(xs[1]));
  }
  if (order_ == 3) {
    const Eigen::MatrixXd t = m_ * AsEigen(xs[2]).asDiagonal() * m_;
    return AsEigen(xs[0]).dot(m_.cwiseProduct(t) * AsEigen(xs[1]));
  }
  return EnumerateForm(*graph_, xs);
}

double ParityForm::EvaluateSymmetric(std::span<const double> x) const {
  CheckVector(x);
  if (order_ == 2) return AsEigen(x).dot(m_ * AsEigen(x));
  if (order_ == 3) {
    const Eigen::MatrixXd& w = MaskedCongruenceLower(m_, x);
    return AsEigen(x).dot(w.selfadjointView<Eigen::Lower>() * AsEigen(x));
  }
  const std::vector<Vector> xs(static_cast<std::size_t>(order_), Vector(x.begin(), x.end()));
  return Evaluate(xs);
}

Vector ParityForm::Gradient(std::span<const double> x) const {
  CheckVector(x);
  const int n = size();
  Vector grad(static_cast<std::size_t>(n), 0.0);
  // Products land in aligned storage first; see AsEigen.
  auto emit = [&](const Eigen::VectorXd& v) { grad.assign(v.data(), v.data() + v.size()); };
  if (order_ == 2) {
    emit(2.0 * (m_ * AsEigen(x)));
    return grad;
  }
  if (order_ == 3) {
    // grad_i = 3 * sum_{j,k} M_ij x_j M_jk x_k M_ki = 3 * ((W o M) x)_i,
    // W = M diag(x) M.
    const Eigen::MatrixXd& w = MaskedCongruenceLower(m_, x);
    emit(3.0 * (w.selfadjointView<Eigen::Lower>() * AsEigen(x)));
    return grad;
  }
  // Slot 0 pinned to e_i, remaining slots x.
  const VertexSet support = Support(x);
  std::vector<VertexSet> candidates(static_cast<std::size_t>(order_), support);
  for (Vertex i = 0; i < n; ++i) {
    candidates[0] = {i};
    double acc = 0.0;
    auto leaf = [&](int sign, std::span<const Vertex> k) {
      double term = sign;
      for (std::size_t d = 1; d < k.size(); ++d) term *= x[static_cast<std::size_t>(k[d])];
      acc += term;
    };
    TupleWalker walker(*graph_, candidates, leaf);
    walker.Run();
    grad[static_cast<std::size_t>(i)] = order_ * acc;
  }
  return grad;
}

double Evaluate(const SignGraph& g, std::span<const Vector> xs, const TensorLimits& limits) {
  return ParityForm(g, static_cast<int>(xs.size()), limits).Evaluate(xs);
}

Vector Gradient(const SignGraph& g, int order, std::span<const double> x,
                const TensorLimits& limits) {
  return ParityForm(g, order, limits).Gradient(x);
}

double EvaluateEnumerated(const SignGraph& g, std::span<const Vector> xs,
                          const TensorLimits& limits) {
  const int order = static_cast<int>(xs.size());
  CheckOrder(order, limits);
  CheckEnumeration(g.size(), order, limits);
  for (const Vector& x : xs) CheckLength(x, g.size());
  return EnumerateForm(g, xs);
}

namespace {

double BRecurse(const SignGraph& g, const TensorQuery& query, std::vector<Vertex>& prefix,
                std::span<const Vector> xs_full) {
  const std::size_t l = prefix.size();
  if (l == static_cast<std::size_t>(query.order)) return 1.0;  // empty product
  const Vector& x = xs_full[l];
  double acc = 0.0;
  for (Vertex k : query.blocks[l]) {
    const double xk = x[static_cast<std::size_t>(k)];
    if (xk == 0.0) continue;
    int sign = 1;
    for (Vertex ki : prefix)
      if (!g.adjacent(ki, k)) sign = -sign;
    prefix.push_back(k);
    acc += xk * sign * BRecurse(g, query, prefix, xs_full);
    prefix.pop_back();
  }
  return acc;
}

}  // namespace

double BEval(const SignGraph& g, const TensorQuery& query, std::span<const Vertex> prefix,
             std::span<const Vector> tail) {
  query.Validate(g.size());
  if (!query.has_blocks()) throw std::invalid_argument("BEval requires a block query");
  const std::size_t r = static_cast<std::size_t>(query.order);
  if (prefix.size() > r) throw std::invalid_argument("prefix longer than the order");
  if (prefix.size() + tail.size() != r) {
    throw std::invalid_argument("prefix and tail must cover exactly r slots");
  }
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const VertexSet& block = query.blocks[i];
    if (std::find(block.begin(), block.end(), prefix[i]) == block.end()) {
      throw std::invalid_argument("prefix index " + std::to_string(prefix[i]) +
                                  " is not in block " + std::to_string(i));
    }
  }
  for (const Vector& x : tail) CheckLength(x, g.size());
  // Pad the slot list so slot l+1 sits at index l.
  std::vector<Vector> slots(prefix.size());
  slots.insert(slots.end(), tail.begin(), tail.end());
  std::vector<Vertex> k(prefix.begin(), prefix.end());
  return BRecurse(g, query, k, slots);
}

double EvaluateBlock(const SignGraph& g, const TensorQuery& query, std::span<const Vector> xs) {
  if (!query.has_blocks()) throw std::invalid_argument("EvaluateBlock requires a block query");
  return BEval(g, query, {}, xs);
}

std::int64_t IndicatorSum(const SignGraph& g, std::span<const VertexSet> supports) {
  if (supports.size() < 2) throw std::invalid_argument("tensor order must be at least 2");
  for (const VertexSet& s : supports)
    for (Vertex v : s)
      if (v < 0 || v >= g.size()) throw std::invalid_argument("support index outside [0, n)");
  std::int64_t acc = 0;
  auto leaf = [&](int sign, std::span<const Vertex>) { acc += sign; };
  TupleWalker walker(g, supports, leaf);
  walker.Run();
  return acc;
}

DenseTensor DenseMaterialize(const SignGraph& g, int order, const TensorLimits& limits) {
  CheckOrder(order, limits);
  const double entries = std::pow(static_cast<double>(g.size()), order);
  if (entries > limits.max_dense_entries) {
    throw ResourceLimitError("dense materialization of " + std::to_string(entries) +
                             " entries exceeds max_dense_entries");
  }
  DenseTensor t{g.size(), order, std::vector<std::int8_t>(static_cast<std::size_t>(entries))};
  std::vector<Vertex> k(static_cast<std::size_t>(order), 0);
  for (std::size_t off = 0; off < t.entries.size(); ++off) {
    t.entries[off] = static_cast<std::int8_t>(TensorEntry(g, k));
    for (int d = order - 1; d >= 0; --d) {
      if (++k[static_cast<std::size_t>(d)] < g.size()) break;
      k[static_cast<std::size_t>(d)] = 0;
    }
  }
  return t;
}

}  // namespace paritylab
