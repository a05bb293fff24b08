#ifndef PARITYLAB_INDICATOR_H_
#define PARITYLAB_INDICATOR_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "paritylab/sign_graph.h"

namespace paritylab {

// One term y^(j) of the indicator decomposition: value sign(j) * 2^-|j| on
// every vertex of `support`, zero elsewhere.
struct IndicatorComponent {
  int level = 0;  // nonzero, in [-N, N]
  VertexSet support;  // nonempty, sorted

  double magnitude() const;  // 2^-|level|
  double value() const;      // sign(level) * 2^-|level|
  double norm() const;       // 2^-|level| * sqrt(|support|)
};

// Dyadic expansion of a vector in the unit ball into signed indicator
// vectors. Positive coordinates are peeled greedily:
//   S_j = { i : (x+ - sum_{k<j} 2^-k chi^{S_k})_i > 2^-j },  j = 1..N
// and the negative side mirrors it with its own sets T_j:
//   T_j = { i : (x- + sum_{k<j} 2^-k chi^{T_k})_i < -2^-j }.
// The inequalities are strict, so a coordinate equal to 2^-j joins at level
// j+1. Every subtraction is exact in binary floating point: the residual
// before level j lies in [0, 2^-(j-1)], so subtracting 2^-j from a value in
// (2^-j, 2^-(j-1)] loses nothing.
//
// Components come back ordered by |level| ascending, the positive level first
// at each magnitude (1, -1, 2, -2, ...). Empty levels are omitted.
// Throws std::invalid_argument when ||x|| > 1 + 1e-12 or depth < 1.
std::vector<IndicatorComponent> Decompose(std::span<const double> x, int depth);

// Coordinate-wise sum of the components as a length-n vector.
std::vector<double> Reconstruct(std::span<const IndicatorComponent> components, int n);

// ceil(r * log2(n)), at least 1.
int DefaultDepth(int order, int n);

// Member of the discretized set U: sign * |S|^(-1/2) * chi^S.
struct DiscretizedVector {
  int sign = 1;
  VertexSet support;

  std::vector<double> ToDense(int n) const;
};

// Visits every member of U_k (support size exactly k) once: supports in
// lexicographic order, sign +1 before -1 for each support. Throws
// ResourceLimitError when 2 * C(n, k) exceeds `guard`, std::invalid_argument
// unless 1 <= k <= n.
void ForEachInU(int n, int k, const std::function<void(const DiscretizedVector&)>& visit,
                double guard = 1e7);

// Number of members of U_k, 2 * C(n, k), as a double (may be huge).
double CountU(int n, int k);

}  // namespace paritylab

#endif  // PARITYLAB_INDICATOR_H_
