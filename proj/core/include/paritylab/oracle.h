#ifndef PARITYLAB_ORACLE_H_
#define PARITYLAB_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "paritylab/indicator.h"
#include "paritylab/parity_tensor.h"
#include "paritylab/sign_graph.h"

namespace paritylab {

// Exact maximum of A(x1, ..., xr) over x_i in U = { +-|S|^(-1/2) chi^S }.
// The value is integer_sum / sqrt(denominator) with both parts exact.
struct UMaximum {
  double value = 0.0;
  std::int64_t integer_sum = 0;
  std::int64_t denominator = 1;  // prod |S_i|
  std::vector<DiscretizedVector> argmax;
};

// Enumerates supports for the first r-1 slots and solves the last slot in
// closed form (the form is linear in it: for each support size m the best
// set is the m largest or m smallest coefficients). Ties between candidate
// values are compared exactly in integers. Throws ResourceLimitError when
// (2^n)^r exceeds `guard` (n <= 8 passes for r = 3 by default).
UMaximum BruteForceMaxOverU(const SignGraph& g, int order, double guard = 16777216.0);

enum class VSource {
  kUnitRandom,  // each v uniform on the unit sphere
  kWorstIsh,    // every coordinate 1/sqrt(N')
  kSupplied,
};

struct TailEstimate {
  int count = 0;      // N
  int dimension = 0;  // N'
  double threshold = 0.0;
  long long samples = 0;
  long long exceed_count = 0;
  double empirical_rate = 0.0;
  // exp(-t/18) * (4 sqrt(e pi))^N, unclamped (often > 1 for small t).
  double paper_bound = 0.0;
  double sample_mean = 0.0;  // of sum_i (u_i . v_i)^2
  double sample_max = 0.0;
};

// The tail bound for sums of squared projections of random sign vectors:
// u_1..u_N have i.i.d. +-1 entries, v_1..v_N are fixed with ||v_i|| <= 1, and
// the statistic is sum_i (u_i . v_i)^2. The v's are drawn once from `seed`
// (or taken from `supplied`), then `samples` independent draws of the u's
// are compared against `threshold`.
// Throws std::invalid_argument for any ||v_i|| > 1 + 1e-12 or bad sizes.
TailEstimate ConcentrationTail(int count, int dimension, double threshold, long long samples,
                               std::uint64_t seed, VSource source = VSource::kUnitRandom,
                               const std::vector<std::vector<double>>* supplied = nullptr);

double ConcentrationBound(int count, double threshold);

struct UApproxReport {
  int n = 0;
  int order = 0;
  int depth = 0;  // ceil(r log2 n), 0 when n == 1
  double factor = 0.0;  // (2 * depth)^r
  double u_maximum = 0.0;
  double bound = 0.0;  // factor * u_maximum
  double sampled_maximum = 0.0;
  long long samples = 0;
  long long violations = 0;
  bool passed() const { return violations == 0; }
};

// Samples r-tuples from the unit ball and checks
//   A(x1, ..., xr) <= (2 ceil(r log2 n))^r * max over U^r.
UApproxReport CheckUApprox(const SignGraph& g, int order, long long samples, std::uint64_t seed);

struct PartitionReport {
  int n = 0;
  int order = 0;
  long long partitions = 0;
  // Every ordered distinct r-tuple lies in this many partitions (with k_i in
  // V_i); -1 when the counts differ.
  long long appearances = 0;
  bool equal_appearance = false;
  long long tuples_checked = 0;
  long long violations = 0;
  // max |sum_V A|_V - appearances * A| over checked tuples.
  double identity_error = 0.0;
  bool passed() const { return equal_appearance && violations == 0; }
};

// Enumerates the ordered partitions of [n] into r labelled blocks of size
// n/r and checks, for random vector tuples,
//   |A(x1..xr)| <= (r^r / |partitions|) * sum over partitions |A|_V(x1..xr)|.
// Requires r to divide n and the partition count to be at most 10^6.
PartitionReport CheckPartitionIdentity(const SignGraph& g, int order, long long tuples,
                                       std::uint64_t seed);

// Sum over every index tuple of entry * x1[k_1] * ... * xr[k_r], straight
// from the materialized array (lexicographic order). When `blocks` is given
// only tuples in V_1 x ... x V_r contribute.
double ContractDense(const DenseTensor& t, std::span<const Vector> xs,
                     const std::vector<VertexSet>* blocks = nullptr);

// Ordered partitions of [n] into `order` labelled blocks of equal size.
std::vector<std::vector<VertexSet>> EqualPartitions(int n, int order);

}  // namespace paritylab

#endif  // PARITYLAB_ORACLE_H_
