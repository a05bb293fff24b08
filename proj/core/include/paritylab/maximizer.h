#ifndef PARITYLAB_MAXIMIZER_H_
#define PARITYLAB_MAXIMIZER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paritylab/parity_tensor.h"
#include "paritylab/sign_graph.h"

namespace paritylab {

struct EigenResult {
  std::vector<double> vector;  // unit length, indexed like S
  double eigenvalue = 0.0;     // Rayleigh quotient of `vector`
  int iterations = 0;
  bool converged = false;
};

// Power iteration on the +-1 matrix E restricted to S x S (diagonal +1),
// which converges to the eigenvalue of largest magnitude. Converged when
// successive iterates differ by less than `tol` in norm (up to sign, since a
// negative dominant eigenvalue flips the iterate every step). Otherwise the
// iterate with the largest |Rayleigh quotient| is returned. The start vector
// is a Gaussian draw from `start_seed`.
// Throws std::invalid_argument when S is empty.
EigenResult TopEigenvector(const SignGraph& g, std::span<const Vertex> s,
                           int max_iters = 1000, double tol = 1e-10,
                           std::uint64_t start_seed = 0x5eedULL);

struct PowerStep {
  std::vector<double> x;
  bool stalled = false;  // gradient vanished; x returned unchanged
};

// One step of symmetric higher-order power iteration:
//   x' = (grad A(x,..,x) + shift * x) / || . ||.
// shift = 0 is the plain method.
PowerStep TensorPowerStep(const ParityForm& form, std::span<const double> x,
                          double shift = 0.0);

enum class InitKind {
  kWarmStart,       // caller-supplied vector
  kTopDegree,       // indicator of the ceil(sqrt n) highest-degree vertices
  kSupportSqrtN,    // random member of U_k, k = ceil(sqrt n)
  kSupportRootN,    // random member of U_k, k = ceil(n^(1/r))
  kRandomUnit,      // uniform on the sphere
};

const char* InitLabel(InitKind kind);

struct MaximizeOptions {
  int restarts = 32;
  int iterations_per_restart = 100;
  std::uint64_t seed = 0;
  // Initializations other than the warm start. Restart 0 uses the warm start
  // when one is given; the remaining restarts cycle through this menu, with
  // kTopDegree used at most once since it is deterministic.
  std::vector<InitKind> menu = {InitKind::kTopDegree, InitKind::kSupportSqrtN,
                                InitKind::kSupportRootN, InitKind::kRandomUnit};
  std::optional<std::vector<double>> warm_start;
  // Shift per unit of sqrt(n): the step uses shift = shift_scale * r * sqrt(n).
  // A positive shift damps the sign oscillation plain power iteration shows
  // when a negative eigen-direction dominates.
  double shift_scale = 1.0;
  // Stop a restart once successive iterates move less than this.
  double tolerance = 1e-9;
  // Worker threads for restarts; 0 = hardware concurrency.
  int threads = 0;
};

struct MaximizerResult {
  std::vector<double> x;  // unit vector
  double value = 0.0;     // A(x, ..., x), recomputed on return
  int iterations = 0;     // total power steps over all restarts
  int restarts_used = 0;
  int best_restart = 0;
  std::string init_label;
  // Best value after each restart (prefix maxima, so non-decreasing).
  std::vector<double> best_by_restart;
};

// Heuristic maximization of A(x, ..., x) over the unit sphere. Every iterate
// is evaluated and the overall argmax is reported, so the result is monotone
// in the number of restarts for a fixed seed. For odd orders -x is tracked as
// well, so the reported value is never negative. Restarts run on derived
// seeds DeriveSeed(seed, {restart}) and are merged by (value, lower restart
// index), independent of thread count.
MaximizerResult Maximize(const ParityForm& form, const MaximizeOptions& options = {});

}  // namespace paritylab

#endif  // PARITYLAB_MAXIMIZER_H_
