#include "paritylab/maximizer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "paritylab/indicator.h"
#include "paritylab/rng.h"

namespace paritylab {

namespace {

double Norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> Indicator(int n, std::span<const Vertex> support) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  const double v = 1.0 / std::sqrt(static_cast<double>(support.size()));
  for (Vertex i : support) x[static_cast<std::size_t>(i)] = v;
  return x;
}

int CeilRoot(int n, int order) {
  const double root = std::pow(static_cast<double>(n), 1.0 / order);
  return std::clamp(static_cast<int>(std::ceil(root - 1e-9)), 1, n);
}

std::vector<double> InitialVector(const ParityForm& form, InitKind kind,
                                  const MaximizeOptions& options, Rng& rng) {
  const int n = form.size();
  switch (kind) {
    case InitKind::kWarmStart: {
      std::vector<double> x = *options.warm_start;
      const double norm = Norm(x);
      if (norm == 0.0 || !std::isfinite(norm)) {
        throw std::invalid_argument("warm start must be a nonzero finite vector");
      }
      for (double& v : x) v /= norm;
      return x;
    }
    case InitKind::kTopDegree: {
      std::vector<Vertex> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      const SignGraph& g = form.graph();
      std::stable_sort(order.begin(), order.end(),
                       [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
      order.resize(static_cast<std::size_t>(CeilRoot(n, 2)));
      std::sort(order.begin(), order.end());
      return Indicator(n, order);
    }
    case InitKind::kSupportSqrtN:
      return Indicator(n, SampleSubset(n, CeilRoot(n, 2), rng));
    case InitKind::kSupportRootN:
      return Indicator(n, SampleSubset(n, CeilRoot(n, form.order()), rng));
    case InitKind::kRandomUnit:
      return RandomUnitVector(n, rng);
  }
  throw std::logic_error("unknown InitKind");
}

InitKind KindForRestart(int restart, const MaximizeOptions& options) {
  int j = restart;
  if (options.warm_start) {
    if (restart == 0) return InitKind::kWarmStart;
    --j;
  }
  const auto& menu = options.menu;
  if (j < static_cast<int>(menu.size())) return menu[static_cast<std::size_t>(j)];
  std::vector<InitKind> repeatable;
  for (InitKind k : menu)
    if (k != InitKind::kTopDegree && k != InitKind::kWarmStart) repeatable.push_back(k);
  if (repeatable.empty()) return InitKind::kRandomUnit;
  j -= static_cast<int>(menu.size());
  return repeatable[static_cast<std::size_t>(j) % repeatable.size()];
}

struct RestartOutcome {
  std::vector<double> x;
  double value = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  InitKind kind = InitKind::kRandomUnit;
};

RestartOutcome RunRestart(const ParityForm& form, const MaximizeOptions& options, int restart) {
  RestartOutcome out;
  out.kind = KindForRestart(restart, options);
  Rng rng(DeriveSeed(options.seed, {static_cast<std::uint64_t>(restart)}));
  std::vector<double> x = InitialVector(form, out.kind, options, rng);
  const int r = form.order();
  const double shift = options.shift_scale * r * std::sqrt(static_cast<double>(form.size()));
  const bool odd = r % 2 == 1;

  for (int step = 0;; ++step) {
    std::vector<double> grad = form.Gradient(x);
    // Euler: x . grad A(x,..,x) = r A(x,..,x).
    const double value = Dot(x, grad) / r;
    if (value > out.value) {
      out.value = value;
      out.x = x;
    }
    if (odd && -value > out.value) {
      out.value = -value;
      out.x = x;
      for (double& v : out.x) v = -v;
    }
    if (step >= options.iterations_per_restart) break;

    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += shift * x[i];
    const double norm = Norm(grad);
    if (norm == 0.0 || !std::isfinite(norm)) break;  // stalled
    double moved = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      grad[i] /= norm;
      moved += (grad[i] - x[i]) * (grad[i] - x[i]);
    }
    x = std::move(grad);
    ++out.iterations;
    if (std::sqrt(moved) < options.tolerance) {
      const double v = form.EvaluateSymmetric(x);
      if (v > out.value) {
        out.value = v;
        out.x = x;
      }
      if (odd && -v > out.value) {
        out.value = -v;
        out.x = x;
        for (double& c : out.x) c = -c;
      }
      break;
    }
  }
  // Report F(x) itself so the merged record agrees with a fresh evaluation to
  // the last bit. The Euler value can differ from it by rounding only.
  const double tracked = out.value;
  out.value = form.EvaluateSymmetric(out.x);
  if (std::abs(out.value - tracked) > 1e-9 * std::max(1.0, std::abs(tracked))) {
    throw std::logic_error("Maximize: tracked value disagrees with re-evaluation");
  }
  return out;
}

}  // namespace

const char* InitLabel(InitKind kind) {
  switch (kind) {
    case InitKind::kWarmStart:
      return "warm-start";
    case InitKind::kTopDegree:
      return "top-degree";
    case InitKind::kSupportSqrtN:
      return "support-sqrt-n";
    case InitKind::kSupportRootN:
      return "support-root-n";
    case InitKind::kRandomUnit:
      return "random-unit";
  }
  return "unknown";
}

EigenResult TopEigenvector(const SignGraph& g, std::span<const Vertex> s, int max_iters,
                           double tol, std::uint64_t start_seed) {
  if (s.empty()) throw std::invalid_argument("TopEigenvector: S must be nonempty");
  for (Vertex v : s)
    if (v < 0 || v >= g.size()) throw std::invalid_argument("TopEigenvector: vertex out of range");
  const auto k = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd b(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i)
      b(i, j) = g.sign(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);

  Rng rng(start_seed);
  std::vector<double> start = RandomUnitVector(static_cast<int>(k), rng);
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(start.data(), k);

  EigenResult best;
  best.vector.assign(start.begin(), start.end());
  best.eigenvalue = v.dot(b * v);
  double best_abs = -1.0;

  for (int it = 1; it <= max_iters; ++it) {
    Eigen::VectorXd y = b * v;
    const double rayleigh = v.dot(y);
    if (std::abs(rayleigh) > best_abs) {
      best_abs = std::abs(rayleigh);
      best.vector.assign(v.data(), v.data() + k);
      best.eigenvalue = rayleigh;
    }
    const double norm = y.norm();
    best.iterations = it;
    if (norm == 0.0) {
      // v lies in the null space: an exact eigenvector for eigenvalue 0.
      best.vector.assign(v.data(), v.data() + k);
      best.eigenvalue = 0.0;
      best.converged = true;
      return best;
    }
    y /= norm;
    const double moved = std::min((y - v).norm(), (y + v).norm());
    v = std::move(y);
    if (moved < tol) {
      best.vector.assign(v.data(), v.data() + k);
      best.eigenvalue = v.dot(b * v);
      best.converged = true;
      return best;
    }
  }
  return best;
}

PowerStep TensorPowerStep(const ParityForm& form, std::span<const double> x, double shift) {
  std::vector<double> grad = form.Gradient(x);
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += shift * x[i];
  const double norm = Norm(grad);
  if (norm == 0.0 || !std::isfinite(norm)) return {std::vector<double>(x.begin(), x.end()), true};
  for (double& v : grad) v /= norm;
  return {std::move(grad), false};
}

MaximizerResult Maximize(const ParityForm& form, const MaximizeOptions& options) {
  if (options.restarts < 1) throw std::invalid_argument("Maximize: restarts must be >= 1");
  if (options.iterations_per_restart < 0) {
    throw std::invalid_argument("Maximize: iterations_per_restart must be >= 0");
  }
  if (options.warm_start && options.warm_start->size() != static_cast<std::size_t>(form.size())) {
    throw std::invalid_argument("Maximize: warm start has the wrong length");
  }

  const int restarts = options.restarts;
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, restarts);

  if (threads == 1) {
    for (int i = 0; i < restarts; ++i) outcomes[static_cast<std::size_t>(i)] = RunRestart(form, options, i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int i = next++; i < restarts; i = next++)
            outcomes[static_cast<std::size_t>(i)] = RunRestart(form, options, i);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  MaximizerResult result;
  result.restarts_used = restarts;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < restarts; ++i) {
    const RestartOutcome& o = outcomes[static_cast<std::size_t>(i)];
    result.iterations += o.iterations;
    if (o.value > best) {  // strict: ties keep the lower restart index
      best = o.value;
      result.best_restart = i;
    }
    result.best_by_restart.push_back(best);
  }
  const RestartOutcome& winner = outcomes[static_cast<std::size_t>(result.best_restart)];
  result.x = winner.x;
  result.init_label = InitLabel(winner.kind);
  result.value = winner.value;
  return result;
}

}  // namespace paritylab
