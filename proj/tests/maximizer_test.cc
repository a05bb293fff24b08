#include "paritylab/maximizer.h"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "paritylab/rng.h"

namespace paritylab {
namespace {

double Norm(std::span<const double> x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

Eigen::MatrixXd ZeroDiagonal(const SignGraph& g) {
  const int n = g.size();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = i == j ? 0.0 : g.sign(i, j);
  return m;
}

std::vector<double> Indicator(int n, const VertexSet& s) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (Vertex v : s) x[static_cast<std::size_t>(v)] = 1.0 / std::sqrt(static_cast<double>(s.size()));
  return x;
}

TEST(TopEigenvector, Singleton) {
  const SignGraph g = SampleGnpHalf(5, 1);
  const Vertex s[] = {3};
  const EigenResult r = TopEigenvector(g, s);
  ASSERT_EQ(r.vector.size(), 1U);
  EXPECT_NEAR(std::abs(r.vector[0]), 1.0, 1e-15);
  EXPECT_NEAR(r.eigenvalue, 1.0, 1e-15);
}

TEST(TopEigenvector, AllPlusBlock) {
  const SignGraph k = CompleteGraph(12);
  const VertexSet s = {0, 2, 3, 7, 9};
  const EigenResult r = TopEigenvector(k, s);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.eigenvalue, 5.0, 1e-9);
  for (double v : r.vector) EXPECT_NEAR(std::abs(v), 1.0 / std::sqrt(5.0), 1e-6);
}

TEST(TopEigenvector, TwoByTwoNonEdge) {
  const SignGraph g = SignGraph::Builder(2).build();
  const Vertex s[] = {0, 1};
  const EigenResult r = TopEigenvector(g, s);
  EXPECT_NEAR(r.eigenvalue, 2.0, 1e-9);
  EXPECT_NEAR(r.vector[0], -r.vector[1], 1e-6);
  EXPECT_NEAR(std::abs(r.vector[0]), 1.0 / std::sqrt(2.0), 1e-6);
}

TEST(TopEigenvector, MatchesDenseSolverMagnitude) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SignGraph g = SampleGnpHalf(48, seed);
    VertexSet s(48);
    std::iota(s.begin(), s.end(), 0);
    const EigenResult r = TopEigenvector(g, s, 20000, 1e-12);
    Eigen::MatrixXd e = ZeroDiagonal(g) + Eigen::MatrixXd::Identity(48, 48);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e).eigenvalues();
    const double dominant = std::max(std::abs(ev(0)), std::abs(ev(47)));
    EXPECT_NEAR(std::abs(r.eigenvalue), dominant, 1e-3 * dominant);
  }
}

TEST(TopEigenvector, RejectsEmpty) {
  EXPECT_THROW(TopEigenvector(SampleGnpHalf(3, 1), {}), std::invalid_argument);
}

TEST(TensorPowerStep, UniformIsFixedOnCompleteGraph) {
  const SignGraph k = CompleteGraph(9);
  const std::vector<double> x(9, 1.0 / 3.0);
  for (int r = 2; r <= 4; ++r) {
    const ParityForm form(k, r);
    const PowerStep s = TensorPowerStep(form, x);
    EXPECT_FALSE(s.stalled);
    for (double v : s.x) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
  }
}

TEST(TensorPowerStep, ConcentratesOnPlantedClique) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PlantedInstance inst = PlantClique(SampleGnpHalf(256, seed), 64, seed + 100);
    const ParityForm form(inst.graph, 3);
    const PowerStep s = TensorPowerStep(form, Indicator(256, inst.clique));
    double min_in = 1e300;
    double max_out = -1e300;
    for (int v = 0; v < 256; ++v) {
      const bool in = std::binary_search(inst.clique.begin(), inst.clique.end(), v);
      const double xv = s.x[static_cast<std::size_t>(v)];
      if (in) min_in = std::min(min_in, xv);
      else max_out = std::max(max_out, xv);
    }
    EXPECT_GT(min_in, max_out) << "seed " << seed;
    EXPECT_NEAR(Norm(s.x), 1.0, 1e-12);
  }
}

TEST(TensorPowerStep, StallsOnZeroGradientAndIsScaleInvariant) {
  const SignGraph g = SampleGnpHalf(10, 3);
  const ParityForm form(g, 3);
  std::vector<double> e(10, 0.0);
  e[4] = 1.0;
  const PowerStep s = TensorPowerStep(form, e);
  EXPECT_TRUE(s.stalled);
  EXPECT_EQ(s.x, e);

  Rng rng(4);
  const std::vector<double> x = RandomUnitVector(10, rng);
  std::vector<double> cx = x;
  for (double& v : cx) v *= 3.5;
  const PowerStep a = TensorPowerStep(form, x);
  const PowerStep b = TensorPowerStep(form, cx);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(a.x[static_cast<std::size_t>(i)], b.x[static_cast<std::size_t>(i)], 1e-12);
}

TEST(Maximize, ResultInvariants) {
  const SignGraph g = SampleGnpHalf(60, 5);
  for (int r = 2; r <= 4; ++r) {
    const ParityForm form(g, r);
    MaximizeOptions opts;
    opts.restarts = 4;
    opts.iterations_per_restart = 15;
    opts.seed = 11;
    const MaximizerResult res = Maximize(form, opts);
    EXPECT_NEAR(Norm(res.x), 1.0, 1e-10);
    const double check = form.EvaluateSymmetric(res.x);
    EXPECT_LE(std::abs(check - res.value), 1e-9 * std::abs(check));
    EXPECT_GE(res.value, 0.0);
    EXPECT_EQ(res.restarts_used, 4);
    ASSERT_EQ(res.best_by_restart.size(), 4U);
    EXPECT_TRUE(std::is_sorted(res.best_by_restart.begin(), res.best_by_restart.end()));
    EXPECT_EQ(res.best_by_restart.back(), res.value);
  }
}

TEST(Maximize, DeterministicAndMonotoneInRestarts) {
  const SignGraph g = SampleGnpHalf(80, 6);
  const ParityForm form(g, 3);
  MaximizeOptions opts;
  opts.iterations_per_restart = 20;
  opts.seed = 3;
  double previous = -1.0;
  for (int restarts : {1, 2, 4, 8}) {
    opts.restarts = restarts;
    const MaximizerResult a = Maximize(form, opts);
    const MaximizerResult b = Maximize(form, opts);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.value, b.value);
    EXPECT_GE(a.value, previous);
    previous = a.value;
  }
}

TEST(Maximize, ThreadCountDoesNotChangeResult) {
  const SignGraph g = SampleGnpHalf(70, 7);
  const ParityForm form(g, 3);
  MaximizeOptions opts;
  opts.restarts = 6;
  opts.iterations_per_restart = 10;
  opts.threads = 1;
  const MaximizerResult one = Maximize(form, opts);
  opts.threads = 3;
  const MaximizerResult three = Maximize(form, opts);
  EXPECT_EQ(one.x, three.x);
  EXPECT_EQ(one.best_restart, three.best_restart);
}

TEST(Maximize, OrderTwoReachesTopEigenvalue) {
  // max of x' M x on the sphere is the largest algebraic eigenvalue of M.
  for (int n : {16, 40, 64}) {
    const SignGraph g = SampleGnpHalf(n, static_cast<std::uint64_t>(n));
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ZeroDiagonal(g)).eigenvalues();
    const MaximizerResult res = Maximize(ParityForm(g, 2), MaximizeOptions{});
    EXPECT_GE(res.value, 0.99 * ev(n - 1));
    EXPECT_LE(res.value, ev(n - 1) + 1e-9);
  }
}

TEST(Maximize, OrderTwoAgainstTopEigenvector) {
  // TopEigenvector works on M + I, so its Rayleigh quotient is one above
  // the zero-diagonal form's value at the same vector.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SignGraph g = SampleGnpHalf(256, seed);
    VertexSet all(256);
    std::iota(all.begin(), all.end(), 0);
    const EigenResult eig = TopEigenvector(g, all);
    MaximizeOptions opts;
    opts.restarts = 4;
    opts.iterations_per_restart = 100;
    const MaximizerResult res = Maximize(ParityForm(g, 2), opts);
    EXPECT_GE(res.value, 0.99 * (eig.eigenvalue - 1.0)) << "seed " << seed;
  }
}

TEST(Maximize, CompleteGraphOrderThree) {
  const SignGraph k = CompleteGraph(64);
  MaximizeOptions opts;
  opts.restarts = 4;
  const MaximizerResult res = Maximize(ParityForm(k, 3), opts);
  EXPECT_NEAR(res.value, 488.25, 1e-6);
}

TEST(Maximize, WarmStartIsNeverWorse) {
  const PlantedInstance inst = PlantClique(SampleGnpHalf(128, 9), 20, 10);
  const ParityForm form(inst.graph, 3);
  const std::vector<double> warm = Indicator(128, inst.clique);
  MaximizeOptions opts;
  opts.restarts = 2;
  opts.iterations_per_restart = 10;
  opts.warm_start = warm;
  const MaximizerResult res = Maximize(form, opts);
  EXPECT_GE(res.value, form.EvaluateSymmetric(warm));
  EXPECT_STREQ(InitLabel(InitKind::kWarmStart), "warm-start");
}

}  // namespace
}  // namespace paritylab
