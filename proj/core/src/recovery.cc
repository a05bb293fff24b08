#include "paritylab/recovery.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "paritylab/indicator.h"
#include "paritylab/maximizer.h"
#include "paritylab/rng.h"

namespace paritylab {

namespace {

constexpr std::uint64_t kEigenTag = 1;
constexpr std::uint64_t kTrialTag = 2;

// min(C(n, k), cap) without overflow.
long long BinomialCapped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c >= static_cast<double>(cap)) return cap;
  }
  return std::min(cap, static_cast<long long>(std::llround(c)));
}

std::vector<int> DefaultSchedule(int support) {
  std::vector<int> s;
  for (int ell = 1; ell < support; ell *= 2) s.push_back(ell);
  s.push_back(support);
  return s;
}

class VertexMask {
 public:
  explicit VertexMask(const SignGraph& g) : words_(g.words_per_row(), 0) {}
  explicit VertexMask(const SignGraph& g, std::span<const Vertex> s) : VertexMask(g) {
    for (Vertex v : s) words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
  }
  bool contains(Vertex v) const {
    return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U;
  }
  // Neighbours of v inside the mask, counting v itself when present.
  int CountInRow(const SignGraph& g, Vertex v) const {
    auto row = g.row(v);
    int c = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) c += std::popcount(row[w] & words_[w]);
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

bool IsSubset(std::span<const Vertex> a, const VertexMask& b) {
  return std::all_of(a.begin(), a.end(), [&](Vertex v) { return b.contains(v); });
}

}  // namespace

void RecoveryConfig::Validate() const {
  if (!(degree_fraction > 0.0 && degree_fraction <= 1.0)) {
    throw std::invalid_argument("degree_fraction must lie in (0, 1]");
  }
  if (seed_set_size < 0) throw std::invalid_argument("seed_set_size must be >= 1 (or 0 for default)");
  if (trial_budget_per_ell < 0) throw std::invalid_argument("trial_budget_per_ell must be >= 0");
  if (order < 2) throw std::invalid_argument("order must be at least 2");
  if (eigen_iters < 1) throw std::invalid_argument("eigen_iters must be positive");
}

OverlapDiagnostic OverlapDiagnosticFor(std::span<const double> v, std::span<const Vertex> s,
                                       std::span<const Vertex> clique) {
  if (v.size() != s.size()) throw std::invalid_argument("eigenvector and support differ in size");
  double sum = 0.0;
  int overlap = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::binary_search(clique.begin(), clique.end(), s[i])) {
      sum += v[i];
      ++overlap;
    }
  }
  OverlapDiagnostic d;
  d.orientation = sum >= 0.0 ? 1 : -1;
  d.stat = std::abs(sum);
  if (overlap == 0) {
    d.stat = 0.0;
    d.passes = false;
    return d;
  }
  d.passes = d.stat > std::sqrt(overlap / 2.0);
  return d;
}

PrefixDensity PrefixDensityFor(std::span<const Vertex> ordered, std::span<const Vertex> clique,
                               int ell) {
  PrefixDensity d;
  for (Vertex v : ordered)
    if (std::binary_search(clique.begin(), clique.end(), v)) ++d.overlap;
  const int size = static_cast<int>(ordered.size());
  const int requested = ell > 0 ? ell : 8 * d.overlap;
  d.ell = std::min(requested, size);
  d.clamped = requested > size;
  for (int i = 0; i < d.ell; ++i)
    if (std::binary_search(clique.begin(), clique.end(), ordered[static_cast<std::size_t>(i)]))
      ++d.clique_in_prefix;
  d.holds = 8 * d.clique_in_prefix >= d.overlap;
  return d;
}

RecoveryReport Recover(const SignGraph& g, int p, std::span<const double> x,
                       const RecoveryConfig& config) {
  config.Validate();
  const int n = g.size();
  if (p < 1 || p > n) throw std::invalid_argument("Recover: p must lie in [1, n]");
  if (x.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("Recover: vector length does not match n");
  }

  const int depth = DefaultDepth(config.order, n);
  const std::vector<IndicatorComponent> components = Decompose(x, depth);

  const double log_n = std::log2(static_cast<double>(n));
  const int seed_size =
      config.seed_set_size > 0 ? config.seed_set_size
                               : std::max(1, static_cast<int>(std::ceil(10.0 * log_n - 1e-9)));
  const long long budget =
      config.trial_budget_per_ell > 0
          ? config.trial_budget_per_ell
          : std::min<long long>(static_cast<long long>(n) * n, 10000);
  const bool small_clique = p <= seed_size;
  const double degree_threshold = config.degree_fraction * p;

  std::optional<VertexMask> truth_mask;
  if (config.truth) truth_mask.emplace(g, *config.truth);

  RecoveryReport report;
  std::vector<const VertexSet*> seen;

  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const IndicatorComponent& comp = components[ci];
    const VertexSet& s = comp.support;
    ComponentDiagnostics diag;
    diag.level = comp.level;
    diag.support_size = static_cast<int>(s.size());
    if (std::any_of(seen.begin(), seen.end(), [&](const VertexSet* o) { return *o == s; })) {
      diag.duplicate_support = true;
      report.components.push_back(std::move(diag));
      continue;
    }
    seen.push_back(&s);

    const EigenResult eig = TopEigenvector(g, s, config.eigen_iters, config.eigen_tol,
                                           DeriveSeed(config.seed, {kEigenTag, ci}));
    diag.eigenvalue = eig.eigenvalue;
    diag.eigen_converged = eig.converged;

    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return eig.vector[a] > eig.vector[b]; });
    VertexSet ordered;
    ordered.reserve(s.size());
    for (std::size_t i : idx) ordered.push_back(s[i]);

    if (config.truth) {
      const VertexSet& truth = *config.truth;
      const OverlapDiagnostic od = OverlapDiagnosticFor(eig.vector, s, truth);
      diag.overlap = od;
      int overlap = 0;
      for (Vertex v : s) overlap += truth_mask->contains(v) ? 1 : 0;
      diag.overlap_size = overlap;
      if (od.passes) {
        VertexSet favourable = ordered;
        if (od.orientation < 0) std::reverse(favourable.begin(), favourable.end());
        diag.prefix = PrefixDensityFor(favourable, truth);
        if (!diag.prefix->holds) ++report.prefix_claim_violations;
      }
    }

    std::vector<int> schedule = config.ell_schedule.empty()
                                    ? DefaultSchedule(static_cast<int>(s.size()))
                                    : config.ell_schedule;
    const int orientations = config.try_both_orientations ? 2 : 1;
    for (int o = 0; o < orientations; ++o) {
      const VertexSet seq = o == 0 ? ordered : VertexSet(ordered.rbegin(), ordered.rend());
      for (int ell_requested : schedule) {
        const int ell = std::min(ell_requested, static_cast<int>(seq.size()));
        if (ell <= 0) continue;
        int q1_size = std::min(seed_size, ell);
        if (small_clique) q1_size = std::min(q1_size, p);
        const long long trials = BinomialCapped(ell, q1_size, budget);
        for (long long t = 0; t < trials; ++t) {
          Rng rng(DeriveSeed(config.seed, {kTrialTag, ci, static_cast<std::uint64_t>(o),
                                           static_cast<std::uint64_t>(ell),
                                           static_cast<std::uint64_t>(t)}));
          VertexSet q1;
          q1.reserve(static_cast<std::size_t>(q1_size));
          for (int pos : SampleSubset(ell, q1_size, rng)) q1.push_back(seq[static_cast<std::size_t>(pos)]);
          std::sort(q1.begin(), q1.end());
          const VertexSet q2 = CommonNeighbors(g, q1);
          ++diag.trials_used;
          ++report.trials_used;

          if (truth_mask && IsSubset(q1, *truth_mask)) {
            const VertexMask q2_mask(g, q2);
            if (!IsSubset(*config.truth, q2_mask)) ++report.containment_violations;
          }
          if (static_cast<int>(q2.size()) < p) continue;

          const VertexMask q2_mask(g, q2);
          VertexSet candidate;
          for (Vertex v : q2) {
            // v is in Q2, so CountInRow includes v itself.
            if (q2_mask.CountInRow(g, v) - 1 >= degree_threshold) candidate.push_back(v);
          }
          if (static_cast<int>(candidate.size()) == p && IsClique(g, candidate)) {
            report.found = true;
            report.clique = std::move(candidate);
          } else if (small_clique && static_cast<int>(q2.size()) == p && IsClique(g, q2)) {
            report.found = true;
            report.clique = q2;
          }
          if (report.found) {
            report.components.push_back(std::move(diag));
            return report;
          }
        }
      }
    }
    report.components.push_back(std::move(diag));
  }
  return report;
}

}  // namespace paritylab
