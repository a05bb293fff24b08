#ifndef PARITYLAB_RECOVERY_H_
#define PARITYLAB_RECOVERY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "paritylab/sign_graph.h"

namespace paritylab {

// Knobs of the seed-and-expand recovery. Zero-valued counts mean "derive the
// default from n and p".
struct RecoveryConfig {
  // Order r of the tensor that produced x; fixes the decomposition depth
  // ceil(r log2 n).
  int order = 3;
  // |Q1|; default ceil(10 log2 n). Capped at the current prefix length l.
  int seed_set_size = 0;
  // P' = vertices of Q2 with at least degree_fraction * p neighbours in Q2.
  double degree_fraction = 7.0 / 8.0;
  // Random Q1 draws per prefix length; default min(n^2, 10^4).
  int trial_budget_per_ell = 0;
  // Prefix lengths to try; default powers of two below |S|, then |S|.
  std::vector<int> ell_schedule;
  int eigen_iters = 1000;
  double eigen_tol = 1e-10;
  // Also try the reversed ordering (the eigenvector's sign is arbitrary).
  bool try_both_orientations = true;
  std::uint64_t seed = 0;
  // Testing mode: the planted clique, enabling the overlap diagnostics.
  std::optional<VertexSet> truth;

  // Throws std::invalid_argument for an out-of-range fraction or counts.
  void Validate() const;
};

struct OverlapDiagnostic {
  double stat = 0.0;  // max over +-v of sum_{i in S cap P} v_i
  bool passes = false;  // stat > sqrt(|S cap P| / 2); false when S cap P is empty
  int orientation = 1;  // sign achieving stat
};

// `v` is indexed like `s`.
OverlapDiagnostic OverlapDiagnosticFor(std::span<const double> v, std::span<const Vertex> s,
                                       std::span<const Vertex> clique);

struct PrefixDensity {
  bool holds = false;
  int ell = 0;           // prefix length actually used
  bool clamped = false;  // requested prefix exceeded |S|
  int clique_in_prefix = 0;
  int overlap = 0;  // |S cap P|
};

// `ordered` lists S by descending eigenvector entry. Checks that the first
// ell = 8 |S cap P| vertices (clamped to |S|) hold at least |S cap P| / 8
// clique members. A nonpositive `ell` selects the default.
PrefixDensity PrefixDensityFor(std::span<const Vertex> ordered, std::span<const Vertex> clique,
                               int ell = 0);

struct ComponentDiagnostics {
  int level = 0;
  int support_size = 0;
  double eigenvalue = 0.0;
  bool eigen_converged = false;
  int trials_used = 0;
  bool duplicate_support = false;  // same support as an earlier component; skipped
  // Testing mode only.
  std::optional<int> overlap_size;  // |S cap P|
  std::optional<OverlapDiagnostic> overlap;
  std::optional<PrefixDensity> prefix;
};

struct RecoveryReport {
  bool found = false;
  VertexSet clique;  // |clique| == p and a clique of g whenever found
  std::vector<ComponentDiagnostics> components;
  long long trials_used = 0;
  // Testing mode: trials whose Q1 was inside P but whose Q2 missed part of P.
  // Always zero by the self-adjacency convention; recorded as a check.
  int containment_violations = 0;
  // Testing mode: components where the overlap diagnostic passed but the
  // prefix-density claim failed. Must stay zero.
  int prefix_claim_violations = 0;
};

// Seed-and-expand clique recovery from a near-maximizing vector x:
//  1. indicator-decompose x to depth ceil(r log2 n);
//  2. for each component support S: take the dominant eigenvector of the
//     +-1 matrix on S x S and order S by descending entry;
//  3. for each prefix length l: draw Q1 from the first l vertices, let
//     Q2 = CommonNeighbors(Q1) and P' = {v in Q2 : deg_Q2(v) >= frac * p};
//     return P' when |P'| = p and P' is a clique.
// Never returns a non-clique. Deterministic in (g, p, x, config).
// Throws std::invalid_argument for p outside [1, n] or ||x|| > 1 + 1e-12.
RecoveryReport Recover(const SignGraph& g, int p, std::span<const double> x,
                       const RecoveryConfig& config = {});

}  // namespace paritylab

#endif  // PARITYLAB_RECOVERY_H_
