#ifndef PARITYLAB_EXPERIMENTS_H_
#define PARITYLAB_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "paritylab/oracle.h"

namespace paritylab {

enum class ExperimentKind { kNormScaling, kRecoveryThreshold, kConcentration, kOracleSuite };

const char* KindName(ExperimentKind kind);
// Throws UsageError for unknown names.
ExperimentKind ParseKind(const std::string& name);

// One experiment, read from a flat key=value file ('#' starts a comment).
//
//   kind         norm-scaling | recovery-threshold | concentration | oracle-suite
//   n_grid       comma list, ascending (norm, recovery, oracle)
//   r            tensor order
//   p_grid       comma list, ascending (recovery)
//   trials       per cell, >= 1
//   alpha        approximation quality in (0, 1]; recovery restarts are
//                ceil(restarts / alpha)
//   seed         master seed
//   output       CSV path (the CLI's --output overrides it)
//   restarts, iterations, shift_scale   maximizer budget
//   warm_start   clique | none      (recovery)
//   planted_factor  norm-scaling plants p = ceil(f * n^(1/r)) with a clique
//                warm start when f > 0
//   timing       true | false       (recovery; ms column is 0 when false)
//   count_grid, t_factors, dimension, samples, v_source   (concentration;
//                t = factor * N, dimension 0 means N' = N)
//   oracle_samples, oracle_tuples   (oracle-suite)
//   plot         true | false       emit <output>.gp for gnuplot
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kNormScaling;
  std::vector<int> n_grid;
  int order = 3;
  std::vector<int> p_grid;
  int trials = 1;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::string output;

  int restarts = 8;
  int iterations = 30;
  double shift_scale = 1.0;
  bool clique_warm_start = false;
  double planted_factor = 0.0;
  bool timing = false;

  std::vector<int> count_grid;
  std::vector<double> t_factors;
  int dimension = 0;
  long long samples = 10000;
  VSource v_source = VSource::kUnitRandom;

  long long oracle_samples = 10000;
  long long oracle_tuples = 100;

  bool plot = false;

  // Throws UsageError when grids are empty or not ascending, trials < 1, ...
  void Validate() const;
};

// Throws ParseError (with line) or UsageError.
ExperimentSpec ParseExperimentSpec(std::istream& in);
ExperimentSpec ReadExperimentSpec(const std::filesystem::path& path);

// Seed of one (cell, trial): DeriveSeed(master, {kind tag, cell, trial}).
std::uint64_t TrialSeed(const ExperimentSpec& spec, std::uint64_t cell, std::uint64_t trial);

// Each runner returns the full CSV text, header included, rows sorted by
// (cell, trial). Schemas:
//   norm-scaling        n,r,trial,seed,value,value_per_sqrt_n,value_per_bound_shape
//   recovery-threshold  n,r,p,trial,seed,success,maximizer_value,trials_used,ms
//   concentration       N,Nprime,t,samples,exceed,rate,paper_bound
//   oracle-suite        check,n,r,cases,violations,passed
// value_per_bound_shape divides by sqrt(n) * log2(n)^((3r-1)/2).
// Grid cells that would exceed a tensor guard raise ResourceLimitError naming
// the cell.
std::string RunNormScaling(const ExperimentSpec& spec);
std::string RunRecoveryThreshold(const ExperimentSpec& spec);
std::string RunConcentration(const ExperimentSpec& spec);
std::string RunOracleSuite(const ExperimentSpec& spec);
std::string RunExperiment(const ExperimentSpec& spec);

// True when every oracle-suite row reports passed=1.
bool OracleSuitePassed(const std::string& csv);

// gnuplot script plotting the main column of `csv_path` for this kind.
std::string GnuplotScript(const ExperimentSpec& spec, const std::string& csv_path);

struct CsvCheck {
  long long rows = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Recomputes derived columns (ratios, rates, bounds, pass flags) from the
// primary ones and reports rows that disagree beyond 1e-12 relative.
CsvCheck CheckCsv(const std::string& csv);

// Plain-text vectors, one value per line; blank lines are skipped.
// Throws ParseError naming the first bad line.
std::vector<double> ReadVector(std::istream& in);
std::vector<double> ReadVector(const std::filesystem::path& path);
void WriteVector(std::ostream& out, std::span<const double> x);

// %.17g, so doubles round-trip through the CSV exactly.
std::string FormatDouble(double v);

}  // namespace paritylab

#endif  // PARITYLAB_EXPERIMENTS_H_
