#include "paritylab/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "paritylab/errors.h"
#include "paritylab/indicator.h"
#include "paritylab/maximizer.h"
#include "paritylab/parity_tensor.h"
#include "paritylab/recovery.h"
#include "paritylab/rng.h"
#include "paritylab/sign_graph.h"

namespace paritylab {

namespace {

std::uint64_t KindTag(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kNormScaling:
      return 1;
    case ExperimentKind::kRecoveryThreshold:
      return 2;
    case ExperimentKind::kConcentration:
      return 3;
    case ExperimentKind::kOracleSuite:
      return 4;
  }
  return 0;
}

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(Trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

long long ToInteger(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + v + "'");
  }
}

std::uint64_t ToUnsigned(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used, 0);
    if (used != v.size() || (!v.empty() && v[0] == '-')) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an unsigned integer, got '" + v + "'");
  }
}

double ToReal(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + v + "'");
  }
}

bool ToBool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParseError(line, "expected true or false, got '" + v + "'");
}

std::vector<int> ToIntList(const std::string& v, std::size_t line) {
  std::vector<int> out;
  if (v.empty()) return out;
  for (const std::string& item : Split(v, ',')) {
    const long long x = ToInteger(item, line);
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<double> ToRealList(const std::string& v, std::size_t line) {
  std::vector<double> out;
  if (v.empty()) return out;
  for (const std::string& item : Split(v, ',')) out.push_back(ToReal(item, line));
  return out;
}

template <typename T>
void CheckGrid(const std::vector<T>& grid, const char* name) {
  if (grid.empty()) throw UsageError(std::string(name) + " must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw UsageError(std::string(name) + " must be strictly ascending");
  }
}

void CheckPositive(const std::vector<int>& grid, const char* name) {
  for (int v : grid)
    if (v < 1) throw UsageError(std::string(name) + " entries must be positive");
}

// ceil(factor * n^(1/r)), at least 1.
int PlantedSize(int n, int order, double factor) {
  const double root = std::pow(static_cast<double>(n), 1.0 / order);
  return std::max(1, static_cast<int>(std::ceil(factor * root - 1e-9)));
}

double BoundShape(int n, int order) {
  return std::sqrt(static_cast<double>(n)) *
         std::pow(std::log2(static_cast<double>(n)), (3.0 * order - 1.0) / 2.0);
}

std::vector<double> CliqueIndicator(int n, const VertexSet& clique) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (Vertex v : clique) x[static_cast<std::size_t>(v)] = 1.0 / std::sqrt(static_cast<double>(clique.size()));
  return x;
}

// Builds the form for one cell, tagging guard violations with the cell.
ParityForm FormForCell(const SignGraph& g, int order, const std::string& cell) {
  try {
    return ParityForm(g, order);
  } catch (const ResourceLimitError& e) {
    throw ResourceLimitError(cell + ": " + e.what());
  }
}

// Guard check before any work so no partial output is produced.
void PrecheckGuards(const ExperimentSpec& spec) {
  const TensorLimits limits;
  for (std::size_t c = 0; c < spec.n_grid.size(); ++c) {
    const int n = spec.n_grid[c];
    const std::string cell = "cell " + std::to_string(c) + " (n=" + std::to_string(n) +
                             ", r=" + std::to_string(spec.order) + ")";
    if (spec.order > limits.max_order) {
      throw ResourceLimitError(cell + ": order exceeds the configured maximum");
    }
    if (spec.order <= 3 && n > limits.max_matrix_dim) {
      throw ResourceLimitError(cell + ": n exceeds max_matrix_dim");
    }
    if (spec.order >= 4 && std::pow(static_cast<double>(n), spec.order) > limits.max_enumeration_terms) {
      throw ResourceLimitError(cell + ": n^r exceeds max_enumeration_terms");
    }
  }
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& header) { out_ << header << '\n'; }

  template <typename... Fields>
  void Row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << Field(fields), first = false), ...);
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string Field(double v) { return FormatDouble(v); }
  static std::string Field(int v) { return std::to_string(v); }
  static std::string Field(long long v) { return std::to_string(v); }
  static std::string Field(std::uint64_t v) { return std::to_string(v); }
  static std::string Field(bool v) { return v ? "1" : "0"; }
  static std::string Field(const std::string& v) { return v; }
  static std::string Field(const char* v) { return v; }

  std::ostringstream out_;
};

}  // namespace

std::vector<double> ReadVector(std::istream& in) {
  std::vector<double> x;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = Trim(raw);
    if (text.empty()) continue;
    x.push_back(ToReal(text, line));
  }
  return x;
}

std::vector<double> ReadVector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open vector file " + path.string());
  return ReadVector(in);
}

void WriteVector(std::ostream& out, std::span<const double> x) {
  for (double v : x) out << FormatDouble(v) << '\n';
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* KindName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kNormScaling:
      return "norm-scaling";
    case ExperimentKind::kRecoveryThreshold:
      return "recovery-threshold";
    case ExperimentKind::kConcentration:
      return "concentration";
    case ExperimentKind::kOracleSuite:
      return "oracle-suite";
  }
  return "unknown";
}

ExperimentKind ParseKind(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::kNormScaling, ExperimentKind::kRecoveryThreshold,
                           ExperimentKind::kConcentration, ExperimentKind::kOracleSuite}) {
    if (name == KindName(k)) return k;
  }
  throw UsageError("unknown experiment kind '" + name + "'");
}

void ExperimentSpec::Validate() const {
  if (trials < 1) throw UsageError("trials must be >= 1");
  if (order < 2) throw UsageError("r must be >= 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in (0, 1]");
  if (restarts < 1 || iterations < 0) throw UsageError("maximizer budget must be positive");
  switch (kind) {
    case ExperimentKind::kNormScaling:
    case ExperimentKind::kOracleSuite:
      CheckGrid(n_grid, "n_grid");
      CheckPositive(n_grid, "n_grid");
      break;
    case ExperimentKind::kRecoveryThreshold:
      CheckGrid(n_grid, "n_grid");
      CheckPositive(n_grid, "n_grid");
      CheckGrid(p_grid, "p_grid");
      CheckPositive(p_grid, "p_grid");
      break;
    case ExperimentKind::kConcentration:
      CheckGrid(count_grid, "count_grid");
      CheckPositive(count_grid, "count_grid");
      CheckGrid(t_factors, "t_factors");
      if (samples < 1) throw UsageError("samples must be >= 1");
      if (dimension < 0) throw UsageError("dimension must be >= 0");
      break;
  }
}

ExperimentSpec ParseExperimentSpec(std::istream& in) {
  ExperimentSpec spec;
  bool have_kind = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string text = Trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key=value");
    const std::string key = Trim(text.substr(0, eq));
    const std::string value = Trim(text.substr(eq + 1));
    if (key == "kind") {
      try {
        spec.kind = ParseKind(value);
      } catch (const UsageError& e) {
        throw ParseError(line, e.what());
      }
      have_kind = true;
    } else if (key == "n_grid") {
      spec.n_grid = ToIntList(value, line);
    } else if (key == "r") {
      spec.order = static_cast<int>(ToInteger(value, line));
    } else if (key == "p_grid") {
      spec.p_grid = ToIntList(value, line);
    } else if (key == "trials") {
      spec.trials = static_cast<int>(ToInteger(value, line));
    } else if (key == "alpha") {
      spec.alpha = ToReal(value, line);
    } else if (key == "seed") {
      spec.seed = ToUnsigned(value, line);
    } else if (key == "output") {
      spec.output = value;
    } else if (key == "restarts") {
      spec.restarts = static_cast<int>(ToInteger(value, line));
    } else if (key == "iterations") {
      spec.iterations = static_cast<int>(ToInteger(value, line));
    } else if (key == "shift_scale") {
      spec.shift_scale = ToReal(value, line);
    } else if (key == "warm_start") {
      if (value != "clique" && value != "none") throw ParseError(line, "warm_start must be clique or none");
      spec.clique_warm_start = value == "clique";
    } else if (key == "planted_factor") {
      spec.planted_factor = ToReal(value, line);
    } else if (key == "timing") {
      spec.timing = ToBool(value, line);
    } else if (key == "count_grid") {
      spec.count_grid = ToIntList(value, line);
    } else if (key == "t_factors") {
      spec.t_factors = ToRealList(value, line);
    } else if (key == "dimension") {
      spec.dimension = static_cast<int>(ToInteger(value, line));
    } else if (key == "samples") {
      spec.samples = ToInteger(value, line);
    } else if (key == "v_source") {
      if (value == "unit-random") {
        spec.v_source = VSource::kUnitRandom;
      } else if (value == "worst-ish") {
        spec.v_source = VSource::kWorstIsh;
      } else {
        throw ParseError(line, "v_source must be unit-random or worst-ish");
      }
    } else if (key == "oracle_samples") {
      spec.oracle_samples = ToInteger(value, line);
    } else if (key == "oracle_tuples") {
      spec.oracle_tuples = ToInteger(value, line);
    } else if (key == "plot") {
      spec.plot = ToBool(value, line);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw UsageError("config must set kind=");
  spec.Validate();
  return spec;
}

ExperimentSpec ReadExperimentSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path.string());
  return ParseExperimentSpec(in);
}

std::uint64_t TrialSeed(const ExperimentSpec& spec, std::uint64_t cell, std::uint64_t trial) {
  return DeriveSeed(spec.seed, {KindTag(spec.kind), cell, trial});
}

std::string RunNormScaling(const ExperimentSpec& spec) {
  spec.Validate();
  PrecheckGuards(spec);
  CsvWriter csv("n,r,trial,seed,value,value_per_sqrt_n,value_per_bound_shape");
  for (std::size_t c = 0; c < spec.n_grid.size(); ++c) {
    const int n = spec.n_grid[c];
    for (int t = 0; t < spec.trials; ++t) {
      const std::uint64_t seed = TrialSeed(spec, c, static_cast<std::uint64_t>(t));
      PlantedInstance inst{SampleGnpHalf(n, DeriveSeed(seed, {0})), {}};
      MaximizeOptions opts;
      opts.restarts = spec.restarts;
      opts.iterations_per_restart = spec.iterations;
      opts.shift_scale = spec.shift_scale;
      opts.seed = DeriveSeed(seed, {2});
      opts.threads = 1;
      if (spec.planted_factor > 0.0) {
        const int p = std::min(n, PlantedSize(n, spec.order, spec.planted_factor));
        inst = PlantClique(inst.graph, p, DeriveSeed(seed, {1}));
        opts.warm_start = CliqueIndicator(n, inst.clique);
      }
      const ParityForm form = FormForCell(inst.graph, spec.order, "n=" + std::to_string(n));
      const MaximizerResult res = Maximize(form, opts);
      csv.Row(n, spec.order, t, seed, res.value, res.value / std::sqrt(static_cast<double>(n)),
              res.value / BoundShape(n, spec.order));
    }
  }
  return csv.str();
}

std::string RunRecoveryThreshold(const ExperimentSpec& spec) {
  spec.Validate();
  PrecheckGuards(spec);
  if (spec.p_grid.back() > spec.n_grid.front()) {
    throw UsageError("p_grid entry " + std::to_string(spec.p_grid.back()) + " exceeds n=" +
                     std::to_string(spec.n_grid.front()));
  }
  CsvWriter csv("n,r,p,trial,seed,success,maximizer_value,trials_used,ms");
  std::uint64_t cell = 0;
  for (int n : spec.n_grid) {
    for (int p : spec.p_grid) {
      for (int t = 0; t < spec.trials; ++t) {
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t seed = TrialSeed(spec, cell, static_cast<std::uint64_t>(t));
        const PlantedInstance inst =
            PlantClique(SampleGnpHalf(n, DeriveSeed(seed, {0})), p, DeriveSeed(seed, {1}));
        MaximizeOptions opts;
        opts.restarts = static_cast<int>(std::ceil(spec.restarts / spec.alpha - 1e-12));
        opts.iterations_per_restart = spec.iterations;
        opts.shift_scale = spec.shift_scale;
        opts.seed = DeriveSeed(seed, {2});
        opts.threads = 1;
        if (spec.clique_warm_start) opts.warm_start = CliqueIndicator(n, inst.clique);
        const ParityForm form = FormForCell(inst.graph, spec.order,
                                            "n=" + std::to_string(n) + ",p=" + std::to_string(p));
        const MaximizerResult res = Maximize(form, opts);

        RecoveryConfig rc;
        rc.order = spec.order;
        rc.seed = DeriveSeed(seed, {3});
        const RecoveryReport rep = Recover(inst.graph, p, res.x, rc);
        const bool success = rep.found && rep.clique == inst.clique;
        long long ms = 0;
        if (spec.timing) {
          ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count();
        }
        csv.Row(n, spec.order, p, t, seed, success, res.value, rep.trials_used, ms);
      }
      ++cell;
    }
  }
  return csv.str();
}

std::string RunConcentration(const ExperimentSpec& spec) {
  spec.Validate();
  CsvWriter csv("N,Nprime,t,samples,exceed,rate,paper_bound");
  std::uint64_t cell = 0;
  for (int count : spec.count_grid) {
    for (double factor : spec.t_factors) {
      const int dim = spec.dimension > 0 ? spec.dimension : count;
      const double t = factor * count;
      const TailEstimate est =
          ConcentrationTail(count, dim, t, spec.samples, TrialSeed(spec, cell, 0), spec.v_source);
      csv.Row(count, dim, t, est.samples, est.exceed_count, est.empirical_rate, est.paper_bound);
      ++cell;
    }
  }
  return csv.str();
}

std::string RunOracleSuite(const ExperimentSpec& spec) {
  spec.Validate();
  CsvWriter csv("check,n,r,cases,violations,passed");
  const int r = spec.order;
  for (std::size_t c = 0; c < spec.n_grid.size(); ++c) {
    const int n = spec.n_grid[c];
    const std::uint64_t seed = TrialSeed(spec, c, 0);
    const SignGraph g = SampleGnpHalf(n, DeriveSeed(seed, {0}));
    Rng rng(DeriveSeed(seed, {1}));

    // Implicit evaluation against the materialized array.
    {
      const DenseTensor dense = DenseMaterialize(g, r);
      const ParityForm form(g, r);
      long long bad = 0;
      const long long cases = 100;
      for (long long i = 0; i < cases; ++i) {
        std::vector<Vector> xs;
        for (int s = 0; s < r; ++s) xs.push_back(RandomUnitVector(n, rng));
        const double a = form.Evaluate(xs);
        const double b = ContractDense(dense, xs);
        if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b))) ++bad;
      }
      csv.Row("evaluate_vs_dense", n, r, cases, bad, bad == 0);

      // Block form on a random disjoint split against the restricted sum.
      if (n >= r) {
        long long bad_block = 0;
        for (long long i = 0; i < cases; ++i) {
          const VertexSet perm = SampleSubset(n, n, rng);
          std::vector<int> order(perm.begin(), perm.end());
          std::shuffle(order.begin(), order.end(), rng);
          std::vector<VertexSet> blocks(static_cast<std::size_t>(r));
          for (int k = 0; k < n; ++k) {
            blocks[static_cast<std::size_t>(k % r)].push_back(order[static_cast<std::size_t>(k)]);
          }
          for (auto& b : blocks) std::sort(b.begin(), b.end());
          std::vector<Vector> xs;
          for (int s = 0; s < r; ++s) xs.push_back(RandomUnitVector(n, rng));
          const double a = EvaluateBlock(g, TensorQuery{r, blocks}, xs);
          const double b = ContractDense(dense, xs, &blocks);
          if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b))) ++bad_block;
        }
        csv.Row("block_vs_dense", n, r, cases, bad_block, bad_block == 0);
      }
    }

    if (std::pow(2.0, static_cast<double>(n) * r) <= 16777216.0) {
      const UApproxReport u = CheckUApprox(g, r, spec.oracle_samples, DeriveSeed(seed, {2}));
      csv.Row("u_approx", n, r, u.samples, u.violations, u.passed());

      // Symmetric members of U never beat the exact max over U^r, and the
      // maximizer warm-started at the best of them never reports less.
      const UMaximum exact = BruteForceMaxOverU(g, r);
      const ParityForm form(g, r);
      double best_sym = -1.0;
      std::vector<double> best_x;
      long long cases = 0;
      long long bad = 0;
      for (int k = 1; k <= n; ++k) {
        ForEachInU(n, k, [&](const DiscretizedVector& v) {
          const std::vector<double> x = v.ToDense(n);
          const double value = form.EvaluateSymmetric(x);
          ++cases;
          if (value > exact.value + 1e-9) ++bad;
          if (value > best_sym) {
            best_sym = value;
            best_x = x;
          }
        });
      }
      MaximizeOptions opts;
      opts.restarts = 4;
      opts.iterations_per_restart = 50;
      opts.seed = DeriveSeed(seed, {3});
      opts.warm_start = best_x;
      opts.threads = 1;
      const MaximizerResult res = Maximize(form, opts);
      ++cases;
      if (res.value < best_sym - 1e-9) ++bad;
      csv.Row("brute_force_vs_maximize", n, r, cases, bad, bad == 0);
    }

    if (n % r == 0 && n <= 9) {
      const PartitionReport pr = CheckPartitionIdentity(g, r, spec.oracle_tuples, DeriveSeed(seed, {4}));
      csv.Row("partition_identity", n, r, pr.tuples_checked,
              pr.violations + (pr.equal_appearance ? 0 : 1), pr.passed());
    }
  }
  return csv.str();
}

std::string RunExperiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::kNormScaling:
      return RunNormScaling(spec);
    case ExperimentKind::kRecoveryThreshold:
      return RunRecoveryThreshold(spec);
    case ExperimentKind::kConcentration:
      return RunConcentration(spec);
    case ExperimentKind::kOracleSuite:
      return RunOracleSuite(spec);
  }
  throw UsageError("unknown experiment kind");
}

bool OracleSuitePassed(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  bool any = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    any = true;
    if (line.back() != '1') return false;
  }
  return any;
}

std::string GnuplotScript(const ExperimentSpec& spec, const std::string& csv_path) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set grid\n";
  switch (spec.kind) {
    case ExperimentKind::kNormScaling:
      gp << "set xlabel 'n'\nset ylabel 'value / sqrt(n)'\nset logscale x 2\n"
         << "plot '" << csv_path << "' using 1:6 with points pt 7\n";
      break;
    case ExperimentKind::kRecoveryThreshold:
      gp << "set xlabel 'p'\nset ylabel 'success'\n"
         << "plot '" << csv_path << "' using 3:6 smooth unique with linespoints\n";
      break;
    case ExperimentKind::kConcentration:
      gp << "set xlabel 't'\nset ylabel 'rate'\nset logscale y\n"
         << "plot '" << csv_path << "' using 3:6 with points pt 7, '' using 3:7 with lines\n";
      break;
    case ExperimentKind::kOracleSuite:
      gp << "set style data histogram\nset yrange [0:1.2]\n"
         << "plot '" << csv_path << "' using 6:xtic(1)\n";
      break;
  }
  return gp.str();
}

CsvCheck CheckCsv(const std::string& text) {
  CsvCheck check;
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) {
    check.problems.push_back("empty file");
    return check;
  }
  const std::vector<std::string> cols = Split(header, ',');
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;

  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };

  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = Split(line, ',');
    if (f.size() != cols.size()) {
      check.problems.push_back("line " + std::to_string(line_no) + ": wrong field count");
      continue;
    }
    ++check.rows;
    auto num = [&](const char* name) { return std::stod(f[index.at(name)]); };
    auto complain = [&](const std::string& what) {
      check.problems.push_back("line " + std::to_string(line_no) + ": " + what);
    };
    try {
      if (index.count("value_per_sqrt_n")) {
        const double n = num("n");
        const double value = num("value");
        if (!close(num("value_per_sqrt_n"), value / std::sqrt(n))) complain("value_per_sqrt_n");
        if (!close(num("value_per_bound_shape"),
                   value / BoundShape(static_cast<int>(n), static_cast<int>(num("r"))))) {
          complain("value_per_bound_shape");
        }
      } else if (index.count("paper_bound")) {
        const double samples = num("samples");
        if (!close(num("rate"), num("exceed") / samples)) complain("rate");
        if (!close(num("paper_bound"), ConcentrationBound(static_cast<int>(num("N")), num("t")))) {
          complain("paper_bound");
        }
      } else if (index.count("success")) {
        const double s = num("success");
        if (s != 0.0 && s != 1.0) complain("success must be 0 or 1");
        if (!std::isfinite(num("maximizer_value"))) complain("maximizer_value not finite");
      } else if (index.count("passed")) {
        const bool passed = num("passed") == 1.0;
        if (passed != (num("violations") == 0.0)) complain("passed disagrees with violations");
      } else {
        complain("unrecognized CSV schema");
        break;
      }
    } catch (const std::exception& e) {
      complain(std::string("unparsable field: ") + e.what());
    }
  }
  return check;
}

}  // namespace paritylab
