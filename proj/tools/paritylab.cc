// Command-line driver: instance generation, evaluation, maximization,
// recovery, experiments and the oracle suite.
//
// Exit codes: 0 success, 1 usage, 2 resource guard, 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paritylab/errors.h"
#include "paritylab/experiments.h"
#include "paritylab/maximizer.h"
#include "paritylab/parity_tensor.h"
#include "paritylab/recovery.h"
#include "paritylab/sign_graph.h"

namespace {

using namespace paritylab;

constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitVerification = 3;

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed for " + path);
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string FormatSet(const VertexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

struct GenArgs {
  int n = 0;
  std::uint64_t seed = 0;
  std::string output;
};

struct PlantArgs {
  std::string graph;
  int p = 0;
  std::uint64_t seed = 0;
  std::string output;
};

struct EvalArgs {
  std::string graph;
  int order = 3;
  std::vector<std::string> vectors;
};

struct MaximizeArgs {
  std::string graph;
  int order = 3;
  int restarts = 32;
  int iterations = 100;
  double shift_scale = 1.0;
  std::uint64_t seed = 0;
  std::string warm_start;
  std::string output;
};

struct RecoverArgs {
  std::string graph;
  int p = 0;
  std::string vector;
  int order = 3;
  std::uint64_t seed = 0;
  bool diagnostics = false;
};

struct ExperimentArgs {
  std::string kind;
  std::string config;
  std::string output;
  bool plot = false;
};

struct VerifyArgs {
  std::vector<int> n_grid = {6};
  int order = 3;
  std::uint64_t seed = 0;
  long long samples = 10000;
  long long tuples = 100;
  std::string output;
};

int RunGen(const GenArgs& a) {
  const SignGraph g = SampleGnpHalf(a.n, a.seed);
  std::ostringstream out;
  WriteInstance(out, g, nullptr);
  WriteText(a.output, out.str());
  return 0;
}

int RunPlant(const PlantArgs& a) {
  const PlantedInstance base = ReadInstance(a.graph);
  const PlantedInstance inst = PlantClique(base.graph, a.p, a.seed);
  std::ostringstream out;
  WriteInstance(out, inst.graph, &inst.clique);
  WriteText(a.output, out.str());
  return 0;
}

int RunEval(const EvalArgs& a) {
  const PlantedInstance inst = ReadInstance(a.graph);
  std::vector<Vector> xs;
  for (const std::string& path : a.vectors) xs.push_back(ReadVector(path));
  const ParityForm form(inst.graph, a.order);
  double value = 0.0;
  if (xs.size() == 1) {
    value = form.EvaluateSymmetric(xs[0]);
  } else if (static_cast<int>(xs.size()) == a.order) {
    value = form.Evaluate(xs);
  } else {
    throw UsageError("eval takes one vector (all slots equal) or exactly r vectors");
  }
  std::cout << FormatDouble(value) << '\n';
  return 0;
}

int RunMaximize(const MaximizeArgs& a) {
  const PlantedInstance inst = ReadInstance(a.graph);
  const ParityForm form(inst.graph, a.order);
  MaximizeOptions opts;
  opts.restarts = a.restarts;
  opts.iterations_per_restart = a.iterations;
  opts.shift_scale = a.shift_scale;
  opts.seed = a.seed;
  if (!a.warm_start.empty()) opts.warm_start = ReadVector(a.warm_start);
  const MaximizerResult res = Maximize(form, opts);
  std::ostringstream vec;
  WriteVector(vec, res.x);
  WriteText(a.output, vec.str());
  std::cerr << "value " << FormatDouble(res.value) << " restart " << res.best_restart << " ("
            << res.init_label << ")\n";
  if (!a.output.empty() && a.output != "-") std::cout << FormatDouble(res.value) << '\n';
  return 0;
}

int RunRecover(const RecoverArgs& a) {
  const PlantedInstance inst = ReadInstance(a.graph);
  const std::vector<double> x = ReadVector(a.vector);
  RecoveryConfig cfg;
  cfg.order = a.order;
  cfg.seed = a.seed;
  if (!inst.clique.empty()) cfg.truth = inst.clique;
  const RecoveryReport rep = Recover(inst.graph, a.p, x, cfg);
  if (a.diagnostics) {
    std::cerr << "level,support,eigenvalue,converged,trials,duplicate,overlap_stat,overlap_passes,"
                 "prefix_holds\n";
    for (const ComponentDiagnostics& d : rep.components) {
      std::cerr << d.level << ',' << d.support_size << ',' << FormatDouble(d.eigenvalue) << ','
                << d.eigen_converged << ',' << d.trials_used << ',' << d.duplicate_support << ',';
      if (d.overlap) {
        std::cerr << FormatDouble(d.overlap->stat) << ',' << d.overlap->passes << ',';
      } else {
        std::cerr << ",,";
      }
      if (d.prefix) std::cerr << d.prefix->holds;
      std::cerr << '\n';
    }
  }
  if (rep.found) {
    std::cout << "found " << FormatSet(rep.clique) << '\n';
  } else {
    std::cout << "FAILURE\n";
  }
  return 0;
}

int RunExperimentCommand(const ExperimentArgs& a) {
  ExperimentSpec spec = ReadExperimentSpec(a.config);
  if (ParseKind(a.kind) != spec.kind) {
    throw UsageError(std::string("config kind is ") + KindName(spec.kind) + ", not " + a.kind);
  }
  if (!a.output.empty()) spec.output = a.output;
  if (a.plot) spec.plot = true;
  // Everything is computed before any file is opened.
  const std::string csv = RunExperiment(spec);
  WriteText(spec.output, csv);
  if (spec.plot) {
    if (spec.output.empty() || spec.output == "-") throw UsageError("--plot needs an output path");
    WriteText(spec.output + ".gp", GnuplotScript(spec, spec.output));
  }
  if (spec.kind == ExperimentKind::kOracleSuite && !OracleSuitePassed(csv)) return kExitVerification;
  return 0;
}

int RunVerify(const VerifyArgs& a) {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::kOracleSuite;
  spec.n_grid = a.n_grid;
  spec.order = a.order;
  spec.seed = a.seed;
  spec.oracle_samples = a.samples;
  spec.oracle_tuples = a.tuples;
  const std::string csv = RunOracleSuite(spec);
  WriteText(a.output, csv);
  const bool ok = OracleSuitePassed(csv);
  std::cerr << (ok ? "oracle suite passed\n" : "oracle suite FAILED\n");
  return ok ? 0 : kExitVerification;
}

int RunCheck(const std::string& path) {
  const CsvCheck check = CheckCsv(ReadText(path));
  for (const std::string& p : check.problems) std::cerr << p << '\n';
  std::cout << check.rows << " rows, " << check.problems.size() << " problems\n";
  return check.ok() ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgraph parity tensor laboratory"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample G(n, 1/2) and write it");
  gen_cmd->add_option("-n,--n", gen.n, "Vertex count")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  PlantArgs plant;
  auto* plant_cmd = app.add_subcommand("plant", "Plant a p-clique into a graph file");
  plant_cmd->add_option("graph", plant.graph, "Graph file")->required();
  plant_cmd->add_option("-p,--p", plant.p, "Clique size")->required();
  plant_cmd->add_option("--seed", plant.seed, "Seed");
  plant_cmd->add_option("-o,--output", plant.output, "Output file (default stdout)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the parity form");
  eval_cmd->add_option("graph", eval.graph, "Graph file")->required();
  eval_cmd->add_option("vectors", eval.vectors, "One vector file, or r of them")->required();
  eval_cmd->add_option("-r,--order", eval.order, "Tensor order");

  MaximizeArgs max;
  auto* max_cmd = app.add_subcommand("maximize", "Heuristically maximize A(x, ..., x)");
  max_cmd->add_option("graph", max.graph, "Graph file")->required();
  max_cmd->add_option("-r,--order", max.order, "Tensor order");
  max_cmd->add_option("--restarts", max.restarts, "Restarts");
  max_cmd->add_option("--iterations", max.iterations, "Iterations per restart");
  max_cmd->add_option("--shift-scale", max.shift_scale, "Shift per r*sqrt(n)");
  max_cmd->add_option("--seed", max.seed, "Seed");
  max_cmd->add_option("--warm-start", max.warm_start, "Vector file used by restart 0");
  max_cmd->add_option("-o,--output", max.output, "Vector output file (default stdout)");

  RecoverArgs rec;
  auto* rec_cmd = app.add_subcommand("recover", "Recover a p-clique from a vector");
  rec_cmd->add_option("graph", rec.graph, "Graph file")->required();
  rec_cmd->add_option("p", rec.p, "Clique size")->required();
  rec_cmd->add_option("vector", rec.vector, "Vector file")->required();
  rec_cmd->add_option("-r,--order", rec.order, "Tensor order (sets the decomposition depth)");
  rec_cmd->add_option("--seed", rec.seed, "Seed");
  rec_cmd->add_flag("--diagnostics", rec.diagnostics, "Per-component diagnostics on stderr");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment from a config file");
  exp_cmd->add_option("kind", exp.kind, "norm-scaling | recovery-threshold | concentration | oracle-suite")
      ->required();
  exp_cmd->add_option("--config", exp.config, "key=value config file")->required();
  exp_cmd->add_option("-o,--output", exp.output, "CSV path (overrides the config)");
  exp_cmd->add_flag("--plot", exp.plot, "Also write <output>.gp");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the oracle suite");
  ver_cmd->add_option("--n", ver.n_grid, "Vertex counts (ascending)");
  ver_cmd->add_option("-r,--order", ver.order, "Tensor order");
  ver_cmd->add_option("--seed", ver.seed, "Seed");
  ver_cmd->add_option("--samples", ver.samples, "Samples for the U-approximation check");
  ver_cmd->add_option("--tuples", ver.tuples, "Tuples for the partition identity");
  ver_cmd->add_option("-o,--output", ver.output, "CSV path (default stdout)");

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "Recompute derived CSV columns");
  check_cmd->add_option("csv", check_path, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen_cmd) return RunGen(gen);
    if (*plant_cmd) return RunPlant(plant);
    if (*eval_cmd) return RunEval(eval);
    if (*max_cmd) return RunMaximize(max);
    if (*rec_cmd) return RunRecover(rec);
    if (*exp_cmd) return RunExperimentCommand(exp);
    if (*ver_cmd) return RunVerify(ver);
    if (*check_cmd) return RunCheck(check_path);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitUsage;
}
