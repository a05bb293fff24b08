#include "paritylab/experiments.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "paritylab/errors.h"

namespace paritylab {
namespace {

ExperimentSpec Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseExperimentSpec(in);
}

std::vector<std::vector<std::string>> Rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string item;
    while (std::getline(ls, item, ',')) f.push_back(item);
    rows.push_back(f);
  }
  return rows;
}

TEST(ParseExperimentSpec, ReadsEveryKey) {
  const ExperimentSpec s = Parse(
      "# comment\n"
      "kind = recovery-threshold\n"
      "n_grid=64,128\n"
      "r=3\n"
      "p_grid=8, 16\n"
      "trials=4\n"
      "alpha=0.5\n"
      "seed=0x10\n"
      "output=out.csv\n"
      "restarts=3\n"
      "iterations=7\n"
      "shift_scale=0.5\n"
      "warm_start=clique\n"
      "timing=false  # trailing comment\n"
      "plot=true\n");
  EXPECT_EQ(s.kind, ExperimentKind::kRecoveryThreshold);
  EXPECT_EQ(s.n_grid, (std::vector<int>{64, 128}));
  EXPECT_EQ(s.p_grid, (std::vector<int>{8, 16}));
  EXPECT_EQ(s.trials, 4);
  EXPECT_EQ(s.alpha, 0.5);
  EXPECT_EQ(s.seed, 16U);
  EXPECT_EQ(s.output, "out.csv");
  EXPECT_EQ(s.restarts, 3);
  EXPECT_EQ(s.iterations, 7);
  EXPECT_TRUE(s.clique_warm_start);
  EXPECT_TRUE(s.plot);
}

TEST(ParseExperimentSpec, Errors) {
  EXPECT_THROW(Parse("n_grid=4\n"), UsageError);                       // no kind
  EXPECT_THROW(Parse("kind=norm-scaling\n"), UsageError);              // empty grid
  EXPECT_THROW(Parse("kind=norm-scaling\nn_grid=8,4\n"), UsageError);  // not ascending
  EXPECT_THROW(Parse("kind=norm-scaling\nn_grid=4\ntrials=0\n"), UsageError);
  EXPECT_THROW(Parse("kind=bogus\n"), ParseError);
  try {
    Parse("kind=norm-scaling\nn_grid=4\nwhat=1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
  try {
    Parse("kind=norm-scaling\nn_grid=4,x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
}

TEST(ParseKind, Names) {
  for (auto k : {ExperimentKind::kNormScaling, ExperimentKind::kRecoveryThreshold,
                 ExperimentKind::kConcentration, ExperimentKind::kOracleSuite}) {
    EXPECT_EQ(ParseKind(KindName(k)), k);
  }
  EXPECT_THROW(ParseKind("nope"), UsageError);
}

TEST(RunNormScaling, SchemaRatiosAndDeterminism) {
  const ExperimentSpec s = Parse("kind=norm-scaling\nn_grid=16,32\nr=3\ntrials=2\nseed=5\nrestarts=2\n");
  const std::string csv = RunNormScaling(s);
  EXPECT_EQ(csv, RunNormScaling(s));
  const auto rows = Rows(csv);
  ASSERT_EQ(rows.size(), 5U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "r", "trial", "seed", "value", "value_per_sqrt_n",
                                               "value_per_bound_shape"}));
  EXPECT_EQ(rows[1][0], "16");
  EXPECT_EQ(rows[3][0], "32");
  EXPECT_EQ(rows[4][2], "1");
  EXPECT_EQ(std::stoull(rows[2][3]), TrialSeed(s, 0, 1));
  EXPECT_TRUE(CheckCsv(csv).ok());
}

TEST(RunNormScaling, OrderTwoNearTwiceSqrtN) {
  const ExperimentSpec s = Parse("kind=norm-scaling\nn_grid=256\nr=2\ntrials=3\nseed=1\n");
  for (const auto& row : Rows(RunNormScaling(s))) {
    if (row[0] == "n") continue;
    const double ratio = std::stod(row[5]);
    EXPECT_GE(ratio, 1.5);
    EXPECT_LE(ratio, 2.2);
  }
}

TEST(RunNormScaling, PlantedColumn) {
  const ExperimentSpec s =
      Parse("kind=norm-scaling\nn_grid=512\nr=3\ntrials=2\nseed=2\nplanted_factor=4\nrestarts=2\n");
  const int p = static_cast<int>(std::ceil(4 * std::cbrt(512.0) - 1e-9));
  ASSERT_EQ(p, 32);
  for (const auto& row : Rows(RunNormScaling(s))) {
    if (row[0] == "n") continue;
    EXPECT_GE(std::stod(row[4]), 0.9 * std::pow(p, 1.5));
  }
}

TEST(RunNormScaling, GuardNamesCell) {
  const ExperimentSpec s = Parse("kind=norm-scaling\nn_grid=8,10000\nr=3\n");
  try {
    RunNormScaling(s);
    FAIL();
  } catch (const ResourceLimitError& e) {
    EXPECT_NE(std::string(e.what()).find("n=10000"), std::string::npos);
  }
}

TEST(RunRecoveryThreshold, WholeGraphCliqueAlwaysRecovered) {
  const ExperimentSpec s =
      Parse("kind=recovery-threshold\nn_grid=24\np_grid=24\nr=3\ntrials=3\nseed=3\nrestarts=2\n");
  const std::string csv = RunRecoveryThreshold(s);
  EXPECT_EQ(csv, RunRecoveryThreshold(s));
  const auto rows = Rows(csv);
  ASSERT_EQ(rows.size(), 4U);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][5], "1");
    EXPECT_EQ(rows[i][8], "0");  // ms is zero unless timing is on
  }
  EXPECT_TRUE(CheckCsv(csv).ok());
}

TEST(RunRecoveryThreshold, OrderTwoAtTenSqrtN) {
  const ExperimentSpec s =
      Parse("kind=recovery-threshold\nn_grid=1024\np_grid=320\nr=2\ntrials=5\nseed=8\n");
  int ok = 0;
  for (const auto& row : Rows(RunRecoveryThreshold(s)))
    if (row[0] != "n") ok += row[5] == "1";
  EXPECT_GE(ok, 5);
}

TEST(RunRecoveryThreshold, PLargerThanNIsUsageError) {
  const ExperimentSpec s = Parse("kind=recovery-threshold\nn_grid=16\np_grid=8,20\nr=2\n");
  EXPECT_THROW(RunRecoveryThreshold(s), UsageError);
}

TEST(RunConcentration, GridAndBound) {
  const ExperimentSpec s =
      Parse("kind=concentration\ncount_grid=16,64\nt_factors=1,2,3\nsamples=2000\nseed=4\n");
  const std::string csv = RunConcentration(s);
  EXPECT_EQ(csv, RunConcentration(s));
  const auto rows = Rows(csv);
  ASSERT_EQ(rows.size(), 7U);
  EXPECT_EQ(rows[0][6], "paper_bound");
  EXPECT_EQ(rows[1][0], "16");
  EXPECT_EQ(rows[1][2], "16");
  EXPECT_EQ(rows[6][2], "192");
  EXPECT_TRUE(CheckCsv(csv).ok());
}

TEST(RunOracleSuite, PassesOnSixVertexFixture) {
  const ExperimentSpec s = Parse("kind=oracle-suite\nn_grid=6\nr=3\nseed=1\n");
  const std::string csv = RunOracleSuite(s);
  EXPECT_TRUE(OracleSuitePassed(csv));
  EXPECT_TRUE(CheckCsv(csv).ok());
  EXPECT_NE(csv.find("partition_identity"), std::string::npos);
  EXPECT_NE(csv.find("u_approx"), std::string::npos);
}

TEST(OracleSuitePassed, DetectsFailure) {
  EXPECT_FALSE(OracleSuitePassed("check,n,r,cases,violations,passed\nx,6,3,10,1,0\n"));
  EXPECT_FALSE(OracleSuitePassed("check,n,r,cases,violations,passed\n"));
}

TEST(CheckCsv, FlagsTamperedRatio) {
  const std::string good =
      "n,r,trial,seed,value,value_per_sqrt_n,value_per_bound_shape\n"
      "16,3,0,1,8," + FormatDouble(2.0) + "," + FormatDouble(8.0 / (4.0 * std::pow(4.0, 4.0))) + "\n";
  EXPECT_TRUE(CheckCsv(good).ok()) << CheckCsv(good).problems.front();
  const std::string bad =
      "n,r,trial,seed,value,value_per_sqrt_n,value_per_bound_shape\n16,3,0,1,8,2.0000001,0.0078125\n";
  EXPECT_FALSE(CheckCsv(bad).ok());
  EXPECT_FALSE(CheckCsv("a,b\n1,2\n").ok());
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 488.25, -2.5e17}) EXPECT_EQ(std::stod(FormatDouble(v)), v);
}

TEST(VectorIo, RoundTripAndErrors) {
  const std::vector<double> x = {0.5, -1.0 / 3.0, 0.0};
  std::stringstream buf;
  WriteVector(buf, x);
  EXPECT_EQ(ReadVector(buf), x);
  std::istringstream bad("0.5\n\nabc\n");
  try {
    ReadVector(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(GnuplotScript, NamesCsv) {
  ExperimentSpec s;
  s.kind = ExperimentKind::kNormScaling;
  EXPECT_NE(GnuplotScript(s, "a.csv").find("'a.csv'"), std::string::npos);
}

}  // namespace
}  // namespace paritylab
