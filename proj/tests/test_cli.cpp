#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "orlicz/cli.hpp"
#include "orlicz/config.hpp"
#include "orlicz/grid.hpp"

using namespace orlicz;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) { return ::testing::TempDir() + "cli_" + name; }

std::string write(const std::string& name, const std::string& text) {
  const std::string path = temp(name);
  std::ofstream(path) << text;
  return path;
}

const std::string kRecovery =
    "family = power\nexponent = 4\nreaction = power\nq = 2\nlambda = 1\ndomain = 0 1\nnodes = 101\n"
    "u0 = constant 0.3\n";

}  // namespace

TEST(Cli, NormAndModularOfConstant) {
  const auto fam = write("p2.cfg", "family = power\nexponent = constant 2\n");
  auto r = run({"norm", "--family", fam, "--const", "2", "--domain", "0", "1", "--nodes", "101"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "2.000000000000\n");
  r = run({"modular", "--family", fam, "--const", "2", "--domain", "0", "1", "--nodes", "101"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), 4.0, 1e-12);
  r = run({"conjugate", "--family", fam, "--value", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1.000000000000\n");
}

TEST(Cli, CsvOutputAndFunctionFile) {
  const auto fam = write("p3.cfg", "family = power\nexponent = affine 2 1 0 1\n");
  const auto u = random_function(make_grid(2, {{0, 1}, {0, 1}}, {9, 9}), 4, 2.0, 1);
  const auto ufile = temp("u.txt");
  write_solution(ufile, u);
  const auto csv = temp("norm.csv");
  const auto r = run({"norm", "--family", fam, "--function", ufile, "--csv", csv});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto text = read_text_file(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "quantity,value");
}

TEST(Cli, MissingFileNamesPath) {
  const auto r = run({"norm", "--family", "/no/such/family.cfg", "--const", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("/no/such/family.cfg"), std::string::npos);
}

TEST(Cli, MalformedInputIsExitThree) {
  const auto fam = write("bad.cfg", "family = power\nexponent = banana\n");
  EXPECT_EQ(run({"norm", "--family", fam, "--const", "2"}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({"norm", "--const", "2"}).code, 3);
  EXPECT_EQ(run({}).code, 3);
}

TEST(Cli, HelpIsExitZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, SolveRecoversConstantAndWritesFiles) {
  const auto cfg = write("rec.cfg", kRecovery);
  const auto sol = temp("sol.txt"), traj = temp("traj.csv");
  const auto r = run({"solve", "--config", cfg, "--out", sol, "--trajectory", traj, "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto u = read_solution(sol);
  ASSERT_EQ(u.size(), 101u);
  for (double v : u.values) EXPECT_NEAR(v, 0.707107, 1e-4);
  const auto t = read_text_file(traj);
  EXPECT_EQ(t.substr(0, t.find('\n')), "iteration,energy,residual_sup,step");
  EXPECT_NE(r.out.find("converged yes"), std::string::npos);
}

TEST(Cli, SolveIterationLimitIsExitTwo) {
  const auto cfg = write("rec1.cfg", kRecovery + "max_iters = 1\n");
  EXPECT_EQ(run({"solve", "--config", cfg}).code, 2);
  const auto cfg2 = write("rec2.cfg", kRecovery);
  EXPECT_EQ(run({"solve", "--config", cfg2, "--max-iters", "1"}).code, 2);
  const auto bad = write("rec3.cfg", "family = power\nexponent = 4\nreaction = power\nq = 2\nlambda = -1\n");
  EXPECT_EQ(run({"solve", "--config", bad}).code, 3);
}

TEST(Cli, SweepEnergyColumnNonincreasing) {
  const auto cfg = write("sweep.cfg", kRecovery + "lambdas = 0.01 0.1 1 10\n");
  const auto csv = temp("sweep.csv");
  const auto r = run({"sweep", "--config", cfg, "--csv", csv});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream in(read_text_file(csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "lambda,min_energy,residual_sup,solution_norm,nontrivial_flag,iterations");
  double prev = 1e300;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const double e = std::stod(line.substr(a + 1, line.find(',', a + 1) - a - 1));
    EXPECT_LE(e, prev);
    prev = e;
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, VerifyExitCodes) {
  const auto json = temp("report.json");
  auto r = run({"verify", "--samples", "5", "--only", "phi_odd", "unit_ball", "--json", json, "--seed", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(read_text_file(json).find("\"overall\""), std::string::npos);
  EXPECT_EQ(run({"verify", "--samples", "0"}).code, 3);
  EXPECT_EQ(run({"verify", "--only", "nonsense"}).code, 3);

  write("broken.cfg", "family = custom\nprofile = notch\nnotch_depth = 0.9\nexponent = 2\n");
  const auto suite = write("broken_suite.cfg", "families = cli_broken.cfg\nreactions = none\ngrids = 1 0 1 21\n");
  r = run({"verify", "--config", suite, "--samples", "200", "--only", "phi_monotone"});
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_NE(r.out.find("overall fail"), std::string::npos);
}

TEST(Cli, BinaryRunsHelp) {
  const std::string cmd = std::string(ORLICZ_BINARY) + " --help > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
}

TEST(Cli, OutputFormatting) {
  EXPECT_EQ(format_output(2.0), "2.000000000000");
  EXPECT_EQ(format_output(0.0), "0.000000000000");
  EXPECT_EQ(format_output(1.5e-7), "1.5e-07");
}
