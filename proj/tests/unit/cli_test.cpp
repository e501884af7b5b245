#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "test_support.hpp"

namespace fs = std::filesystem;
using test_support::fixture;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

Run run(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string command = std::string("'") + TRUSTFIRE_CLI + "' " + args + " >" + quoted(out) + " 2>" + quoted(err);
  const int status = std::system(command.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string six_user_args(const fs::path& out) {
  return "--config " + quoted(fixture("six_user.conf")) + " --trustee_network " + quoted(fixture("six_user_trustees.txt")) +
         " --seeds " + quoted(fixture("six_user_seeds.txt")) + " --output_dir " + quoted(out);
}

}  // namespace

TEST(Cli, AttackOnSixUser) {
  const auto dir = test_support::scratch_dir("cli_six_user");
  const auto r = run("attack " + six_user_args(dir), dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(slurp(dir / "attack.json"));
  EXPECT_NEAR(summary["final_nc"].get<double>(), 4.05, 1e-12);
  EXPECT_NEAR(summary["total_messages"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(summary["config"]["k"], "3");
  EXPECT_NE(r.out.find("final_nc: 4.05"), std::string::npos);

  // final_state.csv sums to final_nc.
  std::istringstream state(slurp(dir / "final_state.csv"));
  std::string line;
  std::getline(state, line);
  EXPECT_EQ(line, "node,p_a,p_c");
  double total = 0.0;
  std::size_t rows = 0;
  while (std::getline(state, line)) {
    const auto first = line.find(','), second = line.find(',', first + 1);
    total += std::stod(line.substr(first + 1, second - first - 1));
    ++rows;
  }
  EXPECT_EQ(rows, 6u);
  EXPECT_NEAR(total, summary["final_nc"].get<double>(), 1e-12);
  EXPECT_EQ(slurp(dir / "iterations.csv").substr(0, 23), "iteration,nc,messages\n1");
}

TEST(Cli, ZeroIterationsLeavesOnlySeeds) {
  const auto dir = test_support::scratch_dir("cli_n0");
  const auto r = run("attack " + six_user_args(dir) + " --n 0 --c_I 7", dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(slurp(dir / "attack.json"));
  EXPECT_EQ(summary["final_nc"].get<double>(), 3.0);
  EXPECT_EQ(summary["total_cost"].get<double>(), 7.0);
}

TEST(Cli, WarnsWhenThresholdExceedsTrusteeCounts) {
  const auto dir = test_support::scratch_dir("cli_warn");
  const auto r = run("attack " + six_user_args(dir) + " --k 4", dir);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, BuildTrusteesOnCompleteGraph) {
  const auto dir = test_support::scratch_dir("cli_k4");
  const auto r = run("build-trustees --social_graph " + quoted(fixture("k4_social.txt")) +
                         " --min_degree 1 --m 1 --trustee_strategy degree --tie_break id --output_dir " + quoted(dir),
                     dir);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("max out-degree d_o: 1"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "trustees.txt"));
  EXPECT_TRUE(fs::exists(dir / "selection_log.csv"));
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "build-trustees.json"))["trustee_edges"], 4);
}

TEST(Cli, RerunsAreByteIdentical) {
  const auto a = test_support::scratch_dir("cli_rerun_a");
  const auto b = test_support::scratch_dir("cli_rerun_b");
  const std::string args = " --synth_nodes 400 --synth_attach 3 --synth_triad 0.5 --rng_seed 5 --min_degree 3 --n_s 20";
  for (const auto& dir : {a, b}) {
    ASSERT_EQ(run("gen-synthetic" + args + " --output_dir " + quoted(dir), dir).code, 0);
    const std::string net = " --social_graph " + quoted(dir / "social.txt");
    ASSERT_EQ(run("sweep" + args + net + " --sweep_axis k --sweep_values 3,1,2 --output_dir " + quoted(dir), dir).code, 0);
    ASSERT_EQ(run("build-trustees" + args + net + " --output_dir " + quoted(dir), dir).code, 0);
  }
  for (const char* name : {"social.txt", "trustees.txt", "selection_log.csv", "sweep.csv"})
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  // The output directory differs between the runs, so compare everything but that echo.
  auto ja = nlohmann::json::parse(slurp(a / "build-trustees.json"));
  auto jb = nlohmann::json::parse(slurp(b / "build-trustees.json"));
  ja["config"].erase("output_dir");
  jb["config"].erase("output_dir");
  ja["config"].erase("social_graph");
  jb["config"].erase("social_graph");
  EXPECT_EQ(ja, jb);

  std::istringstream sweep(slurp(a / "sweep.csv"));
  std::string line;
  std::getline(sweep, line);
  EXPECT_EQ(line, "k,final_nc,total_cost");
  std::getline(sweep, line);
  EXPECT_EQ(line.substr(0, 2), "1,");
}

TEST(Cli, GenSetCover) {
  const auto dir = test_support::scratch_dir("cli_setcover");
  const auto r = run("gen-setcover --setcover_elements 2 --setcover_subsets '0,1;1' --setcover_choice 0 --k 2 "
                     "--output_dir " + quoted(dir),
                     dir);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "trustees.txt"));
  EXPECT_TRUE(fs::exists(dir / "seeds.txt"));
}

TEST(Cli, ExitCodes) {
  const auto dir = test_support::scratch_dir("cli_errors");
  auto r = run("attack --trustee_network " + quoted(dir / "missing.txt") + " --output_dir " + quoted(dir), dir);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("missing.txt"), std::string::npos);

  r = run("sweep --social_graph " + quoted(fixture("k4_social.txt")) + " --sweep_axis q --sweep_values 1 --output_dir " +
              quoted(dir),
          dir);
  EXPECT_EQ(r.code, 1);

  std::ofstream(dir / "bad.conf") << "k = 3\np_s = 2\n";
  r = run("attack --config " + quoted(dir / "bad.conf") + " --output_dir " + quoted(dir), dir);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bad.conf:2"), std::string::npos);

  EXPECT_EQ(run("no-such-command", dir).code, 1);
  EXPECT_EQ(run("--help", dir).code, 0);
}

TEST(Cli, VerifyPasses) {
  const auto dir = test_support::scratch_dir("cli_verify");
  const auto r = run("verify --trials 20000", dir);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all suites passed"), std::string::npos);
}
