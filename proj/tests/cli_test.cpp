#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "recseq/json_io.hpp"

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = recseq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ErsExponential) {
  const Invocation r = run({"ers", "--dist", R"({"kind":"exponential","rate":1})", "--n", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = recseq::Json::parse(r.out);
  ASSERT_EQ(j.at("rho").size(), 5u);
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(j.at("rho")[n].get<double>(), n + 1, 1e-9);
}

TEST(Cli, ErsLogRecord) {
  const Invocation r = run({"ers", "--dist", R"({"kind":"log_record"})", "--n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rho = recseq::Json::parse(r.out).at("rho");
  EXPECT_NEAR(rho[0].get<double>(), -0.577216, 1e-6);
  EXPECT_NEAR(rho[1].get<double>(), 0.422784, 1e-6);
  EXPECT_NEAR(rho[2].get<double>(), 0.922784, 1e-6);
}

TEST(Cli, ErsConstantIsAMembershipFailure) {
  const Invocation r = run({"ers", "--dist", "constant"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not in H*: non-constant required"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run({"ers", "--dist", "exponential", "--n", "31"}).code, 1);
  EXPECT_EQ(run({"ers", "--dist", "{bad"}).code, 1);
  EXPECT_EQ(run({"ers"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"ers", "--dist", "exponential", "--tol", "-1"}).code, 1);
  EXPECT_EQ(run({"simulate", "--dist", "exponential", "--reps", "20000000"}).code, 1);
}

TEST(Cli, HelpExitsZero) {
  const Invocation r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ers"), std::string::npos);
}

TEST(Cli, CsvFormat) {
  const Invocation r = run({"ers", "--dist", "uniform", "--n", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,rho,error\n1,0.5", 0), 0u);
}

TEST(Cli, TransformPhiMoments) {
  const Invocation r = run({"transform", "phi", "--dist", "exponential", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = recseq::Json::parse(r.out);
  const double expected[] = {2, 6, 24, 120};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(j.at("moments")[k].get<double>() / expected[k], 1.0, 1e-7);
  EXPECT_EQ(j.at("grid").size(), 25u);
}

TEST(Cli, TransformInverseOfUnitAtom) {
  const Invocation r = run({"transform", "inverse", "--t", R"({"kind":"atoms","atoms":[[1,1]]})"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = recseq::Json::parse(r.out);
  EXPECT_DOUBLE_EQ(j.at("c_T").get<double>(), 1.0);
  for (const auto& p : j.at("grid")) {
    const double y = p.at("y").get<double>();
    EXPECT_DOUBLE_EQ(p.at("H0").get<double>(), y <= 1.0 ? -1.0 : std::exp(1.0) - 1.0);
  }
}

TEST(Cli, TransformInverseRejectsNegativeAtom) {
  const Invocation r = run({"transform", "inverse", "--t", R"({"kind":"atoms","atoms":[[-1,1]]})"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, EnvironmentToleranceIsRead) {
  ::setenv("RECORD_MOMENTS_TOL", "abc", 1);
  EXPECT_EQ(run({"ers", "--dist", "exponential", "--n", "2"}).code, 1);
  EXPECT_EQ(run({"ers", "--dist", "exponential", "--n", "2", "--tol", "1e-9"}).code, 0);
  ::setenv("RECORD_MOMENTS_TOL", "1e-8", 1);
  EXPECT_EQ(run({"ers", "--dist", "exponential", "--n", "2"}).code, 0);
  ::unsetenv("RECORD_MOMENTS_TOL");
}

TEST(Cli, SimulateIsDeterministic) {
  const std::vector<std::string> args{"simulate", "--dist", "exponential", "--n", "3",
                                      "--reps", "500", "--seed", "9"};
  const Invocation a = run(args);
  const Invocation b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(recseq::Json::parse(a.out).at("records").size(), 3u);
}

TEST(Cli, MomentsFromList) {
  const Invocation r = run({"moments", "--m", "[1, 2, 6, 24, 120]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(recseq::Json::parse(r.out).at("feasible").get<bool>());
}

TEST(Cli, OutFileWrittenAtomically) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(::testing::TempDir()) / "recseq_cli_out";
  fs::create_directories(dir);
  const fs::path good = dir / "ers.json";
  const fs::path bad = dir / "bad.json";
  fs::remove(good);
  fs::remove(bad);
  ASSERT_EQ(run({"ers", "--dist", "exponential", "--n", "3", "--out", good.string()}).code, 0);
  std::ifstream f(good);
  std::stringstream text;
  text << f.rdbuf();
  EXPECT_EQ(recseq::Json::parse(text.str()).at("rho").size(), 3u);
  EXPECT_EQ(run({"ers", "--dist", "constant", "--out", bad.string()}).code, 2);
  EXPECT_FALSE(fs::exists(bad));
  for (const auto& e : fs::directory_iterator(dir)) {
    EXPECT_EQ(e.path().extension(), ".json") << e.path();
  }
}

TEST(Cli, DemoBernoulliNotionsReport) {
  const Invocation r = run({"demo", "table1", "--reps", "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Pr(W_2 = 0)"), std::string::npos);
  const Invocation j = run({"demo", "table1", "--reps", "2000", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  const auto parsed = recseq::Json::parse(j.out);
  EXPECT_DOUBLE_EQ(parsed.at("ordinary_R2_one_given_exists").at("p").get<double>(), 1.0);
}
