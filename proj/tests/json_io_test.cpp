#include <cmath>
#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "recseq/errors.hpp"
#include "recseq/json_io.hpp"
#include "recseq/moments.hpp"

using namespace recseq;

TEST(JsonInput, InlineObjectAndBareName) {
  const QuantileRep a = distribution_from_json(load_json_arg(R"({"kind":"exponential","rate":2})"));
  EXPECT_NEAR(a.at(0.5), std::log(2.0) / 2.0, 1e-14);
  const QuantileRep b = distribution_from_json(load_json_arg("uniform"));
  EXPECT_NEAR(b.at(0.25), 0.25, 1e-15);
}

TEST(JsonInput, FileArgument) {
  const std::string path = ::testing::TempDir() + "recseq_dist.json";
  {
    std::ofstream f(path);
    f << R"({"kind": "two_point", "x1": 0, "p": 0.25, "x2": 3})";
  }
  const QuantileRep d = distribution_from_json(load_json_arg(path));
  EXPECT_DOUBLE_EQ(d.at(0.2), 0.0);
  EXPECT_DOUBLE_EQ(d.at(0.3), 3.0);
  std::remove(path.c_str());
}

TEST(JsonInput, SchemaErrors) {
  EXPECT_THROW(distribution_from_json(load_json_arg(R"({"kind":"exponential","lambda":2})")), InputError);
  EXPECT_THROW(distribution_from_json(load_json_arg(R"({"rate":2})")), InputError);
  EXPECT_THROW(distribution_from_json(load_json_arg(R"({"kind":"weibull"})")), InputError);
  EXPECT_THROW(distribution_from_json(load_json_arg(R"({"kind":"exponential","rate":"x"})")), InputError);
  EXPECT_THROW(load_json_arg("{not json"), InputError);
  EXPECT_THROW(load_json_arg("/no/such/file.json"), InputError);
}

TEST(JsonInput, DiscreteAndPiecewise) {
  const QuantileRep d =
      distribution_from_json(load_json_arg(R"({"kind":"discrete","atoms":[[0,0.5],[2,0.5]]})"));
  EXPECT_TRUE(d.is_discrete());
  EXPECT_DOUBLE_EQ(d.at(0.75), 2.0);
  const QuantileRep p = distribution_from_json(
      load_json_arg(R"({"kind":"piecewise_quantile","knots":[[0,0],[1,2]]})"));
  EXPECT_NEAR(p.at(0.5), 1.0, 1e-15);
}

TEST(JsonInput, TLaws) {
  const TDist a = tdist_from_json(load_json_arg(R"({"kind":"atoms","atoms":[[1,1]]})"));
  EXPECT_EQ(a.form, TDist::Form::atoms);
  const TDist g = tdist_from_json(load_json_arg(R"({"kind":"density","family":"gamma","shape":2,"rate":1})"));
  EXPECT_NEAR(g.density(1.0), std::exp(-1.0), 1e-14);
  const TDist m = tdist_from_json(load_json_arg(
      R"({"kind":"mixture","atoms":[[0.5,0.25]],"components":[{"weight":0.75,"family":"exponential"}]})"));
  EXPECT_NEAR(m.atom_mass(), 0.25, 1e-15);
  EXPECT_NEAR(m.density(1.0), 0.75 * std::exp(-1.0), 1e-14);
  EXPECT_THROW(tdist_from_json(load_json_arg(R"({"kind":"atoms","atoms":[[-1,1]]})")), DomainError);
  EXPECT_THROW(tdist_from_json(load_json_arg(R"({"kind":"stieltjes_lambda","lambda":2})")), InputError);
}

TEST(JsonOutput, SequencesRoundTrip) {
  ErsSeq s;
  s.rho = {0.0, 1.0, 1.5};
  s.error = {1e-12, 2e-12, 3e-12};
  s.source_label = "x";
  const ErsSeq back = ers_from_json(Json::parse(to_json(s).dump()));
  EXPECT_EQ(back.rho, s.rho);
  EXPECT_EQ(back.error, s.error);
  EXPECT_EQ(back.source_label, "x");
  EXPECT_EQ(ers_from_json(Json::parse("[1,2,3]")).error, (std::vector<double>{0, 0, 0}));

  const MomentSeq m = stieltjes_feasibility(make_moment_seq({1, 2, 6, 24}));
  const Json j = to_json(m);
  EXPECT_TRUE(j.at("feasible").get<bool>());
  EXPECT_EQ(moments_from_json(j).m, m.m);
  EXPECT_EQ(j.at("hints").at("determinacy_hint"), "inconclusive");
}
