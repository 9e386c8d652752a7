#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "recseq/distributions.hpp"
#include "recseq/ers.hpp"
#include "recseq/errors.hpp"
#include "recseq/moments.hpp"

using namespace recseq;

namespace {

std::vector<double> factorial_moments(int K, int shift) {
  std::vector<double> m;
  for (int n = 0; n <= K; ++n) m.push_back(oracle::factorial(n + shift));
  return m;
}

}  // namespace

TEST(Hankel, ErlangTwoMomentsAreFeasible) {
  const MomentSeq m = stieltjes_feasibility(make_moment_seq(factorial_moments(10, 1)));
  EXPECT_TRUE(m.feasible_stieltjes);
  EXPECT_GT(m.hankel_min_eig_plain, 0.0);
  EXPECT_GT(m.hankel_min_eig_shifted, 0.0);
}

TEST(Hankel, NegativeVarianceIsInfeasible) {
  const MomentSeq m = stieltjes_feasibility(make_moment_seq({1.0, 2.0, 3.0}));
  EXPECT_FALSE(m.feasible_stieltjes);
  EXPECT_LT(m.hankel_min_eig_plain, 0.0);
}

TEST(Hankel, NegativeMeanFailsShiftedCondition) {
  const MomentSeq m = stieltjes_feasibility(make_moment_seq({1.0, -1.0, 2.0, -3.0}));
  EXPECT_FALSE(m.feasible_stieltjes);
  EXPECT_LT(m.hankel_min_eig_shifted, 0.0);
}

TEST(Hankel, PointMassIsOnTheBoundary) {
  const MomentSeq m = stieltjes_feasibility(make_moment_seq({1.0, 2.0, 4.0, 8.0, 16.0}));
  EXPECT_TRUE(m.feasible_stieltjes);
  EXPECT_NEAR(m.hankel_min_eig_plain, 0.0, 1e-10);
}

TEST(Hankel, MomentsDerivedFromRecordsAreFeasible) {
  for (const char* name : {"exponential", "gumbel", "lognormal", "two_point", "uniform"}) {
    MomentSeq m = ers_to_t_moments(ers_compute(to_h_rep(make_family(name)), 10));
    m = stieltjes_feasibility(std::move(m));
    EXPECT_TRUE(m.feasible_stieltjes) << name;
  }
}

TEST(Carleman, FactorialGrowthLooksDeterminate) {
  MomentSeq m = make_moment_seq(factorial_moments(20, 1));
  const double s = carleman_diagnostic(m);
  double ref = 0.0;
  for (int n = 1; n <= 20; ++n) ref += std::pow(oracle::factorial(n + 1), -1.0 / (2 * n));
  EXPECT_NEAR(s, ref, 1e-12);
  EXPECT_DOUBLE_EQ(m.carleman_partial_sum, s);
  EXPECT_EQ(m.determinacy_hint, DeterminacyHint::likely_determinate);
}

TEST(Carleman, LognormalFixtureIsTagged) {
  const MomentSeq m = lognormal_moment_fixture(12);
  ASSERT_EQ(m.m.size(), 13u);
  EXPECT_NEAR(m.m[3], std::exp(4.5), 1e-9);
  EXPECT_EQ(m.determinacy_hint, DeterminacyHint::known_indeterminate_example);
  EXPECT_TRUE(m.feasible_stieltjes);
  EXPECT_EQ(hint_name(m.determinacy_hint), "known_indeterminate_example");
}

TEST(Carleman, GeometricTailIsInconclusive) {
  std::vector<double> v;
  for (int n = 0; n <= 20; ++n) v.push_back(std::exp(2.0 * n * n));
  MomentSeq m = make_moment_seq(v);
  carleman_diagnostic(m);
  EXPECT_EQ(m.determinacy_hint, DeterminacyHint::inconclusive);
}

TEST(FamilyDensity, IntegratesToOneWithEqualMoments) {
  for (double lambda : {-1.0, 0.0, 0.7}) {
    for (int n = 0; n <= 3; ++n) {
      const double got = oracle::simpson_log(
          [&](double t) { return std::pow(t, n) * stieltjes_family_density(lambda, t); }, 1e-9, 1e9, 40000);
      EXPECT_NEAR(got / std::exp(0.5 * n * n), 1.0, 1e-8) << lambda << " " << n;
    }
  }
}

TEST(Mgf, ExponentialRecordsGiveErlangTwoMgf) {
  const ErsSeq s = ers_compute(to_h_rep(make_family("exponential")), 30, Tolerance{},
                               ErsOptions{.check_membership = false});
  for (double a : {0.1, 0.25, 0.4}) {
    const MgfEval e = mgf_from_ers(s, a);
    EXPECT_TRUE(e.converged);
    EXPECT_NEAR(e.value * (1 - a) * (1 - a), 1.0, 1e-6);
  }
}

TEST(Mgf, GeneratingFunctionFromMgf) {
  const auto mgf = [](double a) { return 1.0 / ((1.0 - a) * (1.0 - a)); };
  for (double t : {0.0, 0.1, 0.25, 0.4}) {
    EXPECT_NEAR(ers_from_mgf(mgf, 1.0, 2.0, t) * (1 - t) * (1 - t), 1.0, 1e-8) << t;
  }
  const auto degenerate = [](double a) { return std::exp(a); };
  EXPECT_NEAR(ers_from_mgf(degenerate, 0.0, 1.0, 0.5), 2.0 * (std::exp(0.5) - 1.0), 1e-9);
  EXPECT_THROW(ers_from_mgf([](double) { return kInf; }, 0.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(ers_from_mgf(mgf, 0.0, 1.0, 1.0), DomainError);
}
