#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "recseq/distributions.hpp"
#include "recseq/ers.hpp"
#include "recseq/errors.hpp"
#include "recseq/transform.hpp"

using namespace recseq;

namespace {

constexpr double kE = std::numbers::e;

TDist random_mixture(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Atom> atoms;
  const int n_atoms = static_cast<int>(gen() % 3);
  double atom_total = 0.0;
  for (int i = 0; i < n_atoms; ++i) {
    atoms.push_back({0.2 + 3.0 * unit(gen), 0.1 + 0.1 * unit(gen)});
    atom_total += atoms.back().mass;
  }
  struct Component {
    double weight, shape, rate;
  };
  std::vector<Component> comps;
  const int n_comps = 1 + static_cast<int>(gen() % 2);
  double wsum = 0.0;
  for (int i = 0; i < n_comps; ++i) {
    comps.push_back({0.2 + unit(gen), 1.0 + 3.0 * unit(gen), 0.5 + 2.0 * unit(gen)});
    wsum += comps.back().weight;
  }
  for (Component& c : comps) c.weight *= (1.0 - atom_total) / wsum;
  auto f = [comps](double t) {
    double s = 0.0;
    for (const Component& c : comps) s += c.weight * oracle::gamma_pdf(c.shape, c.rate, t);
    return s;
  };
  return t_density(f, "mixture", atoms);
}

}  // namespace

TEST(CenteringConstant, ClosedForms) {
  EXPECT_NEAR(c_T(t_atoms({{1.0, 1.0}})), 1.0, 1e-15);
  EXPECT_NEAR(c_T(t_atoms({{2.0, 1.0}})), 0.5, 1e-15);
  EXPECT_NEAR(c_T(t_atoms({{0.5, 0.5}, {4.0, 0.5}})),
              0.5 * oracle::ct_kernel(0.5) + 0.5 * 0.25, 1e-14);
}

TEST(CenteringConstant, ErlangTwoAgainstQuadratureOracle) {
  const double ref = oracle::halfline(
      [](double t) { return oracle::ct_kernel(t) * t * std::exp(-t); }, {1.0}, 120.0, 40000);
  EXPECT_NEAR(c_T(t_family("erlang", std::array{2.0, 1.0})), ref, 1e-9);
}

TEST(CenteringConstant, CdfViewAgreesWithDensityView) {
  const TDist via_phi = phi(make_family("exponential"));
  EXPECT_EQ(via_phi.form, TDist::Form::cdf);
  EXPECT_NEAR(c_T(via_phi), c_T(t_family("erlang", std::array{2.0, 1.0})), 1e-8);
}

TEST(Phi, ExponentialSourceGivesErlangTwo) {
  const TDist t = phi(make_family("exponential"));
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 12.0}) {
    EXPECT_NEAR(t.cdf(x), oracle::erlang_cdf(2, x), 1e-9) << x;
    EXPECT_NEAR(t.scaled_survival(x), 1.0 + x, 1e-8 * (1.0 + x)) << x;
  }
  for (int n = 0; n <= 6; ++n) {
    EXPECT_NEAR(t.moment_from_cdf(n) / oracle::factorial(n + 1), 1.0, 1e-8);
  }
}

TEST(Phi, LogRecordSourceGivesStandardExponential) {
  const TDist t = phi(make_family("log_record"));
  for (double x : {0.2, 1.0, 3.0}) EXPECT_NEAR(t.cdf(x), -std::expm1(-x), 1e-8);
}

TEST(Phi, DiscreteSourceGivesExactAtoms) {
  const TDist t = phi(make_family("two_point"));
  ASSERT_EQ(t.form, TDist::Form::atoms);
  ASSERT_EQ(t.atoms.size(), 1u);
  EXPECT_DOUBLE_EQ(t.atoms[0].location, 1.0);
  EXPECT_DOUBLE_EQ(t.atoms[0].mass, 1.0);

  const TDist b = phi(make_family("bernoulli"));
  ASSERT_EQ(b.atoms.size(), 1u);
  EXPECT_NEAR(b.atoms[0].location, std::log(2.0), 1e-15);
}

TEST(Phi, MomentsMatchRecordIncrements) {
  const QuantileRep d = make_family("lognormal");
  const TDist t = phi(d);
  const MomentSeq m = ers_to_t_moments(ers_compute(to_h_rep(d), 8));
  for (int n = 0; n <= 5; ++n) {
    EXPECT_NEAR(t.moment_from_cdf(n) / m.m[n], 1.0, 1e-6) << "n=" << n;
  }
}

TEST(Phi, VDensityNormaliser) {
  const VDensity v = v_density(make_family("exponential"));
  EXPECT_NEAR(v.normalizer, 1.0, 1e-9);
  const double total = oracle::halfline(v.f_v, {1.0, 10.0}, 100.0);
  EXPECT_NEAR(total, 1.0, 1e-8);
}

TEST(Inverse, DegenerateTIsAStep) {
  const HRep h = phi_inverse(t_atoms({{1.0, 1.0}}));
  for (double y : {1e-6, 0.3, 0.999, 1.0}) EXPECT_DOUBLE_EQ(h(y), -1.0);
  for (double y : {1.0 + 1e-12, 1.5, 7.0, 60.0}) EXPECT_DOUBLE_EQ(h(y), kE - 1.0);
  EXPECT_DOUBLE_EQ(h.right(1.0), kE - 1.0);
}

TEST(Inverse, ErlangTwoDensityGivesShiftedIdentity) {
  const HRep h = phi_inverse(t_family("erlang", std::array{2.0, 1.0}));
  for (double y : {0.05, 0.5, 1.0, 2.5, 9.0}) EXPECT_NEAR(h(y), y - 1.0, 1e-8) << y;
}

TEST(Inverse, ExponentialDensityGivesLogarithm) {
  const HRep h = phi_inverse(t_family("exponential"));
  for (double y : {0.05, 0.5, 1.0, 2.5, 9.0}) {
    EXPECT_NEAR(h(y), std::log(y) + kEulerGamma, 1e-8) << y;
  }
}

TEST(Inverse, CdfPathAgreesWithDensityPath) {
  const HRep a = phi_inverse(phi(make_family("exponential")));
  const HRep b = phi_inverse(t_family("erlang", std::array{2.0, 1.0}));
  for (double y : geomspace(0.02, 12.0, 17)) EXPECT_NEAR(a(y), b(y), 1e-7) << y;
}

TEST(Inverse, LognormalFamilyMatchesDisplayedQuantile) {
  for (double lambda : {-1.0, 0.5}) {
    const HRep h = phi_inverse(t_stieltjes(lambda));
    for (double u : {0.05, 0.3, 0.5, 0.8, 0.95}) {
      EXPECT_NEAR(h(-std::log1p(-u)), oracle::lognormal_family_quantile(lambda, u), 1e-7)
          << "lambda=" << lambda << " u=" << u;
    }
  }
}

TEST(Inverse, CenteringSignChange) {
  for (const TDist& t : {t_atoms({{0.5, 0.3}, {2.0, 0.7}}), t_family("gamma", std::array{1.5, 1.0}),
                         t_stieltjes(0.3)}) {
    const HRep h = phi_inverse(t);
    const double off = centering_offset(t);
    for (double y : geomspace(0.01, 1.0, 15)) EXPECT_LE(h(y) + off, 1e-9) << t.label << " y=" << y;
    for (double y : geomspace(1.0 + 1e-9, 30.0, 15)) {
      EXPECT_GE(h.right(y) + off, -1e-9) << t.label << " y=" << y;
    }
  }
}

TEST(Inverse, RandomMixturesLandInNormalisedSpace) {
  std::mt19937_64 gen(20260101);
  for (int trial = 0; trial < 4; ++trial) {
    const TDist t = random_mixture(gen);
    const HRep h = phi_inverse(t);
    std::vector<double> cuts{1.0};
    for (const Atom& a : t.atoms) cuts.push_back(a.location);
    const double i0 = oracle::halfline([&](double y) { return std::exp(-y) * h(y); }, cuts, 80.0, 4000);
    const double i1 =
        oracle::halfline([&](double y) { return y * std::exp(-y) * h(y); }, cuts, 80.0, 4000);
    EXPECT_NEAR(i0, 0.0, 1e-6) << trial;
    EXPECT_NEAR(i1, 1.0, 1e-6) << trial;
    double prev = -kInf;
    for (double y : geomspace(1e-3, 40.0, 300)) {
      EXPECT_GE(h(y), prev - 1e-10);
      prev = h(y);
    }
  }
}

TEST(Validation, RejectsMalformedLaws) {
  EXPECT_THROW(validate_tdist(t_atoms({{-1.0, 1.0}})), DomainError);
  EXPECT_THROW(validate_tdist(t_density([](double t) { return 0.5 * std::exp(-t); }, "half")),
               InputError);
  const TDist cauchy_like =
      t_density([](double t) { return 2.0 / (std::numbers::pi * (1.0 + t * t)); }, "half_cauchy");
  EXPECT_THROW(validate_tdist(cauchy_like), DomainError);
  EXPECT_THROW(phi_inverse(cauchy_like), DomainError);
}

TEST(Properties, RoundTripFixtures) {
  for (const char* name : {"exponential", "log_record", "two_point", "uniform", "bernoulli"}) {
    const GridComparison r = roundtrip(make_family(name));
    EXPECT_LT(r.max_discrepancy, 1e-6) << name;
    EXPECT_GT(r.grid.size(), 20u);
  }
}

TEST(Properties, LocationScaleInvariance) {
  for (const char* name : {"exponential", "two_point"}) {
    const GridComparison r = invariance_check(make_family(name), 5.0, 3.0);
    EXPECT_LT(r.max_discrepancy, 1e-7) << name;
  }
}

TEST(Properties, DenseSupportExample) {
  const TDist t = t_dense_support_example(21, 40);
  EXPECT_EQ(t.atoms.size(), 21u * 40u);
  EXPECT_NEAR(t.atom_mass(), 1.0, 1e-12);
  const HRep h = phi_inverse(t);
  EXPECT_LT(h(0.5), h(2.0));
}

TEST(TLaws, DensityCdfReachesOneFarOut) {
  const TDist t = t_family("gamma", std::array{1.5, 2.0});
  for (double x : {50.0, 8103.0, 1e5}) {
    EXPECT_NEAR(t.cdf(x), 1.0, 1e-12) << x;
    EXPECT_NEAR(t.cdf_left(x), 1.0, 1e-12) << x;
  }
}
