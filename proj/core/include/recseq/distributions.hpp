#pragma once

// Distribution representations. Everything is quantile-native: a
// distribution is its left-continuous inverse d.f. G on (0,1); the c.d.f.,
// density and atom list are optional derived views. HRep is the same law in
// the exponential coordinate, X = H(E) with H(y) = G(1 - e^{-y}).

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recseq/numerics.hpp"

namespace recseq {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

struct QuantileRep {
  RealFn quantile;        // u in (0,1) -> G(u), left-continuous
  RealFn quantile_right;  // G(u+); empty when G is continuous
  RealFn tail_quantile;   // q -> G(1 - q), accurate for tiny q
  RealFn cdf;
  RealFn sf;              // 1 - F, accurate in the upper tail
  RealFn pdf;
  std::vector<Atom> atoms;     // sorted by location
  std::vector<double> breaks;  // u-levels where G jumps or has a kink
  Interval support_hint{-kInf, kInf};
  std::string label;

  double at(double u) const { return quantile(u); }
  double right_at(double u) const { return quantile_right ? quantile_right(u) : quantile(u); }
  double upper(double q) const;
  double survival(double x) const;
  bool has_cdf() const { return static_cast<bool>(cdf); }
  // True when the atom list carries all of the probability mass.
  bool is_discrete() const;
};

struct HRep {
  RealFn h;                 // left-continuous, non-decreasing on (0, inf)
  RealFn h_right;           // H(y+); empty when H is continuous
  RealFn damped;            // y -> e^{-y} H(y), stable for large y
  std::vector<double> breakpoints;
  std::shared_ptr<const QuantileRep> source;

  double operator()(double y) const { return h(y); }
  double right(double y) const { return h_right ? h_right(y) : h(y); }
  double damped_at(double y) const;
};

struct MomentIntegral {
  int order = 0;
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
};

struct MembershipReport {
  int max_order_checked = 0;
  std::vector<MomentIntegral> moment_integrals;
  bool in_H_star = false;
  bool in_H_zero = false;
  double rho1 = 0.0;
  double rho2 = 0.0;
  int failing_order = -1;
  std::string diagnostic;
};

// Families: exponential(rate), uniform(a,b), log_record(), gumbel(mu,beta),
// lognormal(mu,sigma), bernoulli(p), two_point(x1,p,x2) with Pr(X=x1)=p,
// erlang(k,rate), constant(value), piecewise_quantile(u0,x0,u1,x1,...).
// Missing trailing parameters take the defaults listed in README.md.
QuantileRep make_family(std::string_view name, std::span<const double> params = {});

// Linear interpolation through (u, x) knots with u running from 0 to 1.
// A repeated u encodes a jump of G; a repeated x encodes an atom.
QuantileRep make_piecewise_quantile(std::vector<std::pair<double, double>> knots);

QuantileRep make_discrete(std::vector<Atom> atoms, std::string label);

HRep to_h_rep(const QuantileRep& d);

// Quantile view of an H-representation, G(u) = H(-log(1-u)).
QuantileRep from_h_rep(const HRep& h, std::string label);

// Distribution of c + lambda * X, lambda > 0.
QuantileRep affine(const QuantileRep& d, double c, double lambda);

// Distribution of (X - rho1) / (rho2 - rho1).
QuantileRep standardize(const QuantileRep& d, double rho1, double rho2);

// integral_0^inf (y^m / m!) e^{-y} H(y) dy, or with |H| when `absolute`.
QuadResult weighted_h_integral(const HRep& h, int m, bool absolute, const Tolerance& tol);

// Tolerance used for the H0 normalisation test in membership_check.
double h_zero_tolerance(const Tolerance& tol);

MembershipReport membership_check(const HRep& h, int max_order, const Tolerance& tol = {});

// sup over the grid of |G_a(u) - G_b(u)|.
double quantile_sup_distance(const QuantileRep& a, const QuantileRep& b,
                             std::span<const double> u_grid);

}  // namespace recseq
