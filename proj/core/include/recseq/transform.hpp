#pragma once

// The map phi: X -> T = L(F(V)), where V has density proportional to
// (1 - F) L(F), and its inverse phi' which rebuilds the normalised quantile
// H0 (rho_1 = 0, rho_2 = 1) from the law of T.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "recseq/distributions.hpp"
#include "recseq/sequences.hpp"

namespace recseq {

struct TDist {
  enum class Form { atoms, density, cdf };

  Form form = Form::atoms;
  // Point masses, sorted by location. The density form may carry atoms too,
  // in which case `density` integrates to 1 - atom_mass().
  std::vector<Atom> atoms;
  RealFn density;
  // Jump points of the c.d.f. or kinks of the density.
  std::vector<double> breakpoints;

  // c.d.f. form: F(t), F(t-), and the scaled survival e^t (1 - F(t)) with its
  // left version e^t (1 - F(t-)), which stay accurate for large t.
  RealFn cdf_fn;
  RealFn cdf_left_fn;
  RealFn scaled_survival_fn;
  RealFn scaled_survival_left_fn;

  std::vector<double> moments_cache;  // m_0..m_K when known
  Tolerance quad_tol;                 // accuracy of derived quadratures
  std::string label;

  double atom_mass() const;
  double cdf(double t) const;
  double cdf_left(double t) const;
  double survival(double t) const;
  double scaled_survival(double t) const;
  double scaled_survival_left(double t) const;
  // E T^n; exact for atoms, quadrature otherwise.
  double moment(int n, const Tolerance& tol = {}) const;
  // E T^n = integral n t^{n-1} (1 - F(t)) dt, from the c.d.f. view only.
  double moment_from_cdf(int n, const Tolerance& tol = {}) const;
};

TDist t_atoms(std::vector<Atom> atoms, std::string label = "atoms");
// Density `f` of the continuous part, optionally mixed with point masses.
TDist t_density(RealFn f, std::string label, std::vector<Atom> atoms = {},
                std::vector<double> breakpoints = {});
// gamma(shape, rate), erlang(k, rate), exponential(rate), lognormal(mu, sigma).
TDist t_family(std::string_view name, std::span<const double> params = {});
double gamma_density(double shape, double rate, double t);
// Lognormal density perturbed by (1 + lambda sin(pi log t)).
TDist t_stieltjes(double lambda);
// Poisson(1) plus an independent variable putting mass 2^{-n} on the n-th
// rational of (0,1], truncated to `poisson_terms` x `rationals` atoms and
// renormalised. Its support is dense in (0, poisson_terms).
TDist t_dense_support_example(int poisson_terms = 21, int rationals = 40);

// Throws InputError for malformed input and DomainError when T is not a
// positive variable with finite moments (checked up to order 4).
void validate_tdist(const TDist& t, const Tolerance& tol = {});

struct VDensity {
  RealFn f_v;
  double normalizer = 0.0;  // integral (1 - F) L(F) dx = rho_2 - rho_1
};

VDensity v_density(const QuantileRep& d, const Tolerance& tol = {});

struct PhiOptions {
  int moment_order = 8;
};

// Law of T = phi(X). Discrete sources give an exact atom list; otherwise the
// c.d.f. form is evaluated by quadrature on the standardised H0 and the
// moment cache is filled from record increments.
TDist phi(const QuantileRep& d, const Tolerance& tol = {}, const PhiOptions& options = {});

// E[g(T)] with g(t) = 1/t for t > 1 and (1 + e t - e^t)/t for t <= 1.
double c_T(const TDist& t, const Tolerance& tol = {});

// H0 = phi'(T). Atom inputs give an exact step function with a discrete
// source attached; densities and c.d.f. forms are evaluated by quadrature.
HRep phi_inverse(const TDist& t, const Tolerance& tol = {});

// c_T - e F_T(1-): H = H0 + offset is <= 0 on (0,1] and >= 0 beyond.
double centering_offset(const TDist& t, const Tolerance& tol = {});

struct GridComparison {
  std::vector<double> grid;
  std::vector<double> expected;
  std::vector<double> actual;
  double max_discrepancy = 0.0;
};

// Standardises d, applies phi then phi', and compares the two H0 on a grid
// in [0.02, 8] that avoids the jump points of H0.
GridComparison roundtrip(const QuantileRep& d, const Tolerance& tol = {},
                         std::span<const double> grid = {});

// Compares F_T and F_T(-) of phi(d) and phi(c + lambda d) on a grid.
GridComparison invariance_check(const QuantileRep& d, double c, double lambda,
                                const Tolerance& tol = {}, std::span<const double> grid = {});

// Standardised H0 of a source, rho_1 = 0 and rho_2 = 1.
HRep standardized_h(const QuantileRep& d, const Tolerance& tol = {});

}  // namespace recseq
