#pragma once

// Shared numerical kernel: adaptive Gauss-Kronrod quadrature on finite
// intervals, the unit interval and the half-line, monotone inversion by
// bisection and a few special-function helpers used across the library.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace recseq {

using RealFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::size_t max_subdivisions = 2000;

  // Throws InputError unless every field is strictly positive.
  void validate() const;

  // Accuracy demanded for an integral whose value is `value`.
  double target(double value) const;

  // Same tolerance scaled by `factor` (used for inner integrals of nested
  // quadratures).
  Tolerance scaled(double factor) const;
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::string diagnostic;
};

// Envelope |f(y)| <= scale * y^power * exp(-(1 - theta) * y) for y >= from.
// When supplied to the half-line integrator the neglected tail beyond the
// truncation point is bounded analytically instead of estimated.
struct GrowthBound {
  double scale = 1.0;
  double power = 0.0;
  double theta = 0.0;
  double from = 0.0;
};

struct HalflineOptions {
  std::optional<GrowthBound> growth;
  // Known discontinuities or kinks of the integrand.
  std::vector<double> breakpoints;
  // Finite upper limit; panels still grow geometrically from the origin.
  double upper = kInf;
  // The tail test is never applied before the panels reach this point.
  double min_extent = 64.0;
  // Beyond this point the integral is declared non-convergent.
  double max_extent = 1.0e9;
};

struct UnitOptions {
  // Integrand may blow up logarithmically at u -> 1; integrate in the
  // exponential coordinate u = 1 - exp(-y) instead.
  bool log_singular_at_one = false;
  // Integrate over (0, upper) with upper <= 1.
  double upper = 1.0;
  std::vector<double> breakpoints;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Adaptive 21-point Gauss-Kronrod over [a, b]; the interval is split at the
// given breakpoints before refinement starts. Failure to converge within
// tol.max_subdivisions is reported through QuadResult::converged.
QuadResult integrate_interval(const RealFn& f, double a, double b,
                              const Tolerance& tol,
                              std::span<const double> breakpoints = {});

// Integral over (0, infinity), or (0, options.upper), using geometric panels
// [0,1], [1,2], [2,4], ... so that both exponential and log-scale decay are
// resolved. The truncation point and the bound on the neglected tail come
// from options.growth when given, otherwise from the observed decay of the
// last panels; the tail bound is part of abs_error_estimate.
QuadResult integrate_halfline(const RealFn& f, const Tolerance& tol,
                              const HalflineOptions& options = {});

// Integral over (0, options.upper).
QuadResult integrate_unit(const RealFn& f, const Tolerance& tol,
                          const UnitOptions& options = {});

// Returns inf{x in bracket : F(x) >= u} for non-decreasing F, to absolute
// precision x_tol (or max_iter halvings). Requires F(lo) < u <= F(hi).
double invert_monotone(const RealFn& F, double u, Interval bracket,
                       double x_tol = 1e-12, int max_iter = 200);

// Same search for an arbitrary level (u need not lie in (0,1)).
double bisect_level(const RealFn& g, double level, Interval bracket,
                    double x_tol = 1e-12, int max_iter = 200);

// Richardson-extrapolated central difference.
double central_difference(const RealFn& f, double x, double h = 1e-3);

// a_k(t) = integral_t^inf u^k e^{-u} du = k! e^{-t} sum_{j<=k} t^j / j!.
double upper_gamma_integer(int k, double t);

// Pr(Erlang(n,1) > t) = e^{-t} sum_{j<n} t^j / j!, evaluated stably.
double erlang_survival(int n, double t);

double log_factorial(int n);

// (e^t - 1)/t with the removable singularity at 0 handled by a series.
double expm1_over_x(double t);

// L(u) = -log(1 - u).
double exp_coordinate(double u);

// Grid helpers.
std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> geomspace(double a, double b, std::size_t n);

}  // namespace recseq
