#pragma once

// Expected record sequences rho_n = E R_n = integral (y^{n-1}/(n-1)!) e^{-y} H(y) dy,
// their relation to the moments of T = phi(X) and the generating function
// G(t) = sum rho_n t^{n-1}.

#include <span>
#include <vector>

#include "recseq/distributions.hpp"
#include "recseq/sequences.hpp"

namespace recseq {

struct TDist;

inline constexpr int kMaxErsTerms = 30;

struct ErsOptions {
  // Run membership_check first and refuse sources outside H*.
  bool check_membership = true;
  // Largest n accepted; the generating-function fixtures need more terms.
  int max_terms = kMaxErsTerms;
};

// rho_1..rho_{n_max}. Discrete sources are summed exactly through Erlang
// survival probabilities. Throws MembershipError for sources outside H* and
// ConvergenceError when an entry misses the tolerance.
ErsSeq ers_compute(const HRep& h, int n_max, const Tolerance& tol = {},
                   const ErsOptions& options = {});

// rho_n = integral (1{x > 0} - F_n(x)) dx, n = 1 or 2; needs a c.d.f. view.
// Independent cross-check of ers_compute.
ErsSeq ers_from_record_cdf(const QuantileRep& d, int n_max, const Tolerance& tol = {});

// m_n = (n+1)! (rho_{n+2} - rho_{n+1}) / (rho_2 - rho_1), n = 0..N-2.
MomentSeq ers_to_t_moments(const ErsSeq& rho);

// Inverse of ers_to_t_moments given the location/scale pair (rho_1, rho_2).
ErsSeq ers_from_t_moments(double rho1, double rho2, std::span<const double> m);

struct GenFunEval {
  double t = 0.0;
  double value = 0.0;
  int terms_used = 0;
  bool converged = false;
  double remainder_bound = 0.0;
  double radius_estimate = 0.0;
};

// Truncated power series with a remainder bound from the ratio of the last
// five terms; converged is false when those terms do not decay.
GenFunEval gen_fun_rho(const ErsSeq& rho, double t, const Tolerance& tol = {});

// Shared ratio-test summation used for G_rho and the MGF series.
GenFunEval sum_power_series(std::span<const double> coeffs, double t, const Tolerance& tol);

struct Eq6Report {
  std::vector<double> lhs;  // (rho_{n+2} - rho_{n+1}) / (rho_2 - rho_1)
  std::vector<double> rhs;  // E T^n / (n+1)!
  std::vector<double> rel_discrepancy;
  double max_rel_discrepancy = 0.0;
};

// Compares record increments of h with the moments of t_dist for n = 0..n_max-2.
Eq6Report validate_eq6(const HRep& h, const TDist& t_dist, int n_max, const Tolerance& tol = {});

}  // namespace recseq
