#include "recseq/ers.hpp"

#include <algorithm>
#include <cmath>

#include "recseq/errors.hpp"
#include "recseq/records.hpp"
#include "recseq/transform.hpp"

namespace recseq {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

ErsSeq ers_compute(const HRep& h, int n_max, const Tolerance& tol, const ErsOptions& options) {
  tol.validate();
  if (n_max < 1 || n_max > options.max_terms) {
    throw InputError("n must lie in [1, " + std::to_string(options.max_terms) + "]");
  }
  if (options.check_membership) {
    const MembershipReport report = membership_check(h, std::max(2, n_max - 1), tol);
    if (!report.in_H_star) throw MembershipError(report.diagnostic);
  }
  ErsSeq out;
  out.source_label = h.source ? h.source->label : std::string();
  for (int n = 1; n <= n_max; ++n) {
    const QuadResult r = weighted_h_integral(h, n - 1, false, tol);
    if (!r.converged) {
      throw ConvergenceError("rho_" + std::to_string(n) + " did not converge: " + r.diagnostic);
    }
    out.rho.push_back(r.value);
    out.error.push_back(r.abs_error_estimate);
  }
  return out;
}

ErsSeq ers_from_record_cdf(const QuantileRep& d, int n_max, const Tolerance& tol) {
  if (n_max < 1 || n_max > 2) throw InputError("the record c.d.f. route covers n = 1, 2 only");
  if (!d.has_cdf()) throw DomainError("the record c.d.f. route needs a c.d.f. view");
  std::vector<double> positive;
  std::vector<double> negative;
  for (const Atom& a : d.atoms) {
    if (a.location > 0.0) positive.push_back(a.location);
    if (a.location < 0.0) negative.push_back(-a.location);
  }
  std::sort(negative.begin(), negative.end());
  ErsSeq out;
  out.source_label = d.label;
  for (int n = 1; n <= n_max; ++n) {
    auto upper = [&d, n](double x) {
      const double sf = d.survival(x);
      if (sf <= 0.0) return 0.0;
      if (sf >= 1.0) return 1.0;
      return erlang_survival(n, -std::log(sf));
    };
    auto lower = [&d, n](double x) { return record_cdf(d, n, -x); };
    HalflineOptions up;
    up.breakpoints = positive;
    HalflineOptions down;
    down.breakpoints = negative;
    const QuadResult a = integrate_halfline(upper, tol, up);
    const QuadResult b = integrate_halfline(lower, tol, down);
    if (!a.converged || !b.converged) {
      throw ConvergenceError("record c.d.f. integral did not converge for n = " + std::to_string(n));
    }
    out.rho.push_back(a.value - b.value);
    out.error.push_back(a.abs_error_estimate + b.abs_error_estimate);
  }
  return out;
}

MomentSeq ers_to_t_moments(const ErsSeq& rho) {
  if (rho.rho.size() < 3) throw InputError("need at least three record expectations");
  const double spread = rho.rho[1] - rho.rho[0];
  if (!(spread > 0.0)) throw DomainError("degenerate source: rho_2 must exceed rho_1");
  MomentSeq out;
  out.source_label = rho.source_label;
  for (std::size_t n = 0; n + 1 < rho.rho.size(); ++n) {
    const double diff = rho.rho[n + 1] - rho.rho[n];
    out.m.push_back(n == 0 ? 1.0 : factorial(static_cast<int>(n) + 1) * diff / spread);
  }
  return out;
}

ErsSeq ers_from_t_moments(double rho1, double rho2, std::span<const double> m) {
  if (!(rho2 > rho1)) throw DomainError("degenerate source: rho_2 must exceed rho_1");
  ErsSeq out;
  out.rho = {rho1, rho2};
  for (std::size_t n = 1; n < m.size(); ++n) {
    out.rho.push_back(out.rho.back() + (rho2 - rho1) * m[n] / factorial(static_cast<int>(n) + 1));
  }
  out.error.assign(out.rho.size(), 0.0);
  return out;
}

GenFunEval sum_power_series(std::span<const double> coeffs, double t, const Tolerance& tol) {
  if (coeffs.empty()) throw InputError("power series needs at least one coefficient");
  GenFunEval out;
  out.t = t;
  const std::size_t n = coeffs.size();
  std::vector<double> terms(n);
  double power = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    terms[k] = coeffs[k] * power;
    power *= t;
  }
  double sum = 0.0;
  for (double v : terms) sum += v;
  out.value = sum;
  out.terms_used = static_cast<int>(n);

  // radius from the last coefficient ratio
  out.radius_estimate = kInf;
  for (std::size_t k = n - 1; k >= 1; --k) {
    if (coeffs[k] != 0.0 && coeffs[k - 1] != 0.0) {
      out.radius_estimate = std::abs(coeffs[k - 1] / coeffs[k]);
      break;
    }
  }

  if (t == 0.0) {
    out.value = coeffs[0];
    out.terms_used = 1;
    out.converged = true;
    return out;
  }
  const std::size_t first = n > 5 ? n - 5 : 0;
  bool all_zero = true;
  double ratio = 0.0;
  int ratios = 0;
  for (std::size_t k = first; k + 1 < n; ++k) {
    if (terms[k + 1] != 0.0) all_zero = false;
    if (terms[k] == 0.0) continue;
    ratio = std::max(ratio, std::abs(terms[k + 1] / terms[k]));
    ++ratios;
  }
  if (all_zero && terms[first] == 0.0) {
    out.converged = true;
    return out;
  }
  if (ratios < 2 || ratio >= 1.0) {
    out.remainder_bound = kInf;
    out.converged = false;
    return out;
  }
  out.remainder_bound = std::abs(terms[n - 1]) * ratio / (1.0 - ratio);
  out.converged = std::isfinite(sum) && out.remainder_bound <= tol.target(sum);
  return out;
}

GenFunEval gen_fun_rho(const ErsSeq& rho, double t, const Tolerance& tol) {
  if (!(std::abs(t) < 1.0)) throw DomainError("generating function needs |t| < 1");
  return sum_power_series(rho.rho, t, tol);
}

Eq6Report validate_eq6(const HRep& h, const TDist& t_dist, int n_max, const Tolerance& tol) {
  if (n_max < 3) throw InputError("validate_eq6 needs n_max >= 3");
  const ErsSeq rho = ers_compute(h, n_max, tol);
  const double spread = rho.rho[1] - rho.rho[0];
  if (!(spread > 0.0)) throw DomainError("degenerate source: rho_2 must exceed rho_1");
  Eq6Report report;
  for (int n = 0; n + 2 <= n_max; ++n) {
    const double lhs = (rho.rho[n + 1] - rho.rho[n]) / spread;
    const double rhs = t_dist.moment(n, tol) / factorial(n + 1);
    report.lhs.push_back(lhs);
    report.rhs.push_back(rhs);
    const double rel = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
    report.rel_discrepancy.push_back(rel);
    report.max_rel_discrepancy = std::max(report.max_rel_discrepancy, rel);
  }
  return report;
}

}  // namespace recseq
