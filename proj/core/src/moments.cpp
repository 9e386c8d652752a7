#include "recseq/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "recseq/errors.hpp"

namespace recseq {

namespace {

// Minimum eigenvalue of D H D with D = diag(H)^{-1/2}, relative to its norm.
std::pair<double, double> equilibrated_min_eig(const std::vector<double>& m, int size, int shift) {
  Eigen::MatrixXd h(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) h(i, j) = m[i + j + shift];
  }
  for (int i = 0; i < size; ++i) {
    if (!(h(i, i) > 0.0)) return {h(i, i), 1.0};
  }
  Eigen::VectorXd d = h.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = d.asDiagonal() * h * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scaled, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.cwiseAbs().maxCoeff()};
}

}  // namespace

std::string_view hint_name(DeterminacyHint hint) {
  switch (hint) {
    case DeterminacyHint::likely_determinate: return "likely_determinate";
    case DeterminacyHint::inconclusive: return "inconclusive";
    case DeterminacyHint::known_indeterminate_example: return "known_indeterminate_example";
  }
  return "inconclusive";
}

MomentSeq make_moment_seq(std::vector<double> m, std::string label) {
  MomentSeq s;
  s.m = std::move(m);
  s.source_label = std::move(label);
  return s;
}

MomentSeq stieltjes_feasibility(MomentSeq seq) {
  const int K = static_cast<int>(seq.m.size()) - 1;
  if (K < 2) throw InputError("feasibility needs moments m_0..m_K with K >= 2");
  for (double v : seq.m) {
    if (!std::isfinite(v)) throw InputError("moments must be finite");
  }
  const auto [plain, plain_norm] = equilibrated_min_eig(seq.m, K / 2 + 1, 0);
  const auto [shifted, shifted_norm] = equilibrated_min_eig(seq.m, (K - 1) / 2 + 1, 1);
  seq.hankel_min_eig_plain = plain;
  seq.hankel_min_eig_shifted = shifted;
  seq.feasible_stieltjes = plain >= -1e-10 * plain_norm && shifted >= -1e-10 * shifted_norm;
  return seq;
}

double carleman_diagnostic(MomentSeq& seq) {
  const int K = static_cast<int>(seq.m.size()) - 1;
  if (K < 1) throw InputError("Carleman diagnostic needs at least m_0, m_1");
  double sum = 0.0;
  for (int n = 1; n <= K; ++n) {
    if (!(seq.m[n] > 0.0)) throw DomainError("Carleman diagnostic needs positive moments");
    sum += std::exp(-std::log(seq.m[n]) / (2.0 * n));
  }
  seq.carleman_partial_sum = sum;
  seq.determinacy_hint = DeterminacyHint::inconclusive;
  if (K >= 2) {
    // Raabe: n (a_n / a_{n+1} - 1) with a_n = m_n^{-1/(2n)}
    const int n = K - 1;
    const double log_ratio = std::log(seq.m[n + 1]) / (2.0 * (n + 1)) - std::log(seq.m[n]) / (2.0 * n);
    seq.carleman_raabe = n * std::expm1(log_ratio);
    if (seq.carleman_raabe <= 1.0) seq.determinacy_hint = DeterminacyHint::likely_determinate;
  }
  return sum;
}

MomentSeq lognormal_moment_fixture(int K) {
  std::vector<double> m;
  for (int n = 0; n <= K; ++n) m.push_back(std::exp(0.5 * n * n));
  MomentSeq seq = stieltjes_feasibility(make_moment_seq(std::move(m), "lognormal"));
  carleman_diagnostic(seq);
  if (seq.determinacy_hint == DeterminacyHint::inconclusive) {
    seq.determinacy_hint = DeterminacyHint::known_indeterminate_example;
  }
  return seq;
}

double stieltjes_family_density(double lambda, double t) {
  if (!(std::abs(lambda) <= 1.0)) throw DomainError("stieltjes family needs |lambda| <= 1");
  if (!(t > 0.0)) throw DomainError("stieltjes family density is defined for t > 0");
  const double l = std::log(t);
  return (1.0 + lambda * std::sin(std::numbers::pi * l)) * std::exp(-0.5 * l * l) /
         (t * std::sqrt(2.0 * std::numbers::pi));
}

MgfEval mgf_from_ers(const ErsSeq& rho, double a, const Tolerance& tol) {
  if (rho.rho.size() < 2) throw InputError("MGF series needs rho_1 and rho_2");
  const double spread = rho.rho[1] - rho.rho[0];
  if (!(spread > 0.0)) throw DomainError("degenerate source: rho_2 must exceed rho_1");
  std::vector<double> coeffs;
  for (std::size_t n = 1; n < rho.rho.size(); ++n) {
    coeffs.push_back(static_cast<double>(n) * (rho.rho[n] - rho.rho[n - 1]) / spread);
  }
  const GenFunEval s = sum_power_series(coeffs, a, tol);
  MgfEval out;
  out.a = a;
  out.value = s.value;
  out.converged = s.converged;
  out.terms_used = s.terms_used;
  out.remainder_bound = s.remainder_bound;
  return out;
}

double ers_from_mgf(const RealFn& mgf, double rho1, double rho2, double t, const Tolerance& tol) {
  if (!(std::abs(t) < 1.0)) throw DomainError("ers_from_mgf needs |t| < 1");
  if (t == 0.0) return rho1;
  auto f = [&mgf](double s) {
    const double v = mgf(s);
    if (!std::isfinite(v)) throw DomainError("MGF is not finite at s = " + std::to_string(s));
    return v;
  };
  const QuadResult r = integrate_interval(f, 0.0, t, tol);
  if (!r.converged) throw ConvergenceError("integral of the MGF did not converge: " + r.diagnostic);
  return (rho1 + (rho2 - rho1) * r.value) / (1.0 - t);
}

}  // namespace recseq
