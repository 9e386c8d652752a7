#pragma once

// Stieltjes feasibility and determinacy diagnostics for moment prefixes,
// the equal-moment lognormal family, and the MGF <-> generating-function
// pipeline between T = phi(X) and the record expectations of X.

#include <string_view>
#include <vector>

#include "recseq/ers.hpp"
#include "recseq/sequences.hpp"

namespace recseq {

std::string_view hint_name(DeterminacyHint hint);

MomentSeq make_moment_seq(std::vector<double> m, std::string label = {});

// Fills the Hankel fields and feasible_stieltjes. Both Hankel matrices are
// equilibrated by their diagonals before the eigensolve; feasibility means
// both minimum eigenvalues are >= -1e-10 times the spectral norm.
MomentSeq stieltjes_feasibility(MomentSeq seq);

// Sum_{n=1}^K m_n^{-1/(2n)}. Sets determinacy_hint from Raabe's test on the
// last terms: a statistic <= 1 looks divergent (likely_determinate).
double carleman_diagnostic(MomentSeq& seq);

// m_n = exp(n^2/2), n = 0..K, diagnosed and tagged known_indeterminate_example.
MomentSeq lognormal_moment_fixture(int K);

// (1 + lambda sin(pi log t)) e^{-(log t)^2/2} / (t sqrt(2 pi)).
double stieltjes_family_density(double lambda, double t);

struct MgfEval {
  double a = 0.0;
  double value = 0.0;
  bool converged = false;
  int terms_used = 0;
  double remainder_bound = 0.0;
};

// M_T(a) = sum_{n>=1} n (rho_{n+1} - rho_n) a^{n-1} / (rho_2 - rho_1).
MgfEval mgf_from_ers(const ErsSeq& rho, double a, const Tolerance& tol = {});

// (rho_1 + (rho_2 - rho_1) integral_0^t M(s) ds) / (1 - t).
double ers_from_mgf(const RealFn& mgf, double rho1, double rho2, double t,
                    const Tolerance& tol = {});

}  // namespace recseq
