#pragma once

#include <string>
#include <vector>

namespace recseq {

// Prefix rho_1..rho_N of an expected record sequence; rho[0] is rho_1.
struct ErsSeq {
  std::vector<double> rho;
  std::vector<double> error;
  std::string source_label;

  double at(int n) const { return rho.at(static_cast<std::size_t>(n - 1)); }
  int size() const { return static_cast<int>(rho.size()); }
};

enum class DeterminacyHint { likely_determinate, inconclusive, known_indeterminate_example };

// Prefix m_0..m_K of a candidate Stieltjes moment sequence.
struct MomentSeq {
  std::vector<double> m;
  bool feasible_stieltjes = false;
  // Minimum eigenvalues of the diagonally equilibrated Hankel matrices
  // [m_{i+j}] and [m_{i+j+1}].
  double hankel_min_eig_plain = 0.0;
  double hankel_min_eig_shifted = 0.0;
  double carleman_partial_sum = 0.0;
  double carleman_raabe = 0.0;
  DeterminacyHint determinacy_hint = DeterminacyHint::inconclusive;
  std::string source_label;
};

}  // namespace recseq
