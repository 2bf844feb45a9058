#pragma once

#include <cstddef>
#include <vector>

#include "nnoma/compositions.hpp"
#include "nnoma/mixture.hpp"

namespace nnoma {

/// Partial-fraction expansion of
///   q(s) = prod_{n: k_n != 0} (w_n d_n)^{k_n} / (d_n + s)^{k_n}
///        = sum_n sum_{i=0}^{k_n-1} A_{n,i} / (s + d_n)^{k_n - i}.
///
/// Coefficients are stored normalized, A_{n,i} / d_n^{k_n - i}, which is
/// dimensionless and stays finite for large k_n.
class ResidueTable {
 public:
  struct Pole {
    std::size_t term;                // index into the mixture
    int order;                       // k_n
    double rate;                     // d_n
    std::vector<double> normalized;  // A_{n,i} / d_n^{k_n-i}, i = 0..k_n-1
    std::vector<double> correction;  // low-order part: normalized + correction carries ~32 digits
  };

  explicit ResidueTable(std::vector<Pole> poles) : poles_(std::move(poles)) {}

  const std::vector<Pole>& poles() const { return poles_; }

  /// Unscaled A_{n,i}; overflows for large orders, use normalized() there.
  double coefficient(std::size_t pole, int i) const;
  double normalized(std::size_t pole, int i) const { return poles_[pole].normalized[i]; }

  /// q(s) rebuilt from the partial fractions in extended precision.
  double reconstruct(double s) const;

 private:
  std::vector<Pole> poles_;
};

/// Residues of q(s) for one composition (parts index mixture terms) by the
/// logarithmic-derivative Taylor recursion of prod_{j != n} (d_j + s)^{-k_j}
/// around s = -d_n, carried out in 113-bit floating point.
ResidueTable residues(const Composition& comp, const ExpMixture& mix);

/// q(s) evaluated directly from its product form.
double direct_q(const Composition& comp, const ExpMixture& mix, double s);

/// Partial fractions of Q(s)^m with Q(s) = sum_n w_n d_n / (d_n + s).
/// By the multinomial theorem this equals the sum over all compositions of m
/// of multinomial(k) * q_k(s), aggregated pole by pole. Entry [n][j-1] holds the
/// normalized coefficient of 1/(s + d_n)^j, j = 1..m.
std::vector<std::vector<double>> power_residues(const ExpMixture& mix, int m);

}  // namespace nnoma
