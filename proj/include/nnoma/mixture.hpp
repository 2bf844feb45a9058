#pragma once

#include <cstddef>
#include <vector>

#include "nnoma/params.hpp"

namespace nnoma {

/// Chebyshev nodes cos((2n-1) pi / 2N), n = 1..N, in that order.
std::vector<double> chebyshev_nodes(int N);

enum class MixtureKind {
  coop_gain_pdf,      // f(z) = sum w_n d_n exp(-d_n z)
  cluster_gain_ccdf,  // F(z) = 1 - sum w_n exp(-c_n z)
};

struct MixtureTerm {
  double weight;
  double rate;
};

/// Weighted exponential mixture with strictly increasing positive rates.
class ExpMixture {
 public:
  /// Sorts terms by rate; throws DegeneratePoleError on repeated rates and
  /// ValidationError on non-positive rates.
  ExpMixture(MixtureKind kind, std::vector<MixtureTerm> terms);

  MixtureKind kind() const { return kind_; }
  const std::vector<MixtureTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const MixtureTerm& operator[](std::size_t i) const { return terms_[i]; }

  double weight_sum() const;

  /// Distribution function of the approximated gain.
  double cdf(double z) const;
  /// Density; only meaningful for coop_gain_pdf.
  double pdf(double z) const;

 private:
  MixtureKind kind_;
  std::vector<MixtureTerm> terms_;
};

/// Allowed |sum w_n - 1| for an N-term Chebyshev mixture: pi^2 / (12 N^2).
double normalization_bound(int N);

/// pdf of |g|^2 / r^alpha with r distributed over the annulus [r_inner, r_outer]
/// with density 2r / (r_outer^2 - r_inner^2) and |g|^2 unit exponential.
ExpMixture coop_gain_mixture(double r_inner, double r_outer, double alpha, int N);
ExpMixture coop_gain_mixture(const SystemParams& p, int N);

/// cdf of |h|^2 / |y|^alpha with y uniform in a disc of radius r_disc.
ExpMixture cluster_gain_mixture(double r_disc, double alpha, int N);
ExpMixture cluster_gain_mixture(const SystemParams& p, int N);

}  // namespace nnoma
