#pragma once

#include <map>
#include <string>
#include <vector>

namespace nnoma {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

/// Raw parameter mapping as read from configuration (name -> value).
using RawParams = std::map<std::string, double>;

/// Physical and protocol parameters of the network-NOMA CoMP model, SI units.
///
/// Instances are produced by build_params() and never mutated afterwards; the
/// derived block is a pure function of the raw block.
struct SystemParams {
  // raw
  double lambda_c = 0;          // BS density, 1/m^2
  int K = 0;                    // NOMA users per cluster
  double R_c = 0;               // cluster disc radius, m
  double R_bar = 0;             // CoMP exclusion radius, m
  double R_D = 0;               // cooperation radius, m
  double alpha = 0;             // path-loss exponent
  double f_c = 0;               // carrier frequency, Hz
  double P_s_dbm = 0;           // per-subcarrier transmit power, dBm
  double noise_dbm_per_hz = 0;  // noise PSD, dBm/Hz
  double bandwidth_hz = 0;
  double beta0_sq = 0;
  double beta1_sq = 0;
  double R0_bpcu = 0;
  double Ri_bpcu = 0;

  // derived
  double eta = 0;         // c^2 / (16 pi^2 f_c^2)
  double P_s_w = 0;       // transmit power, W
  double sigma_sq_w = 0;  // noise power over the full bandwidth, W
  double rho = 0;         // eta P_s / sigma^2
  double eps0 = 0;        // 2^R0 - 1
  double epsi = 0;        // 2^Ri - 1
  double S_C = 0;         // pi (R_D^2 - R_bar^2), m^2

  /// Mean number of cooperating BSs, lambda_c * S_C.
  double mean_cooperating() const { return lambda_c * S_C; }
};

/// Names accepted by build_params(), in canonical order.
const std::vector<std::string>& raw_param_names();

/// Validates the raw mapping and computes the derived constants.
/// Throws ConfigError for a missing or unknown key and ValidationError for a
/// violated invariant; both messages name the offending key or constraint.
SystemParams build_params(const RawParams& raw);

/// Inverse of build_params() restricted to the raw block.
RawParams to_raw(const SystemParams& p);

/// Rebuilds `p` with one raw parameter replaced. Setting beta0_sq also sets
/// beta1_sq = 1 - beta0_sq.
SystemParams with_param(const SystemParams& p, const std::string& name, double value);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// True iff the CoMP signal is decodable at some SINR, i.e. beta0^2 > beta1^2 eps0.
bool sic_feasible(const SystemParams& p);

/// The OMA counterpart of `p`: beta0^2 = 1, beta1^2 = 0.
SystemParams oma_params(const SystemParams& p);

}  // namespace nnoma
