#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nnoma/params.hpp"

namespace nnoma {

/// Identifies the random stream of one trial. Every trial draws from its own
/// substreams derived from (seed, trial), so trials are order independent.
struct TrialStream {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

/// One sampled topology around the CoMP user at the origin.
///
/// BSs are stored structure-of-arrays. Cooperating BSs (R_bar <= |x| <= R_D)
/// occupy indices [0, cooperating).
struct NetworkRealization {
  std::vector<double> x, y;  // BS positions, m
  std::vector<double> r2;    // squared distance to the origin, m^2
  std::vector<double> gain_comp;  // |g_i|^2, fading towards the CoMP user
  std::vector<double> gain_noma;  // |h_{j,U}|^2, fading towards the tagged NOMA user
  std::size_t cooperating = 0;

  int K = 0;
  // K users per cooperating BS, row-major by BS: offsets y_{i,k} and |h_{i,U_{i,k}}|^2.
  std::vector<double> user_dx, user_dy, user_gain;
  std::optional<std::size_t> tagged_bs;  // cooperating BS whose NOMA user is observed

  std::size_t size() const { return x.size(); }
};

/// Default interference window, 10 R_D.
double default_window(const SystemParams& p);

/// Ring edges used for sampling: R_bar, R_D, R_D 2^{1/4}, ..., up to the first
/// edge >= window. Each ring owns one RNG substream, so a realization with
/// window W is the restriction of the realization with window 2W.
std::vector<double> sampling_rings(const SystemParams& p, double window);

/// Samples the PPP on the annulus [R_bar, window] (the plane conditioned on an
/// empty exclusion disc and truncated at the window), Rayleigh fading on every
/// link, K cluster users per cooperating BS, and the tagged BS.
NetworkRealization sample_network(const SystemParams& p, double window, TrialStream stream);

/// SINR of the CoMP user; 0 when no BS cooperates.
double comp_sinr(const NetworkRealization& net, const SystemParams& p);

struct NomaSinrs {
  double sinr_i0 = 0;       // decoding the CoMP signal
  double sinr_ii = 0;       // decoding its own signal after SIC
  double own_gain = 0;      // |h|^2 / |y|^alpha of the selected user
  double interference = 0;  // inter-cell interference at the selected user
  std::size_t user = 0;     // selected cluster index k*
};

/// SINRs at the strongest user of the tagged cooperating BS; empty when no BS
/// cooperates.
std::optional<NomaSinrs> noma_sinrs(const NetworkRealization& net, const SystemParams& p);

struct MCEstimate {
  double p0_hat = 1;
  double p0_ci95 = 0;
  std::optional<double> pi_hat;  // empty when no trial had a cooperating BS
  double pi_ci95 = 0;
  std::string pi_undefined_reason;
  std::uint64_t trials = 0;
  std::uint64_t coop_trials = 0;
  std::vector<std::uint64_t> m_histogram;  // counts of the cooperating-BS number
  std::uint64_t seed = 0;
  double window = 0;
};

/// 1.96 sqrt(p (1 - p) / n).
double ci95_halfwidth(double p, std::uint64_t n);

/// Empirical outage probabilities over `trials` independent topologies.
/// Bit-identical for fixed (params, trials, seed, window) for any `workers`
/// (0 = hardware concurrency).
MCEstimate estimate_outage(const SystemParams& p, std::uint64_t trials, std::uint64_t seed, double window,
                           unsigned workers = 0);

/// Engine for one named substream of a trial.
std::mt19937_64 make_stream(TrialStream s, std::uint64_t substream);

}  // namespace nnoma
