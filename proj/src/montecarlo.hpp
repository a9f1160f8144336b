#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace dofbc {

// Matrix with i.i.d. unit-variance complex normal entries.
Mat random_gaussian(TrialRng& rng, int rows, int cols);

// Haar-distributed unitary (QR of a Gaussian matrix with the diagonal-phase
// convention fixed).
Mat random_unitary(TrialRng& rng, int n);

// "start:stop:step" in dB -> inclusive grid. Requires step > 0, start >= 0.
std::vector<double> parse_snr_grid(const std::string& text);

// One fading realization: true rows h = h_est + h_err, with per-row error
// entry variance P^-alpha_k and estimate entry variance 1 - P^-alpha_k, so
// true entries stay unit variance and estimate/error are independent.
// Requires P >= 1.
struct ChannelSample {
  Mat h;      // k x m true channel rows
  Mat h_est;  // k x m estimated rows
  Mat h_err;  // k x m estimation error
};

ChannelSample sample_channel(const SystemConfig& cfg,
                             const std::vector<double>& alphas, double p_linear,
                             std::uint64_t seed, std::uint64_t trial,
                             std::uint64_t lane = 0);

struct SlopeFit {
  std::vector<double> snr_db;
  std::vector<double> values;
  double slope = 0.0;         // bits per log2(P)
  double slope_stderr = 0.0;
};

// Least-squares slope of value against log2(P); needs >= 3 points.
SlopeFit fit_dof_slope(const std::vector<double>& snr_db,
                       const std::vector<double>& values);

struct ZfOptions {
  SystemConfig cfg;
  std::vector<Rational> alphas;  // per-user quality exponents
  std::vector<int> active;       // 1-based user ids; empty = first min(m,k)
  std::vector<double> snr_db;
  long trials = 0;
  std::uint64_t seed = 0;
};

struct ZfPoint {
  double snr_db = 0.0;
  double mean_rate = 0.0;  // bits per channel use, summed over active users
  double stderr_mean = 0.0;
  long resampled = 0;  // ill-conditioned estimates redrawn
  long fallback = 0;   // trials served with the fixed fallback precoder
};

struct ZfResult {
  std::vector<ZfPoint> points;
  SlopeFit fit;
  long resampled_total = 0;
  long fallback_total = 0;
};

// Monte Carlo sum rate of zero-forcing toward the estimated channel rows of
// the active users (column-normalized pseudo-inverse precoder, equal power
// split), evaluated against the true channel.
ZfResult zf_sum_rate(const ZfOptions& opt);

}  // namespace dofbc
