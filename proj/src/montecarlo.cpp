#include "montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace dofbc {

Mat random_gaussian(TrialRng& rng, int rows, int cols) {
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.cnormal();
  }
  return m;
}

Mat random_unitary(TrialRng& rng, int n) {
  return qr_decompose(random_gaussian(rng, n, n)).q;
}

std::vector<double> parse_snr_grid(const std::string& text) {
  const size_t c1 = text.find(':');
  const size_t c2 = c1 == std::string::npos ? std::string::npos
                                            : text.find(':', c1 + 1);
  double start = 0.0, stop = 0.0, step = 0.0;
  try {
    if (c2 == std::string::npos) throw std::invalid_argument("format");
    start = std::stod(text.substr(0, c1));
    stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    step = std::stod(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw ParseError("snr grid must be start:stop:step in dB, got '" + text + "'");
  }
  if (step <= 0.0 || stop < start) {
    throw ParseError("snr grid needs step > 0 and stop >= start");
  }
  if (start < 0.0) {
    throw DomainError("snr grid must start at 0 dB or above (P >= 1)");
  }
  std::vector<double> grid;
  for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
  return grid;
}

ChannelSample sample_channel(const SystemConfig& cfg,
                             const std::vector<double>& alphas, double p_linear,
                             std::uint64_t seed, std::uint64_t trial,
                             std::uint64_t lane) {
  if (alphas.size() != static_cast<size_t>(cfg.k)) {
    throw DomainError("one exponent per user required");
  }
  if (p_linear < 1.0) throw DomainError("channel model requires P >= 1");
  TrialRng rng(seed, trial, lane);
  ChannelSample s;
  s.h_est = Mat(cfg.k, cfg.m);
  s.h_err = Mat(cfg.k, cfg.m);
  s.h = Mat(cfg.k, cfg.m);
  for (int r = 0; r < cfg.k; ++r) {
    const double err_var = std::pow(p_linear, -alphas[r]);
    const double est_std = std::sqrt(std::max(0.0, 1.0 - err_var));
    const double err_std = std::sqrt(err_var);
    for (int c = 0; c < cfg.m; ++c) s.h_est(r, c) = rng.cnormal() * est_std;
    for (int c = 0; c < cfg.m; ++c) s.h_err(r, c) = rng.cnormal() * err_std;
    for (int c = 0; c < cfg.m; ++c) s.h(r, c) = s.h_est(r, c) + s.h_err(r, c);
  }
  return s;
}

SlopeFit fit_dof_slope(const std::vector<double>& snr_db,
                       const std::vector<double>& values) {
  if (snr_db.size() != values.size() || snr_db.size() < 3) {
    throw DomainError("slope fit needs at least 3 grid points");
  }
  const double db_to_log2 = 1.0 / (10.0 * std::log10(2.0));
  const size_t n = snr_db.size();
  double xbar = 0.0, ybar = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xbar += snr_db[i] * db_to_log2;
    ybar += values[i];
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = snr_db[i] * db_to_log2 - xbar;
    sxx += dx * dx;
    sxy += dx * (values[i] - ybar);
  }
  SlopeFit f;
  f.snr_db = snr_db;
  f.values = values;
  f.slope = sxy / sxx;
  double ss_res = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double pred = ybar + f.slope * (snr_db[i] * db_to_log2 - xbar);
    ss_res += (values[i] - pred) * (values[i] - pred);
  }
  f.slope_stderr = std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx);
  return f;
}

namespace {

// Column-normalized right inverse of the estimated active rows, or the
// canonical fallback when the estimate stays rank-deficient after redraws.
struct Precoder {
  Mat w;
  bool fallback = false;
};

Precoder zf_precoder(const Mat& est_rows, int m) {
  const int l = est_rows.rows();
  const Mat gram = est_rows * est_rows.adjoint();
  const auto ev = hermitian_eigenvalues(gram);
  const double lmax = ev.front();
  const double lmin = ev.back();
  // Condition threshold 1e12 on singular values = 1e24 on Gram eigenvalues.
  if (!(lmax > 0.0) || lmin <= lmax * 1e-24) {
    return {Mat(), true};
  }
  Mat w = est_rows.adjoint() * solve(gram, Mat::identity(l));
  for (int c = 0; c < l; ++c) {
    double n2 = 0.0;
    for (int r = 0; r < m; ++r) n2 += std::norm(w(r, c));
    const double inv = 1.0 / std::sqrt(n2);
    for (int r = 0; r < m; ++r) w(r, c) *= inv;
  }
  return {std::move(w), false};
}

Mat fallback_precoder(int m, int l) {
  Mat w(m, l);
  for (int c = 0; c < l; ++c) w(c % m, c) = 1.0;
  return w;
}

}  // namespace

ZfResult zf_sum_rate(const ZfOptions& opt) {
  const SystemConfig& cfg = opt.cfg;
  validate_exponents(cfg, opt.alphas);
  if (opt.trials < 1) throw DomainError("trial count must be positive");
  std::vector<int> active = opt.active;
  if (active.empty()) {
    for (int u = 1; u <= cfg.min_mk(); ++u) active.push_back(u);
  }
  std::vector<bool> seen(cfg.k + 1, false);
  for (int u : active) {
    if (u < 1 || u > cfg.k || seen[u]) {
      throw DomainError("active set must list distinct users in 1..k");
    }
    seen[u] = true;
  }
  const int l = static_cast<int>(active.size());
  if (l > cfg.min_mk()) {
    throw DomainError("at most min(m,k) users can be served at once");
  }
  if (opt.snr_db.size() < 3) {
    throw DomainError("slope fit needs at least 3 grid points");
  }
  std::vector<double> alphas;
  alphas.reserve(cfg.k);
  for (const auto& a : opt.alphas) alphas.push_back(a.to_double());
  std::vector<int> rows0;
  rows0.reserve(l);
  for (int u : active) rows0.push_back(u - 1);

  ZfResult res;
  std::vector<double> means;
  for (size_t pi = 0; pi < opt.snr_db.size(); ++pi) {
    const double p = std::pow(10.0, opt.snr_db[pi] / 10.0);
    KahanSum acc, acc2;
    ZfPoint point;
    point.snr_db = opt.snr_db[pi];
    for (long t = 0; t < opt.trials; ++t) {
      const std::uint64_t trial =
          static_cast<std::uint64_t>(pi) * static_cast<std::uint64_t>(opt.trials) +
          static_cast<std::uint64_t>(t);
      ChannelSample ch = sample_channel(cfg, alphas, p, opt.seed, trial, 0);
      Precoder pc = zf_precoder(ch.h_est.take_rows(rows0), cfg.m);
      int redraws = 0;
      while (pc.fallback && redraws < 8) {
        ++redraws;
        ch = sample_channel(cfg, alphas, p, opt.seed, trial,
                            static_cast<std::uint64_t>(redraws));
        pc = zf_precoder(ch.h_est.take_rows(rows0), cfg.m);
      }
      point.resampled += redraws;
      if (pc.fallback) {
        pc.w = fallback_precoder(cfg.m, l);
        point.fallback += 1;
      }
      const Mat c = ch.h.take_rows(rows0) * pc.w;  // received coefficients
      const double per_stream_power = p / static_cast<double>(l);
      double rate = 0.0;
      for (int i = 0; i < l; ++i) {
        double interference = 0.0;
        for (int j = 0; j < l; ++j) {
          if (j != i) interference += std::norm(c(i, j)) * per_stream_power;
        }
        const double sig = std::norm(c(i, i)) * per_stream_power;
        rate += std::log2(1.0 + sig / (1.0 + interference));
      }
      acc.add(rate);
      acc2.add(rate * rate);
    }
    const double n = static_cast<double>(opt.trials);
    point.mean_rate = acc.value() / n;
    const double var =
        std::max(0.0, acc2.value() / n - point.mean_rate * point.mean_rate);
    point.stderr_mean = std::sqrt(var / n);
    res.resampled_total += point.resampled;
    res.fallback_total += point.fallback;
    means.push_back(point.mean_rate);
    res.points.push_back(point);
  }
  res.fit = fit_dof_slope(opt.snr_db, means);
  return res;
}

}  // namespace dofbc
