#include "checks.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace dofbc {

BoundSweep pivoted_qr_bound_check(long matrices, std::uint64_t seed, int m_min,
                                  int m_max, double slack) {
  BoundSweep sweep;
  sweep.worst_margin = 1e300;
  for (long i = 0; i < matrices; ++i) {
    const int m = m_min + static_cast<int>(i % (m_max - m_min + 1));
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    const Mat a = random_gaussian(rng, m, m);
    const auto ev = hermitian_eigenvalues(a.adjoint() * a);
    const auto f = pivoted_qr(a);

    const Mat recon = f.q * f.r;
    const Mat ap = a.take_cols(f.perm);
    const double rel = (ap - recon).frobenius() / std::max(1.0, a.frobenius());
    if (rel > 1e-10) sweep.violations += 1;
    sweep.checks += 1;

    const double scale = std::max(1.0, ev.front());
    for (int i2 = 0; i2 < m; ++i2) {
      const double rii = f.r(i2, i2).real();
      const double bound = ev[i2] / static_cast<double>(m - i2);
      const double margin = rii * rii - bound;
      sweep.worst_margin = std::min(sweep.worst_margin, margin);
      if (margin < -slack * scale) sweep.violations += 1;
      sweep.checks += 1;
    }
    sweep.samples += 1;
  }
  sweep.pass = sweep.violations == 0;
  return sweep;
}

BoundSweep gram_subset_bound_check(long matrices, std::uint64_t seed, int m_min,
                                   int m_max, double rel_slack) {
  BoundSweep sweep;
  sweep.worst_margin = 1e300;
  for (long i = 0; i < matrices; ++i) {
    const int m = m_min + static_cast<int>(i % (m_max - m_min + 1));
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    const Mat a = random_gaussian(rng, m, m);
    const auto ev = hermitian_eigenvalues(a.adjoint() * a);
    const Mat ap = a.take_cols(pivoted_qr(a).perm);

    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> idx;
      double bound = 1.0;
      for (int b = 0; b < m; ++b) {
        if (mask & (1u << b)) {
          idx.push_back(b);
          bound *= ev[b] / static_cast<double>(m);
        }
      }
      const Mat cols = ap.take_cols(idx);
      const double detv = determinant(cols.adjoint() * cols).real();
      const double margin = detv - bound;
      sweep.worst_margin = std::min(sweep.worst_margin, margin);
      if (detv < bound * (1.0 - rel_slack) - 1e-15) sweep.violations += 1;
      sweep.checks += 1;
    }
    sweep.samples += 1;
  }
  sweep.pass = sweep.violations == 0;
  return sweep;
}

SlopeCase logdet_growth_check(const std::vector<Rational>& exponents,
                              long trials, std::uint64_t seed,
                              const std::vector<double>& snr_db, double tol) {
  const int tau = static_cast<int>(exponents.size());
  if (tau < 1 || tau > 16) throw DomainError("exponent vector size must be 1..16");
  if (trials < 1) throw DomainError("trial count must be positive");
  for (const auto& b : exponents) {
    if (b < Rational(0) || b > Rational(1)) {
      throw RangeError("growth exponents must lie in [0,1]");
    }
  }

  SlopeCase cs;
  cs.label = "logdet-growth(" + join_rational_csv(exponents) + ")";
  cs.tol = tol;
  Rational expected;
  for (const auto& b : exponents) expected += b.positive_part();
  cs.expected = expected.to_double();

  std::vector<double> means;
  for (size_t pi = 0; pi < snr_db.size(); ++pi) {
    const double p = std::pow(10.0, snr_db[pi] / 10.0);
    KahanSum acc, accsq;
    for (long t = 0; t < trials; ++t) {
      const std::uint64_t trial =
          static_cast<std::uint64_t>(pi) * static_cast<std::uint64_t>(trials) +
          static_cast<std::uint64_t>(t);
      TrialRng rng(seed, trial);
      const Mat u = random_unitary(rng, tau);
      const Mat v = random_unitary(rng, tau);
      Mat d(tau, tau);
      for (int i = 0; i < tau; ++i) {
        d(i, i) = std::pow(p, exponents[i].to_double() / 2.0);
      }
      const Mat g = u * d * v.adjoint() + random_gaussian(rng, tau, tau);
      double mag = std::abs(determinant(g));
      if (mag < 1e-150) {
        mag = 1e-150;
        cs.floored += 1;
      }
      const double val = 2.0 * std::log2(mag);  // log2 det(G^H G)
      acc.add(val);
      accsq.add(val * val);
    }
    const double n = static_cast<double>(trials);
    const double mean = acc.value() / n;
    means.push_back(mean);
    const double var =
        trials > 1 ? std::max(0.0, (accsq.value() - n * mean * mean) / (n - 1.0))
                   : 0.0;
    cs.point_stderr.push_back(std::sqrt(var / n));
  }
  cs.fit = fit_dof_slope(snr_db, means);
  cs.slope = cs.fit.slope;
  cs.pass = std::abs(cs.slope - cs.expected) <= tol;
  return cs;
}

std::string psi_kind_name(PsiKind kind) {
  switch (kind) {
    case PsiKind::kIsotropic: return "isotropic";
    case PsiKind::kSpectralSkewed: return "spectral-skewed";
    case PsiKind::kEstimateAligned: return "estimate-aligned";
  }
  return "isotropic";
}

PsiKind parse_psi_kind(const std::string& name) {
  if (name == "isotropic") return PsiKind::kIsotropic;
  if (name == "spectral-skewed") return PsiKind::kSpectralSkewed;
  if (name == "estimate-aligned") return PsiKind::kEstimateAligned;
  throw ParseError("unknown input covariance kind '" + name + "'");
}

namespace {

// Transmit covariance with trace exactly P.
Mat make_psi(PsiKind kind, int m, double p, const Mat& h_est_row1) {
  switch (kind) {
    case PsiKind::kIsotropic:
      return Mat::identity(m).scaled(p / static_cast<double>(m));
    case PsiKind::kSpectralSkewed: {
      // Eigenvalues proportional to P^((m-j+1)/m), j = 1..m.
      Mat psi(m, m);
      double trace = 0.0;
      for (int j = 0; j < m; ++j) {
        const double mu = std::pow(p, static_cast<double>(m - j) / m);
        psi(j, j) = mu;
        trace += mu;
      }
      return psi.scaled(p / trace);
    }
    case PsiKind::kEstimateAligned: {
      // Rank-1, aligned with the null space of user 1's estimated row; when
      // the estimate vanishes the QR below degenerates to a canonical axis.
      Mat col(m, 1);
      for (int c = 0; c < m; ++c) col(c, 0) = std::conj(h_est_row1(0, c));
      const Mat q = qr_decompose(col).q;
      Mat u(m, 1);
      for (int r = 0; r < m; ++r) u(r, 0) = q(r, 1 % m);
      return (u * u.adjoint()).scaled(p);
    }
  }
  return Mat::identity(m);
}

}  // namespace

NestedCase nested_logdet_check(int m_users, int l_users, int m_antennas,
                               PsiKind psi, const Rational& alpha1, long trials,
                               std::uint64_t seed,
                               const std::vector<double>& snr_db, double tol) {
  if (l_users < 1 || m_users < l_users) {
    throw DomainError("nested check requires 1 <= l <= m users");
  }
  if (alpha1 < Rational(0) || alpha1 > Rational(1)) {
    throw RangeError("exponent outside [0,1]");
  }
  if (trials < 1) throw DomainError("trial count must be positive");
  const SystemConfig cfg = make_config(m_antennas, m_users);
  const int lp = std::min(l_users, m_antennas);
  const int mp = std::min(m_users, m_antennas);

  std::vector<double> alphas(m_users, 0.0);
  for (int i = 0; i < l_users; ++i) alphas[i] = alpha1.to_double();

  std::vector<int> rows_m(m_users), rows_l(l_users);
  for (int i = 0; i < m_users; ++i) rows_m[i] = i;
  for (int i = 0; i < l_users; ++i) rows_l[i] = i;

  std::vector<double> diffs;
  std::vector<double> diff_stderr;
  long floored = 0;
  for (size_t pi = 0; pi < snr_db.size(); ++pi) {
    const double p = std::pow(10.0, snr_db[pi] / 10.0);
    KahanSum acc, accsq;
    for (long t = 0; t < trials; ++t) {
      const std::uint64_t trial =
          static_cast<std::uint64_t>(pi) * static_cast<std::uint64_t>(trials) +
          static_cast<std::uint64_t>(t);
      const ChannelSample ch = sample_channel(cfg, alphas, p, seed, trial, 0);
      const Mat psi_mat = make_psi(psi, m_antennas, p, ch.h_est.take_rows({0}));
      double logdet[2] = {0.0, 0.0};
      for (int side = 0; side < 2; ++side) {
        const auto& rows = side == 0 ? rows_m : rows_l;
        const Mat hr = ch.h.take_rows(rows);
        const Mat a = Mat::identity(static_cast<int>(rows.size())) +
                      hr * psi_mat * hr.adjoint();
        double dv = determinant(a).real();
        if (dv < 1e-300) {
          dv = 1e-300;
          ++floored;
        }
        logdet[side] = std::log2(dv);
      }
      const double val = lp * logdet[0] - mp * logdet[1];  // paired per trial
      acc.add(val);
      accsq.add(val * val);
    }
    const double n = static_cast<double>(trials);
    const double mean = acc.value() / n;
    diffs.push_back(mean);
    const double var =
        trials > 1 ? std::max(0.0, (accsq.value() - n * mean * mean) / (n - 1.0))
                   : 0.0;
    diff_stderr.push_back(std::sqrt(var / n));
  }

  NestedCase nc;
  nc.m_users = m_users;
  nc.l_users = l_users;
  nc.psi = psi;
  nc.alpha1 = alpha1;
  nc.result.label = "nested-logdet(m=" + std::to_string(m_users) +
                    ",l=" + std::to_string(l_users) + "," + psi_kind_name(psi) +
                    ",alpha=" + alpha1.str() + ")";
  nc.result.tol = tol;
  nc.result.one_sided = true;
  nc.result.expected =
      static_cast<double>(mp - lp) * alpha1.to_double() * l_users;
  nc.result.floored = floored;
  nc.result.point_stderr = diff_stderr;
  nc.result.fit = fit_dof_slope(snr_db, diffs);
  nc.result.slope = nc.result.fit.slope;
  nc.result.pass = nc.result.slope <= nc.result.expected + tol;
  return nc;
}

std::vector<NestedCase> nested_logdet_sweep(long trials, std::uint64_t seed,
                                            const std::vector<double>& snr_db,
                                            double tol) {
  const std::vector<std::pair<int, int>> shapes = {{1, 1}, {2, 1}, {2, 2}};
  const std::vector<PsiKind> kinds = {PsiKind::kIsotropic,
                                      PsiKind::kSpectralSkewed,
                                      PsiKind::kEstimateAligned};
  const std::vector<Rational> alphas = {Rational(0), Rational(1, 2), Rational(1)};
  std::vector<NestedCase> out;
  std::uint64_t salt = 0;
  for (const auto& [m, l] : shapes) {
    for (const auto& kind : kinds) {
      for (const auto& a : alphas) {
        out.push_back(nested_logdet_check(m, l, 2, kind, a, trials,
                                          seed + salt, snr_db, tol));
        ++salt;
      }
    }
  }
  return out;
}

}  // namespace dofbc
