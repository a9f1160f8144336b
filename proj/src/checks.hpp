#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "montecarlo.hpp"
#include "rational.hpp"

namespace dofbc {

// Randomized verification sweeps for the matrix-analytic invariants backing
// the link-level DoF claims. Each returns structured results plus a pass
// flag; nothing here throws on a failed check.

struct BoundSweep {
  long samples = 0;       // matrices drawn
  long checks = 0;        // individual inequalities tested
  long violations = 0;
  double worst_margin = 0.0;  // most negative (value - bound) seen
  bool pass = false;
};

// Column-pivoted QR diagonal bound: r_ii^2 >= lambda_i(A^H A)/(m - i + 1)
// for Gaussian matrices with m cycling over [m_min, m_max]. Also verifies
// the factorization residual ||A P - Q R||_F at 1e-10 relative tolerance.
BoundSweep pivoted_qr_bound_check(long matrices, std::uint64_t seed,
                                  int m_min = 2, int m_max = 8,
                                  double slack = 1e-9);

// Subset Gram determinant bound for the pivoted column order: for every
// nonempty subset I of columns of A*P,
//   det((A P)_I^H (A P)_I) >= m^-|I| * prod_{i in I} lambda_i(A^H A).
BoundSweep gram_subset_bound_check(long matrices, std::uint64_t seed,
                                   int m_min = 2, int m_max = 6,
                                   double rel_slack = 1e-9);

struct SlopeCase {
  std::string label;
  double slope = 0.0;
  double expected = 0.0;  // for one-sided cases: the upper bound
  double tol = 0.1;
  bool one_sided = false; // pass iff slope <= expected + tol
  bool pass = false;
  long floored = 0;       // determinants clamped at the numeric floor
  SlopeFit fit;
  std::vector<double> point_stderr;  // per-grid-point standard error of the mean
};

// Growth rate of E[log2 det(G^H G)] for G = U diag(P^(b_i/2)) V^H + noise:
// the fitted slope must match sum_i max(b_i, 0) within tol.
SlopeCase logdet_growth_check(const std::vector<Rational>& exponents,
                              long trials, std::uint64_t seed,
                              const std::vector<double>& snr_db,
                              double tol = 0.1);

enum class PsiKind { kIsotropic, kSpectralSkewed, kEstimateAligned };

std::string psi_kind_name(PsiKind kind);
PsiKind parse_psi_kind(const std::string& name);

struct NestedCase {
  int m_users = 0;
  int l_users = 0;
  PsiKind psi = PsiKind::kIsotropic;
  Rational alpha1;
  SlopeCase result;
};

// Weighted nested log-det growth bound: with l' = min{l,M}, m' = min{m,M},
// the slope of l'*E[logdet(I + H_m Psi H_m^H)] - m'*E[logdet(I + H_l Psi
// H_l^H)] is at most (m' - l') * sum_{i<=l} alpha_i. The first l users carry
// exponent alpha1; any further rows carry exponent 0. Requires l <= m.
NestedCase nested_logdet_check(int m_users, int l_users, int m_antennas,
                               PsiKind psi, const Rational& alpha1, long trials,
                               std::uint64_t seed,
                               const std::vector<double>& snr_db,
                               double tol = 0.1);

// The full sweep: (m,l) in {(1,1),(2,1),(2,2)} x all Psi kinds x
// alpha1 in {0, 1/2, 1}, at M = 2.
std::vector<NestedCase> nested_logdet_sweep(long trials, std::uint64_t seed,
                                            const std::vector<double>& snr_db,
                                            double tol = 0.1);

}  // namespace dofbc
