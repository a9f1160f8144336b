#include "bounds.hpp"

#include <algorithm>

#include "errors.hpp"

namespace dofbc {

namespace {

Rational inv(long x) { return Rational(1, x); }

void check_fraction(const Rational& delta, const char* what) {
  if (delta < Rational(0) || delta > Rational(1)) {
    throw RangeError(std::string(what) + " " + delta.str() + " outside [0,1]");
  }
}

void require_m2k3(const SystemConfig& cfg, const char* op) {
  if (cfg.m != 2 || cfg.k != 3) {
    throw DomainError(std::string(op) + " is characterized only for m=2, k=3");
  }
}

}  // namespace

Rational mat_dof(const SystemConfig& cfg) {
  Rational denom;
  for (int i = 1; i <= cfg.k; ++i) denom += inv(std::min(i, cfg.m));
  return Rational(cfg.k) / denom;
}

Rational gamma_dof(const SystemConfig& cfg) {
  if (cfg.m >= cfg.k) {
    throw DomainError("gamma_dof requires m < k");
  }
  const Rational ratio(cfg.m - 1, cfg.m);  // (M-1)/M
  Rational pow(1);                         // ratio^(i-1), with 0^0 = 1
  Rational head;
  for (int i = 1; i <= cfg.k - cfg.m; ++i) {
    head += inv(i) * pow;
    pow *= ratio;
  }
  // pow now equals ratio^(K-M).
  Rational tail;
  for (int i = cfg.k - cfg.m + 1; i <= cfg.k; ++i) tail += inv(i);
  return Rational(cfg.m) / (head + pow * tail);
}

Rational sum_dof_outer_unclamped(const SystemConfig& cfg,
                                 const std::vector<Rational>& averages) {
  auto a = validate_exponents(cfg, averages);
  const Rational lambda = mat_dof(cfg);
  const Rational cap(cfg.min_mk());
  return lambda + (Rational(1) - lambda / cap) * sum(a);
}

Rational sum_dof_outer(const SystemConfig& cfg,
                       const std::vector<Rational>& averages) {
  return Rational::min(sum_dof_outer_unclamped(cfg, averages),
                       Rational(cfg.min_mk()));
}

Rational sum_dof_outer_alternating(const SystemConfig& cfg, const Rational& delta) {
  check_fraction(delta, "perfect-feedback fraction");
  const Rational lambda = mat_dof(cfg);
  const Rational cap(cfg.min_mk());
  const Rational k(cfg.k);
  const Rational eff = Rational::min(delta, cap / k);
  return lambda + (k - k * lambda / cap) * eff;
}

Rational optimal_sum_dof_m_ge_k(const SystemConfig& cfg, const Rational& delta) {
  if (cfg.m < cfg.k) {
    throw DomainError("optimal_sum_dof_m_ge_k requires m >= k");
  }
  check_fraction(delta, "perfect-feedback fraction");
  const Rational lambda = mat_dof(cfg);
  return (Rational(cfg.k) - lambda) * Rational::min(delta, Rational(1)) + lambda;
}

Rational min_cost_m2k3(const SystemConfig& cfg, const Rational& target) {
  require_m2k3(cfg, "minimum feedback cost for a sum-DoF target");
  if (target < Rational(0) || target > Rational(2)) {
    throw InfeasibleError("sum-DoF target " + target.str() +
                          " outside the feasible range [0, 2]");
  }
  return (Rational(4) * target - Rational(6)).positive_part();
}

Rational optimal_sum_dof_m2k3(const SystemConfig& cfg, const Rational& delta) {
  require_m2k3(cfg, "optimal alternating sum DoF");
  check_fraction(delta, "perfect-feedback fraction");
  return Rational::min(Rational(3) * (Rational(2) + delta) / Rational(4),
                       Rational(2));
}

MaxDofCostReport min_cost_max_dof(const SystemConfig& cfg) {
  MaxDofCostReport r;
  const int j = cfg.min_mk();
  r.max_sum_dof = Rational(j);
  r.min_active_users = j;
  r.tdma_note = (j == 1);
  r.lower_bound_applies = (j > 1);
  r.min_total_cost = (j == 1) ? Rational(0) : Rational(j);
  return r;
}

int min_active_users_for_max_dof(const SystemConfig& cfg) { return cfg.min_mk(); }

Rational inner_sum_dof(const SystemConfig& cfg, const Rational& delta) {
  check_fraction(delta, "perfect-feedback fraction");
  const Rational k(cfg.k);
  if (cfg.m >= cfg.k) {
    const Rational lambda = mat_dof(cfg);
    return (k - lambda) * Rational::min(delta, Rational(1)) + lambda;
  }
  // M < K: user-scaling scheme, plus the two-block scheme when M = 2.
  const Rational gamma = gamma_dof(cfg);
  const Rational m(cfg.m);
  Rational best = (k - k * gamma / m) * Rational::min(delta, m / k) + gamma;
  if (cfg.m == 2 && cfg.k >= 3) {
    Rational two_block = Rational(3, 2) +
                         (k / Rational(4)) * Rational::min(delta, Rational(2) / k);
    best = Rational::max(best, two_block);
  }
  return best;
}

Rational inner_sum_dof_delayed(const SystemConfig& cfg, const Rational& delta_d) {
  if (cfg.m != 2 || cfg.k < 3) {
    throw DomainError("delayed-feedback tradeoff requires m=2 and k>=3");
  }
  check_fraction(delta_d, "delayed-feedback fraction");
  const Rational k(cfg.k);
  const Rational a = Rational(1) + (k / Rational(2)) * delta_d;
  const Rational b = Rational(12, 11) + (Rational(4) * k / Rational(11)) * delta_d;
  return Rational::min(Rational::min(a, b), Rational(3, 2));
}

BoundReport build_bound_report(const SystemConfig& cfg,
                               const std::vector<Rational>& averages) {
  BoundReport r;
  r.cfg = cfg;
  r.averages = validate_exponents(cfg, averages);
  r.lambda_mat = mat_dof(cfg);
  if (cfg.m < cfg.k) r.gamma = gamma_dof(cfg);
  r.outer_sum_dof = sum_dof_outer(cfg, r.averages);
  r.outer_sum_dof_unclamped = sum_dof_outer_unclamped(cfg, r.averages);

  // Achievable side for a (possibly asymmetric) budget vector: every user can
  // sustain the symmetric fraction min_k alpha_k; for m=2, k=3 the exact
  // tradeoff applies whenever the budget admits a valid two-block split
  // (no user may carry more than half the total cost).
  Rational dmin = r.averages[0];
  for (const auto& a : r.averages) dmin = Rational::min(dmin, a);
  Rational best = inner_sum_dof(cfg, dmin);
  if (cfg.m == 2 && cfg.k == 3) {
    Rational total = sum(r.averages);
    Rational amax = r.averages[0];
    for (const auto& a : r.averages) amax = Rational::max(amax, a);
    if (amax * Rational(2) <= total) {
      Rational exact = Rational::min(Rational(3, 2) + total / Rational(4),
                                     Rational(2));
      best = Rational::max(best, exact);
    }
  }
  r.inner_sum_dof = best;
  if (r.inner_sum_dof == r.outer_sum_dof) r.optimal_sum_dof = r.inner_sum_dof;
  return r;
}

}  // namespace dofbc
