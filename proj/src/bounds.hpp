#pragma once

#include <optional>
#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace dofbc {

// Closed-form sum-DoF quantities for the M x 1, K-user broadcast channel with
// per-user CSIT feedback budgets. Everything here is exact rational.

// Sum DoF of retrospective (delayed-CSIT only) transmission:
//   K / sum_{k=1..K} 1/min{k,M}.
Rational mat_dof(const SystemConfig& cfg);

// Sum DoF of the user-scaling retrospective scheme for M < K:
//   M / [ sum_{i=1..K-M} (1/i)((M-1)/M)^(i-1)
//         + ((M-1)/M)^(K-M) * sum_{i=K-M+1..K} 1/i ].
// Throws DomainError when M >= K.
Rational gamma_dof(const SystemConfig& cfg);

// Sum-DoF upper bound as an affine function of the total feedback cost,
// clamped at min{K,M}: min{ L + (1 - L/min{K,M}) * sum(averages), min{K,M} }
// where L = mat_dof.
Rational sum_dof_outer(const SystemConfig& cfg,
                       const std::vector<Rational>& averages);

// Same bound without the min{K,M} clamp.
Rational sum_dof_outer_unclamped(const SystemConfig& cfg,
                                 const std::vector<Rational>& averages);

// Upper bound for symmetric alternating feedback with per-user perfect-CSIT
// fraction delta: L + (K - K*L/min{K,M}) * min{delta, min{K,M}/K}.
Rational sum_dof_outer_alternating(const SystemConfig& cfg, const Rational& delta);

// Exact optimum for M >= K under symmetric fraction delta:
//   (K - L) * min{delta, 1} + L.
// Throws DomainError when M < K.
Rational optimal_sum_dof_m_ge_k(const SystemConfig& cfg, const Rational& delta);

// Minimum total perfect-CSIT feedback cost that sustains `target` sum DoF for
// M = 2, K = 3: (4*target - 6)^+. Target must lie in [0, 2].
Rational min_cost_m2k3(const SystemConfig& cfg, const Rational& target);

// Exact optimum for M = 2, K = 3 under symmetric fraction delta:
//   min{ 3(2 + delta)/4, 2 }.
Rational optimal_sum_dof_m2k3(const SystemConfig& cfg, const Rational& delta);

struct MaxDofCostReport {
  Rational max_sum_dof;        // min{M,K}
  Rational min_total_cost;     // 0 when min{M,K}=1 (TDMA), else min{M,K}
  bool lower_bound_applies;    // general cost lower bound min{M,K} is active
  int min_active_users;        // fewest simultaneously served users needed
  bool tdma_note;              // single-user time sharing attains the maximum
};

// Minimum feedback cost (and minimal active-user count) for full sum DoF.
MaxDofCostReport min_cost_max_dof(const SystemConfig& cfg);

// Fewest users that must be served simultaneously to reach min{M,K} sum DoF.
int min_active_users_for_max_dof(const SystemConfig& cfg);

// Best known achievable sum DoF under symmetric alternating fraction delta;
// max over the applicable achievability results for (M, K).
Rational inner_sum_dof(const SystemConfig& cfg, const Rational& delta);

// Achievable sum DoF for M = 2, K >= 3 when each user feeds back delayed CSIT
// a fraction delta_d of the time:
//   min{ 1 + (K/2) delta_d, 12/11 + (4K/11) delta_d, 3/2 }.
Rational inner_sum_dof_delayed(const SystemConfig& cfg, const Rational& delta_d);

struct BoundReport {
  SystemConfig cfg;
  std::vector<Rational> averages;
  Rational lambda_mat;
  std::optional<Rational> gamma;       // present when M < K
  Rational outer_sum_dof;              // clamped
  Rational outer_sum_dof_unclamped;
  Rational inner_sum_dof;
  std::optional<Rational> optimal_sum_dof;  // present when inner == outer
};

BoundReport build_bound_report(const SystemConfig& cfg,
                               const std::vector<Rational>& averages);

}  // namespace dofbc
