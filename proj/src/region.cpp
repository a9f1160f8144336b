#include "region.hpp"

#include <algorithm>
#include <optional>

#include "errors.hpp"
#include "simplex.hpp"

namespace dofbc {

namespace {

// 1/min{k,M} for positions 1..K, plus the rhs credit coefficients
// c_k = 1/min{k,M} - 1/min{K,M} (c_K = 0).
struct PositionCoeffs {
  std::vector<Rational> inv;
  std::vector<Rational> credit;
};

PositionCoeffs position_coeffs(const SystemConfig& cfg) {
  PositionCoeffs pc;
  pc.inv.reserve(cfg.k);
  for (int k = 1; k <= cfg.k; ++k) {
    pc.inv.push_back(Rational(1, std::min(k, cfg.m)));
  }
  const Rational last = pc.inv.back();
  pc.credit.reserve(cfg.k);
  for (int k = 0; k < cfg.k; ++k) pc.credit.push_back(pc.inv[k] - last);
  return pc;
}

void validate_inputs(const SystemConfig& cfg, const std::vector<Rational>& averages,
                     const DoFPoint& d) {
  validate_exponents(cfg, averages);
  if (d.size() != static_cast<size_t>(cfg.k)) {
    throw DomainError("dof point must have one entry per user");
  }
  for (const auto& x : d) {
    if (x.sign() < 0) throw DomainError("dof entries must be nonnegative");
  }
}

void validate_perm(const SystemConfig& cfg, const std::vector<int>& perm) {
  if (perm.size() != static_cast<size_t>(cfg.k)) {
    throw DomainError("ordering must list every user exactly once");
  }
  std::vector<bool> seen(cfg.k, false);
  for (int u : perm) {
    if (u < 1 || u > cfg.k || seen[u - 1]) {
      throw DomainError("ordering must be a permutation of 1..k");
    }
    seen[u - 1] = true;
  }
}

// Maximum-weight perfect assignment (users x positions) via the potentials
// method, exact over rationals. `weight(u, p)` is consulted lazily.
class AssignmentSolver {
public:
  explicit AssignmentSolver(const std::vector<std::vector<Rational>>& w) : w_(w) {}

  // Maximizes total weight over perfect matchings of the index subsets
  // `users` and `positions` (equal sizes). Returns the optimal total.
  Rational solve(const std::vector<int>& users, const std::vector<int>& positions) const {
    const int n = static_cast<int>(users.size());
    if (n == 0) return Rational(0);
    // Minimize negated weights with the shortest-augmenting-path method.
    std::vector<Rational> pot_u(n + 1), pot_v(n + 1);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
      match[0] = i;
      int j0 = 0;
      std::vector<std::optional<Rational>> minv(n + 1);
      std::vector<bool> used(n + 1, false);
      do {
        used[j0] = true;
        const int i0 = match[j0];
        int j1 = -1;
        std::optional<Rational> delta;
        for (int j = 1; j <= n; ++j) {
          if (used[j]) continue;
          const Rational cur =
              -w_[users[i0 - 1]][positions[j - 1]] - pot_u[i0] - pot_v[j];
          if (!minv[j] || cur < *minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (!delta || *minv[j] < *delta) {
            delta = *minv[j];
            j1 = j;
          }
        }
        for (int j = 0; j <= n; ++j) {
          if (used[j]) {
            pot_u[match[j]] += *delta;
            pot_v[j] -= *delta;
          } else if (minv[j]) {
            *minv[j] -= *delta;
          }
        }
        j0 = j1;
      } while (match[j0] != 0);
      do {
        const int j1 = way[j0];
        match[j0] = match[j1];
        j0 = j1;
      } while (j0 != 0);
    }
    Rational total;
    for (int j = 1; j <= n; ++j) {
      total += w_[users[match[j] - 1]][positions[j - 1]];
    }
    return total;
  }

private:
  const std::vector<std::vector<Rational>>& w_;
};

// w[u][p]: contribution of placing user u (0-based) at position p (0-based)
// toward lhs - (rhs - 1); the tightest ordering maximizes the total.
std::vector<std::vector<Rational>> placement_weights(
    const SystemConfig& cfg, const std::vector<Rational>& averages,
    const DoFPoint& d) {
  const auto pc = position_coeffs(cfg);
  std::vector<std::vector<Rational>> w(cfg.k, std::vector<Rational>(cfg.k));
  for (int u = 0; u < cfg.k; ++u) {
    for (int p = 0; p < cfg.k; ++p) {
      w[u][p] = d[u] * pc.inv[p] - pc.credit[p] * averages[u];
    }
  }
  return w;
}

}  // namespace

ConstraintEval evaluate_constraint(const SystemConfig& cfg,
                                   const std::vector<Rational>& averages,
                                   const DoFPoint& d,
                                   const std::vector<int>& perm) {
  validate_inputs(cfg, averages, d);
  validate_perm(cfg, perm);
  const auto pc = position_coeffs(cfg);
  ConstraintEval ev;
  ev.rhs = Rational(1);
  for (int p = 0; p < cfg.k; ++p) {
    const int u = perm[p] - 1;
    ev.lhs += d[u] * pc.inv[p];
    ev.rhs += pc.credit[p] * averages[u];
  }
  ev.slack = ev.rhs - ev.lhs;
  return ev;
}

TightestConstraint tightest_permutation(const SystemConfig& cfg,
                                        const std::vector<Rational>& averages,
                                        const DoFPoint& d) {
  validate_inputs(cfg, averages, d);
  const auto w = placement_weights(cfg, averages, d);
  AssignmentSolver solver(w);

  std::vector<int> all(cfg.k);
  for (int i = 0; i < cfg.k; ++i) all[i] = i;
  const Rational opt = solver.solve(all, all);

  // Fix positions front-to-back, always choosing the smallest user index that
  // keeps the optimum attainable: yields the lexicographically least minimizer.
  std::vector<int> perm;
  std::vector<bool> used(cfg.k, false);
  Rational fixed;
  for (int p = 0; p < cfg.k; ++p) {
    std::vector<int> rest_positions;
    for (int q = p + 1; q < cfg.k; ++q) rest_positions.push_back(q);
    for (int u = 0; u < cfg.k; ++u) {
      if (used[u]) continue;
      std::vector<int> rest_users;
      for (int x = 0; x < cfg.k; ++x) {
        if (!used[x] && x != u) rest_users.push_back(x);
      }
      const Rational completion = solver.solve(rest_users, rest_positions);
      if (fixed + w[u][p] + completion == opt) {
        perm.push_back(u + 1);
        used[u] = true;
        fixed += w[u][p];
        break;
      }
    }
  }

  TightestConstraint t;
  t.perm = std::move(perm);
  t.slack = Rational(1) - opt;
  return t;
}

TightestConstraint tightest_permutation_bruteforce(
    const SystemConfig& cfg, const std::vector<Rational>& averages,
    const DoFPoint& d) {
  validate_inputs(cfg, averages, d);
  const auto pc = position_coeffs(cfg);
  std::vector<int> perm(cfg.k);
  for (int i = 0; i < cfg.k; ++i) perm[i] = i + 1;

  TightestConstraint best;
  bool first = true;
  do {
    Rational total;  // lhs - (rhs - 1) for this ordering
    for (int p = 0; p < cfg.k; ++p) {
      const int u = perm[p] - 1;
      total += d[u] * pc.inv[p] - pc.credit[p] * averages[u];
    }
    const Rational slack = Rational(1) - total;
    if (first || slack < best.slack) {  // lex-least kept by enumeration order
      best.perm = perm;
      best.slack = slack;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

MembershipVerdict check_point(const SystemConfig& cfg,
                              const std::vector<Rational>& averages,
                              const DoFPoint& d) {
  auto t = tightest_permutation(cfg, averages, d);
  bool box_ok = true;
  for (const auto& x : d) {
    if (x > Rational(1)) box_ok = false;
  }
  MembershipVerdict v;
  v.inside = box_ok && t.slack.sign() >= 0;
  v.slack = t.slack;
  v.tightest = std::move(t.perm);
  return v;
}

MaxSumDof max_sum_dof_lp(const SystemConfig& cfg,
                         const std::vector<Rational>& averages) {
  validate_exponents(cfg, averages);
  if (cfg.k > 6) {
    throw UnsupportedSizeError(
        "exact region optimization supports k <= 6; use the closed-form "
        "sum_dof_outer bound for larger systems");
  }
  const auto pc = position_coeffs(cfg);

  LinearProgram lp;
  lp.c.assign(cfg.k, Rational(1));
  std::vector<int> perm(cfg.k);
  for (int i = 0; i < cfg.k; ++i) perm[i] = i;
  std::vector<std::pair<std::vector<Rational>, Rational>> rows;
  do {
    std::vector<Rational> row(cfg.k);
    Rational rhs(1);
    for (int p = 0; p < cfg.k; ++p) {
      row[perm[p]] = pc.inv[p];
      rhs += pc.credit[p] * averages[perm[p]];
    }
    rows.emplace_back(std::move(row), rhs);
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Positions k >= M are interchangeable, so most orderings repeat a row.
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) {
              for (size_t i = 0; i < a.first.size(); ++i) {
                if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
              }
              return a.second < b.second;
            });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  for (auto& [row, rhs] : rows) {
    lp.a.push_back(std::move(row));
    lp.b.push_back(rhs);
  }
  for (int u = 0; u < cfg.k; ++u) {
    std::vector<Rational> row(cfg.k);
    row[u] = Rational(1);
    lp.a.push_back(std::move(row));
    lp.b.push_back(Rational(1));
  }

  const auto sol = simplex_maximize(lp);
  return MaxSumDof{sol.value, sol.x};
}

}  // namespace dofbc
