#include "simplex.hpp"

#include "errors.hpp"

namespace dofbc {

SimplexSolution simplex_maximize(const LinearProgram& lp) {
  const size_t n = lp.c.size();
  const size_t m = lp.a.size();
  if (lp.b.size() != m) throw DomainError("simplex: |b| must match row count");
  for (const auto& row : lp.a) {
    if (row.size() != n) throw DomainError("simplex: ragged constraint matrix");
  }
  for (const auto& bi : lp.b) {
    if (bi.sign() < 0) throw DomainError("simplex: requires b >= 0");
  }

  // Dense tableau over structural variables 0..n-1 and slacks n..n+m-1.
  const size_t cols = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = lp.a[i][j];
    t[i][n + i] = Rational(1);
    t[i][cols] = lp.b[i];
    basis[i] = n + i;
  }
  std::vector<Rational> z(cols + 1);
  for (size_t j = 0; j < n; ++j) z[j] = lp.c[j];

  while (true) {
    // Bland: entering variable is the lowest-index one with positive reduced cost.
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j) {
      if (z[j].sign() > 0) { enter = j; break; }
    }
    if (enter == cols) break;

    // Leaving row: minimum ratio, ties broken by smallest basis variable index.
    size_t leave = m;
    Rational best;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw InfeasibleError("simplex: objective is unbounded");

    // Pivot on (leave, enter).
    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].sign() == 0) continue;
      const Rational f = t[i][enter];
      for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (z[enter].sign() != 0) {
      const Rational f = z[enter];
      for (size_t j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  SimplexSolution s;
  s.x.assign(n, Rational(0));
  for (size_t i = 0; i < m; ++i) {
    if (basis[i] < n) s.x[basis[i]] = t[i][cols];
  }
  s.value = -z[cols];
  return s;
}

}  // namespace dofbc
