#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bounds.hpp"
#include "errors.hpp"
#include "model.hpp"

using dofbc::Rational;

namespace {
dofbc::SystemConfig mk(int m, int k) { return dofbc::make_config(m, k); }
std::vector<Rational> rv(const std::string& csv) {
  return dofbc::parse_rational_vector(csv);
}
}  // namespace

TEST_CASE("mat_dof closed form") {
  CHECK(dofbc::mat_dof(mk(2, 2)) == Rational(4, 3));
  CHECK(dofbc::mat_dof(mk(1, 5)) == Rational(1));
  CHECK(dofbc::mat_dof(mk(2, 3)) == Rational(3, 2));
  CHECK(dofbc::mat_dof(mk(2, 4)) == Rational(8, 5));
  CHECK(dofbc::mat_dof(mk(3, 3)) == Rational(18, 11));
}

TEST_CASE("mat_dof stays in [1, min(m,k)] and grows with m") {
  for (int k = 1; k <= 8; ++k) {
    Rational prev(0);
    for (int m = 1; m <= 8; ++m) {
      const Rational l = dofbc::mat_dof(mk(m, k));
      CHECK(l >= Rational(1));
      CHECK(l <= Rational(std::min(m, k)));
      CHECK(l >= prev);
      prev = l;
    }
  }
}

TEST_CASE("gamma_dof closed form and domain") {
  CHECK(dofbc::gamma_dof(mk(2, 3)) == Rational(24, 17));
  CHECK(dofbc::gamma_dof(mk(2, 4)) == Rational(96, 67));
  CHECK(dofbc::gamma_dof(mk(1, 4)) == Rational(1));
  CHECK_THROWS_AS(dofbc::gamma_dof(mk(3, 3)), dofbc::DomainError);
  CHECK_THROWS_AS(dofbc::gamma_dof(mk(4, 2)), dofbc::DomainError);
}

TEST_CASE("gamma never exceeds the delayed-CSIT optimum") {
  for (int m = 1; m <= 6; ++m) {
    for (int k = m + 1; k <= 9; ++k) {
      const auto cfg = mk(m, k);
      const Rational g = dofbc::gamma_dof(cfg);
      CHECK(g >= Rational(1));
      CHECK(g <= dofbc::mat_dof(cfg));
    }
  }
}

TEST_CASE("sum_dof_outer examples") {
  CHECK(dofbc::sum_dof_outer(mk(2, 3), rv("1/3,1/3,1/3")) == Rational(7, 4));
  CHECK(dofbc::sum_dof_outer(mk(2, 3), rv("0,0,0")) == Rational(3, 2));
  CHECK(dofbc::sum_dof_outer(mk(2, 3), rv("2/3,2/3,2/3")) == Rational(2));
  // The clamp at min{K,M} versus the raw affine form.
  CHECK(dofbc::sum_dof_outer(mk(2, 3), rv("1,1,1")) == Rational(2));
  CHECK(dofbc::sum_dof_outer_unclamped(mk(2, 3), rv("1,1,1")) == Rational(9, 4));
  CHECK(dofbc::sum_dof_outer_unclamped(mk(2, 3), rv("1/3,1/3,1/3")) ==
        Rational(7, 4));
}

TEST_CASE("alternating outer bound examples and consistency") {
  CHECK(dofbc::sum_dof_outer_alternating(mk(2, 2), Rational(1)) == Rational(2));
  CHECK(dofbc::sum_dof_outer_alternating(mk(2, 3), Rational(2, 3)) == Rational(2));
  CHECK(dofbc::sum_dof_outer_alternating(mk(2, 2), Rational(0)) == Rational(4, 3));
  // Below the clamp point, the alternating form equals the symmetric
  // quality-exponent bound.
  for (int m = 1; m <= 4; ++m) {
    for (int k = 1; k <= 5; ++k) {
      const auto cfg = mk(m, k);
      const int minmk = cfg.min_mk();
      for (int i = 0; i <= 8; ++i) {
        const Rational delta(i, 8);
        if (delta * Rational(k) <= Rational(minmk)) {
          const std::vector<Rational> sym(k, delta);
          CHECK(dofbc::sum_dof_outer_alternating(cfg, delta) ==
                dofbc::sum_dof_outer(cfg, sym));
        }
      }
    }
  }
}

TEST_CASE("exact optimum for m >= k") {
  CHECK(dofbc::optimal_sum_dof_m_ge_k(mk(2, 2), Rational(1)) == Rational(2));
  CHECK(dofbc::optimal_sum_dof_m_ge_k(mk(2, 2), Rational(0)) == Rational(4, 3));
  CHECK(dofbc::optimal_sum_dof_m_ge_k(mk(2, 2), Rational(1, 2)) == Rational(5, 3));
  CHECK_THROWS_AS(dofbc::optimal_sum_dof_m_ge_k(mk(2, 3), Rational(0)),
                  dofbc::DomainError);
}

TEST_CASE("minimum cost for a target sum DoF at m=2, k=3") {
  const auto cfg = mk(2, 3);
  CHECK(dofbc::min_cost_m2k3(cfg, Rational(3, 2)) == Rational(0));
  CHECK(dofbc::min_cost_m2k3(cfg, Rational(7, 4)) == Rational(1));
  CHECK(dofbc::min_cost_m2k3(cfg, Rational(2)) == Rational(2));
  CHECK(dofbc::min_cost_m2k3(cfg, Rational(1)) == Rational(0));
  CHECK_THROWS_AS(dofbc::min_cost_m2k3(cfg, Rational(9, 4)),
                  dofbc::InfeasibleError);
  CHECK_THROWS_AS(dofbc::min_cost_m2k3(cfg, Rational(-1, 4)),
                  dofbc::InfeasibleError);
  CHECK_THROWS_AS(dofbc::min_cost_m2k3(mk(2, 4), Rational(1)),
                  dofbc::DomainError);
}

TEST_CASE("exact optimum for m=2, k=3 and its cost inverse") {
  const auto cfg = mk(2, 3);
  CHECK(dofbc::optimal_sum_dof_m2k3(cfg, Rational(0)) == Rational(3, 2));
  CHECK(dofbc::optimal_sum_dof_m2k3(cfg, Rational(2, 3)) == Rational(2));
  CHECK(dofbc::optimal_sum_dof_m2k3(cfg, Rational(1, 3)) == Rational(7, 4));
  // On the linear segment the minimum cost of the optimum is exactly 3*delta.
  for (int i = 0; i <= 16; ++i) {
    const Rational delta(i, 24);  // sweeps [0, 2/3]
    const Rational cost =
        dofbc::min_cost_m2k3(cfg, dofbc::optimal_sum_dof_m2k3(cfg, delta));
    CHECK(cost == Rational(3) * delta);
    CHECK(cost <= Rational(3) * delta);
  }
  // Past the kink the optimum saturates at 2 and the cost stays at 2.
  CHECK(dofbc::min_cost_m2k3(cfg, dofbc::optimal_sum_dof_m2k3(cfg, Rational(1))) ==
        Rational(2));
}

TEST_CASE("cost and user count for the maximum sum DoF") {
  const auto r13 = dofbc::min_cost_max_dof(mk(1, 3));
  CHECK(r13.max_sum_dof == Rational(1));
  CHECK(r13.min_total_cost == Rational(0));
  CHECK(r13.tdma_note);
  CHECK(!r13.lower_bound_applies);
  CHECK(r13.min_active_users == 1);

  const auto r24 = dofbc::min_cost_max_dof(mk(2, 4));
  CHECK(r24.max_sum_dof == Rational(2));
  CHECK(r24.min_total_cost == Rational(2));
  CHECK(r24.lower_bound_applies);
  CHECK(!r24.tdma_note);
  CHECK(r24.min_active_users == 2);

  CHECK(dofbc::min_cost_max_dof(mk(3, 5)).min_total_cost == Rational(3));
  CHECK(dofbc::min_active_users_for_max_dof(mk(2, 4)) == 2);
  CHECK(dofbc::min_active_users_for_max_dof(mk(3, 5)) == 3);
  CHECK(dofbc::min_active_users_for_max_dof(mk(5, 3)) == 3);
  CHECK(dofbc::min_active_users_for_max_dof(mk(1, 9)) == 1);
}

TEST_CASE("inner bound examples") {
  CHECK(dofbc::inner_sum_dof(mk(2, 3), Rational(2, 3)) == Rational(2));
  CHECK(dofbc::inner_sum_dof(mk(2, 4), Rational(1, 2)) == Rational(2));
  CHECK(dofbc::inner_sum_dof(mk(2, 2), Rational(0)) == Rational(4, 3));
  CHECK(dofbc::inner_sum_dof(mk(3, 5), Rational(0)) == dofbc::gamma_dof(mk(3, 5)));
  CHECK_THROWS_AS(dofbc::inner_sum_dof(mk(2, 2), Rational(3, 2)),
                  dofbc::RangeError);
}

TEST_CASE("delayed-feedback inner bound") {
  CHECK(dofbc::inner_sum_dof_delayed(mk(2, 3), Rational(2, 9)) == Rational(4, 3));
  CHECK(dofbc::inner_sum_dof_delayed(mk(2, 3), Rational(0)) == Rational(1));
  CHECK(dofbc::inner_sum_dof_delayed(mk(2, 4), Rational(9, 32)) == Rational(3, 2));
  CHECK(dofbc::inner_sum_dof_delayed(mk(2, 8), Rational(1)) == Rational(3, 2));
  CHECK_THROWS_AS(dofbc::inner_sum_dof_delayed(mk(2, 2), Rational(0)),
                  dofbc::DomainError);
  CHECK_THROWS_AS(dofbc::inner_sum_dof_delayed(mk(3, 4), Rational(0)),
                  dofbc::DomainError);
}

TEST_CASE("delayed inner bound kinks land exactly on the scheme points") {
  for (int k = 3; k <= 8; ++k) {
    const auto cfg = mk(2, k);
    CHECK(dofbc::inner_sum_dof_delayed(cfg, Rational(2, 3 * k)) == Rational(4, 3));
    CHECK(dofbc::inner_sum_dof_delayed(cfg, Rational(9, 8 * k)) == Rational(3, 2));
  }
}

TEST_CASE("inner bound never exceeds the alternating outer bound") {
  for (int m = 1; m <= 5; ++m) {
    for (int k = 1; k <= 6; ++k) {
      const auto cfg = mk(m, k);
      for (int i = 0; i <= 12; ++i) {
        const Rational delta(i, 12);
        CHECK(dofbc::inner_sum_dof(cfg, delta) <=
              dofbc::sum_dof_outer_alternating(cfg, delta));
      }
    }
  }
}

TEST_CASE("inner equals outer for m >= k and for (2,3)") {
  for (int i = 0; i <= 24; ++i) {
    const Rational delta(i, 24);
    for (const auto& [m, k] : {std::pair{2, 2}, {3, 3}, {4, 2}, {5, 4}}) {
      const auto cfg = mk(m, k);
      const Rational inner = dofbc::inner_sum_dof(cfg, delta);
      CHECK(inner == dofbc::sum_dof_outer_alternating(cfg, delta));
      CHECK(inner == dofbc::optimal_sum_dof_m_ge_k(cfg, delta));
    }
    const auto cfg23 = mk(2, 3);
    const Rational inner23 = dofbc::inner_sum_dof(cfg23, delta);
    CHECK(inner23 == dofbc::sum_dof_outer_alternating(cfg23, delta));
    CHECK(inner23 == dofbc::optimal_sum_dof_m2k3(cfg23, delta));
  }
}

TEST_CASE("bound report wiring") {
  const auto sym = dofbc::build_bound_report(mk(2, 3), rv("1/3,1/3,1/3"));
  CHECK(sym.lambda_mat == Rational(3, 2));
  REQUIRE(sym.gamma.has_value());
  CHECK(*sym.gamma == Rational(24, 17));
  CHECK(sym.outer_sum_dof == Rational(7, 4));
  CHECK(sym.inner_sum_dof == Rational(7, 4));
  REQUIRE(sym.optimal_sum_dof.has_value());
  CHECK(*sym.optimal_sum_dof == Rational(7, 4));

  // Asymmetric budgets: the exact (2,3) tradeoff applies when no user holds
  // more than half the total cost, so Table-I budgets reach sum DoF 2.
  const auto asym = dofbc::build_bound_report(mk(2, 3), rv("1/3,2/3,1"));
  CHECK(asym.outer_sum_dof == Rational(2));
  CHECK(asym.inner_sum_dof == Rational(2));
  REQUIRE(asym.optimal_sum_dof.has_value());

  // A lopsided budget only supports the symmetric fraction min(alpha).
  const auto lop = dofbc::build_bound_report(mk(2, 3), rv("1,0,0"));
  CHECK(lop.inner_sum_dof == Rational(3, 2));
  CHECK(lop.outer_sum_dof == Rational(7, 4));
  CHECK(!lop.optimal_sum_dof.has_value());

  // m >= k has no gamma and is always tight.
  const auto square = dofbc::build_bound_report(mk(3, 3), rv("1/2,1/2,1/2"));
  CHECK(!square.gamma.has_value());
  CHECK(square.optimal_sum_dof.has_value());

  CHECK(dofbc::build_bound_report(mk(1, 2), rv("0,0")).inner_sum_dof ==
        Rational(1));
}
