#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "errors.hpp"
#include "rational.hpp"
#include "rng.hpp"

using dofbc::Rational;

TEST_CASE("parse accepts ratios, integers, and exact decimals") {
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("-1/3") == Rational(-1, 3));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("1.50") == Rational(3, 2));
  CHECK(Rational::parse("2/4") == Rational(1, 2));  // canonicalized
  CHECK(Rational::parse("0.1") == Rational(1, 10)); // exact, not binary float
}

TEST_CASE("parse rejects malformed tokens, naming them") {
  CHECK_THROWS_AS(Rational::parse(""), dofbc::ParseError);
  CHECK_THROWS_AS(Rational::parse("a"), dofbc::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), dofbc::ParseError);
  CHECK_THROWS_AS(Rational::parse("1//2"), dofbc::ParseError);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), dofbc::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), dofbc::ParseError);
  CHECK_THROWS_AS(Rational::parse("1 2"), dofbc::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/ 2"), dofbc::ParseError);
  CHECK_THROWS_AS(Rational::parse("   "), dofbc::ParseError);
  // Surrounding whitespace is trimmed so CSV lists may breathe.
  CHECK(Rational::parse(" 1") == Rational(1));
  CHECK(Rational::parse(" 2/3 ") == Rational(2, 3));
  CHECK_THROWS_WITH_AS(Rational::parse("x/y"),
                       doctest::Contains("x/y"), dofbc::ParseError);
}

TEST_CASE("str renders p/q or bare integer") {
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational(-1, 3).str() == "-1/3");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(0).str() == "0");
  CHECK(Rational(24, 17).str() == "24/17");
}

TEST_CASE("parse(str(x)) round-trips random rationals") {
  dofbc::TrialRng rng(2024, 0);
  for (int i = 0; i < 500; ++i) {
    const long num = static_cast<long>(rng.below(2001)) - 1000;
    const long den = static_cast<long>(rng.below(999)) + 1;
    const Rational x(num, den);
    CHECK(Rational::parse(x.str()) == x);
  }
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) / Rational(2, 9) == Rational(3, 2));
  CHECK(-Rational(1, 3) == Rational(-1, 3));
  Rational acc;
  for (int i = 0; i < 100; ++i) acc += Rational(1, 100);
  CHECK(acc == Rational(1));
}

TEST_CASE("comparisons, min, max, positive part") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) < Rational(0));
  CHECK(Rational::min(Rational(3, 2), Rational(2)) == Rational(3, 2));
  CHECK(Rational::max(Rational(3, 2), Rational(2)) == Rational(2));
  CHECK(Rational(-5, 7).positive_part() == Rational(0));
  CHECK(Rational(5, 7).positive_part() == Rational(5, 7));
  CHECK(Rational(0).positive_part() == Rational(0));
}

TEST_CASE("accessors") {
  const Rational x(-6, 8);
  CHECK(x.num() == -3);
  CHECK(x.den() == 4);
  CHECK(!x.is_integer());
  CHECK(Rational(4, 2).is_integer());
  CHECK(x.sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(x.to_double() == doctest::Approx(-0.75));
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), dofbc::DomainError);
}

TEST_CASE("vector helpers") {
  const auto v = dofbc::parse_rational_vector("1/3,2/3,1");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == Rational(1, 3));
  CHECK(v[1] == Rational(2, 3));
  CHECK(v[2] == Rational(1));

  const auto w = dofbc::parse_rational_vector("0.25,3/4");
  CHECK(w[0] == Rational(1, 4));
  CHECK(w[1] == Rational(3, 4));

  CHECK(dofbc::parse_rational_vector("0,0,0") ==
        std::vector<Rational>{Rational(0), Rational(0), Rational(0)});

  CHECK_THROWS_AS(dofbc::parse_rational_vector(""), dofbc::ParseError);
  CHECK_THROWS_AS(dofbc::parse_rational_vector("1/3,,1"), dofbc::ParseError);

  CHECK(dofbc::sum(v) == Rational(2));
  CHECK(dofbc::lcm_of_denominators(v) == 3);
  CHECK(dofbc::lcm_of_denominators(dofbc::parse_rational_vector("1/6,1/4")) == 12);
  CHECK(dofbc::join_rational_csv(v) == "1/3,2/3,1");
}
