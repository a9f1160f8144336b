#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace dofbc {

// Exact rational scalar, always held in canonical form (gcd(num,den)=1,
// den>=1). All model quantities in this library are Rational; doubles only
// appear at the Monte Carlo boundary.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design for literals
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& n) : v_(n) {}

  // Accepts "p/q", a bare integer "p", or an exact decimal such as "0.25".
  // Throws ParseError naming the offending token otherwise.
  static Rational parse(const std::string& token);

  // "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  double to_double() const { return v_.get_d(); }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  static Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
  static Rational max(const Rational& a, const Rational& b) { return a > b ? a : b; }

  // max(x, 0)
  Rational positive_part() const { return sign() > 0 ? *this : Rational(0); }

private:
  mpq_class v_;
};

// Parses a comma-separated list of rationals ("0.25,3/4" -> [1/4, 3/4]).
std::vector<Rational> parse_rational_vector(const std::string& csv);

// Sum of a rational vector.
Rational sum(const std::vector<Rational>& v);

// Least common multiple of the denominators, as an exact integer.
mpz_class lcm_of_denominators(const std::vector<Rational>& v);

// Renders "a,b,c" with Rational::str per element.
std::string join_rational_csv(const std::vector<Rational>& v);

}  // namespace dofbc
