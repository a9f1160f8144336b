#include "rational.hpp"

#include <cctype>

#include "errors.hpp"

namespace dofbc {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational denominator must be nonzero");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw DomainError("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(const std::string& token) {
  std::string s = token;
  // Trim surrounding whitespace; everything else must be part of the value.
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw ParseError("empty rational token");
  s = s.substr(b, e - b + 1);

  size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string ns = s.substr(0, slash);
    std::string ds = s.substr(slash + 1);
    if (!is_integer_literal(ns) || !is_integer_literal(ds)) {
      throw ParseError("malformed rational token '" + token + "'");
    }
    mpz_class num(ns), den(ds);
    if (den == 0) throw ParseError("zero denominator in token '" + token + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }

  size_t dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    if (frac.empty() || !is_integer_literal(head) || !is_integer_literal(frac) ||
        frac[0] == '-' || frac[0] == '+') {
      throw ParseError("malformed rational token '" + token + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class whole(head), part(frac);
    mpz_class num = whole * scale + part;
    if (neg) num = -num;
    mpq_class q(num, scale);
    q.canonicalize();
    return Rational(q);
  }

  if (!is_integer_literal(s)) {
    throw ParseError("malformed rational token '" + token + "'");
  }
  return Rational(mpq_class(mpz_class(s)));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::vector<Rational> parse_rational_vector(const std::string& csv) {
  std::vector<Rational> out;
  size_t start = 0;
  while (true) {
    size_t comma = csv.find(',', start);
    std::string tok = csv.substr(start, comma == std::string::npos ? std::string::npos
                                                                   : comma - start);
    out.push_back(Rational::parse(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Rational sum(const std::vector<Rational>& v) {
  Rational s;
  for (const auto& x : v) s += x;
  return s;
}

mpz_class lcm_of_denominators(const std::vector<Rational>& v) {
  mpz_class l(1);
  for (const auto& x : v) {
    mpz_class d = x.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

std::string join_rational_csv(const std::vector<Rational>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out;
}

}  // namespace dofbc
