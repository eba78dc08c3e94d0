#include "ecs/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs {

BigInt::BigInt(const std::string& decimal) {
  if (mpz_init_set_str(z_, decimal.c_str(), 10) != 0) {
    mpz_clear(z_);
    throw UsageError("bad integer literal: '" + decimal + "'");
  }
}

std::string BigInt::to_string() const {
  std::vector<char> buf(mpz_sizeinbase(z_, 10) + 2);
  mpz_get_str(buf.data(), 10, z_);
  return std::string(buf.data());
}

long double BigInt::to_long_double() const {
  // mpz_get_d keeps only 53 bits; pull out a 64 bit mantissa by hand.
  if (mpz_sgn(z_) == 0) return 0.0L;
  size_t bits = mpz_sizeinbase(z_, 2);
  if (bits <= 63) {
    long double v = static_cast<long double>(mpz_get_ui(z_));
    return mpz_sgn(z_) < 0 ? -v : v;
  }
  mpz_t t;
  mpz_init(t);
  mpz_tdiv_q_2exp(t, z_, bits - 63);
  long double v = static_cast<long double>(mpz_get_ui(t));
  mpz_clear(t);
  v = ldexpl(v, static_cast<int>(bits - 63));
  return mpz_sgn(z_) < 0 ? -v : v;
}

Rational::Rational(long num, long den) {
  mpq_init(q_);
  if (den == 0) throw UsageError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpq_set_si(q_, num, static_cast<unsigned long>(den));
  mpq_canonicalize(q_);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  mpq_init(q_);
  if (den.is_zero()) throw UsageError("rational with zero denominator");
  mpz_set(mpq_numref(q_), num.raw());
  mpz_set(mpq_denref(q_), den.raw());
  if (mpz_sgn(mpq_denref(q_)) < 0) {
    mpz_neg(mpq_numref(q_), mpq_numref(q_));
    mpz_neg(mpq_denref(q_), mpq_denref(q_));
  }
  mpq_canonicalize(q_);
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw UsageError("empty rational literal");
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits_ok = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    size_t i = 0;
    if (allow_sign && (part[0] == '+' || part[0] == '-')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw UsageError("bad rational literal: '" + s + "'");
  return Rational(BigInt(num), BigInt(den));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw UsageError("rational division by zero");
  Rational r;
  mpq_div(r.q_, a.q_, b.q_);
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw UsageError("rational division by zero");
  Rational r;
  mpq_inv(r.q_, q_);
  return r;
}

Rational Rational::pow(const Rational& a, long e) {
  if (e == 0) return Rational(1);
  const Rational base = e < 0 ? a.inverse() : a;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r;
  mpz_pow_ui(mpq_numref(r.q_), mpq_numref(base.q_), n);
  mpz_pow_ui(mpq_denref(r.q_), mpq_denref(base.q_), n);
  return r;
}

std::string Rational::to_string() const {
  std::string s = num().to_string();
  if (!is_integer()) s += "/" + den().to_string();
  return s;
}

long double Rational::to_long_double() const {
  if (is_zero()) return 0.0L;
  return num().to_long_double() / den().to_long_double();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

Rational binomial(const Rational& a, unsigned long k) {
  Rational r(1);
  for (unsigned long i = 0; i < k; ++i) r *= a - Rational(static_cast<long>(i));
  return r / Rational(BigInt::factorial(k), BigInt(1));
}

}  // namespace ecs
