#pragma once

#include <gmp.h>

#include <iosfwd>
#include <string>
#include <utility>

namespace ecs {

// Arbitrary precision integer, a thin RAII wrapper around mpz_t.
// Only the operations the polynomial gcd layer needs are exposed.
class BigInt {
 public:
  BigInt() { mpz_init(z_); }
  BigInt(long v) { mpz_init_set_si(z_, v); }  // NOLINT implicit
  explicit BigInt(const std::string& decimal);
  BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
  BigInt(BigInt&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  BigInt& operator=(const BigInt& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  BigInt& operator=(BigInt&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~BigInt() { mpz_clear(z_); }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_add(r.z_, a.z_, b.z_);
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_sub(r.z_, a.z_, b.z_);
    return r;
  }
  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_mul(r.z_, a.z_, b.z_);
    return r;
  }
  BigInt operator-() const {
    BigInt r;
    mpz_neg(r.z_, z_);
    return r;
  }

  // Exact quotient; the caller guarantees divisibility.
  static BigInt div_exact(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_divexact(r.z_, a.z_, b.z_);
    return r;
  }
  static BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
  }
  static BigInt pow(const BigInt& a, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.z_, a.z_, e);
    return r;
  }
  static BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.z_, n);
    return r;
  }

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return mpz_sgn(z_) == 0; }
  bool is_one() const { return mpz_cmp_si(z_, 1) == 0; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return mpz_cmp(a.z_, b.z_) == 0;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    return mpz_cmp(a.z_, b.z_) < 0;
  }

  std::string to_string() const;
  long double to_long_double() const;

  mpz_t& raw() { return z_; }
  const mpz_t& raw() const { return z_; }

 private:
  mpz_t z_;
};

// Exact rational number over mpq_t.  Always kept canonical (lowest terms,
// positive denominator), which the mpq_* arithmetic preserves.
class Rational {
 public:
  Rational() { mpq_init(q_); }
  Rational(long v) {  // NOLINT implicit
    mpq_init(q_);
    mpq_set_si(q_, v, 1);
  }
  Rational(long num, long den);
  Rational(const BigInt& num, const BigInt& den);
  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  // Accepts "p", "-p", "p/q" with optional sign; throws UsageError otherwise.
  static Rational parse(const std::string& s);

  BigInt num() const {
    BigInt r;
    mpz_set(r.raw(), mpq_numref(q_));
    return r;
  }
  BigInt den() const {
    BigInt r;
    mpz_set(r.raw(), mpq_denref(q_));
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }
  Rational& operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  Rational inverse() const;
  Rational abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
  }
  static Rational pow(const Rational& a, long e);

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
  bool is_integer() const { return mpz_cmp_si(mpq_denref(q_), 1) == 0; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return b <= a;
  }

  // "p/q", with "/q" omitted when the denominator is 1.
  std::string to_string() const;
  double to_double() const { return mpq_get_d(q_); }
  // Keeps ~64 mantissa bits, unlike mpq_get_d.
  long double to_long_double() const;

  mpq_t& raw() { return q_; }
  const mpq_t& raw() const { return q_; }

 private:
  mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Generalized binomial coefficient binom(a, k) = a(a-1)...(a-k+1)/k!
// for rational a and nonnegative integer k.
Rational binomial(const Rational& a, unsigned long k);

}  // namespace ecs
