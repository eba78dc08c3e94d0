#pragma once

#include <string>
#include <vector>

#include "ecs/rational.hpp"

namespace ecs {

// Dense univariate polynomial in the symbol P with rational coefficients.
// Canonical form: no trailing zero coefficients, so degree() is reliable
// and operator== is plain coefficient comparison.  The zero polynomial is
// the empty vector with degree -1.
class PPoly {
 public:
  PPoly() = default;
  explicit PPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  static PPoly constant(const Rational& v) {
    return PPoly(std::vector<Rational>{v});
  }
  static PPoly variable() {
    return PPoly(std::vector<Rational>{Rational(0), Rational(1)});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& coeff(size_t i) const {
    static const Rational kZero;
    return i < c_.size() ? c_[i] : kZero;
  }
  const Rational& leading() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  friend PPoly operator+(const PPoly& a, const PPoly& b);
  friend PPoly operator-(const PPoly& a, const PPoly& b);
  friend PPoly operator*(const PPoly& a, const PPoly& b);
  PPoly operator-() const;
  PPoly scaled(const Rational& s) const;

  // Quotient and remainder of exact rational long division.
  static std::pair<PPoly, PPoly> divmod(const PPoly& a, const PPoly& b);

  Rational eval(const Rational& p) const;
  friend bool operator==(const PPoly& a, const PPoly& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const PPoly& a, const PPoly& b) { return !(a == b); }

  // Human readable, e.g. "P^2 - 1".
  std::string to_string(const std::string& var = "P") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Monic gcd, computed with a primitive pseudo-remainder sequence over the
// integers so intermediate coefficients stay bounded.
PPoly poly_gcd(const PPoly& a, const PPoly& b);

// Rational function in P, kept reduced (coprime numerator/denominator)
// with monic denominator.  That makes equality plain member comparison.
class PRatFunc {
 public:
  PRatFunc() : num_(), den_(PPoly::constant(Rational(1))) {}
  PRatFunc(long v) : PRatFunc(PPoly::constant(Rational(v))) {}  // NOLINT
  explicit PRatFunc(const Rational& v) : PRatFunc(PPoly::constant(v)) {}
  explicit PRatFunc(PPoly num) : num_(std::move(num)) {
    den_ = PPoly::constant(Rational(1));
  }
  PRatFunc(PPoly num, PPoly den);

  static PRatFunc variable() { return PRatFunc(PPoly::variable()); }

  const PPoly& num() const { return num_; }
  const PPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const {
    return num_ == PPoly::constant(Rational(1)) && den_.degree() == 0;
  }

  friend PRatFunc operator+(const PRatFunc& a, const PRatFunc& b);
  friend PRatFunc operator-(const PRatFunc& a, const PRatFunc& b);
  friend PRatFunc operator*(const PRatFunc& a, const PRatFunc& b);
  friend PRatFunc operator/(const PRatFunc& a, const PRatFunc& b);
  PRatFunc operator-() const;
  PRatFunc& operator+=(const PRatFunc& o) { return *this = *this + o; }
  PRatFunc& operator-=(const PRatFunc& o) { return *this = *this - o; }
  PRatFunc& operator*=(const PRatFunc& o) { return *this = *this * o; }
  PRatFunc& operator/=(const PRatFunc& o) { return *this = *this / o; }
  PRatFunc inverse() const;

  friend bool operator==(const PRatFunc& a, const PRatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const PRatFunc& a, const PRatFunc& b) {
    return !(a == b);
  }

  // Substitute a rational value for P; throws UsageError on a pole.
  Rational eval(const Rational& p) const;

  std::string to_string(const std::string& var = "P") const;

 private:
  void reduce();
  PPoly num_;
  PPoly den_;
};

}  // namespace ecs
