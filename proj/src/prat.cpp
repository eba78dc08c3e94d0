#include "ecs/prat.hpp"

#include <algorithm>
#include <sstream>

#include "ecs/errors.hpp"

namespace ecs {

PPoly operator+(const PPoly& a, const PPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return PPoly(std::move(c));
}

PPoly operator-(const PPoly& a, const PPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return PPoly(std::move(c));
}

PPoly operator*(const PPoly& a, const PPoly& b) {
  if (a.is_zero() || b.is_zero()) return PPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return PPoly(std::move(c));
}

PPoly PPoly::operator-() const {
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return PPoly(std::move(c));
}

PPoly PPoly::scaled(const Rational& s) const {
  if (s.is_zero()) return PPoly();
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * s;
  return PPoly(std::move(c));
}

std::pair<PPoly, PPoly> PPoly::divmod(const PPoly& a, const PPoly& b) {
  if (b.is_zero()) throw UsageError("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  int db = b.degree();
  if (a.degree() < db) return {PPoly(), a};
  std::vector<Rational> quo(a.degree() - db + 1);
  Rational lead_inv = b.leading().inverse();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].is_zero()) continue;
    Rational f = rem[i] * lead_inv;
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
  }
  return {PPoly(std::move(quo)), PPoly(std::move(rem))};
}

Rational PPoly::eval(const Rational& p) const {
  Rational acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * p + c_[i];
  return acc;
}

std::string PPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    bool unit = mag.is_one() && i > 0;
    if (!unit) os << mag.to_string();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// Integer polynomial helpers for the primitive pseudo-remainder sequence.
using ZPoly = std::vector<BigInt>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

BigInt zcontent(const ZPoly& p) {
  BigInt g(0);
  for (const auto& c : p) g = BigInt::gcd(g, c);
  return g;
}

void zmake_primitive(ZPoly& p) {
  BigInt g = zcontent(p);
  if (g.is_zero() || g.is_one()) return;
  for (auto& c : p) c = BigInt::div_exact(c, g);
}

// Pseudo-remainder of lc(b)^(da-db+1) * a modulo b.
ZPoly zprem(ZPoly a, const ZPoly& b) {
  int db = static_cast<int>(b.size()) - 1;
  const BigInt& lb = b.back();
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    BigInt la = a.back();
    for (auto& c : a) c = c * lb;
    for (int j = 0; j <= db; ++j)
      a[da - db + j] = a[da - db + j] - la * b[static_cast<size_t>(j)];
    ztrim(a);
  }
  return a;
}

// Scale rational coefficients to a primitive integer polynomial.
ZPoly to_primitive_z(const PPoly& p) {
  BigInt lcm(1);
  for (const auto& c : p.coeffs()) {
    BigInt d = c.den();
    lcm = BigInt::div_exact(lcm * d, BigInt::gcd(lcm, d));
  }
  ZPoly z;
  z.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Rational scaled = c * Rational(lcm, BigInt(1));
    z.push_back(scaled.num());
  }
  ztrim(z);
  zmake_primitive(z);
  return z;
}

}  // namespace

PPoly poly_gcd(const PPoly& a, const PPoly& b) {
  if (a.is_zero() && b.is_zero()) return PPoly();
  ZPoly u = to_primitive_z(a);
  ZPoly v = to_primitive_z(b);
  if (u.size() < v.size()) std::swap(u, v);
  while (!v.empty()) {
    ZPoly r = zprem(u, v);
    zmake_primitive(r);
    u = std::move(v);
    v = std::move(r);
  }
  // Return monic over the rationals.
  std::vector<Rational> c;
  c.reserve(u.size());
  Rational lead(u.back(), BigInt(1));
  for (const auto& z : u) c.push_back(Rational(z, BigInt(1)) / lead);
  return PPoly(std::move(c));
}

PRatFunc::PRatFunc(PPoly num, PPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw UsageError("rational function with zero denominator");
  reduce();
}

void PRatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = PPoly::constant(Rational(1));
    return;
  }
  if (den_.degree() > 0 && num_.degree() > 0) {
    PPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = PPoly::divmod(num_, g).first;
      den_ = PPoly::divmod(den_, g).first;
    }
  }
  Rational lead_inv = den_.leading().inverse();
  num_ = num_.scaled(lead_inv);
  den_ = den_.scaled(lead_inv);
}

PRatFunc operator+(const PRatFunc& a, const PRatFunc& b) {
  return PRatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

PRatFunc operator-(const PRatFunc& a, const PRatFunc& b) {
  return PRatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

PRatFunc operator*(const PRatFunc& a, const PRatFunc& b) {
  return PRatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

PRatFunc operator/(const PRatFunc& a, const PRatFunc& b) {
  if (b.is_zero()) throw UsageError("rational function division by zero");
  return PRatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

PRatFunc PRatFunc::operator-() const {
  PRatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

PRatFunc PRatFunc::inverse() const {
  if (is_zero()) throw UsageError("rational function division by zero");
  return PRatFunc(den_, num_);
}

Rational PRatFunc::eval(const Rational& p) const {
  Rational d = den_.eval(p);
  if (d.is_zero())
    throw UsageError("rational function pole at P = " + p.to_string());
  return num_.eval(p) / d;
}

std::string PRatFunc::to_string(const std::string& var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace ecs
