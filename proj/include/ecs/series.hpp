#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ecs/errors.hpp"
#include "ecs/prat.hpp"
#include "ecs/rational.hpp"

namespace ecs {

// Uniform access to the two coefficient types the engines run over:
// exact rationals (numeric mode) and rational functions of P (symbolic
// two particle mode).
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr const char* kind = "rational";
  // Rational sums are cheap; rational function sums are gcd bound and
  // far cheaper when combined pairwise, so the accumulators ask.
  static constexpr bool prefer_tree_sums = false;
  static Rational zero() { return Rational(); }
  static Rational one() { return Rational(1); }
  static Rational from_rational(const Rational& r) { return r; }
};

template <>
struct scalar_traits<PRatFunc> {
  static constexpr const char* kind = "p-rational";
  static constexpr bool prefer_tree_sums = true;
  static PRatFunc zero() { return PRatFunc(); }
  static PRatFunc one() { return PRatFunc(1); }
  static PRatFunc from_rational(const Rational& r) { return PRatFunc(r); }
};

// Sum a bucket of scalars pairwise, so denominators combine in a balanced
// tree instead of a long chain.
template <class S>
S balanced_sum(std::vector<S> v) {
  if (v.empty()) return scalar_traits<S>::zero();
  while (v.size() > 1) {
    std::vector<S> next;
    next.reserve((v.size() + 1) / 2);
    for (size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] + v[i + 1]);
    if (v.size() % 2) next.push_back(v.back());
    v = std::move(next);
  }
  return v[0];
}

// Truncated power series in two markers: the squared nome (kept through
// order q2_order) and the coupling (kept through order gamma_order).
// Terms are stored sparsely, keyed by (q2 power, coupling power); zero
// coefficients are never stored, so is_zero() and operator== are cheap.
// Binary operations insist on matching truncation orders: silently mixing
// truncations is how order bugs hide.
template <class S>
class BiSeries {
 public:
  using Key = std::pair<int, int>;  // (q2 power, coupling power)

  BiSeries() : lq_(0), sg_(0) {}
  BiSeries(int q2_order, int gamma_order) : lq_(q2_order), sg_(gamma_order) {
    if (lq_ < 0 || sg_ < 0) throw UsageError("negative truncation order");
  }
  static BiSeries constant(int q2_order, int gamma_order, S v) {
    BiSeries r(q2_order, gamma_order);
    r.add(0, 0, std::move(v));
    return r;
  }

  int q2_order() const { return lq_; }
  int gamma_order() const { return sg_; }
  const std::map<Key, S>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  S coeff(int l, int s) const {
    auto it = t_.find({l, s});
    return it == t_.end() ? scalar_traits<S>::zero() : it->second;
  }

  void add(int l, int s, const S& v) {
    if (l < 0 || s < 0) throw UsageError("negative marker power");
    if (l > lq_ || s > sg_) return;
    if (v.is_zero()) return;
    auto [it, inserted] = t_.try_emplace({l, s}, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  // Lowest q2 power present; q2_order()+1 when the series is zero.
  int min_q2_order() const {
    int m = lq_ + 1;
    for (const auto& [k, v] : t_) m = std::min(m, k.first);
    return m;
  }

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    a.require_same_orders(b);
    BiSeries r = a;
    for (const auto& [k, v] : b.t_) r.add(k.first, k.second, v);
    return r;
  }
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b) {
    return a + (-b);
  }
  BiSeries operator-() const {
    BiSeries r(lq_, sg_);
    for (const auto& [k, v] : t_) r.t_.emplace(k, -v);
    return r;
  }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    a.require_same_orders(b);
    BiSeries r(a.lq_, a.sg_);
    for (const auto& [ka, va] : a.t_) {
      for (const auto& [kb, vb] : b.t_) {
        int l = ka.first + kb.first;
        int s = ka.second + kb.second;
        if (l > a.lq_ || s > a.sg_) continue;
        r.add(l, s, va * vb);
      }
    }
    return r;
  }
  BiSeries& operator+=(const BiSeries& o) { return *this = *this + o; }
  BiSeries& operator-=(const BiSeries& o) { return *this = *this - o; }
  BiSeries& operator*=(const BiSeries& o) { return *this = *this * o; }

  BiSeries scaled(const S& f) const {
    BiSeries r(lq_, sg_);
    if (f.is_zero()) return r;
    for (const auto& [k, v] : t_) r.add(k.first, k.second, v * f);
    return r;
  }

  // Multiply by q^(2*dl) * coupling^ds; terms pushed past the truncation
  // orders are dropped.
  BiSeries shifted(int dl, int ds) const {
    if (dl < 0 || ds < 0) throw UsageError("negative marker shift");
    BiSeries r(lq_, sg_);
    for (const auto& [k, v] : t_) r.add(k.first + dl, k.second + ds, v);
    return r;
  }

  BiSeries pow(unsigned e) const {
    BiSeries r = constant(lq_, sg_, scalar_traits<S>::one());
    BiSeries base = *this;
    while (e) {
      if (e & 1u) r = r * base;
      base = e > 1 ? base * base : base;
      e >>= 1u;
    }
    return r;
  }

  BiSeries truncated(int q2_order, int gamma_order) const {
    BiSeries r(q2_order, gamma_order);
    for (const auto& [k, v] : t_) r.add(k.first, k.second, v);
    return r;
  }

  friend bool operator==(const BiSeries& a, const BiSeries& b) {
    return a.lq_ == b.lq_ && a.sg_ == b.sg_ && a.t_ == b.t_;
  }
  friend bool operator!=(const BiSeries& a, const BiSeries& b) {
    return !(a == b);
  }

 private:
  void require_same_orders(const BiSeries& o) const {
    if (lq_ != o.lq_ || sg_ != o.sg_)
      throw UsageError("mixed truncation orders in series arithmetic");
  }
  int lq_;
  int sg_;
  std::map<Key, S> t_;
};

// 1/(b0 - tail) as a truncated series, valid because every term of tail
// carries at least one power of q^2, so the geometric expansion
// (1/b0) * sum_k (tail/b0)^k terminates at the truncation order.
template <class S>
BiSeries<S> series_recip_shifted(const S& b0, const BiSeries<S>& tail) {
  if (b0.is_zero()) throw UsageError("series reciprocal at vanishing constant");
  if (tail.min_q2_order() < 1)
    throw UsageError("series reciprocal needs a q2 suppressed tail");
  S inv = b0.inverse();
  BiSeries<S> u = tail.scaled(inv);
  BiSeries<S> acc =
      BiSeries<S>::constant(tail.q2_order(), tail.gamma_order(), inv);
  BiSeries<S> cur = acc;
  for (int k = 1; k <= tail.q2_order(); ++k) {
    cur = cur * u;
    if (cur.is_zero()) break;
    acc += cur;
  }
  return acc;
}

// Collapse a symbolic series to numbers by substituting a value for P.
inline BiSeries<Rational> substitute_p(const BiSeries<PRatFunc>& a,
                                       const Rational& p) {
  BiSeries<Rational> r(a.q2_order(), a.gamma_order());
  for (const auto& [k, v] : a.terms()) r.add(k.first, k.second, v.eval(p));
  return r;
}

// Numeric value of a series at given q^2 and coupling.
inline Rational eval_series(const BiSeries<Rational>& a, const Rational& q2,
                            const Rational& gamma) {
  Rational acc;
  for (const auto& [k, v] : a.terms())
    acc += v * Rational::pow(q2, k.first) * Rational::pow(gamma, k.second);
  return acc;
}

}  // namespace ecs
