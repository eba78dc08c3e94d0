#pragma once

#include <map>
#include <vector>

#include "ecs/gk.hpp"

namespace ecs {

// Perturbed eigenvalue: the unperturbed value plus a double series in the
// squared nome and the coupling marker.
template <class S>
struct EigenvalueSeries {
  S e0 = scalar_traits<S>::zero();
  BiSeries<S> shift;
};

inline Rational eigenvalue_value(const EigenvalueSeries<Rational>& e,
                                 const Rational& q2, const Rational& gamma) {
  return e.e0 + eval_series(e.shift, q2, gamma);
}

// One term of the compositional inverse at order n: multiplicities k[j] of
// the self energy coefficients (k[0] is forced by the two constraints
// sum_j k[j] = n and sum_j j*k[j] = n-1) and the signed multinomial weight
// (-1)^n (n-1)! / prod_j k[j]!.
struct InversionTerm {
  std::vector<unsigned> k;
  Rational coeff;
};

// All terms at order n, deterministically ordered.
std::vector<InversionTerm> inversion_terms(int n);

// Order by order compositional inversion of the fixed point equation.
template <class Model>
EigenvalueSeries<typename Model::Scalar> eigenvalue_by_series_inversion(
    const Model& model, int lq, int sg,
    const SelfEnergyTable<Model>* table = nullptr) {
  using S = typename Model::Scalar;
  SelfEnergyTable<Model> local;
  if (!table) {
    local = build_self_energy(model, lq, sg, std::max(0, lq - 1));
    table = &local;
  }
  BiSeries<S> shift(lq, sg);
  std::map<std::pair<int, unsigned>, BiSeries<S>> powers;
  auto power = [&](int j, unsigned e) -> const BiSeries<S>& {
    auto it = powers.find({j, e});
    if (it == powers.end())
      it = powers.emplace(std::pair<int, unsigned>{j, e},
                          table->coeff[j].pow(e)).first;
    return it->second;
  };
  for (int n = 1; n <= lq; ++n) {
    for (const InversionTerm& term : inversion_terms(n)) {
      BiSeries<S> prod =
          BiSeries<S>::constant(lq, sg, scalar_traits<S>::one());
      for (size_t j = 0; j < term.k.size() && !prod.is_zero(); ++j)
        if (term.k[j] > 0) prod = prod * power(static_cast<int>(j), term.k[j]);
      if (prod.is_zero()) continue;
      shift += prod.scaled(scalar_traits<S>::from_rational(term.coeff));
    }
  }
  return {model.e0(), std::move(shift)};
}

// Iterate shift <- -sum_k coeff[k] * shift^k; each pass fixes one more
// order in q^2, so lq iterations converge exactly at this truncation.
// A final stability check guards against silent under iteration.
template <class Model>
EigenvalueSeries<typename Model::Scalar> eigenvalue_by_fixed_point(
    const Model& model, int lq, int sg, int iterations = 0,
    const SelfEnergyTable<Model>* table = nullptr) {
  using S = typename Model::Scalar;
  SelfEnergyTable<Model> local;
  if (!table) {
    local = build_self_energy(model, lq, sg, std::max(0, lq - 1));
    table = &local;
  }
  if (iterations <= 0) iterations = lq;
  auto apply = [&](const BiSeries<S>& t) {
    BiSeries<S> acc = -table->coeff[0];
    BiSeries<S> tpow = t;
    for (int k = 1; k <= table->kmax; ++k) {
      acc -= table->coeff[k] * tpow;
      if (k < table->kmax) tpow = tpow * t;
    }
    return acc;
  };
  BiSeries<S> shift(lq, sg);
  for (int i = 0; i < iterations; ++i) shift = apply(shift);
  if (apply(shift) != shift)
    throw MismatchError("fixed point iteration did not stabilize");
  return {model.e0(), std::move(shift)};
}

namespace detail {

// Dense coupling polynomial, index = coupling power, truncated at sg.
template <class S>
using GammaPoly = std::vector<S>;

template <class S>
void gp_addto(GammaPoly<S>& a, const GammaPoly<S>& b) {
  if (a.size() < b.size()) a.resize(b.size(), scalar_traits<S>::zero());
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

template <class S>
GammaPoly<S> gp_mul(const GammaPoly<S>& a, const GammaPoly<S>& b, int sg) {
  GammaPoly<S> r;
  if (a.empty() || b.empty()) return r;
  size_t n = std::min<size_t>(a.size() + b.size() - 1,
                              static_cast<size_t>(sg) + 1);
  r.assign(n, scalar_traits<S>::zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Multiply by coupling^d.
template <class S>
GammaPoly<S> gp_shift(const GammaPoly<S>& a, int d, int sg) {
  GammaPoly<S> r;
  for (size_t i = 0; i < a.size(); ++i) {
    if (static_cast<int>(i) + d > sg) break;
    if (r.empty()) r.assign(std::min(a.size() + d, static_cast<size_t>(sg) + 1),
                            scalar_traits<S>::zero());
    r[i + d] = a[i];
  }
  return r;
}

template <class S>
GammaPoly<S> gp_scaled(const GammaPoly<S>& a, const S& f) {
  GammaPoly<S> r(a.size(), scalar_traits<S>::zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * f;
  return r;
}

}  // namespace detail

// Result of the two particle recursion in powers of the squared nome:
// the eigenvalue series together with the shift coefficient table it
// produced along the way (relative shift -> series), complete for
// |shift| <= window.
template <class Model>
struct NomeRecursionResult {
  typename Model::Scalar e0 = scalar_traits<typename Model::Scalar>::zero();
  BiSeries<typename Model::Scalar> shift;
  std::map<long, BiSeries<typename Model::Scalar>> alpha;
};

// Two particle eigenvalue recursion, order by order in q^2.  Within order
// l the coefficients are swept upward from shift -l; the side conditions
// pin alpha at shift 0 and below -l, and the l-th eigenvalue coefficient
// drops out of the shift 0 component before the upward sweep needs it.
template <class Model>
NomeRecursionResult<Model> eigenvalue_by_nome_recursion(const Model& model,
                                                        int lq, int sg,
                                                        long window = -1) {
  using S = typename Model::Scalar;
  using detail::GammaPoly;
  using detail::gp_addto;
  using detail::gp_mul;
  using detail::gp_scaled;
  using detail::gp_shift;
  if (model.size() != 2)
    throw UsageError("nome recursion is implemented for two particles");
  if (window < 0) window = lq + 2;

  std::map<long, S> inv_gap_memo;
  auto inv_gap = [&](long mu) -> const S& {
    auto it = inv_gap_memo.find(mu);
    if (it == inv_gap_memo.end()) {
      S g = model.gap(RootVector{mu, -mu});
      if (g.is_zero()) throw ResonanceError(RootVector{mu, -mu});
      it = inv_gap_memo.emplace(mu, g.inverse()).first;
    }
    return it->second;
  };

  // a[l][mu] and e[l], both coupling polynomials.
  std::vector<std::map<long, GammaPoly<S>>> a(lq + 1);
  std::vector<GammaPoly<S>> e(lq + 1);
  const GammaPoly<S> empty;
  auto alpha_at = [&](int l, long mu) -> const GammaPoly<S>& {
    if (l < 0) throw UsageError("negative order in recursion lookup");
    if (mu < -l) return empty;
    auto it = a[l].find(mu);
    if (it == a[l].end())
      throw UsageError("recursion lookup escaped its window");
    return it->second;
  };
  auto upper = [&](int l) { return window + (lq - l); };

  // Right hand side of the recursion at (l, mu): the eigenvalue
  // convolution plus the coupling times the two sided lattice sum.
  auto rhs = [&](int l, long mu) {
    GammaPoly<S> acc;
    for (int m = 1; m <= l; ++m) {
      if (m == l && mu < 0) continue;  // alpha_0 vanishes there
      gp_addto(acc, gp_mul(e[m], alpha_at(l - m, mu), sg));
    }
    GammaPoly<S> lat;
    for (long nu = 1; nu <= mu + l; ++nu)
      gp_addto(lat, gp_scaled(alpha_at(l, mu - nu), S(nu)));
    for (long nu = 1; nu <= l; ++nu)
      for (int t = 1; nu * t <= l; ++t) {
        int lr = l - static_cast<int>(nu) * t;
        GammaPoly<S> pair = alpha_at(lr, mu - nu);
        gp_addto(pair, alpha_at(lr, mu + nu));
        gp_addto(lat, gp_scaled(pair, S(nu)));
      }
    gp_addto(acc, gp_shift(lat, 1, sg));
    return acc;
  };

  // Order zero: the pure positive shift ladder.
  a[0][0] = GammaPoly<S>{scalar_traits<S>::one()};
  for (long mu = 1; mu <= upper(0); ++mu) {
    GammaPoly<S> lat;
    for (long nu = 1; nu <= mu; ++nu)
      gp_addto(lat, gp_scaled(alpha_at(0, mu - nu), S(nu)));
    a[0][mu] = gp_scaled(gp_shift(lat, 1, sg), inv_gap(mu));
  }

  for (int l = 1; l <= lq; ++l) {
    a[l][0] = GammaPoly<S>{};
    for (long mu = -l; mu < 0; ++mu)
      a[l][mu] = gp_scaled(rhs(l, mu), inv_gap(mu));
    // Shift 0 component: the gap vanishes and the equation instead
    // determines the eigenvalue coefficient.
    {
      GammaPoly<S> lat;
      for (long nu = 1; nu <= l; ++nu)
        gp_addto(lat, gp_scaled(alpha_at(l, -nu), S(nu)));
      for (long nu = 1; nu <= l; ++nu)
        for (int t = 1; nu * t <= l; ++t) {
          int lr = l - static_cast<int>(nu) * t;
          GammaPoly<S> pair = alpha_at(lr, -nu);
          gp_addto(pair, alpha_at(lr, nu));
          gp_addto(lat, gp_scaled(pair, S(nu)));
        }
      e[l] = gp_scaled(gp_shift(lat, 1, sg), S(-1));
    }
    for (long mu = 1; mu <= upper(l); ++mu)
      a[l][mu] = gp_scaled(rhs(l, mu), inv_gap(mu));
  }

  NomeRecursionResult<Model> out;
  out.e0 = model.e0();
  out.shift = BiSeries<S>(lq, sg);
  for (int l = 1; l <= lq; ++l)
    for (size_t s = 0; s < e[l].size(); ++s)
      out.shift.add(l, static_cast<int>(s), e[l][s]);
  for (long mu = -window; mu <= window; ++mu) {
    BiSeries<S> tot(lq, sg);
    for (int l = 0; l <= lq; ++l) {
      if (mu < -l) continue;
      auto it = a[l].find(mu);
      if (it == a[l].end()) continue;
      for (size_t s = 0; s < it->second.size(); ++s)
        tot.add(l, static_cast<int>(s), it->second[s]);
    }
    out.alpha.emplace(mu, std::move(tot));
  }
  return out;
}

// Closed form for the part of the eigenvalue shift quadratic in the
// coupling: at order l in q^2 it is l * sum over divisors k of l of
// k/(P^2 - k^2).
BiSeries<PRatFunc> quadratic_shift_closed_form(int lq, int sg);
BiSeries<Rational> quadratic_shift_closed_form_at(const Rational& p, int lq,
                                                  int sg);

}  // namespace ecs
