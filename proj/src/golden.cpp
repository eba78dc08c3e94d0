#include "ecs/golden.hpp"

#include <utility>

#include "ecs/engines.hpp"
#include "ecs/errors.hpp"
#include "ecs/model.hpp"

namespace ecs {

namespace {

PPoly even_poly(std::vector<long> even_coeffs) {
  std::vector<Rational> c;
  c.reserve(even_coeffs.size() * 2);
  for (size_t i = 0; i < even_coeffs.size(); ++i) {
    c.push_back(Rational(even_coeffs[i]));
    if (i + 1 < even_coeffs.size()) c.push_back(Rational(0));
  }
  return PPoly(std::move(c));
}

PPoly cpoly(long v) { return PPoly::constant(Rational(v)); }

PPoly ppow(const PPoly& p, int e) {
  PPoly r = cpoly(1);
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

PRatFunc frac(const PPoly& num, const PPoly& den) { return PRatFunc(num, den); }

}  // namespace

BiSeries<PRatFunc> golden_shift_series(int lq, int sg) {
  if (lq < 0 || lq > 4 || sg < 0 || sg > 8)
    throw UsageError("golden series available through orders q^8, coupling^8");
  const PPoly d1 = even_poly({-1, 1});
  const PPoly d2 = even_poly({-4, 1});
  const PPoly d3 = even_poly({-9, 1});
  const PPoly d4 = even_poly({-16, 1});
  const PPoly dh = even_poly({-2, 1});

  BiSeries<PRatFunc> g(lq, sg);
  g.add(1, 2, frac(cpoly(1), d1));

  g.add(2, 2, frac(cpoly(6) * dh, d2 * d1));
  g.add(2, 3, frac(cpoly(-6), d2 * d1));
  g.add(2, 4, frac(even_poly({7, 5}), cpoly(4) * d2 * ppow(d1, 3)));

  g.add(3, 2, frac(cpoly(12) * even_poly({-3, 1}), d3 * d1));
  g.add(3, 3, frac(cpoly(-48), d3 * d1));
  g.add(3, 4,
        frac(cpoly(4) * even_poly({-2, -37, 15}), d3 * d2 * ppow(d1, 3)));
  g.add(3, 5, frac(cpoly(-4) * even_poly({17, 7}), d3 * d2 * ppow(d1, 3)));
  g.add(3, 6, frac(even_poly({29, 58, 9}), cpoly(2) * d3 * d2 * ppow(d1, 5)));

  g.add(4, 2, frac(cpoly(4) * even_poly({112, -74, 7}), d4 * d2 * d1));
  g.add(4, 3, frac(cpoly(-180), d4 * d1));
  // The coupling^4 denominator here is (P^2-4)^3, not the (P^2-2)^2 that is
  // sometimes quoted: every pole of the recursion sits at integer P, and all
  // three engines agree on this slice.
  g.add(4, 4,
        frac(cpoly(3) * even_poly({-18528, 119816, -115640, 42249, -6662, 365}),
             cpoly(2) * d4 * d3 * ppow(d2, 3) * ppow(d1, 3)));
  g.add(4, 5,
        frac(cpoly(-3) * even_poly({-25664, -4252, 11415, -3358, 259}),
             d4 * d3 * ppow(d2, 3) * ppow(d1, 3)));
  g.add(4, 6,
        frac(even_poly({79832, -501962, 293115, -10529, -18127, 2151}),
             cpoly(4) * d4 * d3 * ppow(d2, 3) * ppow(d1, 5)));
  g.add(4, 7,
        frac(cpoly(-1) * even_poly({104428, 94061, -43203, -481, 715}),
             cpoly(4) * d4 * d3 * ppow(d2, 3) * ppow(d1, 5)));
  g.add(4, 8,
        frac(even_poly({274748, 827565, 64228, -140354, 9144, 1469}),
             cpoly(64) * d4 * d3 * ppow(d2, 3) * ppow(d1, 7)));
  return g;
}

std::map<std::vector<unsigned>, Rational> golden_inversion_terms(int order) {
  std::map<std::vector<unsigned>, Rational> out;
  auto put = [&](std::vector<unsigned> k, long c) {
    out.emplace(std::move(k), Rational(c));
  };
  switch (order) {
    case 1:
      put({1}, -1);
      break;
    case 2:
      put({1, 1}, 1);
      break;
    case 3:
      put({2, 0, 1}, -1);
      put({1, 2, 0}, -1);
      break;
    case 4:
      put({2, 1, 1, 0}, 3);
      put({1, 3, 0, 0}, 1);
      put({3, 0, 0, 1}, 1);
      break;
    case 5:
      put({3, 1, 0, 1, 0}, -4);
      put({2, 2, 1, 0, 0}, -6);
      put({3, 0, 2, 0, 0}, -2);
      put({4, 0, 0, 0, 1}, -1);
      put({1, 4, 0, 0, 0}, -1);
      break;
    default:
      throw UsageError("published reversion terms cover orders 1..5");
  }
  return out;
}

namespace {

using GPoly = std::map<std::vector<unsigned>, Rational>;

unsigned grade(const std::vector<unsigned>& mono) {
  unsigned g = 0;
  for (unsigned e : mono) g += e;
  return g;
}

GPoly gpoly_mul(const GPoly& a, const GPoly& b, unsigned cap, size_t width) {
  GPoly r;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      std::vector<unsigned> m(width);
      unsigned g = 0;
      for (size_t i = 0; i < width; ++i) {
        m[i] = ma[i] + mb[i];
        g += m[i];
      }
      if (g > cap) continue;
      Rational c = ca * cb;
      auto [it, inserted] = r.emplace(std::move(m), c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  }
  return r;
}

}  // namespace

std::map<std::vector<unsigned>, Rational> iterated_inversion_terms(int order) {
  if (order < 1) throw UsageError("reversion order must be positive");
  size_t width = (size_t)order;
  unsigned cap = (unsigned)order;
  GPoly t;
  for (int iter = 0; iter <= order; ++iter) {
    GPoly next;
    GPoly power;
    power.emplace(std::vector<unsigned>(width, 0), Rational(1));
    for (size_t k = 0; k < width; ++k) {
      for (const auto& [mono, c] : power) {
        std::vector<unsigned> m = mono;
        m[k] += 1;
        if (grade(m) > cap) continue;
        Rational v = -c;
        auto [it, inserted] = next.emplace(std::move(m), v);
        if (!inserted) {
          it->second += v;
          if (it->second.is_zero()) next.erase(it);
        }
      }
      if (k + 1 < width) power = gpoly_mul(power, t, cap, width);
    }
    t = std::move(next);
  }
  GPoly out;
  for (const auto& [mono, c] : t)
    if (grade(mono) == cap) out.emplace(mono, c);
  return out;
}

std::vector<std::pair<std::string, bool>> run_selftests() {
  std::vector<std::pair<std::string, bool>> out;

  SymbolicModel2 model{QuantumNumbers{1, 0}};
  auto rec = eigenvalue_by_nome_recursion(model, 4, 8);
  auto gold = golden_shift_series(4, 8);
  for (int l = 1; l <= 4; ++l) {
    bool ok = true;
    for (int s = 0; s <= 8; ++s)
      if (!(rec.shift.coeff(l, s) == gold.coeff(l, s))) ok = false;
    out.emplace_back("golden-order-" + std::to_string(l), ok);
  }

  for (int n = 1; n <= 5; ++n) {
    std::map<std::vector<unsigned>, Rational> got;
    for (const auto& t : inversion_terms(n)) got.emplace(t.k, t.coeff);
    out.emplace_back("reversion-printed-" + std::to_string(n),
                     got == golden_inversion_terms(n));
  }
  for (int n = 1; n <= 8; ++n) {
    std::map<std::vector<unsigned>, Rational> got;
    for (const auto& t : inversion_terms(n)) got.emplace(t.k, t.coeff);
    out.emplace_back("reversion-iterated-" + std::to_string(n),
                     got == iterated_inversion_terms(n));
  }

  auto rec7 = eigenvalue_by_nome_recursion(model, 7, 2);
  auto closed = quadratic_shift_closed_form(7, 2);
  for (int l = 1; l <= 7; ++l)
    out.emplace_back("divisor-rule-" + std::to_string(l),
                     rec7.shift.coeff(l, 2) == closed.coeff(l, 2));
  return out;
}

}  // namespace ecs
