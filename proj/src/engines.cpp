#include "ecs/engines.hpp"

namespace ecs {

namespace {

void collect_terms(int n, int part, int rem, std::vector<unsigned>& k,
                   unsigned used, std::vector<InversionTerm>& out) {
  if (rem == 0) {
    unsigned k0 = static_cast<unsigned>(n) - used;
    // used <= n-1 always holds here: each part contributes at least one
    // factor, and there are at most n-1 of them.
    std::vector<unsigned> full(k.size() + 1, 0);
    full[0] = k0;
    for (size_t j = 1; j < full.size(); ++j) full[j] = k[j - 1];
    Rational coeff(BigInt::factorial(static_cast<unsigned long>(n - 1)),
                   BigInt(1));
    for (unsigned m : full)
      if (m > 1) coeff /= Rational(BigInt::factorial(m), BigInt(1));
    if (n % 2) coeff = -coeff;
    out.push_back(InversionTerm{std::move(full), coeff});
    return;
  }
  if (part == 0) return;
  for (int c = rem / part; c >= 0; --c) {
    k[part - 1] = static_cast<unsigned>(c);
    collect_terms(n, part - 1, rem - c * part, k, used + c, out);
  }
  k[part - 1] = 0;
}

}  // namespace

std::vector<InversionTerm> inversion_terms(int n) {
  if (n < 1) throw UsageError("inversion order must be positive");
  std::vector<InversionTerm> out;
  std::vector<unsigned> k(n - 1, 0);
  collect_terms(n, n - 1, n - 1, k, 0, out);
  return out;
}

BiSeries<PRatFunc> quadratic_shift_closed_form(int lq, int sg) {
  BiSeries<PRatFunc> r(lq, sg);
  for (int l = 1; l <= lq; ++l) {
    PRatFunc acc;
    for (int k = 1; k <= l; ++k) {
      if (l % k) continue;
      PPoly den(std::vector<Rational>{Rational(-static_cast<long>(k) * k),
                                      Rational(0), Rational(1)});
      acc += PRatFunc(PPoly::constant(Rational(static_cast<long>(l) * k)), den);
    }
    r.add(l, 2, acc);
  }
  return r;
}

BiSeries<Rational> quadratic_shift_closed_form_at(const Rational& p, int lq,
                                                  int sg) {
  BiSeries<Rational> r(lq, sg);
  for (int l = 1; l <= lq; ++l) {
    Rational acc;
    for (int k = 1; k <= l; ++k) {
      if (l % k) continue;
      Rational den = p * p - Rational(static_cast<long>(k) * k);
      if (den.is_zero()) throw ResonanceError(RootVector{k, -k});
      acc += Rational(static_cast<long>(l) * k) / den;
    }
    r.add(l, 2, acc);
  }
  return r;
}

}  // namespace ecs
