#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "ecs/prat.hpp"
#include "ecs/rational.hpp"
#include "ecs/series.hpp"

using namespace ecs;

namespace {

constexpr int kCases = 220;

Rational rand_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 30);
  return Rational(num(rng), den(rng));
}

PPoly rand_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  int d = deg(rng);
  std::vector<Rational> c;
  for (int i = 0; i <= d; ++i) c.push_back(rand_rational(rng));
  return PPoly(std::move(c));
}

PPoly rand_poly_nonzero(std::mt19937_64& rng, int max_deg) {
  for (;;) {
    PPoly p = rand_poly(rng, max_deg);
    if (!p.is_zero()) return p;
  }
}

PRatFunc rand_ratfunc(std::mt19937_64& rng) {
  return PRatFunc(rand_poly(rng, 3), rand_poly_nonzero(rng, 2));
}

BiSeries<Rational> rand_series(std::mt19937_64& rng, int lq, int sg) {
  BiSeries<Rational> s(lq, sg);
  std::uniform_int_distribution<int> l(0, lq);
  std::uniform_int_distribution<int> g(0, sg);
  std::uniform_int_distribution<int> count(0, 6);
  int terms = count(rng);
  for (int i = 0; i < terms; ++i) s.add(l(rng), g(rng), rand_rational(rng));
  return s;
}

}  // namespace

TEST_CASE("rational field laws") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < kCases; ++i) {
    Rational a = rand_rational(rng);
    Rational b = rand_rational(rng);
    Rational c = rand_rational(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Rational(0));
    if (!b.is_zero()) {
      CHECK(a / b * b == a);
      CHECK(b * b.inverse() == Rational(1));
    }
  }
}

TEST_CASE("rational parse round trip") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < kCases; ++i) {
    Rational a = rand_rational(rng);
    CHECK(Rational::parse(a.to_string()) == a);
  }
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), UsageError);
  CHECK_THROWS_AS(Rational::parse("a"), UsageError);
  CHECK_THROWS_AS(Rational::parse(""), UsageError);
}

TEST_CASE("rational power and comparisons") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < kCases; ++i) {
    Rational a = rand_rational(rng);
    CHECK(Rational::pow(a, 0) == Rational(1));
    CHECK(Rational::pow(a, 2) == a * a);
    if (!a.is_zero()) CHECK(Rational::pow(a, -1) == a.inverse());
    Rational b = rand_rational(rng);
    CHECK((a < b) == !(b <= a));
  }
}

TEST_CASE("bigint gcd divides") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> v(-4000, 4000);
  for (int i = 0; i < kCases; ++i) {
    BigInt a(v(rng));
    BigInt b(v(rng));
    BigInt g = BigInt::gcd(a, b);
    if (g.is_zero()) {
      CHECK(a.is_zero());
      CHECK(b.is_zero());
      continue;
    }
    CHECK(BigInt::div_exact(a, g) * g == a);
    CHECK(BigInt::div_exact(b, g) * g == b);
    CHECK(g.sign() > 0);
  }
}

TEST_CASE("generalized binomial pascal rule") {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<unsigned long> kdist(1, 6);
  for (int i = 0; i < kCases; ++i) {
    Rational a = rand_rational(rng);
    unsigned long k = kdist(rng);
    CHECK(binomial(a, k) == binomial(a - Rational(1), k - 1) +
                                binomial(a - Rational(1), k));
  }
  CHECK(binomial(Rational(5), 2) == Rational(10));
  CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(binomial(Rational(3), 0) == Rational(1));
}

TEST_CASE("polynomial ring laws") {
  std::mt19937_64 rng(16);
  for (int i = 0; i < kCases; ++i) {
    PPoly a = rand_poly(rng, 4);
    PPoly b = rand_poly(rng, 4);
    PPoly c = rand_poly(rng, 3);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + (-a) == PPoly());
    if (!a.is_zero() && !b.is_zero())
      CHECK((a * b).degree() == a.degree() + b.degree());
  }
}

TEST_CASE("polynomial division") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < kCases; ++i) {
    PPoly a = rand_poly(rng, 5);
    PPoly b = rand_poly_nonzero(rng, 3);
    auto [q, r] = PPoly::divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("polynomial gcd divides both and is monic") {
  std::mt19937_64 rng(18);
  for (int i = 0; i < kCases; ++i) {
    PPoly a = rand_poly(rng, 4);
    PPoly b = rand_poly(rng, 4);
    PPoly g = poly_gcd(a, b);
    if (a.is_zero() && b.is_zero()) {
      CHECK(g.is_zero());
      continue;
    }
    CHECK(g.leading().is_one());
    if (!a.is_zero()) CHECK(PPoly::divmod(a, g).second.is_zero());
    if (!b.is_zero()) CHECK(PPoly::divmod(b, g).second.is_zero());
    PPoly m = rand_poly_nonzero(rng, 2);
    PPoly g2 = poly_gcd(a * m, b * m);
    CHECK(PPoly::divmod(g2, g * m).second.is_zero());
  }
}

TEST_CASE("rational function field laws") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < kCases; ++i) {
    PRatFunc a = rand_ratfunc(rng);
    PRatFunc b = rand_ratfunc(rng);
    PRatFunc c = rand_ratfunc(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == PRatFunc());
    if (!b.is_zero()) {
      CHECK(a / b * b == a);
      CHECK(b * b.inverse() == PRatFunc(1));
    }
  }
}

TEST_CASE("rational function canonical form") {
  std::mt19937_64 rng(20);
  for (int i = 0; i < kCases; ++i) {
    PRatFunc a = rand_ratfunc(rng) + rand_ratfunc(rng);
    if (a.is_zero()) {
      CHECK(a.den() == PPoly::constant(Rational(1)));
      continue;
    }
    CHECK(a.den().leading().is_one());
    CHECK(poly_gcd(a.num(), a.den()).degree() == 0);
  }
}

TEST_CASE("rational function evaluation is a homomorphism") {
  std::mt19937_64 rng(21);
  int done = 0;
  while (done < kCases) {
    PRatFunc a = rand_ratfunc(rng);
    PRatFunc b = rand_ratfunc(rng);
    Rational p = rand_rational(rng);
    Rational av, bv, sv, pv;
    try {
      av = a.eval(p);
      bv = b.eval(p);
      sv = (a + b).eval(p);
      pv = (a * b).eval(p);
    } catch (const UsageError&) {
      continue;  // landed on a pole; draw again
    }
    CHECK(sv == av + bv);
    CHECK(pv == av * bv);
    ++done;
  }
}

TEST_CASE("series ring laws") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < kCases; ++i) {
    auto a = rand_series(rng, 4, 5);
    auto b = rand_series(rng, 4, 5);
    auto c = rand_series(rng, 4, 5);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == BiSeries<Rational>(4, 5));
  }
}

TEST_CASE("series truncation discipline") {
  BiSeries<Rational> a(2, 3);
  a.add(2, 3, Rational(1));
  CHECK(!a.is_zero());
  a.add(3, 0, Rational(5));  // beyond the q2 order, silently dropped
  a.add(0, 4, Rational(5));  // beyond the gamma order
  CHECK(a.terms().size() == 1);
  CHECK(a.coeff(0, 0) == Rational(0));
  BiSeries<Rational> b(3, 3);
  CHECK_THROWS_AS(a + b, UsageError);
}

TEST_CASE("series product truncates consistently") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < kCases; ++i) {
    auto a = rand_series(rng, 3, 4);
    auto b = rand_series(rng, 3, 4);
    auto prod = a * b;
    for (const auto& [key, value] : prod.terms()) {
      Rational direct;
      for (int l = 0; l <= key.first; ++l)
        for (int s = 0; s <= key.second; ++s)
          direct += a.coeff(l, s) * b.coeff(key.first - l, key.second - s);
      CHECK(direct == value);
    }
  }
}

TEST_CASE("series reciprocal against multiplication") {
  std::mt19937_64 rng(24);
  int done = 0;
  while (done < kCases) {
    Rational b0 = rand_rational(rng);
    if (b0.is_zero()) continue;
    auto tail = rand_series(rng, 3, 4);
    // the reciprocal is of b0 - tail with the tail strictly positive order
    BiSeries<Rational> t(3, 4);
    for (const auto& [key, value] : tail.terms())
      if (key.first >= 1) t.add(key.first, key.second, value);
    auto recip = series_recip_shifted(b0, t);
    auto prod = recip.scaled(b0) - recip * t;
    CHECK(prod == BiSeries<Rational>::constant(3, 4, Rational(1)));
    ++done;
  }
}

TEST_CASE("series shift and scale") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < kCases; ++i) {
    auto a = rand_series(rng, 3, 4);
    Rational f = rand_rational(rng);
    auto s = a.scaled(f);
    for (const auto& [key, value] : a.terms())
      CHECK(s.coeff(key.first, key.second) == value * f);
    auto sh = a.shifted(1, 2);
    for (const auto& [key, value] : sh.terms()) {
      CHECK(key.first >= 1);
      CHECK(key.second >= 2);
      CHECK(value == a.coeff(key.first - 1, key.second - 2));
    }
  }
}

TEST_CASE("balanced sum matches sequential sum") {
  std::mt19937_64 rng(26);
  for (int i = 0; i < kCases; ++i) {
    std::uniform_int_distribution<int> count(0, 12);
    int m = count(rng);
    std::vector<Rational> v;
    Rational seq;
    for (int j = 0; j < m; ++j) {
      v.push_back(rand_rational(rng));
      seq += v.back();
    }
    CHECK(balanced_sum(std::move(v)) == seq);
  }
}

TEST_CASE("symbolic evaluation matches numeric substitution") {
  // The same rational function evaluated at lambda dependent points.
  PRatFunc p = PRatFunc::variable();
  PRatFunc f = (p * p - PRatFunc(1)).inverse();
  Rational lambda(1, 3);
  Rational at = Rational(1) + lambda;  // P for adjacent modes
  CHECK(f.eval(at) == (at * at - Rational(1)).inverse());
  PRatFunc g = PRatFunc(PPoly({Rational(2), Rational(0), Rational(3)}),
                        PPoly({Rational(-1), Rational(1)}));
  CHECK(g.eval(Rational(2)) == Rational(14));
}
