#include "ecs/latexout.hpp"

#include <utility>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs {

namespace {

int term_count(const PPoly& p) {
  int c = 0;
  for (int i = 0; i <= p.degree(); ++i)
    if (!p.coeff((size_t)i).is_zero()) ++c;
  return c;
}

// p = scale * prim with prim integer, coprime, positive leading coefficient.
std::pair<Rational, PPoly> split_primitive(const PPoly& p) {
  if (p.degree() < 0) return {Rational(0), PPoly()};
  BigInt den_lcm(1);
  for (int i = 0; i <= p.degree(); ++i) {
    const Rational& c = p.coeff((size_t)i);
    if (c.is_zero()) continue;
    BigInt d = c.den();
    BigInt g = BigInt::gcd(den_lcm, d);
    den_lcm = BigInt::div_exact(den_lcm * d, g);
  }
  BigInt num_gcd(0);
  for (int i = 0; i <= p.degree(); ++i) {
    const Rational& c = p.coeff((size_t)i);
    if (c.is_zero()) continue;
    Rational scaled = c * Rational(den_lcm, BigInt(1));
    num_gcd = BigInt::gcd(num_gcd, scaled.num());
  }
  Rational scale(num_gcd, den_lcm);
  if (p.coeff((size_t)p.degree()).sign() < 0) scale = -scale;
  PPoly prim = p.scaled(scale.inverse());
  return {scale, prim};
}

std::string latex_int_poly(const PPoly& p) {
  if (p.degree() < 0) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeff((size_t)i);
    if (c.is_zero()) continue;
    bool neg = c.sign() < 0;
    Rational a = neg ? -c : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mag = a.to_string();
    if (i == 0) {
      out += mag;
    } else {
      if (mag != "1") out += mag;
      out += "P";
      if (i >= 2) out += "^{" + std::to_string(i) + "}";
    }
  }
  return out;
}

std::string attach_scalar(const BigInt& k, const PPoly& prim) {
  std::string ks = k.to_string();
  bool prim_one = prim.degree() == 0 && prim.coeff(0).is_one();
  if (prim_one) return ks;
  std::string ps = latex_int_poly(prim);
  if (ks == "1") return ps;
  if (term_count(prim) > 1) return ks + "(" + ps + ")";
  return ks + ps;
}

struct FracParts {
  bool negative = false;
  std::string num;
  std::string den;  // empty when the denominator is one
};

FracParts frac_parts(const PRatFunc& f) {
  FracParts out;
  if (f.is_zero()) {
    out.num = "0";
    return out;
  }
  auto [sn, pn] = split_primitive(f.num());
  auto [sd, pd] = split_primitive(f.den());
  Rational r = sn / sd;
  out.negative = r.sign() < 0;
  Rational a = out.negative ? -r : r;
  out.num = attach_scalar(a.num(), pn);
  bool den_one = a.den().is_one() && pd.degree() == 0 && pd.coeff(0).is_one();
  if (!den_one) out.den = attach_scalar(a.den(), pd);
  return out;
}

std::string wrap_frac(const FracParts& f) {
  if (f.den.empty()) return f.num;
  return "\\frac{" + f.num + "}{" + f.den + "}";
}

std::string gamma_power(int s) {
  if (s == 0) return "";
  if (s == 1) return "\\gamma";
  return "\\gamma^{" + std::to_string(s) + "}";
}

bool has_top_level_sum(const std::string& s) {
  return s.find(" + ") != std::string::npos ||
         s.find(" - ") != std::string::npos;
}

// Coefficient times gamma^s with the gamma factor folded into the
// numerator of the fraction.
std::string coeff_gamma(const FracParts& f, int s) {
  std::string g = gamma_power(s);
  std::string num = f.num;
  if (!g.empty()) {
    if (num == "1")
      num = g;
    else if (has_top_level_sum(num))
      num = "(" + num + ")\\," + g;
    else
      num += "\\," + g;
  }
  if (f.den.empty()) return num;
  return "\\frac{" + num + "}{" + f.den + "}";
}

}  // namespace

std::string latex_ppoly(const PPoly& p) {
  auto [scale, prim] = split_primitive(p);
  if (prim.degree() < 0) return "0";
  std::string body = latex_int_poly(prim);
  std::string out;
  if (scale.sign() < 0) {
    out += "-";
    scale = -scale;
  }
  BigInt a = scale.num();
  BigInt b = scale.den();
  std::string num = attach_scalar(a, prim);
  if (b.is_one()) return out + num;
  return out + "\\frac{" + num + "}{" + b.to_string() + "}";
}

std::string latex_pratfunc(const PRatFunc& f) {
  FracParts parts = frac_parts(f);
  return (parts.negative ? "-" : "") + wrap_frac(parts);
}

std::string latex_eigenvalue(const PRatFunc& e0,
                             const BiSeries<PRatFunc>& shift) {
  std::string out = "E = " + latex_pratfunc(e0);
  for (int l = 1; l <= shift.q2_order(); ++l) {
    std::vector<std::pair<int, PRatFunc>> block;
    for (int s = 0; s <= shift.gamma_order(); ++s) {
      PRatFunc c = shift.coeff(l, s);
      if (!c.is_zero()) block.emplace_back(s, std::move(c));
    }
    if (block.empty()) continue;

    PRatFunc prefactor(1);
    std::string open, close;
    if (l >= 2) {
      PPoly dl({Rational(-(long)l * l), Rational(0), Rational(1)});
      PPoly d1({Rational(-1), Rational(0), Rational(1)});
      prefactor = PRatFunc(PPoly::constant(Rational(1)), dl * d1);
      open = "\\frac{1}{(P^{2}-" + std::to_string((long)l * l) +
             ")(P^{2}-1)}\\Bigl[";
      close = "\\Bigr]";
    }

    std::string body;
    bool first = true;
    for (auto& [s, c] : block) {
      PRatFunc reduced = c / prefactor;
      FracParts parts = frac_parts(reduced);
      if (first) {
        if (parts.negative) body += "-";
      } else {
        body += parts.negative ? " - " : " + ";
      }
      first = false;
      body += coeff_gamma(parts, s);
    }

    out += " + q^{" + std::to_string(2 * l) + "}\\," + open + body + close;
  }
  return out;
}

}  // namespace ecs
