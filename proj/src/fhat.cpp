#include "ecs/fhat.hpp"

#include <algorithm>
#include <numeric>

#include "ecs/errors.hpp"

namespace ecs {

std::vector<ThetaAtom> theta_power_atoms(const Rational& expo, int lq,
                                         long ulo, long uhi) {
  if (lq < 0 || ulo > 0 || uhi < 0) throw UsageError("bad atom window");
  // Accumulate the product over (1 - q^(2m) u)^expo (1 - q^(2m)/u)^expo,
  // m = 1..lq, then the bare (1 - u)^expo last: the nome suppressed
  // factors keep intermediate u powers within [-lq, lq] of final, so
  // folding the unsuppressed factor last makes the windows tight.
  std::map<std::pair<long, int>, Rational> acc;
  acc[{0, 0}] = Rational(1);
  for (int m = 1; m <= lq; ++m) {
    for (int sigma : {+1, -1}) {
      std::map<std::pair<long, int>, Rational> next;
      for (const auto& [key, c] : acc) {
        auto [d, l] = key;
        for (int t = 0; l + m * t <= lq; ++t) {
          Rational w = c * binomial(expo, static_cast<unsigned long>(t));
          if (t % 2) w = -w;
          if (w.is_zero()) continue;
          long nd = d + sigma * t;
          if (nd < ulo - lq || nd > uhi + lq) continue;
          next[{nd, l + m * t}] += w;
        }
      }
      acc = std::move(next);
    }
  }
  std::map<std::pair<long, int>, Rational> fin;
  for (const auto& [key, c] : acc) {
    auto [d, l] = key;
    for (long t = 0; d + t <= uhi; ++t) {
      Rational w = c * binomial(expo, static_cast<unsigned long>(t));
      if (t % 2) w = -w;
      if (w.is_zero()) continue;
      long nd = d + t;
      if (nd < ulo) continue;
      fin[{nd, l}] += w;
    }
  }
  std::vector<ThetaAtom> out;
  out.reserve(fin.size());
  for (const auto& [key, c] : fin)
    if (!c.is_zero()) out.push_back(ThetaAtom{key.first, key.second, c});
  return out;
}

namespace {

using QPoly = std::vector<Rational>;
using StateKey = std::pair<std::vector<long>, std::vector<long>>;  // (xi, z)

struct Factor {
  bool pair_type;  // true: u = xi_j/xi_k, else u = z_j/xi_k
  int j;
  int k;
  std::vector<ThetaAtom> atoms;
};

bool qpoly_zero(const QPoly& p) {
  return std::all_of(p.begin(), p.end(),
                     [](const Rational& c) { return c.is_zero(); });
}

long automatic_pos_cap(const QuantumNumbers& n, int lq) {
  long s = 0;
  for (long v : n) s += std::labs(v);
  long nn = static_cast<long>(n.size());
  return (nn + 1) * s + (nn * nn * nn + 4) * lq + 4;
}

}  // namespace

MonomialSeries fhat_series(const QuantumNumbers& n, const Rational& lambda,
                           const KernelOptions& opt) {
  const int nv = static_cast<int>(n.size());
  if (nv < 1) throw UsageError("need at least one particle");
  const int lq = opt.lq;
  if (lq < 0) throw UsageError("negative truncation order");
  const long cap = opt.pos_cap >= 0 ? opt.pos_cap : automatic_pos_cap(n, lq);

  std::vector<Factor> factors;
  const auto pair_atoms = theta_power_atoms(lambda, lq, -lq, cap);
  const auto z_atoms = theta_power_atoms(-lambda, lq, -lq, cap);
  for (int j = 1; j < nv; ++j)
    for (int k = j + 1; k <= nv; ++k)
      factors.push_back(Factor{true, j, k, pair_atoms});
  for (int j = 1; j <= nv; ++j)
    for (int k = 1; k <= nv; ++k)
      factors.push_back(Factor{false, j, k, z_atoms});

  // Suffix reach of factors i..end per variable: how much the remaining
  // atoms can still move each auxiliary exponent (xi) and each phase
  // exponent (z).  States that cannot be brought back to xi = 0, or into
  // the finite z window, are dropped as they arise.
  const size_t nf = factors.size();
  std::vector<std::vector<long>> xi_lo(nf + 1, std::vector<long>(nv, 0));
  std::vector<std::vector<long>> xi_hi(nf + 1, std::vector<long>(nv, 0));
  std::vector<std::vector<long>> z_lo(nf + 1, std::vector<long>(nv, 0));
  std::vector<std::vector<long>> z_hi(nf + 1, std::vector<long>(nv, 0));
  for (size_t i = nf; i-- > 0;) {
    xi_lo[i] = xi_lo[i + 1];
    xi_hi[i] = xi_hi[i + 1];
    z_lo[i] = z_lo[i + 1];
    z_hi[i] = z_hi[i + 1];
    const Factor& f = factors[i];
    long alo = 0, ahi = 0;
    for (const ThetaAtom& a : f.atoms) {
      alo = std::min(alo, a.upow);
      ahi = std::max(ahi, a.upow);
    }
    if (f.pair_type) {
      xi_lo[i][f.j - 1] += alo;
      xi_hi[i][f.j - 1] += ahi;
      xi_lo[i][f.k - 1] -= ahi;
      xi_hi[i][f.k - 1] -= alo;
    } else {
      z_lo[i][f.j - 1] += alo;
      z_hi[i][f.j - 1] += ahi;
      xi_lo[i][f.k - 1] -= ahi;
      xi_hi[i][f.k - 1] -= alo;
    }
  }

  long nsum = std::accumulate(n.begin(), n.end(), 0L);
  const long zmin = -static_cast<long>(nv) * lq;
  const long zmax = nsum + static_cast<long>(nv) * (nv - 1) * lq;

  auto viable = [&](const StateKey& key, size_t i) {
    for (int v = 0; v < nv; ++v) {
      if (key.first[v] + xi_lo[i][v] > 0) return false;
      if (key.first[v] + xi_hi[i][v] < 0) return false;
      if (key.second[v] + z_lo[i][v] > zmax) return false;
      if (key.second[v] + z_hi[i][v] < zmin) return false;
    }
    return true;
  };

  std::map<StateKey, QPoly> states;
  {
    StateKey start{std::vector<long>(n.begin(), n.end()),
                   std::vector<long>(nv, 0)};
    if (viable(start, 0)) {
      QPoly one(lq + 1);
      one[0] = Rational(1);
      states.emplace(std::move(start), std::move(one));
    }
  }

  for (size_t i = 0; i < nf && !states.empty(); ++i) {
    const Factor& f = factors[i];
    std::map<StateKey, QPoly> next;
    for (const auto& [key, poly] : states) {
      for (const ThetaAtom& a : f.atoms) {
        StateKey nk = key;
        if (f.pair_type) {
          nk.first[f.j - 1] += a.upow;
          nk.first[f.k - 1] -= a.upow;
        } else {
          nk.second[f.j - 1] += a.upow;
          nk.first[f.k - 1] -= a.upow;
        }
        if (!viable(nk, i + 1)) continue;
        QPoly shifted(lq + 1);
        bool any = false;
        for (int l = 0; l + a.l <= lq; ++l) {
          if (poly[l].is_zero()) continue;
          shifted[l + a.l] = poly[l] * a.coeff;
          any = true;
        }
        if (!any) continue;
        auto it = next.find(nk);
        if (it == next.end())
          next.emplace(std::move(nk), std::move(shifted));
        else
          for (int l = 0; l <= lq; ++l) it->second[l] += shifted[l];
      }
    }
    states = std::move(next);
  }

  MonomialSeries out;
  out.num_vars = nv;
  out.lq = lq;
  out.sg = 0;
  for (const auto& [key, poly] : states) {
    if (!std::all_of(key.first.begin(), key.first.end(),
                     [](long e) { return e == 0; }))
      continue;
    if (qpoly_zero(poly)) continue;
    BiSeries<Rational> s(lq, 0);
    for (int l = 0; l <= lq; ++l) s.add(l, 0, poly[l]);
    out.terms.emplace(key.second, std::move(s));
  }
  return out;
}

MonomialSeries assemble_eigenfunction(
    const QuantumNumbers& n, const Rational& lambda,
    const std::map<RootVector, BiSeries<Rational>>& alpha_entries, int lq,
    int sg, const KernelOptions& opt) {
  MonomialSeries out;
  out.num_vars = static_cast<int>(n.size());
  out.lq = lq;
  out.sg = sg;
  KernelOptions kopt = opt;
  kopt.lq = lq;
  for (const auto& [mu, alpha] : alpha_entries) {
    if (alpha.is_zero()) continue;
    if (mu.size() != n.size())
      throw UsageError("root vector length does not match particle count");
    QuantumNumbers shifted(n);
    for (size_t i = 0; i < n.size(); ++i) shifted[i] += mu[i];
    MonomialSeries kern = fhat_series(shifted, lambda, kopt);
    for (const auto& [exps, ser] : kern.terms) {
      BiSeries<Rational> lift(lq, sg);
      for (const auto& [k, v] : ser.terms()) lift.add(k.first, k.second, v);
      BiSeries<Rational> contrib = alpha * lift;
      if (contrib.is_zero()) continue;
      auto [it, inserted] = out.terms.emplace(exps, contrib);
      if (!inserted) {
        it->second += contrib;
        if (it->second.is_zero()) out.terms.erase(it);
      }
    }
  }
  return out;
}

bool is_symmetric(const MonomialSeries& f) {
  // Group by sorted representative: all orbit members must be present
  // (zero coefficients are never stored) and carry equal coefficients.
  std::map<std::vector<long>, std::pair<size_t, const BiSeries<Rational>*>>
      groups;
  for (const auto& [exps, ser] : f.terms) {
    std::vector<long> rep = exps;
    std::sort(rep.begin(), rep.end(), std::greater<long>());
    auto it = groups.find(rep);
    if (it == groups.end()) {
      groups.emplace(std::move(rep), std::make_pair(size_t{1}, &ser));
    } else {
      if (*it->second.second != ser) return false;
      ++it->second.first;
    }
  }
  for (const auto& [rep, got] : groups) {
    // Orbit size: permutations of the exponent multiset.
    unsigned long expect = 1;
    for (unsigned long i = 2; i <= rep.size(); ++i) expect *= i;
    std::map<long, unsigned long> mult;
    for (long e : rep) ++mult[e];
    for (const auto& [e, m] : mult) {
      (void)e;
      for (unsigned long i = 2; i <= m; ++i) expect /= i;
    }
    if (got.first != expect) return false;
  }
  return true;
}

std::map<std::vector<long>, BiSeries<Rational>> partition_coefficients(
    const MonomialSeries& f) {
  if (!is_symmetric(f)) throw MismatchError("expansion is not symmetric");
  std::map<std::vector<long>, BiSeries<Rational>> out;
  for (const auto& [exps, ser] : f.terms) {
    std::vector<long> rep = exps;
    std::sort(rep.begin(), rep.end(), std::greater<long>());
    out.emplace(std::move(rep), ser);
  }
  return out;
}

}  // namespace ecs
