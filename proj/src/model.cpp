#include "ecs/model.hpp"

#include <algorithm>
#include <functional>

#include "ecs/errors.hpp"

namespace ecs {

Rational half_shift(int num_particles, int j) {
  if (j < 1 || j > num_particles) throw UsageError("particle index out of range");
  return Rational(num_particles + 1 - 2 * j, 2);
}

Rational free_eigenvalue(const ModelParams& mp, const QuantumNumbers& n) {
  if (static_cast<int>(n.size()) != mp.num_particles)
    throw UsageError("quantum number count does not match particle count");
  Rational acc;
  for (int j = 1; j <= mp.num_particles; ++j) {
    Rational p = Rational(n[j - 1]) + mp.lambda * half_shift(mp.num_particles, j);
    acc += p * p;
  }
  return acc;
}

Rational level_gap(const ModelParams& mp, const QuantumNumbers& n,
                   const RootVector& mu) {
  if (mu.size() != n.size())
    throw UsageError("root vector length does not match particle count");
  Rational acc;
  for (int j = 1; j <= mp.num_particles; ++j) {
    Rational m(mu[j - 1]);
    acc += m * m +
           Rational(2) * m *
               (Rational(n[j - 1]) + mp.lambda * half_shift(mp.num_particles, j));
  }
  return acc;
}

PRatFunc free_eigenvalue_sym(const QuantumNumbers& n) {
  if (n.size() != 2) throw UsageError("symbolic mode is two particle only");
  Rational k(n[0] + n[1]);
  PPoly p(std::vector<Rational>{k * k / Rational(2), Rational(0), Rational(1, 2)});
  return PRatFunc(p);
}

PRatFunc level_gap_sym(long mu) {
  // 2*mu*(P + mu)
  PPoly p(std::vector<Rational>{Rational(2 * mu * mu), Rational(2 * mu)});
  return PRatFunc(p);
}

std::vector<std::pair<int, long>> interaction_weights(long nu, int q2_order) {
  std::vector<std::pair<int, long>> out;
  if (nu == 0) return out;
  long a = nu > 0 ? nu : -nu;
  int start = nu > 0 ? 0 : static_cast<int>(a);
  for (int l = start; l <= q2_order; l += static_cast<int>(a))
    out.emplace_back(l, a);
  return out;
}

long interaction_q0(long nu) { return nu > 0 ? nu : 0; }

long moment(const RootVector& mu) {
  long m = 0;
  for (size_t j = 0; j < mu.size(); ++j)
    m += static_cast<long>(j + 1) * mu[j];
  return m;
}

long positive_mass(const RootVector& mu) {
  long p = 0;
  for (long c : mu)
    if (c > 0) p += c;
  return p;
}

long negative_mass(const RootVector& mu) {
  long w = 0;
  for (long c : mu)
    if (c < 0) w -= c;
  return w;
}

bool is_zero_vector(const RootVector& mu) {
  return std::all_of(mu.begin(), mu.end(), [](long c) { return c == 0; });
}

RootVector root_unit(int num_particles, int j, int k) {
  if (j < 1 || k < 1 || j > num_particles || k > num_particles || j == k)
    throw UsageError("bad particle pair");
  RootVector e(num_particles, 0);
  e[j - 1] = 1;
  e[k - 1] = -1;
  return e;
}

std::vector<RootVector> window_vectors(int num_particles, long w) {
  if (w < 0) throw UsageError("negative window");
  std::vector<RootVector> out;
  RootVector cur(num_particles, 0);
  // Zero sum and balanced masses mean every component lies in [-w, w].
  std::function<void(int, long, long)> rec = [&](int idx, long sum, long pos) {
    if (idx == num_particles) {
      if (sum == 0) out.push_back(cur);
      return;
    }
    for (long c = -w; c <= w; ++c) {
      long p = pos + (c > 0 ? c : 0);
      if (p > w) break;
      // The remaining components can move the running sum by at most
      // w per sign, so prune hopeless prefixes.
      long rest = num_particles - idx - 1;
      if (sum + c > rest * w || sum + c < -rest * w) continue;
      cur[idx] = c;
      rec(idx + 1, sum + c, p);
    }
    cur[idx] = 0;
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RootVector> detect_resonance(const ModelParams& mp,
                                         const QuantumNumbers& n, long radius) {
  std::vector<RootVector> bad;
  for (const auto& mu : window_vectors(mp.num_particles, radius)) {
    if (is_zero_vector(mu)) continue;
    if (level_gap(mp, n, mu).is_zero()) bad.push_back(mu);
  }
  return bad;
}

}  // namespace ecs
