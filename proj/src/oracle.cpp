#include "ecs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs::num {

namespace {

constexpr Real kPi = 3.14159265358979323846264338327950288L;
constexpr Real kTailEps = 1e-26L;

long ceil_half(long k) {
  if (k >= 0) return (k + 1) / 2;
  return -((-k) / 2);
}

}  // namespace

Real theta_tail(Real x, Real q) {
  Real q2 = q * q;
  Real q2m = q2;
  Real prod = 1.0L;
  Real c = std::cos(x);
  while (q2m > kTailEps) {
    prod *= 1.0L - 2.0L * q2m * c + q2m * q2m;
    q2m *= q2;
  }
  return prod;
}

Real theta_scaled(Real x, Real q) {
  return std::sin(0.5L * x) * theta_tail(x, q);
}

Real potential_tail(Real x, Real q) {
  if (q == 0.0L) return 0.0L;
  Real beta = -2.0L * std::log(q);
  Real cr = std::cos(x);
  Real sr = std::sin(x);
  Real sum = 0.0L;
  Real q2 = q * q;
  Real q2m = q2;
  long m = 1;
  while (q2m > kTailEps) {
    Real ch = std::cosh(beta * (Real)m);
    Real sh = std::sinh(beta * (Real)m);
    Real a = 1.0L - cr * ch;
    Real b = sr * sh;
    sum += a / (a * a + b * b);
    q2m *= q2;
    ++m;
  }
  return sum;
}

Real potential(Real x, Real q) {
  Real s = std::sin(0.5L * x);
  return 1.0L / (4.0L * s * s) + potential_tail(x, q);
}

Real potential_fourier(Real x, Real q) {
  Real s = std::sin(0.5L * x);
  Real sum = 1.0L / (4.0L * s * s);
  Real q2 = q * q;
  Real q2k = q2;
  long k = 1;
  while ((Real)k * q2k > kTailEps) {
    sum -= 2.0L * (Real)k * q2k * std::cos((Real)k * x) / (1.0L - q2k);
    q2k *= q2;
    ++k;
  }
  return sum;
}

Real lattice_constant(Real q) {
  Real sum = 1.0L / 12.0L;
  Real q2 = q * q;
  Real q2k = q2;
  long k = 1;
  while ((Real)k * q2k > kTailEps) {
    sum -= 2.0L * (Real)k * q2k / (1.0L - q2k);
    q2k *= q2;
    ++k;
  }
  return sum;
}

Complex weierstrass_p(Complex z, Real beta, int cutoff) {
  Complex sum = 1.0L / (z * z);
  for (int a = -cutoff; a <= cutoff; ++a) {
    for (int b = -cutoff; b <= cutoff; ++b) {
      if (a == 0 && b == 0) continue;
      Complex w(2.0L * kPi * (Real)a, beta * (Real)b);
      Complex d = z - w;
      sum += 1.0L / (d * d) - 1.0L / (w * w);
    }
  }
  return sum;
}

Real effective_potential(Real x, Real lambda, Real q) {
  Real gamma = 2.0L * lambda * (lambda - 1.0L);
  Real cx = std::cos(x);
  Real sx = std::sin(x);
  Real r = 0.0L;
  Real rp = 0.0L;
  Real q2 = q * q;
  Real q2m = q2;
  while (q2m > kTailEps) {
    Real d = 1.0L - 2.0L * q2m * cx + q2m * q2m;
    Real ds = 2.0L * q2m * sx;
    Real dc = 2.0L * q2m * cx;
    r += ds / d;
    rp += dc / d - (ds / d) * (ds / d);
    q2m *= q2;
  }
  Real c = 0.5L / std::tan(0.5L * x);
  return 0.5L * lambda * lambda + gamma * potential_tail(x, q) -
         2.0L * lambda * rp - 4.0L * lambda * lambda * c * r -
         2.0L * lambda * lambda * r * r;
}

SectorProblem assemble_sector(Real lambda, Real q, long k_total,
                              const OracleOptions& opt) {
  int m = opt.basis;
  if (m < 1) throw UsageError("oracle basis size must be positive");
  SectorProblem out;
  out.k_total = k_total;
  int parity = (int)(((k_total % 2) + 2) % 2);
  out.harmonics.resize(m);
  for (int i = 0; i < m; ++i) out.harmonics[i] = parity + 2 * i;

  // Fourier cosine coefficients of the weight and of weight times
  // effective potential, at integer frequencies up to the largest
  // half harmonic sum.
  int hmax = out.harmonics[m - 1];
  int ng = opt.grid;
  Real step = 2.0L * kPi / (Real)ng;
  std::vector<Real> f1(hmax + 1, 0.0L);
  std::vector<Real> f2(hmax + 1, 0.0L);
  for (int i = 0; i < ng; ++i) {
    Real x = ((Real)i + 0.5L) * step;
    Real ts = theta_scaled(x, q);
    Real w2 = std::pow(ts * ts, lambda);
    Real u = effective_potential(x, lambda, q);
    Real c1 = std::cos(x);
    Real s1 = std::sin(x);
    Real cp = 1.0L;
    Real sp = 0.0L;
    for (int h = 0; h <= hmax; ++h) {
      f1[h] += w2 * cp;
      f2[h] += w2 * u * cp;
      Real cn = cp * c1 - sp * s1;
      sp = sp * c1 + cp * s1;
      cp = cn;
    }
  }
  for (int h = 0; h <= hmax; ++h) {
    f1[h] *= step;
    f2[h] *= step;
  }

  // Basis w(x) cos(nu x / 2): the midpoint reflection parity of the
  // relative wavefunction must match the parity of the total momentum,
  // and the cosine half of each plane wave pair is the combination
  // with that parity.
  out.ham.assign(m, std::vector<Complex>(m));
  out.overlap.assign(m, std::vector<Complex>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      int hd = std::abs(out.harmonics[b] - out.harmonics[a]) / 2;
      int hs = (out.harmonics[b] + out.harmonics[a]) / 2;
      Real o = 0.5L * (f1[hd] + f1[hs]);
      Real kin = 0.25L * (Real)out.harmonics[a] * (Real)out.harmonics[b] *
                 (f1[hd] - f1[hs]);
      out.overlap[a][b] = Complex(o, 0.0L);
      out.ham[a][b] = Complex(0.5L * (f2[hd] + f2[hs]) + kin, 0.0L);
    }
  }
  return out;
}

SectorSolution solve_sector(Real lambda, Real q, long k_total,
                            const OracleOptions& opt) {
  SectorProblem prob = assemble_sector(lambda, q, k_total, opt);
  SectorSolution out;
  out.k_total = k_total;
  out.harmonics = std::move(prob.harmonics);
  out.eig = generalized_eigen(prob.ham, prob.overlap, opt.drop_tol);
  return out;
}

int sector_rank(const std::vector<long>& n) {
  if (n.size() != 2 || n[0] < n[1])
    throw UsageError("two particle oracle requires a dominant pair");
  long k = n[0] + n[1];
  return (int)(n[0] - ceil_half(k));
}

Real oracle_eigenvalue(Real lambda, Real q, const std::vector<long>& n,
                       const OracleOptions& opt) {
  int rank = sector_rank(n);
  long k = n[0] + n[1];
  SectorSolution sol = solve_sector(lambda, q, k, opt);
  if (rank >= (int)sol.eig.values.size())
    throw UsageError("oracle basis too small for requested level");
  return 0.5L * (Real)(k * k) + sol.eig.values[rank];
}

std::vector<Complex> oracle_eigenvector(Real lambda, Real q,
                                        const std::vector<long>& n,
                                        const OracleOptions& opt,
                                        Real* relative_energy) {
  int rank = sector_rank(n);
  long k = n[0] + n[1];
  SectorSolution sol = solve_sector(lambda, q, k, opt);
  if (rank >= (int)sol.eig.values.size())
    throw UsageError("oracle basis too small for requested level");
  if (relative_energy) *relative_energy = sol.eig.values[rank];
  return sol.eig.vectors[rank];
}

Real relative_residual(const std::vector<Complex>& coeffs,
                       const std::vector<int>& harmonics, Real lambda, Real q,
                       Real relative_energy, int fd_order, int grid) {
  if (coeffs.size() != harmonics.size())
    throw UsageError("coefficient and harmonic lists differ in length");
  if (fd_order != 4 && fd_order != 8)
    throw UsageError("finite difference order must be 4 or 8");
  int margin = fd_order / 2;
  if (grid < 2 * margin + 3) throw UsageError("residual grid too small");

  Real a = 0.5L;
  Real b = 2.0L * kPi - 0.5L;
  Real h = (b - a) / (Real)(grid - 1);
  std::vector<Complex> phi(grid);
  std::vector<Real> vx(grid);
  for (int i = 0; i < grid; ++i) {
    Real x = a + (Real)i * h;
    Real w = std::pow(theta_scaled(x, q), lambda);
    Complex s(0.0L, 0.0L);
    for (size_t j = 0; j < coeffs.size(); ++j)
      s += coeffs[j] * std::cos(0.5L * (Real)harmonics[j] * x);
    phi[i] = w * s;
    vx[i] = potential(x, q);
  }

  static const Real c4[] = {-1.0L / 12.0L, 16.0L / 12.0L, -30.0L / 12.0L,
                            16.0L / 12.0L, -1.0L / 12.0L};
  static const Real c8[] = {-1.0L / 560.0L, 8.0L / 315.0L,  -1.0L / 5.0L,
                            8.0L / 5.0L,    -205.0L / 72.0L, 8.0L / 5.0L,
                            -1.0L / 5.0L,   8.0L / 315.0L,  -1.0L / 560.0L};
  const Real* st = (fd_order == 4) ? c4 : c8;

  Real gamma = 2.0L * lambda * (lambda - 1.0L);
  Real worst = 0.0L;
  Real scale = 0.0L;
  for (int i = 0; i < grid; ++i) scale = std::max(scale, std::abs(phi[i]));
  for (int i = margin; i < grid - margin; ++i) {
    Complex dd(0.0L, 0.0L);
    for (int t = -margin; t <= margin; ++t)
      dd += st[t + margin] * phi[i + t];
    dd /= h * h;
    Complex res = -2.0L * dd + (gamma * vx[i] - relative_energy) * phi[i];
    worst = std::max(worst, std::abs(res));
  }
  if (scale == 0.0L) throw UsageError("residual of a zero function");
  return worst / scale;
}

}  // namespace ecs::num
