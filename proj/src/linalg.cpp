#include "ecs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ecs/errors.hpp"

namespace ecs::num {

namespace {

Real off_norm(const Matrix& a) {
  Real s = 0;
  const size_t n = a.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) s += std::norm(a[i][j]);
  return std::sqrt(s);
}

}  // namespace

EigenResult hermitian_eigen(Matrix a, bool want_vectors) {
  const size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw UsageError("eigen solver needs a square matrix");

  Matrix v;
  if (want_vectors) {
    v.assign(n, std::vector<Complex>(n, Complex(0)));
    for (size_t i = 0; i < n; ++i) v[i][i] = Complex(1);
  }

  Real scale = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));
  if (scale == 0) scale = 1;
  const Real tol = scale * 1e-22L;

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm(a) <= tol * static_cast<Real>(n)) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        const Real r = std::abs(a[p][q]);
        if (r <= tol * 1e-3L) continue;
        const Complex phase = a[p][q] / r;
        const Real app = a[p][p].real();
        const Real aqq = a[q][q].real();
        // Zero the (p, q) entry with the unitary plane rotation
        //   col p <- c*col p - conj(s)*col q
        //   col q <- s*col p + c*col q,   s = t*c*phase,
        // where t is the stable root of t^2 - 2*tau*t - 1 = 0.
        const Real tau = (app - aqq) / (2 * r);
        Real t;
        if (tau >= 0)
          t = -1.0L / (tau + std::sqrt(tau * tau + 1));
        else
          t = 1.0L / (-tau + std::sqrt(tau * tau + 1));
        const Real c = 1.0L / std::sqrt(t * t + 1);
        const Complex s = phase * (t * c);

        // A <- R^H A R, touching rows/columns p and q only.
        for (size_t i = 0; i < n; ++i) {
          const Complex aip = a[i][p];
          const Complex aiq = a[i][q];
          a[i][p] = c * aip - std::conj(s) * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (size_t i = 0; i < n; ++i) {
          const Complex api = a[p][i];
          const Complex aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = std::conj(s) * api + c * aqi;
        }
        a[p][q] = Complex(0);
        a[q][p] = Complex(0);
        if (want_vectors) {
          for (size_t i = 0; i < n; ++i) {
            const Complex vip = v[i][p];
            const Complex viq = v[i][q];
            v[i][p] = c * vip - std::conj(s) * viq;
            v[i][q] = s * vip + c * viq;
          }
        }
      }
    }
  }

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    return a[i][i].real() < a[j][j].real();
  });
  EigenResult out;
  out.values.reserve(n);
  for (size_t i : order) out.values.push_back(a[i][i].real());
  if (want_vectors) {
    out.vectors.assign(n, std::vector<Complex>(n));
    for (size_t col = 0; col < n; ++col)
      for (size_t i = 0; i < n; ++i) out.vectors[col][i] = v[i][order[col]];
  }
  return out;
}

EigenResult generalized_eigen(const Matrix& a, const Matrix& b,
                              Real drop_tol) {
  const size_t n = a.size();
  if (b.size() != n) throw UsageError("matrix sizes disagree");
  EigenResult bb = hermitian_eigen(b, true);
  Real bmax = 0;
  for (Real w : bb.values) bmax = std::max(bmax, w);
  if (bmax <= 0) throw UsageError("overlap matrix is not positive");

  // Whitened basis: columns u_k / sqrt(w_k) for the retained directions.
  std::vector<std::vector<Complex>> w;  // w[k][i]
  for (size_t k = 0; k < n; ++k) {
    if (bb.values[k] < drop_tol * bmax) continue;
    const Real f = 1.0L / std::sqrt(bb.values[k]);
    std::vector<Complex> col(n);
    for (size_t i = 0; i < n; ++i) col[i] = bb.vectors[k][i] * f;
    w.push_back(std::move(col));
  }
  const size_t m = w.size();
  if (m == 0) throw UsageError("overlap matrix is numerically zero");

  // Reduced matrix W^H A W.
  Matrix red(m, std::vector<Complex>(m, Complex(0)));
  std::vector<std::vector<Complex>> aw(m, std::vector<Complex>(n, Complex(0)));
  for (size_t k = 0; k < m; ++k)
    for (size_t i = 0; i < n; ++i) {
      Complex acc(0);
      for (size_t j = 0; j < n; ++j) acc += a[i][j] * w[k][j];
      aw[k][i] = acc;
    }
  for (size_t k = 0; k < m; ++k)
    for (size_t l = 0; l < m; ++l) {
      Complex acc(0);
      for (size_t i = 0; i < n; ++i) acc += std::conj(w[k][i]) * aw[l][i];
      red[k][l] = acc;
    }
  // Clean tiny Hermiticity drift from the products.
  for (size_t k = 0; k < m; ++k) {
    red[k][k] = Complex(red[k][k].real(), 0);
    for (size_t l = k + 1; l < m; ++l) {
      const Complex avg = (red[k][l] + std::conj(red[l][k])) / Real(2);
      red[k][l] = avg;
      red[l][k] = std::conj(avg);
    }
  }

  EigenResult rr = hermitian_eigen(std::move(red), true);
  EigenResult out;
  out.values = rr.values;
  out.vectors.assign(m, std::vector<Complex>(n, Complex(0)));
  for (size_t col = 0; col < m; ++col)
    for (size_t k = 0; k < m; ++k)
      for (size_t i = 0; i < n; ++i)
        out.vectors[col][i] += rr.vectors[col][k] * w[k][i];
  return out;
}

}  // namespace ecs::num
