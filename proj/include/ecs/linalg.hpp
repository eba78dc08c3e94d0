#pragma once

#include <complex>
#include <vector>

namespace ecs::num {

// The oracle works in extended precision throughout: the convergence rate
// study in the acceptance gate needs eigenvalues a couple of digits below
// what double precision Rayleigh quotients can resolve.
using Real = long double;
using Complex = std::complex<long double>;
using Matrix = std::vector<std::vector<Complex>>;

struct EigenResult {
  std::vector<Real> values;           // ascending
  std::vector<std::vector<Complex>> vectors;  // vectors[i] pairs values[i]
};

// Cyclic Jacobi sweeps for a dense Hermitian matrix.  Throws UsageError on
// a non square input; symmetry is taken on trust from the assembler.
EigenResult hermitian_eigen(Matrix a, bool want_vectors = true);

// Generalized problem A v = e B v with Hermitian A and Hermitian positive
// semidefinite B.  B is eigendecomposed and directions with relative
// weight below drop_tol are discarded before whitening, which keeps the
// reduced problem variational even when B is numerically rank deficient.
EigenResult generalized_eigen(const Matrix& a, const Matrix& b,
                              Real drop_tol = 1e-13L);

}  // namespace ecs::num
