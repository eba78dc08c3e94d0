#pragma once

#include <vector>

#include "ecs/linalg.hpp"

namespace ecs::num {

// Building blocks of the two body potential and the ground state factor,
// all in long double.  The nome q lives in [0, 1); beta = -2 ln q.

// Convergent tail product prod_{m>=1} (1 - 2 q^{2m} cos x + q^{4m}).
Real theta_tail(Real x, Real q);
// sin(x/2) times the tail product; positive on (0, 2*pi).
Real theta_scaled(Real x, Real q);

// Smooth part of the potential: the image sum over nonzero lattice copies.
Real potential_tail(Real x, Real q);
// Full two body potential 1/(4 sin^2(x/2)) + tail.
Real potential(Real x, Real q);
// Same function through its cosine series; independent route for tests.
Real potential_fourier(Real x, Real q);
// Additive constant relating the potential to the Weierstrass function.
Real lattice_constant(Real q);
// Direct lattice sum for the Weierstrass p function with periods
// (2*pi, i*beta); rectangle cutoff in lattice indices.
Complex weierstrass_p(Complex z, Real beta, int cutoff);

// Effective smooth potential of the weighted weak form: with
// w = theta_scaled^lambda and L = log theta_scaled, this is
// gamma*V - 2*lambda*L'' - 2*lambda^2*(L')^2, in which the 1/x^2
// singularities cancel identically.
Real effective_potential(Real x, Real lambda, Real q);

struct OracleOptions {
  int basis = 61;       // plane wave half harmonics per sector
  int grid = 1 << 14;   // midpoint quadrature points
  Real drop_tol = 1e-13L;  // relative overlap eigenvalue cutoff
};

// Quadrature size giving sub 1e-10 Fourier coefficients of the weight:
// the weight behaves like sin^{2 lambda} near the endpoints, so small
// couplings converge slowly and need the dense grid.
inline int suggested_grid(Real lambda) {
  return lambda <= 0.75L ? (1 << 18) : (1 << 14);
}

// Weak form matrices of the relative problem in the sector of total
// momentum k_total: basis w(x) * cos(nu*x/2) with nu >= 0, nu = k_total
// mod 2.  The cosine combinations carry the midpoint reflection parity
// (-1)^k_total that single valuedness of the two body wavefunction
// imposes on the relative factor; the sine combinations carry the
// opposite parity and would contaminate the sector with alien levels.
struct SectorProblem {
  long k_total = 0;
  std::vector<int> harmonics;
  Matrix ham;
  Matrix overlap;
};
SectorProblem assemble_sector(Real lambda, Real q, long k_total,
                              const OracleOptions& opt);

struct SectorSolution {
  long k_total = 0;
  std::vector<int> harmonics;
  EigenResult eig;  // relative energies, ascending
};
SectorSolution solve_sector(Real lambda, Real q, long k_total,
                            const OracleOptions& opt);

// Position of the level labeled by dominant (n1, n2) within its sector:
// the free relative energies (n1 - n2 + lambda)^2 / 2 are strictly
// increasing in n1 at fixed sum.
int sector_rank(const std::vector<long>& n);

// Total eigenvalue k^2/2 + relative energy for the level tracked from the
// free label n.
Real oracle_eigenvalue(Real lambda, Real q, const std::vector<long>& n,
                       const OracleOptions& opt);

// Basis coefficients of that level (and optionally its relative energy).
std::vector<Complex> oracle_eigenvector(Real lambda, Real q,
                                        const std::vector<long>& n,
                                        const OracleOptions& opt,
                                        Real* relative_energy = nullptr);

// Max norm residual of a relative eigenfunction given by basis
// coefficients, using central finite differences of the chosen order
// (4 or 8) on an interior grid, relative to the max of the function.
Real relative_residual(const std::vector<Complex>& coeffs,
                       const std::vector<int>& harmonics, Real lambda, Real q,
                       Real relative_energy, int fd_order = 4,
                       int grid = 4096);

}  // namespace ecs::num
