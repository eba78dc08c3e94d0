#pragma once

#include <vector>

#include "ecs/series.hpp"

namespace ecs {

// Mode occupation numbers for the N particle problem, ordered
// n_1 >= n_2 >= ... >= n_N (not enforced everywhere; the engines only
// need the resulting gaps to be nonzero).
using QuantumNumbers = std::vector<long>;

// Integer vector with components summing to zero; the lattice of moves the
// interaction can make between momentum configurations.
using RootVector = std::vector<long>;

struct ModelParams {
  int num_particles = 2;
  Rational lambda;
  Rational gamma() const {
    return Rational(2) * lambda * (lambda - Rational(1));
  }
};

// The half integer ladder (N+1)/2 - j entering the shifted momenta,
// j counted from 1.
Rational half_shift(int num_particles, int j);

// Unperturbed eigenvalue sum_j (n_j + lambda * half_shift)^2, reported with
// the constant lambda^2 * sum_j half_shift^2 included.
Rational free_eigenvalue(const ModelParams& mp, const QuantumNumbers& n);

// Gap between shifted configurations:
//   E0(n + mu) - E0(n) = sum_j [mu_j^2 + 2 mu_j (n_j + lambda*half_shift_j)].
Rational level_gap(const ModelParams& mp, const QuantumNumbers& n,
                   const RootVector& mu);

// Two particle symbolic counterparts in P = n_1 - n_2 + lambda.
PRatFunc free_eigenvalue_sym(const QuantumNumbers& n);
PRatFunc level_gap_sym(long mu);

// Coefficient of the lattice interaction expanded in the squared nome:
// a list of (q2 power, integer weight) pairs through the given order.
//   nu > 0: weight nu at q2 powers 0, nu, 2nu, ...
//   nu < 0: weight |nu| at q2 powers |nu|, 2|nu|, ...
//   nu = 0: empty.
std::vector<std::pair<int, long>> interaction_weights(long nu, int q2_order);

template <class S>
BiSeries<S> interaction_series(long nu, int lq, int sg) {
  BiSeries<S> r(lq, sg);
  for (auto [l, w] : interaction_weights(nu, lq)) r.add(l, 0, S(w));
  return r;
}

// Value at q = 0: nu for nu > 0, else 0.
long interaction_q0(long nu);

// Root vector utilities.
long moment(const RootVector& mu);         // sum_j j * mu_j, j from 1
long positive_mass(const RootVector& mu);  // sum of positive components
long negative_mass(const RootVector& mu);  // sum of |negative components|
bool is_zero_vector(const RootVector& mu);
RootVector root_unit(int num_particles, int j, int k);  // e_j - e_k, 1-based

// All zero sum vectors with positive mass <= w, sorted lexicographically.
std::vector<RootVector> window_vectors(int num_particles, long w);

// Root vectors within the given positive mass radius where the level gap
// vanishes; nonempty means perturbation denominators blow up for this
// (lambda, n) and exact arithmetic must refuse.
std::vector<RootVector> detect_resonance(const ModelParams& mp,
                                         const QuantumNumbers& n, long radius);

// Evaluation policies for the engines.  Numeric: exact rationals at a
// concrete lambda.  Symbolic: rational functions of P for N = 2, with the
// coupling always a formal marker in both modes.
struct NumericModel {
  using Scalar = Rational;
  ModelParams params;
  QuantumNumbers n;

  int size() const { return params.num_particles; }
  Scalar gap(const RootVector& mu) const { return level_gap(params, n, mu); }
  Scalar e0() const { return free_eigenvalue(params, n); }
};

struct SymbolicModel2 {
  using Scalar = PRatFunc;
  QuantumNumbers n;  // length 2; only enters through K = n_1 + n_2

  int size() const { return 2; }
  Scalar gap(const RootVector& mu) const { return level_gap_sym(mu[0]); }
  Scalar e0() const { return free_eigenvalue_sym(n); }
};

}  // namespace ecs
