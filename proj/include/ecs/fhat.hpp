#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "ecs/model.hpp"
#include "ecs/series.hpp"

namespace ecs {

// Laurent expansion in the particle phase variables: exponent vector ->
// coefficient double series.  Used both for the mode kernel itself (no
// coupling dependence, sg = 0) and for assembled eigenfunctions.
struct MonomialSeries {
  int num_vars = 0;
  int lq = 0;
  int sg = 0;
  std::map<std::vector<long>, BiSeries<Rational>> terms;

  friend bool operator==(const MonomialSeries& a, const MonomialSeries& b) {
    return a.num_vars == b.num_vars && a.lq == b.lq && a.sg == b.sg &&
           a.terms == b.terms;
  }
  friend bool operator!=(const MonomialSeries& a, const MonomialSeries& b) {
    return !(a == b);
  }
};

// One expansion atom of a theta quotient factor: u^upow * q^(2l) * coeff.
struct ThetaAtom {
  long upow;
  int l;
  Rational coeff;
};

// Expansion of the quotient theta function raised to a rational power,
// through q^(2*lq), with u powers clipped to [ulo, uhi].  Powers below
// -lq are exactly absent at this truncation; the positive clip is the
// caller's responsibility.
std::vector<ThetaAtom> theta_power_atoms(const Rational& expo, int lq,
                                         long ulo, long uhi);

struct KernelOptions {
  int lq = 0;
  // Per factor cap on positive u powers; negative means the generous
  // automatic bound derived from the exponent balance.
  long pos_cap = -1;
};

// Mode kernel: the constant term extraction of the product of theta
// quotients against the auxiliary variables, organized as a Laurent
// series in the phase variables.
MonomialSeries fhat_series(const QuantumNumbers& n, const Rational& lambda,
                           const KernelOptions& opt);

// Default table window for eigenfunction assembly: wide enough that every
// shift whose kernel survives the constant term extraction is included.
// Raising a depressed slot costs at least one q^2 per unit, so the reach
// beyond the trailing mode sum is bounded by the q budget.
inline long default_assembly_window(const QuantumNumbers& n, int lq) {
  long w = lq + 2 + (long)(n.size() - 1) * lq;
  for (size_t j = 1; j < n.size(); ++j) w += std::max<long>(n[j], 0);
  return w;
}

// Linear combination sum_mu alpha(mu) * kernel(n + mu) over a shift
// coefficient table.
MonomialSeries assemble_eigenfunction(
    const QuantumNumbers& n, const Rational& lambda,
    const std::map<RootVector, BiSeries<Rational>>& alpha_entries, int lq,
    int sg, const KernelOptions& opt = {});

// True when the coefficients are invariant under permuting variable
// exponents.
bool is_symmetric(const MonomialSeries& f);

// Collapse a symmetric expansion onto sorted-descending exponent
// representatives; throws MismatchError if the expansion is not actually
// symmetric.
std::map<std::vector<long>, BiSeries<Rational>> partition_coefficients(
    const MonomialSeries& f);

}  // namespace ecs
