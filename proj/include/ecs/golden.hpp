#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ecs/prat.hpp"
#include "ecs/series.hpp"

namespace ecs {

// Frozen reference values for the two particle symbolic eigenvalue shift,
// transcribed by hand and kept independent of the engines.  Orders capped
// at q^8, gamma^8.
BiSeries<PRatFunc> golden_shift_series(int lq, int sg);

// Published expansion monomials of the series reversion at orders 1..5:
// map from exponent vector (one slot per building block) to signed
// rational coefficient.
std::map<std::vector<unsigned>, Rational> golden_inversion_terms(int order);

// Independent oracle for the same monomials: iterate the abstract map
// t -> -(B_0 + B_1 t + ... ) in the free commutative algebra on the
// building blocks, graded by total block count, until the requested grade
// stabilizes.
std::map<std::vector<unsigned>, Rational> iterated_inversion_terms(int order);

// Named pass/fail checks behind the selftest subcommand: golden series,
// reversion coefficients, and the quadratic slice divisor rule.
std::vector<std::pair<std::string, bool>> run_selftests();

}  // namespace ecs
