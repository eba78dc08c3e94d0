#pragma once

#include <string>

#include "ecs/prat.hpp"
#include "ecs/series.hpp"

namespace ecs {

std::string latex_ppoly(const PPoly& p);
std::string latex_pratfunc(const PRatFunc& f);

// Whole eigenvalue in display layout: the free part, then one bracketed
// block per q^2 power with the common prefactor 1/((P^2-l^2)(P^2-1))
// pulled out for l >= 2.
std::string latex_eigenvalue(const PRatFunc& e0,
                             const BiSeries<PRatFunc>& shift);

}  // namespace ecs
