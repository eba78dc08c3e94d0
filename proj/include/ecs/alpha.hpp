#pragma once

#include <functional>
#include <map>
#include <vector>

#include "ecs/engines.hpp"
#include "ecs/walks.hpp"

namespace ecs {

// Coefficients of the eigenfunction expansion over shifted mode kernels:
// root vector -> double series, with the zero vector normalized to 1.
// Complete for every root vector of positive mass <= window.
template <class Model>
struct ShiftCoefficientTable {
  int lq = 0;
  int sg = 0;
  long window = 0;
  std::map<RootVector, BiSeries<typename Model::Scalar>> entries;
};

namespace detail {

// Total step mass available to a table build; reachability ceiling used
// both for pruning and for certifying vectors outside the window as zero.
inline std::pair<long, long> walk_mass_budget(int num_particles, int lq,
                                              long window) {
  long max_neg = lq;
  long max_pos = static_cast<long>(num_particles - 1) * (lq + window);
  return {max_neg, max_pos};
}

template <class Model>
class ShiftCoefficientVisitor {
  using S = typename Model::Scalar;

 public:
  ShiftCoefficientVisitor(const Model& model, const BiSeries<S>& shift_series,
                          int lq, int sg, long window)
      : model_(model), shift_(shift_series), lq_(lq), sg_(sg) {
    rstack_.push_back(
        BiSeries<S>::constant(lq, sg, scalar_traits<S>::one()));
    for (const RootVector& mu : window_vectors(model.size(), window)) {
      if (is_zero_vector(mu))
        table_.emplace(mu, BiSeries<S>::constant(lq, sg,
                                                 scalar_traits<S>::one()));
      else
        table_.emplace(mu, BiSeries<S>(lq, sg));
    }
  }

  void push(const WalkStep& st, const RootVector& partial) {
    BiSeries<S> r = rstack_.back() * step_series(st.nu);
    if (!r.is_zero()) r = r * resolvent(partial);
    rstack_.push_back(std::move(r));
  }

  void pop() { rstack_.pop_back(); }

  void at_zero(int) {}

  void at_node(const RootVector& partial, int depth) {
    auto it = table_.find(partial);
    if (it == table_.end()) return;
    it->second += rstack_.back().shifted(0, depth);
  }

  std::map<RootVector, BiSeries<S>> take_table() { return std::move(table_); }

 private:
  const BiSeries<S>& step_series(long nu) {
    auto it = step_memo_.find(nu);
    if (it == step_memo_.end())
      it = step_memo_.emplace(nu, interaction_series<S>(nu, lq_, sg_)).first;
    return it->second;
  }

  // 1/(gap(partial) - shift series); the gap may only vanish at the zero
  // vector, which never appears inside a walk.
  const BiSeries<S>& resolvent(const RootVector& mu) {
    auto it = resolvent_memo_.find(mu);
    if (it == resolvent_memo_.end()) {
      S g = model_.gap(mu);
      if (g.is_zero()) throw ResonanceError(mu);
      it = resolvent_memo_.emplace(mu, series_recip_shifted(g, shift_)).first;
    }
    return it->second;
  }

  const Model& model_;
  const BiSeries<S>& shift_;
  int lq_;
  int sg_;
  std::vector<BiSeries<S>> rstack_;
  std::map<long, BiSeries<S>> step_memo_;
  std::map<RootVector, BiSeries<S>> resolvent_memo_;
  std::map<RootVector, BiSeries<S>> table_;
};

}  // namespace detail

// Build the table by summing all admissible step sequences; the shift
// series must come from the same (lq, sg) truncation.
template <class Model>
ShiftCoefficientTable<Model> shift_coefficients(
    const Model& model, const BiSeries<typename Model::Scalar>& shift_series,
    int lq, int sg, long window) {
  if (window < 0) throw UsageError("negative window");
  if (shift_series.q2_order() != lq || shift_series.gamma_order() != sg)
    throw UsageError("shift series truncation does not match the request");
  detail::ShiftCoefficientVisitor<Model> vis(model, shift_series, lq, sg,
                                             window);
  auto [max_neg, max_pos] = detail::walk_mass_budget(model.size(), lq, window);
  WalkBudget bu;
  bu.num_particles = model.size();
  bu.max_neg = max_neg;
  bu.max_pos = max_pos;
  bu.max_depth =
      static_cast<int>(std::min<long>(sg, bu.max_neg + bu.max_pos));
  bu.window = window;
  enumerate_walks(bu, vis);
  ShiftCoefficientTable<Model> out;
  out.lq = lq;
  out.sg = sg;
  out.window = window;
  out.entries = vis.take_table();
  return out;
}

// q = 0 limit: only positive steps survive, so the sums are finite
// polynomials in the coupling of degree bounded by the moment.
template <class Model>
ShiftCoefficientTable<Model> shift_coefficients_q0(const Model& model,
                                                   int smax, long window) {
  using S = typename Model::Scalar;
  return shift_coefficients(model, BiSeries<S>(0, smax), 0, smax, window);
}

// Can any admissible walk end on this vector?  The positive part of a
// walk is a nonnegative root combination, so the endpoint plus some
// negative budget B must have nonnegative prefix sums with peak at most
// the positive budget.  False certifies the coefficient is exactly zero.
inline bool walk_can_reach(const RootVector& target, long max_neg,
                           long max_pos) {
  const int n = static_cast<int>(target.size());
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j < n; ++j)
    for (int k = j + 1; k <= n; ++k) pairs.emplace_back(j, k);
  RootVector probe = target;
  std::function<bool(size_t, long)> rec = [&](size_t idx, long left) -> bool {
    if (idx == pairs.size()) {
      long prefix = 0;
      long peak = 0;
      for (int c = 0; c + 1 < n; ++c) {
        prefix += probe[c];
        if (prefix < 0) return false;
        peak = std::max(peak, prefix);
      }
      return peak <= max_pos;
    }
    auto [j, k] = pairs[idx];
    for (long c = 0; c <= left; ++c) {
      if (c > 0) {
        probe[j - 1] += 1;
        probe[k - 1] -= 1;
      }
      if (rec(idx + 1, left - c)) {
        probe[j - 1] -= c;
        probe[k - 1] += c;
        return true;
      }
    }
    probe[j - 1] -= left;
    probe[k - 1] += left;
    return false;
  };
  return rec(0, max_neg);
}

// Residual of the defining recursion over the table.  Interior points,
// where every neighbor is either tabulated or certified zero, must give
// an exactly vanishing series; points whose neighbors fall outside both
// are reported as boundary and carry no statement.
template <class Model>
struct RecursionResidual {
  std::map<RootVector, BiSeries<typename Model::Scalar>> interior;
  std::vector<RootVector> boundary;
};

template <class Model>
RecursionResidual<Model> recursion_residual(
    const Model& model, const ShiftCoefficientTable<Model>& tab,
    const BiSeries<typename Model::Scalar>& shift_series) {
  using S = typename Model::Scalar;
  const int n = model.size();
  const int lq = tab.lq;
  const int sg = tab.sg;
  auto [max_neg, max_pos] = detail::walk_mass_budget(n, lq, tab.window);
  RecursionResidual<Model> out;
  for (const auto& [mu, alpha] : tab.entries) {
    BiSeries<S> res = alpha.scaled(model.gap(mu)) - shift_series * alpha;
    bool interior = true;
    BiSeries<S> lattice(lq, sg);
    for (int j = 1; j < n && interior; ++j) {
      for (int k = j + 1; k <= n && interior; ++k) {
        // Negative steps beyond the truncation carry no weight; positive
        // steps terminate once the endpoint is out of reach for good.
        for (long nu = -static_cast<long>(lq); interior; ++nu) {
          if (nu == 0) continue;
          RootVector at = mu;
          at[j - 1] -= nu;
          at[k - 1] += nu;
          if (nu > 0 && positive_mass(at) > max_neg + max_pos) break;
          BiSeries<S> snu = interaction_series<S>(nu, lq, sg);
          if (snu.is_zero()) continue;
          auto it = tab.entries.find(at);
          if (it != tab.entries.end()) {
            lattice += snu * it->second;
          } else if (!walk_can_reach(at, max_neg, max_pos)) {
            continue;  // certified zero
          } else {
            interior = false;
          }
        }
      }
    }
    if (!interior) {
      out.boundary.push_back(mu);
      continue;
    }
    res -= lattice.shifted(0, 1);
    out.interior.emplace(mu, std::move(res));
  }
  return out;
}

}  // namespace ecs
