#pragma once

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "ecs/walks.hpp"

namespace ecs {

// Coefficients of the self energy expanded in powers of the eigenvalue
// shift: entry k is the double series multiplying shift^k in the fixed
// point equation  shift = -sum_k coeff[k] * shift^k.  Every entry is at
// least quadratic in the coupling and carries at least one power of q^2.
template <class Model>
struct SelfEnergyTable {
  int lq = 0;
  int sg = 0;
  int kmax = 0;
  std::vector<BiSeries<typename Model::Scalar>> coeff;
};

namespace detail {

template <class Model>
class SelfEnergyVisitor {
  using S = typename Model::Scalar;

 public:
  SelfEnergyVisitor(const Model& model, int lq, int sg, int kmax)
      : model_(model), lq_(lq), sg_(sg), kmax_(kmax) {
    std::vector<Rational> w0(lq + 1);
    w0[0] = Rational(1);
    wstack_.push_back(std::move(w0));
    std::vector<S> dp0(kmax + 1, scalar_traits<S>::zero());
    dp0[0] = scalar_traits<S>::one();
    dpstack_.push_back(std::move(dp0));
    result_.assign(kmax + 1, BiSeries<S>(lq, sg));
  }

  void push(const WalkStep& st, const RootVector& partial) {
    wstack_.push_back(convolve(wstack_.back(), st.nu));
    if (is_zero_vector(partial)) {
      // Terminal step of a closed walk; it has no denominator and this
      // placeholder is never read.
      dpstack_.emplace_back();
      return;
    }
    const S inv = inverse_gap(partial);
    const std::vector<S>& prev = dpstack_.back();
    std::vector<S> next(kmax_ + 1);
    for (int k = 0; k <= kmax_; ++k) {
      S acc = prev[k];
      if (k > 0) acc += next[k - 1];
      next[k] = acc * inv;
    }
    dpstack_.push_back(std::move(next));
  }

  void pop() {
    wstack_.pop_back();
    dpstack_.pop_back();
  }

  void at_zero(int depth) {
    const std::vector<S>& dp = dpstack_[depth - 1];
    const std::vector<Rational>& w = wstack_[depth];
    for (int k = 0; k <= kmax_; ++k) {
      if (dp[k].is_zero()) continue;
      for (int l = 0; l <= lq_; ++l) {
        if (w[l].is_zero()) continue;
        S val = dp[k] * scalar_traits<S>::from_rational(w[l]);
        if constexpr (scalar_traits<S>::prefer_tree_sums)
          buckets_[{k, l, depth}].push_back(std::move(val));
        else
          result_[k].add(l, depth, val);
      }
    }
  }

  void at_node(const RootVector&, int) {}

  SelfEnergyTable<Model> finish() {
    if constexpr (scalar_traits<S>::prefer_tree_sums) {
      for (auto& [key, bucket] : buckets_) {
        auto [k, l, s] = key;
        result_[k].add(l, s, balanced_sum(std::move(bucket)));
      }
      buckets_.clear();
    }
    return SelfEnergyTable<Model>{lq_, sg_, kmax_, std::move(result_)};
  }

 private:
  std::vector<Rational> convolve(const std::vector<Rational>& w, long nu) {
    std::vector<Rational> r(lq_ + 1);
    for (auto [l, wt] : interaction_weights(nu, lq_)) {
      Rational f(wt);
      for (int i = 0; i + l <= lq_; ++i)
        if (!w[i].is_zero()) r[i + l] += w[i] * f;
    }
    return r;
  }

  S inverse_gap(const RootVector& mu) {
    auto it = gap_memo_.find(mu);
    if (it != gap_memo_.end()) return it->second;
    S g = model_.gap(mu);
    if (g.is_zero()) throw ResonanceError(mu);
    S inv = g.inverse();
    gap_memo_.emplace(mu, inv);
    return inv;
  }

  const Model& model_;
  int lq_;
  int sg_;
  int kmax_;
  std::vector<std::vector<Rational>> wstack_;
  std::vector<std::vector<S>> dpstack_;
  std::map<RootVector, S> gap_memo_;
  std::map<std::tuple<int, int, int>, std::vector<S>> buckets_;
  std::vector<BiSeries<S>> result_;
};

}  // namespace detail

template <class Model>
SelfEnergyTable<Model> build_self_energy(const Model& model, int lq, int sg,
                                         int kmax) {
  if (lq < 0 || sg < 0 || kmax < 0) throw UsageError("negative order");
  detail::SelfEnergyVisitor<Model> vis(model, lq, sg, kmax);
  WalkBudget bu;
  bu.num_particles = model.size();
  bu.max_neg = lq;
  bu.max_pos = static_cast<long>(model.size() - 1) * lq;
  bu.max_depth = static_cast<int>(
      std::min<long>(sg, bu.max_neg + bu.max_pos));
  bu.window = -1;
  enumerate_walks(bu, vis);
  return vis.finish();
}

}  // namespace ecs
