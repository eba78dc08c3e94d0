#pragma once

#include <cstdlib>

#include "ecs/model.hpp"

namespace ecs {

// One interaction step: add nu to component j and subtract it from
// component k of the running root vector (1-based, j < k).
struct WalkStep {
  int j;
  int k;
  long nu;
};

// Budgets for the depth first enumeration of step sequences.  max_neg
// caps the total mass of negative steps (each unit costs a power of q^2),
// max_pos the total mass of positive steps, max_depth the sequence length
// (one coupling power per step).  window selects the targets: partial sums
// with positive mass <= window are reported via at_node; window < 0 means
// only returns to the zero vector matter (reported via at_zero).
struct WalkBudget {
  int num_particles = 2;
  int max_depth = 0;
  long max_neg = 0;
  long max_pos = 0;
  long window = -1;
};

// The visitor maintains its own stacks:
//   push(step, partial): a step was taken (always paired with pop)
//   at_zero(depth):      the partial sum returned to zero; the walk ends
//   at_node(partial, depth): nonzero partial inside the window
template <class Visitor>
class WalkEnumerator {
 public:
  WalkEnumerator(const WalkBudget& budget, Visitor& vis)
      : bu_(budget), vis_(vis), partial_(budget.num_particles, 0) {}

  void run() {
    if (bu_.max_depth > 0) descend(0, 0, 0);
  }

 private:
  void descend(int depth, long neg_used, long pos_used) {
    const int n = bu_.num_particles;
    const long neg_left = bu_.max_neg - neg_used;
    const long pos_left = bu_.max_pos - pos_used;
    for (int j = 1; j < n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        for (long nu = -neg_left; nu <= pos_left; ++nu) {
          if (nu == 0) continue;
          partial_[j - 1] += nu;
          partial_[k - 1] -= nu;
          step(depth, neg_used, pos_used, WalkStep{j, k, nu});
          partial_[j - 1] -= nu;
          partial_[k - 1] += nu;
        }
      }
    }
  }

  void step(int depth, long neg_used, long pos_used, const WalkStep& st) {
    const int d = depth + 1;
    if (st.nu < 0)
      neg_used -= st.nu;
    else
      pos_used += st.nu;
    if (is_zero_vector(partial_)) {
      if (bu_.window < 0) {
        vis_.push(st, partial_);
        vis_.at_zero(d);
        vis_.pop();
      }
      // The zero vector never occurs inside a valid sequence, so do not
      // descend past it in either mode.
      return;
    }
    const bool node_hit =
        bu_.window >= 0 && positive_mass(partial_) <= bu_.window;
    const bool deeper = d < bu_.max_depth && subtree_feasible(neg_used, pos_used);
    if (!node_hit && !deeper) return;
    vis_.push(st, partial_);
    if (node_hit) vis_.at_node(partial_, d);
    if (deeper) descend(d, neg_used, pos_used);
    vis_.pop();
  }

  // Necessary conditions for the remaining budget to still produce a
  // contribution from below this node.
  bool subtree_feasible(long neg_used, long pos_used) const {
    const long neg_left = bu_.max_neg - neg_used;
    const long pos_left = bu_.max_pos - pos_used;
    const int span = bu_.num_particles - 1;
    if (bu_.window < 0) {
      // Must return to the zero vector: each unit of step mass moves two
      // components by one, and moments of future steps are bounded by the
      // span times their mass.
      long l1 = 0;
      for (long c : partial_) l1 += std::labs(c);
      if (l1 > 2 * (neg_left + pos_left)) return false;
      long m = moment(partial_);
      // Future moment lies in [-span*pos_left, span*neg_left] and must
      // cancel m.
      return -m >= -span * pos_left && -m <= span * neg_left;
    }
    // Must reach some vector of positive mass <= window; one step changes
    // the positive mass by at most its size.
    return positive_mass(partial_) <= bu_.window + neg_left + pos_left;
  }

  WalkBudget bu_;
  Visitor& vis_;
  RootVector partial_;
};

template <class Visitor>
void enumerate_walks(const WalkBudget& budget, Visitor& vis) {
  WalkEnumerator<Visitor>(budget, vis).run();
}

}  // namespace ecs
