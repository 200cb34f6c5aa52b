#pragma once

#include <array>

#include "bk/events.hpp"
#include "perco/graph.hpp"

namespace stodom::bk {

struct InequalityReport {
  Rational lhs{0};
  Rational rhs{0};
  bool holds = false;
  Rational gap{0};  // rhs - lhs
};

// Exact check of P(e1 o e2) <= P(e1) P(e2) under an independent product
// measure. Both events must be increasing (the more general inequality for
// arbitrary events is out of scope here and inputs are rejected instead of
// silently checking the weaker claim).
InequalityReport check_product_bound(const Event& e1, const Event& e2,
                                     const std::vector<Rational>& p);

// Per-coordinate pair law on {0,1}^2, weights indexed by 2*first + second.
using PairLaw = std::array<Rational, 4>;

// Exact check of P(e1 o e2) <= P_pair(e1 x e2), where the right-hand side
// couples coordinate i of the first copy with coordinate i of the second
// copy through pair_laws[i]. Requires both marginals of every pair law to be
// Bernoulli with parameter at least p[i].
InequalityReport check_paired_bound(const Event& e1, const Event& e2,
                                    const std::vector<Rational>& p,
                                    const std::vector<PairLaw>& pair_laws);

// The per-coordinate law of the fibre-selection model: exactly one of the
// two copies open, each with probability 1/2.
PairLaw fibre_selection_pair_law();

struct TwoArmReport {
  Rational one_arm{0};         // probability of reaching the sphere
  Rational two_arm{0};         // probability of two edge-disjoint open arms
  Rational one_arm_squared{0};
  bool product_bound_holds = false;  // two_arm <= one_arm^2
};

// Exact one-arm and two-arm probabilities on the closed ball: the two-arm
// event is the disjoint occurrence of the arm event with itself (witnesses
// are edge sets, so disjointness means edge-disjoint arms).
TwoArmReport two_arm_check(const perco::Graph& g, int v, int radius, const Rational& p,
                           int cap = 14);

}  // namespace stodom::bk
