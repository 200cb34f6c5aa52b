#pragma once

#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "core/coupling.hpp"
#include "core/measure.hpp"

namespace stodom {

// Verdict of the atom-level domination decision over an arbitrary finite
// poset given by `leq` on atom indices. Exactly one certificate is present:
// a monotone coupling (entries (i, j, mass) with mu-atom i <= rho-atom j)
// when dominated, otherwise an up-set violator described by the mu-atoms
// generating it, with the two exact masses mu(U) > rho(U).
struct AtomVerdict {
  bool dominated = false;
  std::vector<std::tuple<int, int, Rational>> coupling;
  std::vector<int> violator_generators;
  Rational violator_mu_mass{0};
  Rational violator_rho_mass{0};
};

// Decides whether the weighted atom family `mu` is stochastically dominated
// by `rho` by running an exact rational max-flow on the bipartite graph with
// an arc i -> j iff leq(i, j). Domination holds iff the max-flow value is 1;
// a NO verdict converts the min cut into the violating up-set (the residual
// side of the mu atoms, which is upward closed by construction).
AtomVerdict dominates_atoms(const std::vector<Rational>& mu, const std::vector<Rational>& rho,
                            const std::function<bool(int, int)>& leq);

// An upward-closed set of configurations, stored by its generating antichain:
// membership means >= some generator.
struct UpSet {
  ConfigSpace space;
  std::vector<Config> generators;
  bool contains(const Config& c) const;
};

struct DominatesResult {
  bool yes = false;
  std::optional<Coupling> witness;   // monotone, with marginals (mu, rho)
  std::optional<UpSet> violator;     // with mu(violator) > rho(violator)
  Rational violator_mu_mass{0};
  Rational violator_rho_mass{0};
};

// Stochastic domination of measures on a shared configuration space under
// the product order.
DominatesResult dominates(const FiniteMeasure& mu, const FiniteMeasure& rho);

}  // namespace stodom
