#pragma once

#include "core/domination.hpp"
#include "lift/lift_ops.hpp"

namespace stodom {

struct AssumptionReport {
  bool holds = false;
  std::string witness;  // description of the first violation; empty iff holds
};

// Conditional-domination condition on the target measure: for every column b,
// every site a in its fibre and every positive-probability atom of the
// outside-column coordinates, the conditional law at the distinguished site
// is dominated by the conditional law at a (exact tail comparison). Atoms
// generate the whole conditioning sigma-field here because one-dimensional
// domination is linear in the conditioning mixture.
AssumptionReport check_assumption_A(const FiniteMeasure& rho, const FibreMap& pm);

// Flattened-domination condition on the pair: mu flattened through the
// distinguished section in all columns must be dominated by rho.
AssumptionReport check_assumption_B(const FiniteMeasure& mu, const FiniteMeasure& rho,
                                    const FibreMap& pm);

// Section-marginal condition: for every section s, the pushdown of mu is
// dominated by the s-marginal of rho. Exponential in the number of columns;
// guarded by section_cap.
AssumptionReport check_assumption_C(const FiniteMeasure& mu, const FiniteMeasure& rho,
                                    const FibreMap& pm, uint64_t section_cap = 1000000);

// Per-column permutation generators; each permutation is given on the
// fibre-local indices of its column and must fix the column setwise.
using ColumnGenerators = std::vector<std::vector<std::vector<int>>>;

// True iff each column's generated group acts transitively on its fibre and
// every generator (extended by the identity elsewhere) preserves rho.
bool check_sufficiently_symmetric(const FiniteMeasure& rho, const FibreMap& pm,
                                  const ColumnGenerators& generators);

// All within-fibre transpositions: passing these checks pi-exchangeability.
ColumnGenerators transposition_generators(const FibreMap& pm);

// Pushforward of rho by the section evaluation x -> (x_{s(b)})_b.
FiniteMeasure section_marginal(const FiniteMeasure& rho, const FibreMap& pm,
                               const std::vector<int>& s);

}  // namespace stodom
