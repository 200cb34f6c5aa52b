#pragma once

#include "core/domination.hpp"
#include "lift/assumptions.hpp"
#include "lift/one_column.hpp"

namespace stodom {

// Constructive monotone coupling of a pi-lift mu with rho, under the
// conditional-domination and flattened-domination preconditions (checked
// first; a failure raises AssumptionError naming the assumption).
//
// Works by flattening mu column by column down to the fully flattened
// measure, coupling that with rho, and then unflattening one column at a
// time in ascending column order: each step pulls the current coupling back
// through the column's flatten map, splits it on the atoms of the target's
// outside-column coordinates, rebuilds the column inside each atom with the
// greedy one-column coupling, and mixes the pieces back together.
//
// The result is verified by is_monotone_coupling before it is returned.
Coupling build_main_coupling(const FiniteMeasure& mu, const FiniteMeasure& rho,
                             const FibreMap& pm);

}  // namespace stodom
