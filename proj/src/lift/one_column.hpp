#pragma once

#include "core/coupling.hpp"
#include "core/errors.hpp"

namespace stodom {

// Precondition failure of the one-column construction: the value law is not
// dominated by the `coordinate`-marginal of the target.
struct OneColumnError : AssumptionError {
  int coordinate;
  explicit OneColumnError(int c)
      : AssumptionError("one-column",
                        "value law not dominated by the marginal at coordinate " +
                            std::to_string(c)),
        coordinate(c) {}
};

// Greedy monotone coupling between the law of "value X placed at position H"
// and rho.
//
// value_pos is the joint law of (X, H) on a 2-site space: site 0 carries the
// value in 0..N, site 1 the position in 0..M-1 (M = rho's site count). rho
// lives on [N]^M. Requires law(X) dominated by every coordinate marginal of
// rho, checked first (exact tail comparison); the offending coordinate is
// reported otherwise.
//
// Construction: placement states are visited in the order (N,0), (N,1), ...,
// (N,M-1), (N-1,0), ..., (1,M-1), then the zero configuration; the mass of
// state (i,j) is stored on target atoms beta with beta[j] >= i, consuming
// admissible atoms in lexicographically smallest-first order.
Coupling one_column_coupling(const FiniteMeasure& value_pos, const FiniteMeasure& rho);

// The law of the placed configuration itself (first marginal of the result).
FiniteMeasure placed_law(const FiniteMeasure& value_pos, const ConfigSpace& target);

// Encodes a single-column pi-lift law as a (value, position) law. Atoms with
// all-zero column get value 0, position 0.
FiniteMeasure value_position_law(const FiniteMeasure& column_law);

}  // namespace stodom
