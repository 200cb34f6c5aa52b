#pragma once

#include <optional>

#include "core/domination.hpp"
#include "lift/assumptions.hpp"

namespace stodom::fixtures {

// A pinned instance with exact expectations; these are golden tests guarding
// the whole stack. Any drift in the core or lift modules breaks them first.
struct Fixture {
  std::string name;
  FiniteMeasure mu;
  FiniteMeasure rho;
  std::optional<FibreMap> pm;
};

// Three columns of three sites each (configurations are 3x3 binary matrices,
// columns are the fibres). mu is uniform on four matrices whose pushdown is
// uniform on the zero vector and the three two-one vectors; rho is uniform on
// the all-ones matrix and three circulant matrices. Every section marginal of
// rho dominates the pushdown of mu, yet mu is not dominated by rho.
Fixture three_column_instance();

struct ThreeColumnReport {
  bool ok = false;
  bool section_condition_holds = false;  // all 27 sections
  bool domination_fails = false;
  int dominating_atoms_per_nonzero_mu_atom = -1;
  bool table_rows_ok = false;  // the nine pinned section/assignment rows
  bool assumptions_never_jointly_hold = false;  // over all 27 sections
  std::string detail;
};
ThreeColumnReport verify_three_column();

// Two sites whose labels are bit pairs ordered by the product order, encoded
// as four binary coordinates (two per site). One column; both possible
// distinguished sites are checked. The conditional and flattened-domination
// conditions hold under the encoded order while domination fails.
Fixture bit_pair_instance();

struct BitPairReport {
  bool ok = false;
  bool condition_a_holds_both_sections = false;
  bool condition_b_holds_both_sections = false;
  bool domination_fails = false;
  std::string detail;
};
BitPairReport verify_bit_pair();

// Random search for an instance where the pushdown of mu EQUALS every
// section marginal of rho and domination still fails. Any hit is re-verified
// exactly before being reported. Returns nullopt when nothing is found.
struct SearchBounds {
  int max_columns = 3;
  int max_fibre = 3;
  int label_bound = 1;
  int max_support = 4;
};
struct FoundInstance {
  FiniteMeasure mu;
  FiniteMeasure rho;
  FibreMap pm;
};
std::optional<FoundInstance> counterexample_search(const SearchBounds& bounds, int trials,
                                                   uint64_t seed);

}  // namespace stodom::fixtures
