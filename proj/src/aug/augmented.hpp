#pragma once

#include <set>

#include "aug/cells.hpp"
#include "core/domination.hpp"
#include "perco/reach.hpp"

namespace stodom::aug {

// A partition of one cell's boundary vertex list in canonical form:
// class ids in order of first occurrence. The order on partitions is
// refinement: a <= b iff every a-class is contained in a b-class.
using BoundaryRelation = std::vector<int>;
bool relation_leq(const BoundaryRelation& a, const BoundaryRelation& b);

// Least set containing `roots` and closed under (1) growing along open
// edges and (2) absorbing a whole cell whose interior is fully open and
// whose bonus bit is set, once an open edge leads from a contained boundary
// vertex into the interior. Monotone in the sample, the bits and the roots.
std::set<int> augmented_cluster(const CellDecomposition& cd, const std::vector<bool>& open_edges,
                                const std::vector<bool>& cell_bits, const std::set<int>& roots);

// Boundary relation of one cell for a fixed sample restricted to the cell.
// plain: within-cell open connectivity of the boundary vertices.
// augmented: the plain relation, coarsened to the single full block when the
// bonus event holds (some open edge from `active` into the interior, all
// interior edges open, and the cell bit set).
enum class RelationVariant { plain, augmented };
BoundaryRelation boundary_relation(const CellDecomposition& cd, int cell,
                                   const std::vector<bool>& open_edges, bool cell_bit,
                                   const std::set<int>& active, RelationVariant variant);

// Exact law of a cell's boundary relation, with every edge configuration of
// the cell enumerated once and cached in count profiles, so laws at many
// parameters reuse one enumeration.
struct RelationLaw {
  std::vector<BoundaryRelation> atoms;
  std::vector<Rational> weights;
};

class CellTable {
 public:
  // Enumerates the 2^k configurations of the cell's edges (SizeError above
  // 2^cap_bits) and buckets them by (relation, open count, interior fully
  // open, which boundary vertices have an open entry edge).
  CellTable(const CellDecomposition& cd, int cell, int cap_bits = 20);

  int cell() const { return cell_; }
  int boundary_size() const { return static_cast<int>(boundary_.size()); }
  const std::vector<int>& boundary() const { return boundary_; }

  // Bitmask over the boundary list for a vertex subset.
  uint32_t boundary_mask(const std::set<int>& vertices) const;

  RelationLaw plain_law(const Rational& p) const;
  // active_mask indexes the boundary list; it must be nonempty.
  RelationLaw augmented_law(const Rational& p, const Rational& s, uint32_t active_mask) const;

 private:
  int cell_;
  int edge_count_;
  std::vector<int> boundary_;
  std::vector<BoundaryRelation> atoms_;
  int full_atom_;  // id of the single-block partition
  struct Profile {
    int rel;
    int open_count;
    bool interior_open;
    uint32_t entry_mask;
    unsigned long long count;
  };
  std::vector<Profile> profiles_;
};

// Stochastic domination of relation laws under the refinement order,
// decided by the exact flow certificate machinery.
bool relation_dominates(const RelationLaw& d1, const RelationLaw& d2);

// Largest bump delta, certified on a rational grid, such that the plain law
// at p + delta is still dominated by the augmented law at (p, s). Scans in
// `resolution` steps and then bisects below one step (the true threshold is
// often smaller than any coarse grid step), down to resolution / 2^20.
// The returned value is always certified by an exact domination check;
// 0 is returned when even the finest probe fails.
Rational max_delta(const CellTable& table, const Rational& p, const Rational& s,
                   uint32_t active_mask, const Rational& resolution = Rational(1, 64));

// Cell-by-cell exploration of the boundary-vertex cluster of v0. The plain
// variant returns exactly the open cluster of v0 intersected with the
// boundary vertices. The augmented variant evaluates each cell's bonus event
// against the cluster AS IT WAS when the cell was revealed; the boolean is
// frozen and never updated, so the result is in general a strict subset of
// the true augmented cluster's boundary trace.
std::set<int> explore(const CellDecomposition& cd, int v0, const std::vector<bool>& open_edges,
                      const std::vector<bool>& cell_bits, RelationVariant variant);

// Bonus rate implied by the exploration constants: p^(M + c) with
// M = maxdeg(base)^R.
Rational bonus_rate(const Rational& p, unsigned long long m, unsigned long long c);

}  // namespace stodom::aug
