#pragma once

#include <string>
#include <vector>

#include "perco/graph.hpp"

namespace stodom::aug {

using perco::Graph;

// Edge subdivision: a fresh midpoint vertex in the middle of every edge.
// Original vertices keep their ids; the midpoint of edge e gets id V + e.
struct Subdivision {
  Graph graph;
  int original_vertices = 0;
  // Σ-edge ids of the two halves of each original edge, indexed by original
  // edge id: half toward the smaller endpoint first.
  std::vector<std::pair<int, int>> halves;
};
Subdivision subdivide(const Graph& g);

// Greedy maximal d-separated vertex set in ascending vertex order: pairwise
// distance >= d, and no further vertex can be added.
std::vector<int> maximal_separated(const Graph& g, int d);

// Cells over the subdivided graph: Voronoi pre-cells of a maximal
// (2 r0 + 1)-separated centre set (ties toward the smaller centre index),
// each cell being its pre-cell plus the midpoints of all touching edges.
// The cell edge sets partition the subdivided graph's edges; interiors are
// connected; balls nest as B(centre, r) inside the interior and the cell
// inside B(centre, R) with r = 2 r0, R = 4 r0 + 1.
struct CellDecomposition {
  Graph original;   // the graph before subdivision
  Graph base;       // the subdivided graph everything below refers to
  int r0 = 0;
  int r = 0;
  int R = 0;
  std::vector<int> centres;                     // original vertex ids
  std::vector<int> precell_of_vertex;           // original vertex -> centre index
  std::vector<std::vector<int>> cells;          // base vertices per cell, sorted
  std::vector<std::vector<int>> interiors;      // sorted
  std::vector<std::vector<int>> boundaries;     // sorted
  std::vector<std::vector<int>> cell_edges;     // base edge ids per cell
  std::vector<std::vector<int>> interior_edges; // base edges inside the interior
  std::vector<int> cell_of_edge;                // base edge id -> cell index
  std::vector<bool> is_boundary_vertex;         // over base vertices

  // Cells of which v is a boundary vertex, ascending.
  std::vector<int> cells_at_boundary_vertex(int v) const;

  std::string to_json() const;
};

CellDecomposition build_cells(const Graph& g0, int r0);

// Checks every stated invariant; returns human-readable violations (empty
// means the decomposition is sound). `clipped_whitelist` lists cells whose
// radius inclusions may be relaxed at the global boundary of a finite
// fixture; the partition and connectivity invariants are never relaxed.
std::vector<std::string> audit_cells(const CellDecomposition& cd,
                                     const std::vector<int>& clipped_whitelist = {});

}  // namespace stodom::aug
