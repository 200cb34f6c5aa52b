#pragma once

#include "perco/graph.hpp"

namespace stodom::perco {

// Named large/small fixture pairs for the reach-probability comparisons.
// Each carries a probe vertex on the large side; the small-side probe is its
// image. All maps are fibrations and are 1-Lipschitz on edges (large edges
// project to small edges or collapse), so reach at any radius transfers.
struct FixturePair {
  std::string name;
  VertexMap vm;
  int probe;  // vertex of the large graph
};

// Double cover of a cycle with a pendant path attached at one vertex of the
// small graph (two lifted copies on the large side).
FixturePair cycle_cover_pair(int small_cycle, int pendant_len);

// Two floors over a box: grid x K2 projecting onto the grid.
FixturePair two_floor_pair(int w, int h);

// Coordinate projection from a 3d box onto its base 2d box.
FixturePair box3d_pair(int w, int h, int d);

// Unrolled double cover of a 2d torus: torus (2w x h) -> torus (w x h).
FixturePair torus_cover_pair(int w, int h);

FixturePair fixture_pair_by_name(const std::string& name);

}  // namespace stodom::perco
