#pragma once

#include <cstdint>
#include <vector>

#include "perco/graph.hpp"

namespace stodom::perco {

enum class Mode { bond, site };

// Counter-based randomness: every variate is a pure function of
// (seed, draw, object index), so parallel trials are order-independent and
// a sample is reproducible from its coordinates alone.
uint64_t counter_u64(uint64_t seed, uint64_t draw, uint64_t index);
// Uniform in [0, 1) with 53 random bits.
double counter_unit(uint64_t seed, uint64_t draw, uint64_t index);

struct PercSample {
  Mode mode = Mode::bond;
  std::vector<bool> open;  // indexed by edge id (bond) or vertex id (site)
  double p = 0;
  uint64_t seed = 0;
  uint64_t draw = 0;
};

PercSample sample_percolation(const Graph& g, Mode mode, double p, uint64_t seed, uint64_t draw);

// Open cluster of v. In site mode a closed v yields the empty set; in bond
// mode v always belongs to its cluster. Returned sorted.
std::vector<int> cluster_of(const Graph& g, const PercSample& sample, int v);

// One uniformly chosen open vertex per fibre, independent across fibres.
// Every fibre of vm must have exactly two elements.
PercSample fibre_selection_sample(const VertexMap& vm, uint64_t seed, uint64_t draw);

}  // namespace stodom::perco
