#pragma once

#include "core/rational.hpp"
#include "perco/sampling.hpp"

namespace stodom::perco {

// The reach event is the finite-volume proxy for the percolation function:
// the probe vertex connects, inside its closed ball, to some vertex at graph
// distance >= radius. Any open walk that ever gets that far away crosses the
// distance-radius sphere while still inside the ball, so restricting to the
// ball loses nothing.

struct Ball {
  std::vector<int> verts;       // closed ball, sorted by vertex id
  std::vector<int> sphere;      // vertices at distance exactly radius
  std::vector<int> edge_ids;    // edges with both endpoints in the ball
  std::vector<bool> in_ball;    // membership, indexed by vertex id
};
Ball build_ball(const Graph& g, int v, int radius);

// Exact reach probability by enumeration over the ball's free objects (edges
// in bond mode; vertices other than the probe in site mode, with the probe's
// own openness factored in). Throws SizeError when the free-object count
// exceeds `cap`.
Rational reach_exact(const Graph& g, Mode mode, const Rational& p, int v, int radius,
                     int cap = 24);

// The p-independent part of the exact computation: event configurations
// counted by number of open objects. One enumeration serves a whole p-grid.
struct ReachCounts {
  Mode mode = Mode::bond;
  int free_objects = 0;
  bool sphere_empty = false;
  int radius = 0;
  std::vector<unsigned long long> by_open_count;
};
ReachCounts reach_counts(const Graph& g, Mode mode, int v, int radius, int cap = 24);
Rational reach_eval(const ReachCounts& counts, const Rational& p);

struct MCEstimate {
  double mean = 0;
  double standard_error = 0;  // sample sd / sqrt(trials)
  long trials = 0;
  uint64_t seed = 0;
};

MCEstimate reach_mc(const Graph& g, Mode mode, double p, int v, int radius, long trials,
                    uint64_t seed, int jobs = 1);

// Reach indicator for one sample (used for coupled comparisons).
bool reach_sample(const Graph& g, const Ball& ball, const PercSample& sample, int v);

// Exact count of self-avoiding paths of the given edge length starting at v.
// Guarded: throws SizeError when length exceeds `cap`.
long long saw_count(const Graph& g, int v, int length, int cap = 20);

// Bisection on p of the Monte Carlo reach estimate against threshold 1/2.
// An explicitly labelled finite-size proxy for the critical parameter, not a
// rigorous value. Returns [lo, hi] with hi - lo <= tolerance.
std::pair<double, double> estimate_pc(const Graph& g, Mode mode, int v, int radius, long trials,
                                      uint64_t seed, double tolerance, int jobs = 1);

}  // namespace stodom::perco
