#include "perco/reach.hpp"

#include <cmath>
#include <deque>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace stodom::perco {

Ball build_ball(const Graph& g, int v, int radius) {
  if (v < 0 || v >= g.vertex_count()) throw InputError("probe vertex out of range");
  if (radius < 0) throw InputError("negative radius");
  std::vector<int> dist = g.distances_from(v);
  Ball ball;
  ball.in_ball.assign(static_cast<size_t>(g.vertex_count()), false);
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (dist[static_cast<size_t>(u)] >= 0 && dist[static_cast<size_t>(u)] <= radius) {
      ball.verts.push_back(u);
      ball.in_ball[static_cast<size_t>(u)] = true;
      if (dist[static_cast<size_t>(u)] == radius) ball.sphere.push_back(u);
    }
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [a, b] = g.edge(id);
    if (ball.in_ball[static_cast<size_t>(a)] && ball.in_ball[static_cast<size_t>(b)])
      ball.edge_ids.push_back(id);
  }
  return ball;
}

bool reach_sample(const Graph& g, const Ball& ball, const PercSample& sample, int v) {
  if (ball.sphere.empty()) return false;
  std::vector<bool> target(static_cast<size_t>(g.vertex_count()), false);
  for (int s : ball.sphere) target[static_cast<size_t>(s)] = true;
  if (sample.mode == Mode::site && !sample.open[static_cast<size_t>(v)]) return false;
  if (target[static_cast<size_t>(v)]) return true;
  std::vector<bool> seen(static_cast<size_t>(g.vertex_count()), false);
  std::deque<int> queue{v};
  seen[static_cast<size_t>(v)] = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbours(u)) {
      if (!ball.in_ball[static_cast<size_t>(w)] || seen[static_cast<size_t>(w)]) continue;
      bool passable = sample.mode == Mode::bond
                          ? sample.open[static_cast<size_t>(g.edge_id(u, w))]
                          : sample.open[static_cast<size_t>(w)];
      if (!passable) continue;
      if (target[static_cast<size_t>(w)]) return true;
      seen[static_cast<size_t>(w)] = true;
      queue.push_back(w);
    }
  }
  return false;
}

ReachCounts reach_counts(const Graph& g, Mode mode, int v, int radius, int cap) {
  Ball ball = build_ball(g, v, radius);
  ReachCounts out;
  out.mode = mode;
  out.radius = radius;
  if (radius == 0) return out;
  if (ball.sphere.empty()) {
    out.sphere_empty = true;
    return out;
  }

  // Free objects: ball edges, or ball vertices with the probe held open.
  std::vector<int> objects;
  if (mode == Mode::bond) {
    objects = ball.edge_ids;
  } else {
    for (int u : ball.verts)
      if (u != v) objects.push_back(u);
  }
  const int k = static_cast<int>(objects.size());
  if (k > cap)
    throw SizeError("exact reach needs " + std::to_string(k) + " objects, cap is " +
                    std::to_string(cap));

  std::vector<bool> target(static_cast<size_t>(g.vertex_count()), false);
  for (int s : ball.sphere) target[static_cast<size_t>(s)] = true;

  // Count event configurations by number of open objects; the probability is
  // then a short exact polynomial in p.
  std::vector<unsigned long long> counts(static_cast<size_t>(k) + 1, 0);
  std::vector<bool> open_edges, open_verts;
  std::vector<int> stack;
  std::vector<bool> seen(static_cast<size_t>(g.vertex_count()), false);
  for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
    if (mode == Mode::bond) {
      open_edges.assign(static_cast<size_t>(g.edge_count()), false);
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1u) open_edges[static_cast<size_t>(objects[static_cast<size_t>(i)])] = true;
    } else {
      open_verts.assign(static_cast<size_t>(g.vertex_count()), false);
      open_verts[static_cast<size_t>(v)] = true;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1u) open_verts[static_cast<size_t>(objects[static_cast<size_t>(i)])] = true;
    }
    std::fill(seen.begin(), seen.end(), false);
    stack.assign(1, v);
    seen[static_cast<size_t>(v)] = true;
    bool reached = target[static_cast<size_t>(v)];
    while (!stack.empty() && !reached) {
      int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbours(u)) {
        if (!ball.in_ball[static_cast<size_t>(w)] || seen[static_cast<size_t>(w)]) continue;
        bool passable = mode == Mode::bond
                            ? open_edges[static_cast<size_t>(g.edge_id(u, w))]
                            : open_verts[static_cast<size_t>(w)];
        if (!passable) continue;
        seen[static_cast<size_t>(w)] = true;
        if (target[static_cast<size_t>(w)]) {
          reached = true;
          break;
        }
        stack.push_back(w);
      }
    }
    if (reached) ++counts[static_cast<size_t>(__builtin_popcountll(mask))];
  }
  out.free_objects = k;
  out.by_open_count = std::move(counts);
  return out;
}

Rational reach_eval(const ReachCounts& counts, const Rational& p) {
  if (p < 0 || p > 1) throw InputError("percolation parameter outside [0,1]");
  if (counts.radius == 0) return counts.mode == Mode::bond ? Rational(1) : p;
  if (counts.sphere_empty) return Rational(0);
  const int k = counts.free_objects;
  Rational q = Rational(1) - p;
  Rational prob(0);
  for (int j = 0; j <= k; ++j) {
    if (counts.by_open_count[static_cast<size_t>(j)] == 0) continue;
    Rational term(static_cast<unsigned long>(counts.by_open_count[static_cast<size_t>(j)]));
    term *= rational_pow(p, static_cast<unsigned>(j));
    term *= rational_pow(q, static_cast<unsigned>(k - j));
    prob += term;
  }
  if (counts.mode == Mode::site) prob *= p;  // the probe itself must be open
  return prob;
}

Rational reach_exact(const Graph& g, Mode mode, const Rational& p, int v, int radius, int cap) {
  return reach_eval(reach_counts(g, mode, v, radius, cap), p);
}

MCEstimate reach_mc(const Graph& g, Mode mode, double p, int v, int radius, long trials,
                    uint64_t seed, int jobs) {
  if (trials <= 1) throw InputError("Monte Carlo needs at least 2 trials");
  Ball ball = build_ball(g, v, radius);
  std::vector<uint8_t> hit(static_cast<size_t>(trials), 0);
  parallel_for(static_cast<int>(trials), jobs, [&](int t) {
    // Sample only the ball objects, addressed by their global ids so that
    // shared (seed, draw) couples with full-graph samples.
    PercSample sample;
    sample.mode = mode;
    sample.p = p;
    sample.seed = seed;
    sample.draw = static_cast<uint64_t>(t);
    sample.open.assign(
        static_cast<size_t>(mode == Mode::bond ? g.edge_count() : g.vertex_count()), false);
    if (mode == Mode::bond) {
      for (int id : ball.edge_ids)
        sample.open[static_cast<size_t>(id)] =
            counter_unit(seed, static_cast<uint64_t>(t), static_cast<uint64_t>(id)) < p;
    } else {
      for (int u : ball.verts)
        sample.open[static_cast<size_t>(u)] =
            counter_unit(seed, static_cast<uint64_t>(t), static_cast<uint64_t>(u)) < p;
    }
    hit[static_cast<size_t>(t)] = reach_sample(g, ball, sample, v) ? 1 : 0;
  });
  long successes = 0;
  for (uint8_t h : hit) successes += h;
  MCEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.mean = static_cast<double>(successes) / static_cast<double>(trials);
  double n = static_cast<double>(trials);
  double var = est.mean * (1.0 - est.mean) * n / (n - 1.0);
  est.standard_error = std::sqrt(var / n);
  return est;
}

namespace {
long long saw_dfs(const Graph& g, int u, int remaining, std::vector<bool>& visited) {
  if (remaining == 0) return 1;
  long long total = 0;
  for (int w : g.neighbours(u)) {
    if (visited[static_cast<size_t>(w)]) continue;
    visited[static_cast<size_t>(w)] = true;
    total += saw_dfs(g, w, remaining - 1, visited);
    visited[static_cast<size_t>(w)] = false;
  }
  return total;
}
}  // namespace

long long saw_count(const Graph& g, int v, int length, int cap) {
  if (v < 0 || v >= g.vertex_count()) throw InputError("start vertex out of range");
  if (length < 0) throw InputError("negative path length");
  if (length > cap)
    throw SizeError("self-avoiding path length " + std::to_string(length) + " exceeds cap " +
                    std::to_string(cap));
  std::vector<bool> visited(static_cast<size_t>(g.vertex_count()), false);
  visited[static_cast<size_t>(v)] = true;
  return saw_dfs(g, v, length, visited);
}

std::pair<double, double> estimate_pc(const Graph& g, Mode mode, int v, int radius, long trials,
                                      uint64_t seed, double tolerance, int jobs) {
  if (tolerance <= 0) throw InputError("tolerance must be positive");
  double lo = 0.0, hi = 1.0;
  int iter = 0;
  while (hi - lo > tolerance) {
    double mid = (lo + hi) / 2;
    MCEstimate est =
        reach_mc(g, mode, mid, v, radius, trials, seed + 1000003ULL * static_cast<uint64_t>(iter),
                 jobs);
    if (est.mean >= 0.5)
      hi = mid;
    else
      lo = mid;
    ++iter;
  }
  return {lo, hi};
}

}  // namespace stodom::perco
