#include "perco/sampling.hpp"

#include <deque>

#include "core/errors.hpp"

namespace stodom::perco {

namespace {

// splitmix64 finalizer.
uint64_t mix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t counter_u64(uint64_t seed, uint64_t draw, uint64_t index) {
  return mix(mix(mix(seed) ^ draw) ^ index);
}

double counter_unit(uint64_t seed, uint64_t draw, uint64_t index) {
  return static_cast<double>(counter_u64(seed, draw, index) >> 11) * 0x1.0p-53;
}

PercSample sample_percolation(const Graph& g, Mode mode, double p, uint64_t seed, uint64_t draw) {
  if (p < 0 || p > 1) throw InputError("percolation parameter outside [0,1]");
  int count = mode == Mode::bond ? g.edge_count() : g.vertex_count();
  PercSample sample{mode, std::vector<bool>(static_cast<size_t>(count)), p, seed, draw};
  for (int i = 0; i < count; ++i)
    sample.open[static_cast<size_t>(i)] = counter_unit(seed, draw, static_cast<uint64_t>(i)) < p;
  return sample;
}

std::vector<int> cluster_of(const Graph& g, const PercSample& sample, int v) {
  if (v < 0 || v >= g.vertex_count()) throw InputError("cluster root out of range");
  size_t want = static_cast<size_t>(sample.mode == Mode::bond ? g.edge_count() : g.vertex_count());
  if (sample.open.size() != want) throw InputError("sample does not match the graph");

  std::vector<bool> in(static_cast<size_t>(g.vertex_count()), false);
  if (sample.mode == Mode::site && !sample.open[static_cast<size_t>(v)]) return {};
  std::deque<int> queue{v};
  in[static_cast<size_t>(v)] = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbours(u)) {
      if (in[static_cast<size_t>(w)]) continue;
      bool passable = sample.mode == Mode::bond
                          ? sample.open[static_cast<size_t>(g.edge_id(u, w))]
                          : sample.open[static_cast<size_t>(w)];
      if (passable) {
        in[static_cast<size_t>(w)] = true;
        queue.push_back(w);
      }
    }
  }
  std::vector<int> cluster;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (in[static_cast<size_t>(u)]) cluster.push_back(u);
  return cluster;
}

PercSample fibre_selection_sample(const VertexMap& vm, uint64_t seed, uint64_t draw) {
  std::vector<std::vector<int>> fibres(static_cast<size_t>(vm.small.vertex_count()));
  for (int x = 0; x < vm.large.vertex_count(); ++x)
    fibres[static_cast<size_t>(vm.map[static_cast<size_t>(x)])].push_back(x);
  for (const auto& f : fibres)
    if (f.size() != 2) throw InputError("fibre selection requires all fibres of size 2");

  PercSample sample{Mode::site, std::vector<bool>(static_cast<size_t>(vm.large.vertex_count())),
                    0.5, seed, draw};
  for (size_t b = 0; b < fibres.size(); ++b) {
    bool first = counter_unit(seed, draw, static_cast<uint64_t>(b)) < 0.5;
    sample.open[static_cast<size_t>(fibres[b][first ? 0 : 1])] = true;
  }
  return sample;
}

}  // namespace stodom::perco
