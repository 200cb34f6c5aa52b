#include "aug/cells.hpp"

#include <algorithm>
#include <deque>
#include <nlohmann/json.hpp>
#include <set>

#include "core/errors.hpp"

namespace stodom::aug {

Subdivision subdivide(const Graph& g) {
  const int v = g.vertex_count();
  std::vector<std::pair<int, int>> edges;
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [a, b] = g.edge(id);
    edges.emplace_back(a, v + id);
    edges.emplace_back(v + id, b);
  }
  Subdivision out{Graph(v + g.edge_count(), std::move(edges)), v, {}};
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [a, b] = g.edge(id);
    out.halves.emplace_back(out.graph.edge_id(a, v + id), out.graph.edge_id(v + id, b));
  }
  return out;
}

std::vector<int> maximal_separated(const Graph& g, int d) {
  if (d < 1) throw InputError("separation distance must be >= 1");
  std::vector<bool> blocked(static_cast<size_t>(g.vertex_count()), false);
  std::vector<int> chosen;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (blocked[static_cast<size_t>(v)]) continue;
    chosen.push_back(v);
    // Block everything within distance d-1.
    std::vector<int> dist(static_cast<size_t>(g.vertex_count()), -1);
    std::deque<int> queue{v};
    dist[static_cast<size_t>(v)] = 0;
    blocked[static_cast<size_t>(v)] = true;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      if (dist[static_cast<size_t>(u)] == d - 1) continue;
      for (int w : g.neighbours(u)) {
        if (dist[static_cast<size_t>(w)] == -1) {
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
          blocked[static_cast<size_t>(w)] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return chosen;
}

CellDecomposition build_cells(const Graph& g0, int r0) {
  if (r0 < 1) throw InputError("cell radius parameter must be >= 1");
  Subdivision sub = subdivide(g0);
  CellDecomposition cd{g0,
                       sub.graph,
                       r0,
                       2 * r0,
                       4 * r0 + 1,
                       maximal_separated(g0, 2 * r0 + 1),
                       {},
                       {},
                       {},
                       {},
                       {},
                       {},
                       {},
                       {}};
  const int cells = static_cast<int>(cd.centres.size());

  // Voronoi pre-cells with ties toward the smaller centre index.
  std::vector<std::vector<int>> centre_dist;
  centre_dist.reserve(static_cast<size_t>(cells));
  for (int c : cd.centres) centre_dist.push_back(g0.distances_from(c));
  cd.precell_of_vertex.assign(static_cast<size_t>(g0.vertex_count()), -1);
  for (int v = 0; v < g0.vertex_count(); ++v) {
    int best = -1, best_dist = -1;
    for (int k = 0; k < cells; ++k) {
      int dist = centre_dist[static_cast<size_t>(k)][static_cast<size_t>(v)];
      if (dist < 0) continue;
      if (best == -1 || dist < best_dist) {
        best = k;
        best_dist = dist;
      }
    }
    if (best == -1) throw InputError("graph has a vertex unreachable from every centre");
    cd.precell_of_vertex[static_cast<size_t>(v)] = best;
  }

  cd.cells.assign(static_cast<size_t>(cells), {});
  cd.interiors.assign(static_cast<size_t>(cells), {});
  cd.boundaries.assign(static_cast<size_t>(cells), {});
  cd.cell_edges.assign(static_cast<size_t>(cells), {});
  cd.interior_edges.assign(static_cast<size_t>(cells), {});
  cd.cell_of_edge.assign(static_cast<size_t>(cd.base.edge_count()), -1);
  cd.is_boundary_vertex.assign(static_cast<size_t>(cd.base.vertex_count()), false);

  std::vector<std::set<int>> cell_verts(static_cast<size_t>(cells));
  for (int v = 0; v < g0.vertex_count(); ++v)
    cell_verts[static_cast<size_t>(cd.precell_of_vertex[static_cast<size_t>(v)])].insert(v);
  for (int e = 0; e < g0.edge_count(); ++e) {
    auto [a, b] = g0.edge(e);
    int mid = g0.vertex_count() + e;
    cell_verts[static_cast<size_t>(cd.precell_of_vertex[static_cast<size_t>(a)])].insert(mid);
    cell_verts[static_cast<size_t>(cd.precell_of_vertex[static_cast<size_t>(b)])].insert(mid);
  }

  for (int k = 0; k < cells; ++k) {
    cd.cells[static_cast<size_t>(k)].assign(cell_verts[static_cast<size_t>(k)].begin(),
                                            cell_verts[static_cast<size_t>(k)].end());
    for (int v : cd.cells[static_cast<size_t>(k)]) {
      bool boundary = false;
      for (int w : cd.base.neighbours(v))
        if (!cell_verts[static_cast<size_t>(k)].count(w)) boundary = true;
      if (boundary) {
        cd.boundaries[static_cast<size_t>(k)].push_back(v);
        cd.is_boundary_vertex[static_cast<size_t>(v)] = true;
      } else {
        cd.interiors[static_cast<size_t>(k)].push_back(v);
      }
    }
  }

  // Each base edge joins an original vertex to a midpoint; it belongs to the
  // cell of the original endpoint's pre-cell, which makes the cell edge sets
  // a partition.
  for (int id = 0; id < cd.base.edge_count(); ++id) {
    auto [x, y] = cd.base.edge(id);
    int original = x < g0.vertex_count() ? x : y;
    int cell = cd.precell_of_vertex[static_cast<size_t>(original)];
    cd.cell_of_edge[static_cast<size_t>(id)] = cell;
    cd.cell_edges[static_cast<size_t>(cell)].push_back(id);
  }
  for (int k = 0; k < cells; ++k) {
    std::set<int> interior(cd.interiors[static_cast<size_t>(k)].begin(),
                           cd.interiors[static_cast<size_t>(k)].end());
    for (int id : cd.cell_edges[static_cast<size_t>(k)]) {
      auto [x, y] = cd.base.edge(id);
      if (interior.count(x) && interior.count(y))
        cd.interior_edges[static_cast<size_t>(k)].push_back(id);
    }
  }

  std::vector<std::string> violations = audit_cells(cd);
  if (!violations.empty())
    throw InternalError("cell decomposition violates its invariants: " + violations.front());
  return cd;
}

std::vector<int> CellDecomposition::cells_at_boundary_vertex(int v) const {
  std::vector<int> out;
  for (size_t k = 0; k < boundaries.size(); ++k)
    if (std::binary_search(boundaries[k].begin(), boundaries[k].end(), v))
      out.push_back(static_cast<int>(k));
  return out;
}

std::string CellDecomposition::to_json() const {
  nlohmann::json j;
  j["r0"] = r0;
  j["r"] = r;
  j["R"] = R;
  j["centres"] = centres;
  j["precell_of_vertex"] = precell_of_vertex;
  j["cells"] = cells;
  j["interiors"] = interiors;
  j["boundaries"] = boundaries;
  j["cell_edges"] = cell_edges;
  return j.dump();
}

std::vector<std::string> audit_cells(const CellDecomposition& cd,
                                     const std::vector<int>& clipped_whitelist) {
  std::vector<std::string> violations;
  const int cells = static_cast<int>(cd.centres.size());
  auto whitelisted = [&](int k) {
    return std::find(clipped_whitelist.begin(), clipped_whitelist.end(), k) !=
           clipped_whitelist.end();
  };

  // Centres pairwise separated and the set maximal.
  std::vector<std::vector<int>> centre_dist;
  for (int c : cd.centres) centre_dist.push_back(cd.original.distances_from(c));
  for (int i = 0; i < cells; ++i)
    for (int j = i + 1; j < cells; ++j) {
      int d = centre_dist[static_cast<size_t>(i)][static_cast<size_t>(cd.centres[static_cast<size_t>(j)])];
      if (d >= 0 && d < 2 * cd.r0 + 1)
        violations.push_back("centres " + std::to_string(i) + "," + std::to_string(j) +
                             " too close");
    }
  for (int v = 0; v < cd.original.vertex_count(); ++v) {
    bool near = false;
    for (int k = 0; k < cells; ++k) {
      int d = centre_dist[static_cast<size_t>(k)][static_cast<size_t>(v)];
      if (d >= 0 && d <= 2 * cd.r0) near = true;
    }
    if (!near) violations.push_back("centre set not maximal at vertex " + std::to_string(v));
  }

  // Cell edge sets partition the base edges.
  std::vector<int> seen(static_cast<size_t>(cd.base.edge_count()), 0);
  for (int k = 0; k < cells; ++k)
    for (int id : cd.cell_edges[static_cast<size_t>(k)]) ++seen[static_cast<size_t>(id)];
  for (int id = 0; id < cd.base.edge_count(); ++id)
    if (seen[static_cast<size_t>(id)] != 1)
      violations.push_back("edge " + std::to_string(id) + " covered " +
                           std::to_string(seen[static_cast<size_t>(id)]) + " times");

  for (int k = 0; k < cells; ++k) {
    const auto& interior = cd.interiors[static_cast<size_t>(k)];
    if (interior.empty()) {
      violations.push_back("cell " + std::to_string(k) + " has empty interior");
      continue;
    }
    // Interior connected via interior edges.
    std::set<int> inside(interior.begin(), interior.end());
    std::set<int> component;
    std::deque<int> queue{interior.front()};
    component.insert(interior.front());
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int w : cd.base.neighbours(u)) {
        if (inside.count(w) && !component.count(w)) {
          component.insert(w);
          queue.push_back(w);
        }
      }
    }
    if (component.size() != inside.size())
      violations.push_back("cell " + std::to_string(k) + " interior disconnected");

    // Radius inclusions, unless explicitly whitelisted as clipped.
    if (!whitelisted(k)) {
      std::vector<int> base_dist = cd.base.distances_from(cd.centres[static_cast<size_t>(k)]);
      for (int v = 0; v < cd.base.vertex_count(); ++v) {
        int d = base_dist[static_cast<size_t>(v)];
        if (d >= 0 && d <= cd.r && !inside.count(v))
          violations.push_back("cell " + std::to_string(k) + " misses ball vertex " +
                               std::to_string(v));
      }
      for (int v : cd.cells[static_cast<size_t>(k)]) {
        int d = base_dist[static_cast<size_t>(v)];
        if (d < 0 || d > cd.R)
          violations.push_back("cell " + std::to_string(k) + " exceeds outer radius at " +
                               std::to_string(v));
      }
    }
  }
  return violations;
}

}  // namespace stodom::aug
