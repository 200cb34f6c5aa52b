#include <doctest.h>

#include <random>

#include "aug/augmented.hpp"
#include "core/errors.hpp"
#include "perco/sampling.hpp"

using namespace stodom;
using namespace stodom::aug;
using perco::Graph;
using perco::Mode;

namespace {

// Two vertices joined by three disjoint length-3 paths; its decomposition
// has two cells sharing all three boundary midpoints.
Graph theta_graph() {
  return Graph(8, {{0, 2}, {2, 3}, {3, 1}, {0, 4}, {4, 5}, {5, 1}, {0, 6}, {6, 7}, {7, 1}});
}

std::vector<bool> all_edges(const Graph& g, bool value) {
  return std::vector<bool>(static_cast<size_t>(g.edge_count()), value);
}

void set_edge(const CellDecomposition& cd, std::vector<bool>& open, int u, int v, bool val) {
  int id = cd.base.edge_id(u, v);
  REQUIRE(id >= 0);
  open[static_cast<size_t>(id)] = val;
}

}  // namespace

TEST_CASE("subdivide") {
  Graph k2 = Graph::path(2);
  Subdivision s = subdivide(k2);
  CHECK(s.graph.vertex_count() == 3);
  CHECK(s.graph.edge_count() == 2);
  Subdivision c3 = subdivide(Graph::cycle(3));
  CHECK(c3.graph.vertex_count() == 6);
  CHECK(c3.graph.edge_count() == 6);
  Graph g = Graph::grid2(3, 3);
  Subdivision sg = subdivide(g);
  CHECK(sg.graph.vertex_count() == g.vertex_count() + g.edge_count());
  CHECK(sg.graph.edge_count() == 2 * g.edge_count());
}

TEST_CASE("maximal_separated") {
  SUBCASE("pinned greedy trace on the 5-path") {
    CHECK(maximal_separated(Graph::path(5), 3) == std::vector<int>{0, 3});
  }
  SUBCASE("distance one keeps everything") {
    CHECK(maximal_separated(Graph::cycle(5), 1).size() == 5);
  }
  SUBCASE("separation and maximality on assorted graphs") {
    for (const auto& spec : {"cycle:9", "grid:4x4", "ladder:5", "path:11"}) {
      Graph g = perco::graph_from_spec(spec);
      for (int d = 2; d <= 4; ++d) {
        std::vector<int> chosen = maximal_separated(g, d);
        for (size_t i = 0; i < chosen.size(); ++i) {
          std::vector<int> dist = g.distances_from(chosen[i]);
          for (size_t j = i + 1; j < chosen.size(); ++j)
            CHECK(dist[static_cast<size_t>(chosen[j])] >= d);
        }
        for (int v = 0; v < g.vertex_count(); ++v) {
          bool near = false;
          for (int c : chosen)
            if (g.distances_from(c)[static_cast<size_t>(v)] <= d - 1) near = true;
          bool in = std::find(chosen.begin(), chosen.end(), v) != chosen.end();
          CHECK((in || near));
        }
      }
    }
  }
}

TEST_CASE("build_cells") {
  SUBCASE("four cells on the 4x4 patch, edge partition included") {
    CellDecomposition cd = build_cells(Graph::grid2(4, 4), 1);
    CHECK(cd.centres.size() == 4);
    CHECK(audit_cells(cd).empty());
    int covered = 0;
    for (const auto& edges : cd.cell_edges) covered += static_cast<int>(edges.size());
    CHECK(covered == cd.base.edge_count());
  }
  SUBCASE("single vertex graph yields one cell with no edges") {
    CellDecomposition cd = build_cells(Graph(1, {}), 1);
    CHECK(cd.centres == std::vector<int>{0});
    CHECK(cd.cell_edges[0].empty());
  }
  SUBCASE("invariants audit on assorted graphs") {
    for (const auto& spec : {"cycle:8", "cycle:12", "grid:4x4", "grid:5x5", "ladder:6",
                             "torus:6x6", "path:9"}) {
      CellDecomposition cd = build_cells(perco::graph_from_spec(spec), 1);
      CHECK_MESSAGE(audit_cells(cd).empty(), spec);
    }
    CellDecomposition cd2 = build_cells(perco::graph_from_spec("grid:7x7"), 2);
    CHECK(audit_cells(cd2).empty());
  }
}

TEST_CASE("augmented_cluster") {
  CellDecomposition cd = build_cells(Graph::cycle(8), 1);
  SUBCASE("no bonus bits reduces to the ordinary cluster") {
    for (uint64_t draw = 0; draw < 200; ++draw) {
      perco::PercSample s =
          perco::sample_percolation(cd.base, Mode::bond, 0.5, 77, draw);
      std::set<int> aug =
          augmented_cluster(cd, s.open, std::vector<bool>(cd.cells.size(), false), {10});
      std::vector<int> plain = perco::cluster_of(cd.base, s, 10);
      CHECK(aug == std::set<int>(plain.begin(), plain.end()));
    }
  }
  SUBCASE("everything open absorbs the component regardless of bits") {
    std::set<int> aug = augmented_cluster(cd, all_edges(cd.base, true),
                                          std::vector<bool>(cd.cells.size(), false), {10});
    CHECK(aug.size() == static_cast<size_t>(cd.base.vertex_count()));
  }
  SUBCASE("one-way absorption through an open interior") {
    // Interior of cell 0 fully open with its bit set; entry open only at
    // boundary vertex 10. From 10 the whole cell is absorbed; from 14 with
    // every edge at 14 closed, nothing grows.
    std::vector<bool> open = all_edges(cd.base, false);
    for (int id : cd.interior_edges[0]) open[static_cast<size_t>(id)] = true;
    set_edge(cd, open, 1, 10, true);
    std::vector<bool> bits{true, false};
    std::set<int> from10 = augmented_cluster(cd, open, bits, {10});
    CHECK(from10.count(14) == 1);  // whole cell, including the far boundary
    std::set<int> from14 = augmented_cluster(cd, open, bits, {14});
    CHECK(from14 == std::set<int>{14});
  }
  SUBCASE("monotone in sample, bits and roots") {
    std::mt19937_64 rng(15);
    CellDecomposition grid = build_cells(Graph::grid2(4, 4), 1);
    for (int trial = 0; trial < 60; ++trial) {
      perco::PercSample s = perco::sample_percolation(grid.base, Mode::bond, 0.4, 5,
                                                      static_cast<uint64_t>(trial));
      std::vector<bool> bits(grid.cells.size());
      for (size_t k = 0; k < bits.size(); ++k) bits[k] = rng() & 1;
      int v0 = -1;
      for (int v = 0; v < grid.base.vertex_count() && v0 < 0; ++v)
        if (grid.is_boundary_vertex[static_cast<size_t>(v)]) v0 = v;
      std::set<int> base_cluster = augmented_cluster(grid, s.open, bits, {v0});

      std::vector<bool> more_open = s.open;
      std::uniform_int_distribution<int> edge(0, grid.base.edge_count() - 1);
      for (int i = 0; i < 5; ++i) more_open[static_cast<size_t>(edge(rng))] = true;
      std::vector<bool> more_bits(grid.cells.size(), true);
      std::set<int> bigger = augmented_cluster(grid, more_open, more_bits, {v0});
      CHECK(std::includes(bigger.begin(), bigger.end(), base_cluster.begin(),
                          base_cluster.end()));
    }
  }
}

TEST_CASE("boundary relations and their laws") {
  CellDecomposition cd = build_cells(Graph::cycle(8), 1);
  // Cell 0 is a path of 8 edges between boundary midpoints 10 and 14.
  REQUIRE(cd.boundaries[0] == std::vector<int>{10, 14});
  CellTable table(cd, 0);

  SUBCASE("degenerate parameters") {
    RelationLaw closed = table.plain_law(Rational(0));
    CHECK(closed.atoms.size() == 1);
    CHECK(closed.atoms[0] == BoundaryRelation{0, 1});  // discrete
    RelationLaw open = table.plain_law(Rational(1));
    CHECK(open.atoms.size() == 1);
    CHECK(open.atoms[0] == BoundaryRelation{0, 0});  // joined
  }
  SUBCASE("path cell closed form") {
    Rational p = rat(2, 3);
    RelationLaw law = table.plain_law(p);
    for (size_t i = 0; i < law.atoms.size(); ++i) {
      if (law.atoms[i] == BoundaryRelation{0, 0})
        CHECK(law.weights[i] == rational_pow(p, 8));
      else
        CHECK(law.weights[i] == Rational(1) - rational_pow(p, 8));
    }
    Rational s = rat(1, 4);
    RelationLaw aug_law = table.augmented_law(p, s, table.boundary_mask({10}));
    for (size_t i = 0; i < aug_law.atoms.size(); ++i) {
      if (aug_law.atoms[i] == BoundaryRelation{0, 0})
        CHECK(aug_law.weights[i] ==
              rational_pow(p, 8) + s * rational_pow(p, 7) * (Rational(1) - p));
    }
  }
  SUBCASE("table agrees with direct per-sample relations") {
    // Brute-force oracle: enumerate the cell's configurations and aggregate
    // boundary_relation() outputs directly.
    const auto& edge_ids = cd.cell_edges[0];
    Rational p = rat(1, 3), s = rat(1, 2);
    std::map<BoundaryRelation, Rational> plain_direct, aug_direct;
    for (uint32_t mask = 0; mask < (uint32_t(1) << edge_ids.size()); ++mask) {
      std::vector<bool> open = all_edges(cd.base, false);
      int bits = 0;
      for (size_t i = 0; i < edge_ids.size(); ++i)
        if (mask >> i & 1u) {
          open[static_cast<size_t>(edge_ids[i])] = true;
          ++bits;
        }
      Rational weight = rational_pow(p, static_cast<unsigned>(bits)) *
                        rational_pow(Rational(1) - p,
                                     static_cast<unsigned>(edge_ids.size()) - bits);
      plain_direct[boundary_relation(cd, 0, open, false, {10}, RelationVariant::plain)] +=
          weight;
      aug_direct[boundary_relation(cd, 0, open, true, {10}, RelationVariant::augmented)] +=
          weight * s;
      aug_direct[boundary_relation(cd, 0, open, false, {10}, RelationVariant::augmented)] +=
          weight * (Rational(1) - s);
    }
    RelationLaw plain = table.plain_law(p);
    for (size_t i = 0; i < plain.atoms.size(); ++i)
      CHECK(plain_direct[plain.atoms[i]] == plain.weights[i]);
    RelationLaw aug_law = table.augmented_law(p, s, table.boundary_mask({10}));
    for (size_t i = 0; i < aug_law.atoms.size(); ++i)
      CHECK(aug_direct[aug_law.atoms[i]] == aug_law.weights[i]);
  }
  SUBCASE("no open edges gives the discrete relation") {
    BoundaryRelation rel = boundary_relation(cd, 0, all_edges(cd.base, false), false, {10},
                                             RelationVariant::plain);
    CHECK(rel == BoundaryRelation{0, 1});
  }
  SUBCASE("bonus event coarsens to a single block") {
    std::vector<bool> open = all_edges(cd.base, false);
    for (int id : cd.interior_edges[0]) open[static_cast<size_t>(id)] = true;
    set_edge(cd, open, 1, 10, true);
    BoundaryRelation rel =
        boundary_relation(cd, 0, open, true, {10}, RelationVariant::augmented);
    CHECK(rel == BoundaryRelation{0, 0});
    // Without the bit, the plain relation stays discrete (the far entry edge
    // is closed).
    CHECK(boundary_relation(cd, 0, open, false, {10}, RelationVariant::augmented) ==
          BoundaryRelation{0, 1});
  }
}

TEST_CASE("relation domination and the bump threshold") {
  CellDecomposition cd = build_cells(Graph::cycle(8), 1);
  CellTable table(cd, 0);
  uint32_t active = table.boundary_mask({10});

  SUBCASE("reflexive") {
    RelationLaw law = table.plain_law(rat(1, 2));
    CHECK(relation_dominates(law, law));
  }
  SUBCASE("zero bump always dominated") {
    for (const auto& p : {rat(1, 4), rat(1, 2), rat(3, 4)}) {
      for (const auto& s : {Rational(0), rat(1, 2), Rational(1)}) {
        if (s == 0) {
          CHECK(relation_dominates(table.plain_law(p), table.plain_law(p)));
        } else {
          CHECK(relation_dominates(table.plain_law(p), table.augmented_law(p, s, active)));
        }
      }
    }
  }
  SUBCASE("threshold positive when the bonus is active, zero when it is off") {
    Rational d = max_delta(table, rat(1, 2), Rational(1), active);
    CHECK(d > 0);
    // With s = 0 the augmented law IS the plain law, and any positive bump
    // pushes above it.
    RelationLaw plain = table.plain_law(rat(1, 2));
    CHECK(relation_dominates(plain, plain));
    CHECK_FALSE(relation_dominates(table.plain_law(rat(1, 2) + rat(1, 64)), plain));
  }
  SUBCASE("certified value really is feasible and near-maximal") {
    Rational p = rat(1, 2), s = rat(1, 4);
    Rational d = max_delta(table, p, s, active);
    CHECK(d > 0);
    CHECK(relation_dominates(table.plain_law(p + d), table.augmented_law(p, s, active)));
    CHECK_FALSE(relation_dominates(table.plain_law(p + d + rat(1, 64)),
                                   table.augmented_law(p, s, active)));
  }
}

TEST_CASE("exploration") {
  CellDecomposition cd = build_cells(Graph::grid2(4, 4), 1);
  int v0 = -1;
  for (int v = 0; v < cd.base.vertex_count() && v0 < 0; ++v)
    if (cd.is_boundary_vertex[static_cast<size_t>(v)]) v0 = v;

  SUBCASE("everything closed stays at the start") {
    std::set<int> out = explore(cd, v0, all_edges(cd.base, false),
                                std::vector<bool>(cd.cells.size(), false),
                                RelationVariant::plain);
    CHECK(out == std::set<int>{v0});
  }
  SUBCASE("plain variant equals the true cluster's boundary trace") {
    for (uint64_t draw = 0; draw < 300; ++draw) {
      perco::PercSample s = perco::sample_percolation(cd.base, Mode::bond, 0.55, 4242, draw);
      std::set<int> explored = explore(cd, v0, s.open,
                                       std::vector<bool>(cd.cells.size(), false),
                                       RelationVariant::plain);
      std::set<int> expected;
      for (int u : perco::cluster_of(cd.base, s, v0))
        if (cd.is_boundary_vertex[static_cast<size_t>(u)]) expected.insert(u);
      CHECK(explored == expected);
    }
  }
  SUBCASE("augmented variant stays inside the true augmented trace") {
    for (uint64_t draw = 0; draw < 300; ++draw) {
      perco::PercSample s = perco::sample_percolation(cd.base, Mode::bond, 0.5, 999, draw);
      std::vector<bool> bits(cd.cells.size());
      for (size_t k = 0; k < bits.size(); ++k)
        bits[k] = perco::counter_unit(999, draw, 1000 + k) < 0.5;
      std::set<int> explored = explore(cd, v0, s.open, bits, RelationVariant::augmented);
      std::set<int> full = augmented_cluster(cd, s.open, bits, {v0});
      for (int u : explored) CHECK(full.count(u) == 1);
    }
  }
  SUBCASE("starting off the boundary is an input error") {
    CHECK_THROWS_AS(explore(cd, cd.centres[0], all_edges(cd.base, false),
                            std::vector<bool>(cd.cells.size(), false),
                            RelationVariant::plain),
                    InputError);
  }
}

TEST_CASE("bonus booleans are frozen at reveal time") {
  // Theta graph: two cells sharing three boundary midpoints (14, 15, 16).
  CellDecomposition cd = build_cells(theta_graph(), 1);
  REQUIRE(cd.centres == std::vector<int>{0, 1});
  REQUIRE(cd.boundaries[0] == std::vector<int>{14, 15, 16});
  REQUIRE(cd.boundaries[1] == std::vector<int>{14, 15, 16});

  std::vector<bool> open = all_edges(cd.base, false);
  // Cell 0 (around vertex 0): interior fully open, bit set; entries open
  // only at boundary vertex 15.
  for (int id : cd.interior_edges[0]) open[static_cast<size_t>(id)] = true;
  set_edge(cd, open, 2, 14, false);
  set_edge(cd, open, 4, 15, true);
  set_edge(cd, open, 6, 16, false);
  // Cell 1 (around vertex 1): an open path joining 14 to 15 only.
  set_edge(cd, open, 3, 14, true);
  set_edge(cd, open, 3, 11, true);
  set_edge(cd, open, 1, 11, true);
  set_edge(cd, open, 1, 12, true);
  set_edge(cd, open, 5, 12, true);
  set_edge(cd, open, 5, 15, true);
  std::vector<bool> bits{true, false};

  // Cell 0 is revealed first, while the cluster is still {14}: no open entry
  // from 14, so its frozen relation is discrete. The cluster then reaches 15
  // through cell 1, but cell 0 is never re-evaluated, so 16 stays out.
  std::set<int> explored = explore(cd, 14, open, bits, RelationVariant::augmented);
  CHECK(explored == std::set<int>{14, 15});

  // The true augmented cluster does absorb cell 0 once 15 is reached.
  std::set<int> full = augmented_cluster(cd, open, bits, {14});
  CHECK(full.count(16) == 1);
}

TEST_CASE("bonus rate formula") {
  CHECK(bonus_rate(rat(1, 2), 16, 4) == rat(1, 1 << 20));
}
