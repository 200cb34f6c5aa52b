#include <doctest.h>

#include <cmath>
#include <set>

#include "core/errors.hpp"
#include "perco/pairs.hpp"
#include "perco/reach.hpp"

using namespace stodom;
using namespace stodom::perco;

TEST_CASE("graph construction and text format") {
  Graph g = Graph::cycle(5);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 5);
  CHECK(g.edge_id(0, 4) >= 0);
  CHECK(g.edge_id(0, 2) == -1);
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), InputError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InputError);
  Graph back = Graph::parse_text(g.to_text());
  CHECK(back.edges() == g.edges());
  CHECK(graph_from_spec("grid:3x4").vertex_count() == 12);
  CHECK(graph_from_spec("product(path:2,cycle:3)").vertex_count() == 6);
  CHECK_THROWS_AS(graph_from_spec("blob:3"), InputError);
}

TEST_CASE("is_fibration") {
  SUBCASE("cycle double cover") {
    Graph large = Graph::cycle(6);
    Graph small = Graph::cycle(3);
    std::vector<int> map{0, 1, 2, 0, 1, 2};
    CHECK(is_fibration(VertexMap(large, small, map)).ok);
  }
  SUBCASE("box projection") {
    FixturePair pair = box3d_pair(4, 4, 3);
    CHECK(is_fibration(pair.vm).ok);
  }
  SUBCASE("path folded onto an edge misses a lift") {
    Graph large = Graph::path(3);
    Graph small = Graph::path(2);
    VertexMap vm(large, small, {0, 1, 0});
    FibrationCheck check = is_fibration(vm);
    CHECK(check.ok);  // both endpoints of the path lift everything
    // Removing the middle's right edge breaks it.
    Graph broken(3, {{0, 1}});
    // vertex 2 is isolated: its image's neighbours cannot be lifted.
    VertexMap vm2(broken, small, {0, 1, 0});
    FibrationCheck check2 = is_fibration(vm2);
    CHECK_FALSE(check2.ok);
    CHECK(check2.counterexample->first == 2);
  }
}

TEST_CASE("star transform") {
  SUBCASE("triangle is self-star") {
    Graph star = star_graph(Graph::cycle(3));
    CHECK(star.vertex_count() == 3);
    CHECK(star.edge_count() == 3);
  }
  SUBCASE("two-edge path becomes one edge") {
    Graph star = star_graph(Graph::path(3));
    CHECK(star.vertex_count() == 2);
    CHECK(star.edge_count() == 1);
  }
  SUBCASE("claw becomes a triangle") {
    Graph claw(4, {{0, 1}, {0, 2}, {0, 3}});
    Graph star = star_graph(claw);
    CHECK(star.vertex_count() == 3);
    CHECK(star.edge_count() == 3);
  }
  SUBCASE("induced map on the cycle cover is a fibration") {
    Graph large = Graph::cycle(6);
    Graph small = Graph::cycle(3);
    VertexMap vm(large, small, {0, 1, 2, 0, 1, 2});
    VertexMap star = star_graph_pi(vm);
    CHECK(is_fibration(star).ok);
    CHECK(star.large.vertex_count() == 6);  // every edge projects to an edge
  }
  SUBCASE("edges collapsing to a vertex are dropped") {
    FixturePair pair = two_floor_pair(3, 3);
    VertexMap star = star_graph_pi(pair.vm);
    // The vertical edges collapse, leaving twice the small edge count.
    CHECK(star.large.vertex_count() == 2 * pair.vm.small.edge_count());
    CHECK(is_fibration(star).ok);
  }
  SUBCASE("bond reach on a graph equals site reach on its star") {
    // On a path, an open bond path from the first edge corresponds exactly
    // to an open vertex path in the star graph.
    Graph g = Graph::path(5);
    Graph star = star_graph(g);
    Rational p = rat(2, 5);
    // Reach distance 3 from vertex 0 in g needs edges 0,1,2 open: p^3. In the
    // star graph, vertex 0 reaching distance 2 needs vertices 0,1,2 open:
    // p * p^2.
    CHECK(reach_exact(g, Mode::bond, p, 0, 3) == rational_pow(p, 3));
    CHECK(reach_exact(star, Mode::site, p, 0, 2) == rational_pow(p, 3));
  }
}

TEST_CASE("sample_percolation") {
  Graph g = Graph::grid2(50, 40);
  SUBCASE("degenerate parameters") {
    PercSample closed = sample_percolation(g, Mode::bond, 0.0, 7, 0);
    PercSample open = sample_percolation(g, Mode::bond, 1.0, 7, 0);
    CHECK(std::none_of(closed.open.begin(), closed.open.end(), [](bool b) { return b; }));
    CHECK(std::all_of(open.open.begin(), open.open.end(), [](bool b) { return b; }));
  }
  SUBCASE("reproducible and draw-sensitive") {
    PercSample a = sample_percolation(g, Mode::site, 0.4, 11, 3);
    PercSample b = sample_percolation(g, Mode::site, 0.4, 11, 3);
    PercSample c = sample_percolation(g, Mode::site, 0.4, 11, 4);
    CHECK(a.open == b.open);
    CHECK(a.open != c.open);
  }
  SUBCASE("empirical open fraction within binomial noise") {
    double p = 0.3;
    long total = 0, open = 0;
    for (int draw = 0; draw < 30; ++draw) {
      PercSample s = sample_percolation(g, Mode::bond, p, 123, static_cast<uint64_t>(draw));
      for (bool b : s.open) {
        ++total;
        open += b;
      }
    }
    double mean = static_cast<double>(open) / static_cast<double>(total);
    double sigma = std::sqrt(p * (1 - p) / static_cast<double>(total));
    CHECK(std::abs(mean - p) < 3 * sigma);
  }
}

TEST_CASE("cluster_of") {
  Graph g = Graph::cycle(4);
  SUBCASE("everything open") {
    PercSample s = sample_percolation(g, Mode::bond, 1.0, 1, 0);
    CHECK(cluster_of(g, s, 2).size() == 4);
  }
  SUBCASE("everything closed") {
    PercSample s = sample_percolation(g, Mode::bond, 0.0, 1, 0);
    CHECK(cluster_of(g, s, 2) == std::vector<int>{2});
  }
  SUBCASE("two adjacent open edges touch three vertices") {
    PercSample s{Mode::bond, std::vector<bool>(4, false), 0, 0, 0};
    s.open[static_cast<size_t>(g.edge_id(0, 1))] = true;
    s.open[static_cast<size_t>(g.edge_id(1, 2))] = true;
    CHECK(cluster_of(g, s, 0) == std::vector<int>{0, 1, 2});
  }
  SUBCASE("closed site root yields the empty cluster") {
    PercSample s{Mode::site, std::vector<bool>(4, false), 0, 0, 0};
    CHECK(cluster_of(g, s, 1).empty());
  }
}

TEST_CASE("reach probabilities") {
  SUBCASE("single ray: unique path") {
    Graph ray = Graph::path(6);
    CHECK(reach_exact(ray, Mode::bond, rat(1, 3), 0, 2) == rat(1, 9));
  }
  SUBCASE("interior of a grid at radius 1") {
    Graph g = Graph::grid2(5, 5);
    int centre = 12;
    Rational p = rat(2, 7);
    // 1 - (1-p)^4 for four independent edges.
    Rational expect = Rational(1) - rational_pow(Rational(1) - p, 4);
    CHECK(reach_exact(g, Mode::bond, p, centre, 1) == expect);
  }
  SUBCASE("subdividing doubles the exponent") {
    Graph ray = Graph::path(9);
    Graph subdivided = Graph::path(17);  // the same ray with midpoints
    for (int n = 1; n <= 4; ++n) {
      for (const auto& p : {rat(1, 2), rat(2, 3), rat(9, 10)}) {
        CHECK(reach_exact(subdivided, Mode::bond, p, 0, 2 * n) ==
              reach_exact(ray, Mode::bond, p * p, 0, n));
      }
    }
  }
  SUBCASE("cap is enforced") {
    Graph g = Graph::grid2(9, 9);
    CHECK_THROWS_AS(reach_exact(g, Mode::bond, rat(1, 2), 40, 3, 10), SizeError);
  }
  SUBCASE("monte carlo tracks the exact value") {
    Graph g = Graph::grid2(7, 7);
    double p = 0.55;
    Rational exact = reach_exact(g, Mode::bond, rat(11, 20), 24, 2);
    MCEstimate est = reach_mc(g, Mode::bond, p, 24, 2, 20000, 9);
    CHECK(std::abs(est.mean - rational_double(exact)) < 4 * est.standard_error + 1e-9);
    MCEstimate repeat = reach_mc(g, Mode::bond, p, 24, 2, 20000, 9, 4);
    CHECK(repeat.mean == est.mean);  // jobs must not change the estimate
  }
}

TEST_CASE("lift_path_smallest") {
  Graph large = Graph::cycle(6);
  Graph small = Graph::cycle(3);
  VertexMap vm(large, small, {0, 1, 2, 0, 1, 2});
  SUBCASE("cycle walk lifts to the smallest preimages") {
    std::vector<int> lift = lift_path_smallest(vm, {0, 1, 2, 0});
    CHECK(lift == std::vector<int>{0, 1, 2, 3});
  }
  SUBCASE("single vertex lifts to the smallest preimage") {
    CHECK(lift_path_smallest(vm, {1}) == std::vector<int>{1});
  }
  SUBCASE("dead end raises with the step index") {
    Graph broken(3, {{0, 1}});
    VertexMap vm2(broken, Graph::path(3), {0, 1, 2});
    CHECK_THROWS_AS(lift_path_smallest(vm2, {0, 1, 2}), LiftStepError);
    try {
      lift_path_smallest(vm2, {0, 1, 2});
    } catch (const LiftStepError& e) {
      CHECK(e.step == 2);
    }
  }
}

TEST_CASE("saw_count") {
  Graph g = Graph::grid2(9, 9);
  int centre = 40;
  CHECK(saw_count(g, centre, 1) == 4);
  CHECK(saw_count(g, centre, 2) == 12);
  CHECK(saw_count(g, centre, 3) == 36);
  CHECK_THROWS_AS(saw_count(g, centre, 25), SizeError);
}

TEST_CASE("fibre selection sampling") {
  FixturePair pair = cycle_cover_pair(6, 0);
  SUBCASE("exactly one open vertex per fibre") {
    for (uint64_t draw = 0; draw < 20; ++draw) {
      PercSample s = fibre_selection_sample(pair.vm, 31, draw);
      for (int v = 0; v < pair.vm.small.vertex_count(); ++v) {
        int open = 0;
        for (int x = 0; x < pair.vm.large.vertex_count(); ++x)
          if (pair.vm.map[static_cast<size_t>(x)] == v && s.open[static_cast<size_t>(x)]) ++open;
        CHECK(open == 1);
      }
    }
  }
  SUBCASE("per-vertex open frequency is one half") {
    long open0 = 0;
    const int draws = 4000;
    for (int draw = 0; draw < draws; ++draw)
      open0 += fibre_selection_sample(pair.vm, 5, static_cast<uint64_t>(draw))
                   .open[0];
    double mean = static_cast<double>(open0) / draws;
    CHECK(std::abs(mean - 0.5) < 3 * std::sqrt(0.25 / draws));
  }
  SUBCASE("fails on fibres of the wrong size") {
    FixturePair triple = box3d_pair(2, 2, 3);
    CHECK_THROWS_AS(fibre_selection_sample(triple.vm, 1, 0), InputError);
  }
}

TEST_CASE("estimate_pc") {
  SUBCASE("ray proxy crosses near the closed form") {
    // Reach over radius 8 on a ray is p^8; the 1/2 crossing sits at 2^(-1/8).
    Graph ray = Graph::path(30);
    auto [lo, hi] = estimate_pc(ray, Mode::bond, 0, 8, 4000, 17, 1.0 / 128);
    double target = std::pow(2.0, -1.0 / 8.0);
    CHECK(hi - lo <= 1.0 / 128 + 1e-12);
    CHECK(lo - 0.05 <= target);
    CHECK(target <= hi + 0.05);
  }
  SUBCASE("isolated probe pins the interval to the top") {
    Graph g(2, {});
    auto [lo, hi] = estimate_pc(g, Mode::bond, 0, 1, 100, 23, 1.0 / 64);
    (void)lo;
    CHECK(hi == 1.0);
    CHECK(lo >= 1.0 - 1.0 / 64 - 1e-12);
  }
  SUBCASE("larger radius never lowers the proxy beyond noise") {
    Graph ray = Graph::path(40);
    auto [lo8, hi8] = estimate_pc(ray, Mode::bond, 0, 8, 3000, 29, 1.0 / 64);
    auto [lo16, hi16] = estimate_pc(ray, Mode::bond, 0, 16, 3000, 29, 1.0 / 64);
    (void)hi8;
    (void)lo16;
    CHECK(hi16 >= lo8 - 0.05);
  }
}

TEST_CASE("fixture pair reach ordering at desk scale") {
  // Exact small-ball check on one pair; the full grid runs in acceptance.
  FixturePair pair = cycle_cover_pair(3, 2);
  CHECK(is_fibration(pair.vm).ok);
  int small_probe = pair.vm.map[static_cast<size_t>(pair.probe)];
  for (int radius = 1; radius <= 2; ++radius) {
    for (const auto& p : {rat(1, 4), rat(1, 2), rat(3, 4)}) {
      for (Mode mode : {Mode::bond, Mode::site}) {
        Rational large = reach_exact(pair.vm.large, mode, p, pair.probe, radius);
        Rational small = reach_exact(pair.vm.small, mode, p, small_probe, radius);
        CHECK(large >= small);
      }
    }
  }
}

TEST_CASE("fibre selection dominates site-half on the small graph, exactly") {
  // Tiny double cover: enumerate the full fibre-selection law.
  FixturePair pair = cycle_cover_pair(4, 1);
  const VertexMap& vm = pair.vm;
  int fibres = vm.small.vertex_count();
  Ball large_ball = build_ball(vm.large, pair.probe, 2);
  Ball small_ball = build_ball(vm.small, 0, 2);
  // Selection law: one uniform pick per fibre.
  std::vector<std::vector<int>> members(static_cast<size_t>(fibres));
  for (int x = 0; x < vm.large.vertex_count(); ++x)
    members[static_cast<size_t>(vm.map[static_cast<size_t>(x)])].push_back(x);
  double reach_selection = 0;
  for (uint32_t pattern = 0; pattern < (uint32_t(1) << fibres); ++pattern) {
    PercSample s{Mode::site, std::vector<bool>(static_cast<size_t>(vm.large.vertex_count())),
                 0.5, 0, 0};
    for (int f = 0; f < fibres; ++f)
      s.open[static_cast<size_t>(members[static_cast<size_t>(f)][(pattern >> f) & 1u])] = true;
    if (reach_sample(vm.large, large_ball, s, pair.probe)) reach_selection += 1.0;
  }
  reach_selection /= std::pow(2.0, fibres);
  Rational small_reach = reach_exact(vm.small, Mode::site, rat(1, 2), 0, 2);
  CHECK(reach_selection >= rational_double(small_reach) - 1e-12);
}
