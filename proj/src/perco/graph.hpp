#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stodom::perco {

// A finite simple undirected graph with stable vertex and edge ids.
// Immutable after construction; adjacency lists are sorted.
class Graph {
 public:
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& neighbours(int v) const { return adj_[static_cast<size_t>(v)]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::pair<int, int>& edge(int id) const { return edges_[static_cast<size_t>(id)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
  int max_degree() const;
  // Edge id for {u, v}, or -1 when not adjacent.
  int edge_id(int u, int v) const;

  // BFS distances from v; unreachable vertices get -1.
  std::vector<int> distances_from(int v) const;

  static Graph path(int vertices);
  static Graph cycle(int vertices);
  static Graph grid2(int w, int h, bool periodic = false);
  static Graph grid3(int w, int h, int d, bool periodic = false);
  static Graph ladder(int rungs);
  // Box product: (u,x) ~ (v,y) iff (u==v and x~y) or (x==y and u~v).
  // Vertex (u, x) has id u * b.vertex_count() + x.
  static Graph product(const Graph& a, const Graph& b);

  // Text format: first line "V E", then E lines "u v" (0-based).
  std::string to_text() const;
  static Graph parse_text(const std::string& text);

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;  // normalized u < v, sorted
};

// Total map between vertex sets, with both graphs owned by value.
struct VertexMap {
  Graph large;
  Graph small;
  std::vector<int> map;  // V_large -> V_small

  VertexMap(Graph large_, Graph small_, std::vector<int> map_);
};

// Exhaustive edge-lifting check: for every x and every neighbour v of the
// image of x, some neighbour of x must map to v. On failure returns the first
// offending pair (x, v).
struct FibrationCheck {
  bool ok = false;
  std::optional<std::pair<int, int>> counterexample;
};
FibrationCheck is_fibration(const VertexMap& vm);

// Vertex set = edges of g; adjacency = sharing exactly one endpoint.
Graph star_graph(const Graph& g);

// Keeps only the edges of the large graph that project to edges of the small
// one, takes their star graph, and induces the map on edges. If the input is
// a fibration, the induced map is asserted to be one as well.
VertexMap star_graph_pi(const VertexMap& vm);

// Lexicographically smallest lift of a path: the start is the smallest
// preimage of the first vertex, and every subsequent vertex the smallest
// admissible neighbour. Throws LiftStepError when a step has no lift.
std::vector<int> lift_path_smallest(const VertexMap& vm, const std::vector<int>& path);

// Graph-spec mini language used by the CLI and the fixtures:
//   path:N, cycle:N, grid:WxH, grid:WxHxD, torus:WxH, ladder:N,
//   product(SPEC,SPEC), file:PATH.
Graph graph_from_spec(const std::string& spec);

}  // namespace stodom::perco
