#include "perco/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace stodom::perco {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : adj_(static_cast<size_t>(vertex_count)) {
  if (vertex_count <= 0) throw InputError("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw InputError("edge endpoint out of range");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second)
      throw InputError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  edges_.assign(seen.begin(), seen.end());
  for (size_t id = 0; id < edges_.size(); ++id) {
    adj_[static_cast<size_t>(edges_[id].first)].push_back(edges_[id].second);
    adj_[static_cast<size_t>(edges_[id].second)].push_back(edges_[id].first);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

int Graph::max_degree() const {
  int m = 0;
  for (int v = 0; v < vertex_count(); ++v) m = std::max(m, degree(v));
  return m;
}

int Graph::edge_id(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  if (it == edges_.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - edges_.begin());
}

std::vector<int> Graph::distances_from(int v) const {
  std::vector<int> dist(static_cast<size_t>(vertex_count()), -1);
  std::deque<int> queue{v};
  dist[static_cast<size_t>(v)] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : neighbours(u)) {
      if (dist[static_cast<size_t>(w)] == -1) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Graph Graph::path(int vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < vertices; ++i) edges.emplace_back(i, i + 1);
  return Graph(vertices, std::move(edges));
}

Graph Graph::cycle(int vertices) {
  if (vertices < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < vertices; ++i) edges.emplace_back(i, (i + 1) % vertices);
  return Graph(vertices, std::move(edges));
}

Graph Graph::grid2(int w, int h, bool periodic) {
  if (w < 1 || h < 1) throw InputError("grid dimensions must be positive");
  if (periodic && (w < 3 || h < 3)) throw InputError("periodic grid needs side >= 3");
  auto id = [w](int x, int y) { return y * w + x; };
  std::vector<std::pair<int, int>> edges;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) edges.emplace_back(id(x, y), id(x + 1, y));
      else if (periodic) edges.emplace_back(id(x, y), id(0, y));
      if (y + 1 < h) edges.emplace_back(id(x, y), id(x, y + 1));
      else if (periodic) edges.emplace_back(id(x, y), id(x, 0));
    }
  }
  return Graph(w * h, std::move(edges));
}

Graph Graph::grid3(int w, int h, int d, bool periodic) {
  if (w < 1 || h < 1 || d < 1) throw InputError("grid dimensions must be positive");
  auto id = [w, h](int x, int y, int z) { return (z * h + y) * w + x; };
  std::vector<std::pair<int, int>> edges;
  for (int z = 0; z < d; ++z)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (x + 1 < w) edges.emplace_back(id(x, y, z), id(x + 1, y, z));
        else if (periodic && w >= 3) edges.emplace_back(id(x, y, z), id(0, y, z));
        if (y + 1 < h) edges.emplace_back(id(x, y, z), id(x, y + 1, z));
        else if (periodic && h >= 3) edges.emplace_back(id(x, y, z), id(x, 0, z));
        if (z + 1 < d) edges.emplace_back(id(x, y, z), id(x, y, z + 1));
        else if (periodic && d >= 3) edges.emplace_back(id(x, y, z), id(x, y, 0));
      }
  return Graph(w * h * d, std::move(edges));
}

Graph Graph::ladder(int rungs) {
  if (rungs < 2) throw InputError("ladder needs at least 2 rungs");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < rungs; ++i) {
    edges.emplace_back(2 * i, 2 * i + 1);
    if (i + 1 < rungs) {
      edges.emplace_back(2 * i, 2 * (i + 1));
      edges.emplace_back(2 * i + 1, 2 * (i + 1) + 1);
    }
  }
  return Graph(2 * rungs, std::move(edges));
}

Graph Graph::product(const Graph& a, const Graph& b) {
  int nb = b.vertex_count();
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < a.vertex_count(); ++u)
    for (int x = 0; x < nb; ++x) {
      for (int y : b.neighbours(x))
        if (y > x) edges.emplace_back(u * nb + x, u * nb + y);
      for (int v : a.neighbours(u))
        if (v > u) edges.emplace_back(u * nb + x, v * nb + x);
    }
  return Graph(a.vertex_count() * nb, std::move(edges));
}

std::string Graph::to_text() const {
  std::ostringstream out;
  out << vertex_count() << ' ' << edge_count() << '\n';
  for (const auto& [u, v] : edges_) out << u << ' ' << v << '\n';
  return out.str();
}

Graph Graph::parse_text(const std::string& text) {
  std::istringstream in(text);
  int v = 0, e = 0;
  if (!(in >> v >> e)) throw InputError("graph text must start with \"V E\"");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < e; ++i) {
    int a = 0, b = 0;
    if (!(in >> a >> b)) throw InputError("graph text ends before all edges are read");
    edges.emplace_back(a, b);
  }
  return Graph(v, std::move(edges));
}

VertexMap::VertexMap(Graph large_, Graph small_, std::vector<int> map_)
    : large(std::move(large_)), small(std::move(small_)), map(std::move(map_)) {
  if (static_cast<int>(map.size()) != large.vertex_count())
    throw InputError("vertex map must be total on the large graph");
  std::vector<bool> hit(static_cast<size_t>(small.vertex_count()), false);
  for (int v : map) {
    if (v < 0 || v >= small.vertex_count()) throw InputError("vertex map value out of range");
    hit[static_cast<size_t>(v)] = true;
  }
  for (bool h : hit)
    if (!h) throw InputError("vertex map is not surjective");
}

FibrationCheck is_fibration(const VertexMap& vm) {
  for (int x = 0; x < vm.large.vertex_count(); ++x) {
    for (int v : vm.small.neighbours(vm.map[static_cast<size_t>(x)])) {
      bool lifted = false;
      for (int y : vm.large.neighbours(x)) {
        if (vm.map[static_cast<size_t>(y)] == v) {
          lifted = true;
          break;
        }
      }
      if (!lifted) return {false, std::make_pair(x, v)};
    }
  }
  return {true, std::nullopt};
}

Graph star_graph(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < g.edge_count(); ++i) {
    for (int j = i + 1; j < g.edge_count(); ++j) {
      auto [a, b] = g.edge(i);
      auto [c, d] = g.edge(j);
      int shared = (a == c) + (a == d) + (b == c) + (b == d);
      if (shared == 1) edges.emplace_back(i, j);
    }
  }
  return Graph(std::max(g.edge_count(), 1), std::move(edges));
}

VertexMap star_graph_pi(const VertexMap& vm) {
  // Large-side edges that project to small-side edges, in edge-id order.
  std::vector<int> kept;
  for (int id = 0; id < vm.large.edge_count(); ++id) {
    auto [u, v] = vm.large.edge(id);
    int pu = vm.map[static_cast<size_t>(u)], pv = vm.map[static_cast<size_t>(v)];
    if (pu != pv && vm.small.edge_id(pu, pv) != -1) kept.push_back(id);
  }
  if (kept.empty()) throw InputError("no edge of the large graph projects to an edge");
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < kept.size(); ++i) {
    for (size_t j = i + 1; j < kept.size(); ++j) {
      auto [a, b] = vm.large.edge(kept[i]);
      auto [c, d] = vm.large.edge(kept[j]);
      int shared = (a == c) + (a == d) + (b == c) + (b == d);
      if (shared == 1) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  Graph lstar(static_cast<int>(kept.size()), std::move(edges));
  Graph sstar = star_graph(vm.small);
  std::vector<int> induced(kept.size());
  for (size_t i = 0; i < kept.size(); ++i) {
    auto [u, v] = vm.large.edge(kept[i]);
    induced[i] = vm.small.edge_id(vm.map[static_cast<size_t>(u)], vm.map[static_cast<size_t>(v)]);
  }
  VertexMap out(std::move(lstar), std::move(sstar), std::move(induced));
  if (is_fibration(vm).ok && !is_fibration(out).ok)
    throw InternalError("star transform broke the fibration property");
  return out;
}

std::vector<int> lift_path_smallest(const VertexMap& vm, const std::vector<int>& path) {
  if (path.empty()) throw InputError("cannot lift an empty path");
  std::vector<int> lift;
  int current = -1;
  for (int x = 0; x < vm.large.vertex_count(); ++x) {
    if (vm.map[static_cast<size_t>(x)] == path[0]) {
      current = x;
      break;
    }
  }
  if (current == -1) throw LiftStepError(0);
  lift.push_back(current);
  for (size_t i = 1; i < path.size(); ++i) {
    int next = -1;
    for (int y : vm.large.neighbours(current)) {  // sorted, so smallest first
      if (vm.map[static_cast<size_t>(y)] == path[i]) {
        next = y;
        break;
      }
    }
    if (next == -1) throw LiftStepError(static_cast<int>(i));
    current = next;
    lift.push_back(current);
  }
  return lift;
}

namespace {

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, 'x')) dims.push_back(std::stoi(tok));
  return dims;
}

}  // namespace

Graph graph_from_spec(const std::string& spec) {
  if (spec.rfind("product(", 0) == 0 && spec.back() == ')') {
    std::string inner = spec.substr(8, spec.size() - 9);
    int depth = 0;
    size_t split = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) throw InputError("product spec needs two arguments");
    return Graph::product(graph_from_spec(inner.substr(0, split)),
                          graph_from_spec(inner.substr(split + 1)));
  }
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("malformed graph spec: " + spec);
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  try {
    if (kind == "path") return Graph::path(std::stoi(arg));
    if (kind == "cycle") return Graph::cycle(std::stoi(arg));
    if (kind == "ladder") return Graph::ladder(std::stoi(arg));
    if (kind == "grid") {
      auto d = parse_dims(arg);
      if (d.size() == 2) return Graph::grid2(d[0], d[1]);
      if (d.size() == 3) return Graph::grid3(d[0], d[1], d[2]);
      throw InputError("grid spec needs 2 or 3 dimensions");
    }
    if (kind == "torus") {
      auto d = parse_dims(arg);
      if (d.size() == 2) return Graph::grid2(d[0], d[1], true);
      if (d.size() == 3) return Graph::grid3(d[0], d[1], d[2], true);
      throw InputError("torus spec needs 2 or 3 dimensions");
    }
    if (kind == "file") {
      std::ifstream in(arg);
      if (!in) throw InputError("cannot open graph file: " + arg);
      std::stringstream buf;
      buf << in.rdbuf();
      return Graph::parse_text(buf.str());
    }
  } catch (const std::invalid_argument&) {
    throw InputError("malformed graph spec: " + spec);
  }
  throw InputError("unknown graph spec kind: " + kind);
}

}  // namespace stodom::perco
