#include "core/domination.hpp"

#include <deque>

#include "core/errors.hpp"

namespace stodom {

namespace {

struct FlowEdge {
  int to;
  Rational cap;
  int rev;  // index of the reverse edge in graph[to]
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : graph_(static_cast<size_t>(nodes)) {}

  void add_edge(int from, int to, Rational cap) {
    graph_[static_cast<size_t>(from)].push_back(
        {to, std::move(cap), static_cast<int>(graph_[static_cast<size_t>(to)].size())});
    graph_[static_cast<size_t>(to)].push_back(
        {from, Rational(0), static_cast<int>(graph_[static_cast<size_t>(from)].size()) - 1});
  }

  // Edmonds-Karp; exact rational capacities terminate because every
  // augmentation saturates at least one edge on a shortest path.
  Rational max_flow(int s, int t) {
    Rational flow(0);
    while (true) {
      std::vector<std::pair<int, int>> parent(graph_.size(), {-1, -1});
      std::deque<int> queue{s};
      parent[static_cast<size_t>(s)] = {s, -1};
      while (!queue.empty() && parent[static_cast<size_t>(t)].first == -1) {
        int v = queue.front();
        queue.pop_front();
        const auto& edges = graph_[static_cast<size_t>(v)];
        for (size_t i = 0; i < edges.size(); ++i) {
          if (edges[i].cap > 0 && parent[static_cast<size_t>(edges[i].to)].first == -1) {
            parent[static_cast<size_t>(edges[i].to)] = {v, static_cast<int>(i)};
            queue.push_back(edges[i].to);
          }
        }
      }
      if (parent[static_cast<size_t>(t)].first == -1) break;
      Rational push(-1);
      for (int v = t; v != s;) {
        auto [u, ei] = parent[static_cast<size_t>(v)];
        const Rational& cap = graph_[static_cast<size_t>(u)][static_cast<size_t>(ei)].cap;
        if (push < 0 || cap < push) push = cap;
        v = u;
      }
      for (int v = t; v != s;) {
        auto [u, ei] = parent[static_cast<size_t>(v)];
        FlowEdge& e = graph_[static_cast<size_t>(u)][static_cast<size_t>(ei)];
        e.cap -= push;
        graph_[static_cast<size_t>(e.to)][static_cast<size_t>(e.rev)].cap += push;
        v = u;
      }
      flow += push;
    }
    return flow;
  }

  // Residual reachability from s after max_flow.
  std::vector<bool> reachable(int s) const {
    std::vector<bool> seen(graph_.size(), false);
    std::deque<int> queue{s};
    seen[static_cast<size_t>(s)] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const auto& e : graph_[static_cast<size_t>(v)]) {
        if (e.cap > 0 && !seen[static_cast<size_t>(e.to)]) {
          seen[static_cast<size_t>(e.to)] = true;
          queue.push_back(e.to);
        }
      }
    }
    return seen;
  }

  const std::vector<std::vector<FlowEdge>>& graph() const { return graph_; }

 private:
  std::vector<std::vector<FlowEdge>> graph_;
};

}  // namespace

AtomVerdict dominates_atoms(const std::vector<Rational>& mu, const std::vector<Rational>& rho,
                            const std::function<bool(int, int)>& leq) {
  const int m = static_cast<int>(mu.size());
  const int r = static_cast<int>(rho.size());
  const int source = 0;
  const int sink = m + r + 1;
  FlowNetwork net(m + r + 2);
  for (int i = 0; i < m; ++i) net.add_edge(source, 1 + i, mu[static_cast<size_t>(i)]);
  for (int j = 0; j < r; ++j) net.add_edge(1 + m + j, sink, rho[static_cast<size_t>(j)]);
  // Capacity 2 exceeds any feasible flow, so middle arcs never sit on a cut.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < r; ++j)
      if (leq(i, j)) net.add_edge(1 + i, 1 + m + j, Rational(2));

  Rational value = net.max_flow(source, sink);
  AtomVerdict verdict;
  if (value == 1) {
    verdict.dominated = true;
    for (int i = 0; i < m; ++i) {
      for (const auto& e : net.graph()[static_cast<size_t>(1 + i)]) {
        if (e.to >= 1 + m && e.to < 1 + m + r) {
          Rational sent = Rational(2) - e.cap;
          if (sent > 0) verdict.coupling.emplace_back(i, e.to - 1 - m, sent);
        }
      }
    }
    return verdict;
  }

  std::vector<bool> reach = net.reachable(source);
  for (int i = 0; i < m; ++i) {
    if (reach[static_cast<size_t>(1 + i)]) {
      verdict.violator_generators.push_back(i);
      verdict.violator_mu_mass += mu[static_cast<size_t>(i)];
    }
  }
  for (int j = 0; j < r; ++j) {
    bool in_upset = false;
    for (int i : verdict.violator_generators)
      if (leq(i, j)) {
        in_upset = true;
        break;
      }
    if (in_upset) verdict.violator_rho_mass += rho[static_cast<size_t>(j)];
  }
  if (verdict.violator_mu_mass <= verdict.violator_rho_mass)
    throw InternalError("min-cut extraction produced a non-violating up-set");
  return verdict;
}

bool UpSet::contains(const Config& c) const {
  for (const auto& g : generators)
    if (config_leq(g, c)) return true;
  return false;
}

DominatesResult dominates(const FiniteMeasure& mu, const FiniteMeasure& rho) {
  if (!(mu.space() == rho.space()))
    throw InputError(space_mismatch_msg(mu.space(), rho.space()));

  std::vector<Config> mu_atoms, rho_atoms;
  std::vector<Rational> mu_w, rho_w;
  for (const auto& [c, q] : mu.weights()) {
    mu_atoms.push_back(c);
    mu_w.push_back(q);
  }
  for (const auto& [c, q] : rho.weights()) {
    rho_atoms.push_back(c);
    rho_w.push_back(q);
  }

  AtomVerdict verdict = dominates_atoms(mu_w, rho_w, [&](int i, int j) {
    return config_leq(mu_atoms[static_cast<size_t>(i)], rho_atoms[static_cast<size_t>(j)]);
  });

  DominatesResult result;
  result.yes = verdict.dominated;
  if (verdict.dominated) {
    std::map<std::pair<Config, Config>, Rational> w;
    for (const auto& [i, j, q] : verdict.coupling)
      w[{mu_atoms[static_cast<size_t>(i)], rho_atoms[static_cast<size_t>(j)]}] += q;
    result.witness = Coupling(mu.space(), rho.space(), std::move(w));
  } else {
    UpSet u;
    u.space = mu.space();
    for (int i : verdict.violator_generators) u.generators.push_back(mu_atoms[static_cast<size_t>(i)]);
    result.violator = std::move(u);
    result.violator_mu_mass = verdict.violator_mu_mass;
    result.violator_rho_mass = verdict.violator_rho_mass;
  }
  return result;
}

}  // namespace stodom
