#include "aug/augmented.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "core/errors.hpp"

namespace stodom::aug {

bool relation_leq(const BoundaryRelation& a, const BoundaryRelation& b) {
  if (a.size() != b.size()) throw InputError("relations on different boundaries");
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] == a[j] && b[i] != b[j]) return false;
  return true;
}

std::set<int> augmented_cluster(const CellDecomposition& cd, const std::vector<bool>& open_edges,
                                const std::vector<bool>& cell_bits, const std::set<int>& roots) {
  if (roots.empty()) throw InputError("augmented cluster of an empty root set");
  if (open_edges.size() != static_cast<size_t>(cd.base.edge_count()) ||
      cell_bits.size() != cd.cells.size())
    throw InputError("sample does not match the decomposition");

  std::set<int> cluster = roots;
  bool grew = true;
  while (grew) {
    grew = false;
    // Rule 1: open-edge growth.
    std::deque<int> queue(cluster.begin(), cluster.end());
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : cd.base.neighbours(v)) {
        if (cluster.count(w)) continue;
        if (open_edges[static_cast<size_t>(cd.base.edge_id(v, w))]) {
          cluster.insert(w);
          queue.push_back(w);
        }
      }
    }
    // Rule 2: whole-cell absorption.
    for (size_t k = 0; k < cd.cells.size(); ++k) {
      if (!cell_bits[k]) continue;
      bool interior_open = true;
      for (int id : cd.interior_edges[k])
        if (!open_edges[static_cast<size_t>(id)]) interior_open = false;
      if (!interior_open) continue;
      bool entered = false;
      for (int v : cd.boundaries[k]) {
        if (!cluster.count(v)) continue;
        for (int w : cd.base.neighbours(v)) {
          if (!std::binary_search(cd.interiors[k].begin(), cd.interiors[k].end(), w)) continue;
          int id = cd.base.edge_id(v, w);
          if (cd.cell_of_edge[static_cast<size_t>(id)] == static_cast<int>(k) &&
              open_edges[static_cast<size_t>(id)]) {
            entered = true;
            break;
          }
        }
        if (entered) break;
      }
      if (!entered) continue;
      for (int v : cd.cells[k]) {
        if (!cluster.count(v)) {
          cluster.insert(v);
          grew = true;
        }
      }
    }
  }
  return cluster;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

BoundaryRelation canonical_partition(const std::vector<int>& boundary,
                                     const std::function<int(int)>& root_of) {
  BoundaryRelation rel(boundary.size());
  std::map<int, int> rename;
  for (size_t i = 0; i < boundary.size(); ++i) {
    int root = root_of(boundary[i]);
    auto [it, fresh] = rename.emplace(root, static_cast<int>(rename.size()));
    (void)fresh;
    rel[i] = it->second;
  }
  return rel;
}

bool bonus_event(const CellDecomposition& cd, int cell, const std::vector<bool>& open_edges,
                 bool cell_bit, const std::set<int>& active) {
  if (!cell_bit) return false;
  size_t k = static_cast<size_t>(cell);
  for (int id : cd.interior_edges[k])
    if (!open_edges[static_cast<size_t>(id)]) return false;
  for (int v : active) {
    if (!std::binary_search(cd.boundaries[k].begin(), cd.boundaries[k].end(), v)) continue;
    for (int w : cd.base.neighbours(v)) {
      if (!std::binary_search(cd.interiors[k].begin(), cd.interiors[k].end(), w)) continue;
      int id = cd.base.edge_id(v, w);
      if (cd.cell_of_edge[static_cast<size_t>(id)] == cell && open_edges[static_cast<size_t>(id)])
        return true;
    }
  }
  return false;
}

}  // namespace

BoundaryRelation boundary_relation(const CellDecomposition& cd, int cell,
                                   const std::vector<bool>& open_edges, bool cell_bit,
                                   const std::set<int>& active, RelationVariant variant) {
  size_t k = static_cast<size_t>(cell);
  const auto& boundary = cd.boundaries[k];
  if (variant == RelationVariant::augmented && active.empty())
    throw InputError("augmented relation needs a nonempty active set");

  UnionFind uf(cd.base.vertex_count());
  for (int id : cd.cell_edges[k]) {
    if (!open_edges[static_cast<size_t>(id)]) continue;
    auto [a, b] = cd.base.edge(id);
    uf.unite(a, b);
  }
  BoundaryRelation rel =
      canonical_partition(boundary, [&](int v) { return uf.find(v); });

  if (variant == RelationVariant::augmented &&
      bonus_event(cd, cell, open_edges, cell_bit, active))
    std::fill(rel.begin(), rel.end(), 0);
  return rel;
}

CellTable::CellTable(const CellDecomposition& cd, int cell, int cap_bits)
    : cell_(cell), boundary_(cd.boundaries[static_cast<size_t>(cell)]) {
  const auto& edge_ids = cd.cell_edges[static_cast<size_t>(cell)];
  edge_count_ = static_cast<int>(edge_ids.size());
  if (edge_count_ > cap_bits)
    throw SizeError("cell has " + std::to_string(edge_count_) + " edges, enumeration cap is 2^" +
                    std::to_string(cap_bits));
  if (boundary_.size() > 31) throw SizeError("cell boundary too large for mask encoding");

  const auto& interiors = cd.interiors[static_cast<size_t>(cell)];
  std::vector<int> interior_local;  // positions of interior edges within edge_ids
  for (size_t i = 0; i < edge_ids.size(); ++i)
    if (std::binary_search(cd.interior_edges[static_cast<size_t>(cell)].begin(),
                           cd.interior_edges[static_cast<size_t>(cell)].end(), edge_ids[i]))
      interior_local.push_back(static_cast<int>(i));
  // Entry edges per boundary vertex: cell edges from that vertex into the
  // interior, as positions within edge_ids.
  std::vector<std::vector<int>> entry_local(boundary_.size());
  for (size_t bi = 0; bi < boundary_.size(); ++bi) {
    for (size_t i = 0; i < edge_ids.size(); ++i) {
      auto [a, b] = cd.base.edge(edge_ids[i]);
      int other = a == boundary_[bi] ? b : (b == boundary_[bi] ? a : -1);
      if (other >= 0 && std::binary_search(interiors.begin(), interiors.end(), other))
        entry_local[bi].push_back(static_cast<int>(i));
    }
  }

  std::map<BoundaryRelation, int> intern;
  auto intern_rel = [&](const BoundaryRelation& rel) {
    auto [it, fresh] = intern.emplace(rel, static_cast<int>(atoms_.size()));
    if (fresh) atoms_.push_back(rel);
    return it->second;
  };
  full_atom_ = intern_rel(BoundaryRelation(boundary_.size(), 0));

  std::map<std::tuple<int, int, bool, uint32_t>, unsigned long long> buckets;
  const uint64_t total = uint64_t(1) << edge_count_;
  for (uint64_t mask = 0; mask < total; ++mask) {
    UnionFind uf(cd.base.vertex_count());
    for (int i = 0; i < edge_count_; ++i) {
      if (!(mask >> i & 1u)) continue;
      auto [a, b] = cd.base.edge(edge_ids[static_cast<size_t>(i)]);
      uf.unite(a, b);
    }
    BoundaryRelation rel =
        canonical_partition(boundary_, [&](int v) { return uf.find(v); });
    bool interior_open = true;
    for (int i : interior_local)
      if (!(mask >> i & 1u)) interior_open = false;
    uint32_t entry = 0;
    for (size_t bi = 0; bi < boundary_.size(); ++bi)
      for (int i : entry_local[bi])
        if (mask >> i & 1u) entry |= uint32_t(1) << bi;
    ++buckets[{intern_rel(rel), static_cast<int>(__builtin_popcountll(mask)), interior_open,
               entry}];
  }
  for (const auto& [key, count] : buckets) {
    auto [rel, open_count, interior_open, entry] = key;
    profiles_.push_back({rel, open_count, interior_open, entry, count});
  }
}

uint32_t CellTable::boundary_mask(const std::set<int>& vertices) const {
  uint32_t mask = 0;
  for (size_t i = 0; i < boundary_.size(); ++i)
    if (vertices.count(boundary_[i])) mask |= uint32_t(1) << i;
  return mask;
}

RelationLaw CellTable::plain_law(const Rational& p) const {
  if (p < 0 || p > 1) throw InputError("parameter outside [0,1]");
  Rational q = Rational(1) - p;
  std::vector<Rational> weights(atoms_.size(), Rational(0));
  for (const auto& pr : profiles_) {
    Rational base(static_cast<unsigned long>(pr.count));
    base *= rational_pow(p, static_cast<unsigned>(pr.open_count));
    base *= rational_pow(q, static_cast<unsigned>(edge_count_ - pr.open_count));
    weights[static_cast<size_t>(pr.rel)] += base;
  }
  RelationLaw law;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (weights[i] == 0) continue;
    law.atoms.push_back(atoms_[i]);
    law.weights.push_back(weights[i]);
  }
  return law;
}

RelationLaw CellTable::augmented_law(const Rational& p, const Rational& s,
                                     uint32_t active_mask) const {
  if (p < 0 || p > 1 || s < 0 || s > 1) throw InputError("parameter outside [0,1]");
  if (active_mask == 0) throw InputError("augmented law needs a nonempty active set");
  Rational q = Rational(1) - p;
  std::vector<Rational> weights(atoms_.size(), Rational(0));
  for (const auto& pr : profiles_) {
    Rational base(static_cast<unsigned long>(pr.count));
    base *= rational_pow(p, static_cast<unsigned>(pr.open_count));
    base *= rational_pow(q, static_cast<unsigned>(edge_count_ - pr.open_count));
    bool event = pr.interior_open && (pr.entry_mask & active_mask);
    if (event && s > 0) {
      weights[static_cast<size_t>(full_atom_)] += base * s;
      if (s < 1) weights[static_cast<size_t>(pr.rel)] += base * (Rational(1) - s);
    } else {
      weights[static_cast<size_t>(pr.rel)] += base;
    }
  }
  RelationLaw law;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (weights[i] == 0) continue;
    law.atoms.push_back(atoms_[i]);
    law.weights.push_back(weights[i]);
  }
  return law;
}

bool relation_dominates(const RelationLaw& d1, const RelationLaw& d2) {
  if (d1.atoms.empty() || d2.atoms.empty()) throw InputError("empty relation law");
  if (d1.atoms.front().size() != d2.atoms.front().size())
    throw InputError("relation laws on different cells");
  AtomVerdict verdict = dominates_atoms(d1.weights, d2.weights, [&](int i, int j) {
    return relation_leq(d1.atoms[static_cast<size_t>(i)], d2.atoms[static_cast<size_t>(j)]);
  });
  return verdict.dominated;
}

Rational max_delta(const CellTable& table, const Rational& p, const Rational& s,
                   uint32_t active_mask, const Rational& resolution) {
  if (resolution <= 0) throw InputError("resolution must be positive");
  RelationLaw aug = table.augmented_law(p, s, active_mask);
  auto feasible = [&](const Rational& delta) {
    if (p + delta > 1) return false;
    return relation_dominates(table.plain_law(p + delta), aug);
  };
  Rational delta(0);
  while (feasible(delta + resolution)) delta += resolution;
  Rational step = resolution / 2;
  Rational floor = resolution / (1 << 20);
  while (step >= floor) {
    if (feasible(delta + step)) delta += step;
    step /= 2;
  }
  return delta;
}

std::set<int> explore(const CellDecomposition& cd, int v0, const std::vector<bool>& open_edges,
                      const std::vector<bool>& cell_bits, RelationVariant variant) {
  if (v0 < 0 || v0 >= cd.base.vertex_count() ||
      !cd.is_boundary_vertex[static_cast<size_t>(v0)])
    throw InputError("exploration must start at a boundary vertex");

  std::set<int> cluster{v0};
  std::vector<bool> explored(cd.cells.size(), false);
  // Frozen pairwise verdicts per explored cell, over its boundary list.
  std::vector<BoundaryRelation> frozen(cd.cells.size());

  auto pick_cell = [&]() -> int {
    for (size_t k = 0; k < cd.cells.size(); ++k) {
      if (explored[k]) continue;
      for (int v : cd.boundaries[k])
        if (cluster.count(v)) return static_cast<int>(k);
    }
    return -1;
  };

  while (true) {
    int cell = pick_cell();
    if (cell < 0) break;
    // Reveal: the relation is computed against the cluster as of now and
    // never updated afterwards.
    frozen[static_cast<size_t>(cell)] =
        boundary_relation(cd, cell, open_edges, cell_bits[static_cast<size_t>(cell)],
                          variant == RelationVariant::augmented ? cluster : std::set<int>{v0},
                          variant);
    explored[static_cast<size_t>(cell)] = true;

    // Saturate over all explored cells until stable.
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t k = 0; k < cd.cells.size(); ++k) {
        if (!explored[k]) continue;
        const auto& boundary = cd.boundaries[k];
        const auto& rel = frozen[k];
        for (size_t i = 0; i < boundary.size(); ++i) {
          if (cluster.count(boundary[i])) continue;
          for (size_t j = 0; j < boundary.size(); ++j) {
            if (i == j || rel[i] != rel[j]) continue;
            if (cluster.count(boundary[j])) {
              cluster.insert(boundary[i]);
              grew = true;
              break;
            }
          }
        }
      }
    }
  }
  return cluster;
}

Rational bonus_rate(const Rational& p, unsigned long long m, unsigned long long c) {
  Rational acc(1);
  for (unsigned long long i = 0; i < m + c; ++i) acc *= p;
  return acc;
}

}  // namespace stodom::aug
