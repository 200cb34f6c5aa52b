#pragma once

// Independent oracles used by unit and acceptance tests. These deliberately
// avoid the flow-based decision path: domination is checked against the
// definition (mu(U) <= rho(U) for every upward-closed U), with up-sets
// enumerated by brute force over all subsets of the configuration space.

#include <random>

#include "core/domination.hpp"
#include "core/measure.hpp"

namespace stodom::testing {

// All upward-closed subsets of the configuration space, as index sets into
// all_configs(space). Feasible only for small spaces (<= ~20 configurations).
inline std::vector<std::vector<int>> all_up_sets(const ConfigSpace& space) {
  std::vector<Config> configs = all_configs(space, 24);
  const int n = static_cast<int>(configs.size());
  std::vector<std::vector<int>> result;
  for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
    bool closed = true;
    for (int i = 0; i < n && closed; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (int j = 0; j < n && closed; ++j)
        if (!(mask >> j & 1u) && config_leq(configs[static_cast<size_t>(i)],
                                            configs[static_cast<size_t>(j)]))
          closed = false;
    }
    if (!closed) continue;
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) members.push_back(i);
    result.push_back(std::move(members));
  }
  return result;
}

// Definition-level domination check via exhaustive up-set enumeration.
inline bool upset_oracle_dominates(const FiniteMeasure& mu, const FiniteMeasure& rho) {
  std::vector<Config> configs = all_configs(mu.space(), 24);
  for (const auto& upset : all_up_sets(mu.space())) {
    Rational lhs(0), rhs(0);
    for (int i : upset) {
      lhs += mu.at(configs[static_cast<size_t>(i)]);
      rhs += rho.at(configs[static_cast<size_t>(i)]);
    }
    if (lhs > rhs) return false;
  }
  return true;
}

// Random sparse measure with small rational weights.
inline FiniteMeasure random_measure(std::mt19937_64& rng, const ConfigSpace& space,
                                    int max_support) {
  std::vector<Config> configs = all_configs(space, 1 << 20);
  std::uniform_int_distribution<size_t> pick(0, configs.size() - 1);
  std::uniform_int_distribution<int> count(1, max_support);
  std::uniform_int_distribution<long> mass(1, 8);
  std::map<Config, long> raw;
  long total = 0;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    long m = mass(rng);
    raw[configs[pick(rng)]] += m;
    total += m;
  }
  std::map<Config, Rational> w;
  for (const auto& [c, m] : raw) w[c] = rat(m, total);
  return FiniteMeasure(space, std::move(w));
}

}  // namespace stodom::testing
