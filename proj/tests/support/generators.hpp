#pragma once

// Random instance generators for the coupling property suites. Instances are
// valid by construction:
//   - targets are either symmetrized within every fibre (so the conditional
//     condition holds by exchangeability) or per-site products whose
//     distinguished site carries the stochastically smallest law;
//   - lifted measures are built from a column-value law obtained by pushing
//     the target's distinguished-section marginal DOWN a random decreasing
//     map, so the flattened condition holds with a direct coupling.

#include <random>

#include "lift/assumptions.hpp"
#include "lift/lift_ops.hpp"
#include "lift/one_column.hpp"
#include "support/oracles.hpp"

namespace stodom::testing {

inline FibreMap random_fibre_map(std::mt19937_64& rng, int max_b, int max_fibre,
                                 bool with_section = true) {
  std::uniform_int_distribution<int> columns(1, max_b);
  std::uniform_int_distribution<int> fsize(1, max_fibre);
  int b_count = columns(rng);
  std::vector<int> pi;
  for (int b = 0; b < b_count; ++b) {
    int f = fsize(rng);
    for (int i = 0; i < f; ++i) pi.push_back(b);
  }
  std::optional<std::vector<int>> section;
  if (with_section) {
    FibreMap plain(static_cast<int>(pi.size()), b_count, pi);
    std::vector<int> s(static_cast<size_t>(b_count));
    for (int b = 0; b < b_count; ++b) {
      const auto& fibre = plain.fibre(b);
      std::uniform_int_distribution<size_t> pick(0, fibre.size() - 1);
      s[static_cast<size_t>(b)] = fibre[pick(rng)];
    }
    section = std::move(s);
  }
  return FibreMap(static_cast<int>(pi.size()), b_count, pi, std::move(section));
}

// Random environment: arbitrary joint law of (X, S), including correlation.
inline std::pair<FibreMap, LiftEnvironment> random_environment(std::mt19937_64& rng, int max_b,
                                                               int max_fibre, int label_bound) {
  FibreMap pm = random_fibre_map(rng, max_b, max_fibre, false);
  int bound = std::max<int>(label_bound, static_cast<int>(pm.max_fibre_size()) - 1);
  ConfigSpace joint_space{2 * pm.b_count(), bound};
  std::map<Config, long> raw;
  std::uniform_int_distribution<int> atoms(1, 5);
  std::uniform_int_distribution<int> label(0, label_bound);
  std::uniform_int_distribution<long> mass(1, 8);
  long total = 0;
  int n = atoms(rng);
  for (int i = 0; i < n; ++i) {
    Config c(static_cast<size_t>(2 * pm.b_count()), 0);
    for (int b = 0; b < pm.b_count(); ++b) {
      c[static_cast<size_t>(b)] = static_cast<uint8_t>(label(rng));
      std::uniform_int_distribution<size_t> pick(0, pm.fibre(b).size() - 1);
      c[static_cast<size_t>(pm.b_count() + b)] = static_cast<uint8_t>(pick(rng));
    }
    long m = mass(rng);
    raw[c] += m;
    total += m;
  }
  std::map<Config, Rational> weights;
  for (const auto& [c, m] : raw) weights[c] = rat(m, total);
  return {pm, LiftEnvironment(pm, label_bound, FiniteMeasure(joint_space, std::move(weights)))};
}

// Pushforward by an atomwise decreasing map: each support point drops to a
// uniformly chosen configuration below it (kept as-is half of the time).
inline FiniteMeasure random_weakening(std::mt19937_64& rng, const FiniteMeasure& mu) {
  std::map<Config, Rational> w;
  std::bernoulli_distribution keep(0.5);
  for (const auto& [c, q] : mu.weights()) {
    Config down = c;
    if (!keep(rng)) {
      for (auto& v : down) {
        std::uniform_int_distribution<int> pick(0, v);
        v = static_cast<uint8_t>(pick(rng));
      }
    }
    w[down] += q;
  }
  return FiniteMeasure(mu.space(), std::move(w));
}

// Makes rho invariant under all within-fibre transpositions by averaging
// over swaps until stable.
inline FiniteMeasure symmetrize_within_fibres(const FiniteMeasure& rho, const FibreMap& pm) {
  FiniteMeasure acc = rho;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b = 0; b < pm.b_count(); ++b) {
      const auto& fibre = pm.fibre(b);
      for (size_t i = 0; i + 1 < fibre.size(); ++i) {
        std::vector<int> site_map(static_cast<size_t>(pm.a_count()));
        for (int a = 0; a < pm.a_count(); ++a) site_map[static_cast<size_t>(a)] = a;
        std::swap(site_map[static_cast<size_t>(fibre[i])],
                  site_map[static_cast<size_t>(fibre[i + 1])]);
        FiniteMeasure swapped = pushforward_sites(acc, site_map);
        if (!(swapped == acc)) {
          std::map<Config, Rational> mixed;
          for (const auto& [c, q] : acc.weights()) mixed[c] += q / 2;
          for (const auto& [c, q] : swapped.weights()) mixed[c] += q / 2;
          acc = FiniteMeasure(acc.space(), std::move(mixed));
          changed = true;
        }
      }
    }
  }
  return acc;
}

struct MainInstance {
  FiniteMeasure mu;
  FiniteMeasure rho;
  FibreMap pm;
};

inline MainInstance random_main_instance(std::mt19937_64& rng, int max_b, int max_fibre,
                                         int label_bound) {
  FibreMap pm = random_fibre_map(rng, max_b, max_fibre, true);
  ConfigSpace a_space = pm.a_space(label_bound);

  std::bernoulli_distribution coin(0.5);
  std::optional<FiniteMeasure> rho;
  if (coin(rng)) {
    rho = symmetrize_within_fibres(random_measure(rng, a_space, 5), pm);
  } else {
    // Independent per-site laws; the distinguished site carries the base law
    // and every other site of the fibre an upward-mapped copy of it.
    std::vector<FiniteMeasure> factors;
    std::vector<std::vector<int>> blocks;
    for (int a = 0; a < pm.a_count(); ++a) blocks.push_back({a});
    std::vector<FiniteMeasure> per_site;
    per_site.reserve(static_cast<size_t>(pm.a_count()));
    for (int a = 0; a < pm.a_count(); ++a)
      per_site.push_back(FiniteMeasure::point_mass(ConfigSpace{1, label_bound}, Config{0}));
    for (int b = 0; b < pm.b_count(); ++b) {
      FiniteMeasure base = random_measure(rng, ConfigSpace{1, label_bound}, label_bound + 1);
      for (int a : pm.fibre(b)) {
        if (a == pm.section_at(b)) {
          per_site[static_cast<size_t>(a)] = base;
        } else {
          // Upward map: f(x) >= x, weakly increasing.
          std::vector<uint8_t> f(static_cast<size_t>(label_bound) + 1);
          for (int x = 0; x <= label_bound; ++x) {
            std::uniform_int_distribution<int> pick(x, label_bound);
            f[static_cast<size_t>(x)] = static_cast<uint8_t>(pick(rng));
            if (x > 0 && f[static_cast<size_t>(x)] < f[static_cast<size_t>(x - 1)])
              f[static_cast<size_t>(x)] = f[static_cast<size_t>(x - 1)];
          }
          per_site[static_cast<size_t>(a)] = pushforward(
              base,
              [&f](const Config& c) -> std::optional<Config> {
                return Config{f[c[0]]};
              },
              ConfigSpace{1, label_bound});
        }
      }
    }
    rho = product_measure(per_site, blocks, a_space);
  }

  // Column-value law dominated by the distinguished-section marginal.
  FiniteMeasure x_law = random_weakening(rng, section_marginal(*rho, pm, pm.section()));
  std::map<Config, std::vector<int>> table;
  for (const auto& [x, q] : x_law.weights()) {
    (void)q;
    std::vector<int> s(static_cast<size_t>(pm.b_count()));
    for (int b = 0; b < pm.b_count(); ++b) {
      const auto& fibre = pm.fibre(b);
      std::uniform_int_distribution<size_t> pick(0, fibre.size() - 1);
      s[static_cast<size_t>(b)] = fibre[pick(rng)];
    }
    table[x] = s;
  }
  FiniteMeasure mu =
      lift_distribution(LiftEnvironment::deterministic_strategy(pm, x_law, table));
  return {std::move(mu), std::move(*rho), std::move(pm)};
}

// One-column instance satisfying the greedy precondition: the value law's
// tails sit below the pointwise-hardest marginal tails by construction.
inline std::pair<FiniteMeasure, FiniteMeasure> random_one_column_instance(std::mt19937_64& rng,
                                                                          int max_sites,
                                                                          int label_bound) {
  std::uniform_int_distribution<int> sites_dist(1, max_sites);
  int sites = sites_dist(rng);
  ConfigSpace target{sites, label_bound};
  FiniteMeasure rho = random_measure(rng, target, 6);

  // Value law with CDF above every marginal's CDF: the tail-minimum measure.
  std::vector<Rational> tail(static_cast<size_t>(label_bound) + 1, Rational(1));
  for (int t = 1; t <= label_bound; ++t) {
    Rational best(2);
    for (int c = 0; c < sites; ++c) {
      Rational m = rho.mass([&](const Config& cf) { return cf[static_cast<size_t>(c)] >= t; });
      if (m < best) best = m;
    }
    tail[static_cast<size_t>(t)] = best;
  }
  for (int t = 1; t <= label_bound; ++t)
    if (tail[static_cast<size_t>(t)] > tail[static_cast<size_t>(t - 1)])
      tail[static_cast<size_t>(t)] = tail[static_cast<size_t>(t - 1)];
  std::map<Config, Rational> value_weights;
  for (int v = 0; v <= label_bound; ++v) {
    Rational w = tail[static_cast<size_t>(v)] -
                 (v < label_bound ? tail[static_cast<size_t>(v) + 1] : Rational(0));
    if (w > 0) value_weights[Config{static_cast<uint8_t>(v)}] += w;
  }
  FiniteMeasure x_law =
      random_weakening(rng, FiniteMeasure(ConfigSpace{1, label_bound}, std::move(value_weights)));

  // Random joint with positions: split each value atom across positions.
  int bound = std::max(label_bound, sites - 1);
  std::map<Config, Rational> joint;
  std::uniform_int_distribution<int> parts(1, sites);
  for (const auto& [v, q] : x_law.weights()) {
    int n = parts(rng);
    std::vector<long> cuts(static_cast<size_t>(n));
    long total = 0;
    for (auto& c : cuts) {
      std::uniform_int_distribution<long> m(1, 4);
      c = m(rng);
      total += c;
    }
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> pos(0, sites - 1);
      Config vp{v[0], static_cast<uint8_t>(pos(rng))};
      joint[vp] += q * rat(cuts[static_cast<size_t>(i)], total);
    }
  }
  return {FiniteMeasure(ConfigSpace{2, bound}, std::move(joint)), std::move(rho)};
}

}  // namespace stodom::testing
