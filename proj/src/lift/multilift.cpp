#include "lift/multilift.hpp"

#include "core/errors.hpp"

namespace stodom {

namespace {

// Ordered pairs of distinct sites within each fibre, grouped by column.
struct PairIndex {
  std::vector<std::pair<int, int>> pairs;       // global site indices
  std::vector<std::vector<int>> pairs_of_column;  // indices into `pairs`
};

PairIndex build_pairs(const FibreMap& pm) {
  PairIndex idx;
  idx.pairs_of_column.resize(static_cast<size_t>(pm.b_count()));
  for (int b = 0; b < pm.b_count(); ++b) {
    const auto& fibre = pm.fibre(b);
    for (int a1 : fibre)
      for (int a2 : fibre)
        if (a1 != a2) {
          idx.pairs_of_column[static_cast<size_t>(b)].push_back(
              static_cast<int>(idx.pairs.size()));
          idx.pairs.emplace_back(a1, a2);
        }
  }
  return idx;
}

}  // namespace

PairedLiftEnv paired_env_from_strategy(
    const FibreMap& pm, const Rational& p,
    const std::function<std::pair<std::vector<int>, std::vector<int>>(const Config&,
                                                                      const Config&)>& strategy) {
  PairedLiftEnv env{pm, p, {}};
  FiniteMeasure bits = FiniteMeasure::bernoulli_product(2 * pm.b_count(), p);
  for (const auto& [c, w] : bits.weights()) {
    Config x(c.begin(), c.begin() + pm.b_count());
    Config xw(c.begin() + pm.b_count(), c.end());
    auto [s, sw] = strategy(x, xw);
    env.atoms.push_back({std::move(x), std::move(xw), std::move(s), std::move(sw), w});
  }
  return env;
}

MultiliftResult multilift_domination(const PairedLiftEnv& env) {
  const FibreMap& pm = env.pm;
  if (env.p < 0 || env.p > 1) throw InputError("Bernoulli parameter outside [0,1]");

  // Validate the sections and the independence of the bit families.
  std::map<Config, Rational> bit_law;
  for (const auto& atom : env.atoms) {
    if (static_cast<int>(atom.s.size()) != pm.b_count() ||
        static_cast<int>(atom.s_weak.size()) != pm.b_count())
      throw InputError("section vectors must have one entry per column");
    for (int b = 0; b < pm.b_count(); ++b) {
      int a1 = atom.s[static_cast<size_t>(b)];
      int a2 = atom.s_weak[static_cast<size_t>(b)];
      if (pm.pi(a1) != b || pm.pi(a2) != b)
        throw InputError("section value outside its fibre");
      if (a1 == a2)
        throw InputError("the two sections coincide at column " + std::to_string(b));
    }
    Config joint(atom.x);
    joint.insert(joint.end(), atom.x_weak.begin(), atom.x_weak.end());
    bit_law[joint] += atom.weight;
  }
  FiniteMeasure observed(ConfigSpace{2 * pm.b_count(), 1}, std::move(bit_law));
  if (!(observed == FiniteMeasure::bernoulli_product(2 * pm.b_count(), env.p)))
    throw InputError("bit families are not independent Bernoulli(p)");

  PairIndex idx = build_pairs(pm);
  const int sites = static_cast<int>(idx.pairs.size());
  ConfigSpace paired_space{sites, 3};

  // Law of the lifted configuration: combined label 2*strong + weak at the
  // coordinate given by the sampled section pair, 0 elsewhere.
  std::map<Config, Rational> lifted;
  for (const auto& atom : env.atoms) {
    Config y(static_cast<size_t>(sites), 0);
    for (int b = 0; b < pm.b_count(); ++b) {
      int label = 2 * atom.x[static_cast<size_t>(b)] + atom.x_weak[static_cast<size_t>(b)];
      if (label == 0) continue;
      std::pair<int, int> want{atom.s[static_cast<size_t>(b)],
                               atom.s_weak[static_cast<size_t>(b)]};
      for (int k : idx.pairs_of_column[static_cast<size_t>(b)]) {
        if (idx.pairs[static_cast<size_t>(k)] == want) {
          y[static_cast<size_t>(k)] = static_cast<uint8_t>(label);
          break;
        }
      }
    }
    lifted[y] += atom.weight;
  }
  FiniteMeasure lifted_law(paired_space, std::move(lifted));

  // Per-column target: pushforward of the Bernoulli product on the fibre by
  // the pair encoding (2*first + second); tensorized over columns.
  std::vector<FiniteMeasure> factors;
  std::vector<std::vector<int>> blocks;
  for (int b = 0; b < pm.b_count(); ++b) {
    const auto& fibre = pm.fibre(b);
    const auto& cols = idx.pairs_of_column[static_cast<size_t>(b)];
    FiniteMeasure fibre_bits = FiniteMeasure::bernoulli_product(
        static_cast<int>(fibre.size()), env.p);
    std::map<Config, Rational> pushed;
    for (const auto& [z, w] : fibre_bits.weights()) {
      Config img(cols.size());
      for (size_t i = 0; i < cols.size(); ++i) {
        auto [a1, a2] = idx.pairs[static_cast<size_t>(cols[i])];
        size_t i1 = static_cast<size_t>(
            std::find(fibre.begin(), fibre.end(), a1) - fibre.begin());
        size_t i2 = static_cast<size_t>(
            std::find(fibre.begin(), fibre.end(), a2) - fibre.begin());
        img[i] = static_cast<uint8_t>(2 * z[i1] + z[i2]);
      }
      pushed[img] += w;
    }
    factors.emplace_back(ConfigSpace{static_cast<int>(cols.size()), 3}, std::move(pushed));
    blocks.push_back(cols);
  }
  FiniteMeasure target_law = product_measure(factors, blocks, paired_space);

  MultiliftResult result;
  result.lifted_law = std::move(lifted_law);
  result.target_law = std::move(target_law);
  result.verdict = dominates(*result.lifted_law, *result.target_law);
  result.dominated = result.verdict.yes;
  if (!result.dominated) return result;

  // Decode every witness pair back to per-site bits and check the three
  // per-column conditions at the coordinates the lift charges.
  result.decoded_ok = true;
  for (const auto& [pair, w] : result.verdict.witness->weights()) {
    (void)w;
    const Config& y = pair.first;
    const Config& z = pair.second;
    // z decodes coordinatewise: label at (a1, a2) is 2*bit(a1) + bit(a2).
    std::vector<int> bit(static_cast<size_t>(pm.a_count()), -1);
    for (int k = 0; k < sites; ++k) {
      auto [a1, a2] = idx.pairs[static_cast<size_t>(k)];
      int b1 = z[static_cast<size_t>(k)] >> 1;
      int b2 = z[static_cast<size_t>(k)] & 1;
      for (auto [a, v] : {std::pair<int, int>{a1, b1}, {a2, b2}}) {
        if (bit[static_cast<size_t>(a)] == -1)
          bit[static_cast<size_t>(a)] = v;
        else if (bit[static_cast<size_t>(a)] != v)
          throw InternalError("target atom is not a consistent pair encoding");
      }
    }
    for (int k = 0; k < sites && result.decoded_ok; ++k) {
      int label = y[static_cast<size_t>(k)];
      if (label == 0) continue;
      auto [a1, a2] = idx.pairs[static_cast<size_t>(k)];
      int z1 = bit[static_cast<size_t>(a1)];
      int z2 = bit[static_cast<size_t>(a2)];
      bool ok = true;
      if (label == 2) ok = (z1 == 1);
      if (label == 3) ok = (z1 == 1 && z2 == 1);
      if (label == 1) ok = (z1 == 1 || z2 == 1);
      if (!ok) {
        result.decoded_ok = false;
        result.decode_failure = "lifted label " + std::to_string(label) + " at pair (" +
                                std::to_string(a1) + "," + std::to_string(a2) +
                                ") not honoured by the coupled target atom";
      }
    }
    if (!result.decoded_ok) break;
  }
  return result;
}

FiniteMeasure strengthened_two_site_law(const Rational& p) {
  Rational q = Rational(1) - p;
  std::map<Config, Rational> w;
  auto add = [&](std::initializer_list<uint8_t> c, const Rational& mass) {
    if (mass > 0) w[Config(c)] += mass;
  };
  add({1, 1}, p * p);
  add({1, 0}, 2 * p * q);
  add({0, 0}, q * q);
  return FiniteMeasure(ConfigSpace{2, 1}, std::move(w));
}

}  // namespace stodom
