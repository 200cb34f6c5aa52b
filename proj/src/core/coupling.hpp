#pragma once

#include <map>
#include <utility>
#include <vector>

#include "core/measure.hpp"

namespace stodom {

// A probability measure on pairs of configurations; the left and right sides
// may live on different spaces (surgery steps couple a measure with a
// projected copy of itself). Weights positive, total mass exactly 1.
class Coupling {
 public:
  Coupling(ConfigSpace left, ConfigSpace right,
           std::map<std::pair<Config, Config>, Rational> weights);

  const ConfigSpace& left_space() const { return left_; }
  const ConfigSpace& right_space() const { return right_; }
  const std::map<std::pair<Config, Config>, Rational>& weights() const { return weights_; }

  FiniteMeasure first_marginal() const;
  FiniteMeasure second_marginal() const;

  static Coupling diagonal(const FiniteMeasure& mu);

  // Serialized only for couplings whose two sides share a space.
  std::string to_json() const;
  static Coupling from_json(const std::string& text);

 private:
  ConfigSpace left_, right_;
  std::map<std::pair<Config, Config>, Rational> weights_;
};

// True iff the marginals equal mu and rho exactly and every support pair
// (a, b) satisfies a <= b in the product order.
bool is_monotone_coupling(const Coupling& c, const FiniteMeasure& mu, const FiniteMeasure& rho);

// Given maps h1, h2 and a coupling eta of the pushforwards of nu1, nu2,
// produces a coupling of nu1 and nu2 whose pushforward by (h1, h2) is eta.
// Takes the product of the conditional measures on each eta atom.
Coupling extend_coupling(const FiniteMeasure& nu1, const FiniteMeasure& nu2,
                         const std::function<std::optional<Config>(const Config&)>& h1,
                         const std::function<std::optional<Config>(const Config&)>& h2,
                         const Coupling& eta);

// Convex combination of couplings on a common pair of spaces. Probabilities
// must sum to exactly 1. A mixture of monotone couplings is monotone.
Coupling integrate_couplings(const std::vector<std::pair<Rational, Coupling>>& parts);

}  // namespace stodom
