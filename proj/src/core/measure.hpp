#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/rational.hpp"
#include "core/space.hpp"

namespace stodom {

// An exact probability measure on a finite configuration space, stored as a
// sparse support map. Invariants enforced at construction: every stored
// weight is > 0, labels are within bounds, and the weights sum to exactly 1.
// Instances are immutable after construction.
class FiniteMeasure {
 public:
  FiniteMeasure(ConfigSpace space, std::map<Config, Rational> weights);

  const ConfigSpace& space() const { return space_; }
  const std::map<Config, Rational>& weights() const { return weights_; }
  size_t support_size() const { return weights_.size(); }

  // Weight of a single configuration (0 off support).
  Rational at(const Config& c) const;
  // Total mass of an event.
  Rational mass(const std::function<bool(const Config&)>& event) const;

  bool operator==(const FiniteMeasure& other) const {
    return space_ == other.space_ && weights_ == other.weights_;
  }

  static FiniteMeasure point_mass(ConfigSpace space, Config c);
  static FiniteMeasure uniform(ConfigSpace space, const std::vector<Config>& support);
  // Product of independent Bernoulli(p) labels on `sites` binary sites.
  static FiniteMeasure bernoulli_product(int sites, const Rational& p);

  std::string to_json() const;
  static FiniteMeasure from_json(const std::string& text);

 private:
  ConfigSpace space_;
  std::map<Config, Rational> weights_;
};

// Pushforward of `mu` by `f`. `f` must be defined (return a value) on every
// support configuration; a nullopt return is reported as an input error.
// The target space must be supplied because `f` is opaque.
FiniteMeasure pushforward(const FiniteMeasure& mu,
                          const std::function<std::optional<Config>(const Config&)>& f,
                          ConfigSpace target);

// Pushforward by a site relabelling: site i of the result reads site
// `site_map[i]` of the argument.
FiniteMeasure pushforward_sites(const FiniteMeasure& mu, const std::vector<int>& site_map,
                                int label_bound = -1);

// Restriction to `event`, renormalized exactly. Conditioning on a null event
// is an input error.
FiniteMeasure conditional(const FiniteMeasure& mu,
                          const std::function<bool(const Config&)>& event);

// Product measure over disjoint site blocks. `blocks[k]` lists the sites of
// factor k inside the joint space; together the blocks must partition
// 0..total_sites-1.
FiniteMeasure product_measure(const std::vector<FiniteMeasure>& factors,
                              const std::vector<std::vector<int>>& blocks, ConfigSpace joint);

// Convenience: factors laid out consecutively in the given order.
FiniteMeasure product_measure(const std::vector<FiniteMeasure>& factors);

// One-dimensional stochastic domination on [N] via exact tail comparison:
// law1 is dominated by law2 iff P(law1 >= t) <= P(law2 >= t) for all t.
// Both measures must live on single-site spaces.
bool scalar_dominates(const FiniteMeasure& law1, const FiniteMeasure& law2);

// Marginal of one site, as a single-site measure.
FiniteMeasure site_marginal(const FiniteMeasure& mu, int site);

// Marginal on an ordered list of sites.
FiniteMeasure sites_marginal(const FiniteMeasure& mu, const std::vector<int>& sites);

}  // namespace stodom
