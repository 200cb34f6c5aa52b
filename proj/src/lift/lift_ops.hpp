#pragma once

#include <map>

#include "core/measure.hpp"
#include "lift/fibre_map.hpp"

namespace stodom {

// True iff every support configuration of mu has at most one nonzero entry
// in each fibre of pm.
bool is_pi_lift(const FiniteMeasure& mu, const FibreMap& pm);

// Image of a lift under the per-fibre maximum, a measure on B-space.
// Precondition: is_pi_lift(mu, pm).
FiniteMeasure pushdown(const FiniteMeasure& mu, const FibreMap& pm);

// Column map at b: the fibre maximum moves to the distinguished section site,
// all other sites of the column become 0, and other columns are untouched.
Config flatten_config(const Config& c, const FibreMap& pm, int b);
FiniteMeasure flatten_column(const FiniteMeasure& mu, const FibreMap& pm, int b);

// mu flattened through the distinguished section in every column.
FiniteMeasure flatten_all(const FiniteMeasure& mu, const FibreMap& pm);

// Joint law of a column-value family X on B and a random section S, encoded
// on one configuration space: sites 0..B-1 carry the X labels (bound N) and
// sites B..2B-1 carry fibre-local section indices.
class LiftEnvironment {
 public:
  LiftEnvironment(FibreMap pm, int label_bound, FiniteMeasure joint);

  // Independent X with a deterministic section strategy: the table maps each
  // X configuration on B to a section (vector B -> A). Configurations missing
  // from the table but charged by x_law are an input error.
  static LiftEnvironment deterministic_strategy(const FibreMap& pm, const FiniteMeasure& x_law,
                                                const std::map<Config, std::vector<int>>& table);

  const FibreMap& pm() const { return pm_; }
  int label_bound() const { return label_bound_; }
  const FiniteMeasure& joint() const { return joint_; }

  // Marginal law of X on B-space.
  FiniteMeasure x_marginal() const;

  std::string to_json() const;
  static LiftEnvironment from_json(const std::string& text);

 private:
  FibreMap pm_;
  int label_bound_;
  FiniteMeasure joint_;
};

// Exact law of the lifted family: Y_a = X_{pi(a)} when the sampled section
// selects a, and 0 otherwise. The result is always a pi-lift.
FiniteMeasure lift_distribution(const LiftEnvironment& env);

}  // namespace stodom
