#include "bk/checks.hpp"

#include <deque>

#include "core/errors.hpp"
#include "perco/reach.hpp"

namespace stodom::bk {

InequalityReport check_product_bound(const Event& e1, const Event& e2,
                                     const std::vector<Rational>& p) {
  if (!is_increasing(e1) || !is_increasing(e2))
    throw InputError("product bound requires increasing events");
  InequalityReport report;
  report.lhs = event_probability(disjoint_occurrence_fast(e1, e2), p);
  report.rhs = event_probability(e1, p) * event_probability(e2, p);
  report.holds = report.lhs <= report.rhs;
  report.gap = report.rhs - report.lhs;
  return report;
}

PairLaw fibre_selection_pair_law() {
  return {Rational(0), rat(1, 2), rat(1, 2), Rational(0)};
}

InequalityReport check_paired_bound(const Event& e1, const Event& e2,
                                    const std::vector<Rational>& p,
                                    const std::vector<PairLaw>& pair_laws) {
  if (!is_increasing(e1) || !is_increasing(e2))
    throw InputError("paired bound requires increasing events");
  const int n = e1.ground_size();
  if (static_cast<int>(p.size()) != n || static_cast<int>(pair_laws.size()) != n)
    throw InputError("one parameter and one pair law per coordinate required");
  for (int i = 0; i < n; ++i) {
    const PairLaw& law = pair_laws[static_cast<size_t>(i)];
    Rational mass = law[0] + law[1] + law[2] + law[3];
    if (mass != 1) throw InputError("pair law does not have mass 1");
    for (const auto& w : law)
      if (w < 0) throw InputError("pair law with negative weight");
    Rational first = law[2] + law[3];   // first copy open
    Rational second = law[1] + law[3];  // second copy open
    if (first < p[static_cast<size_t>(i)] || second < p[static_cast<size_t>(i)])
      throw InputError("pair law marginal below the required parameter at coordinate " +
                       std::to_string(i));
  }

  InequalityReport report;
  report.lhs = event_probability(disjoint_occurrence_fast(e1, e2), p);
  // P_pair(e1 x e2): sum over pairs of configurations with the coordinatewise
  // pair weights.
  Rational rhs(0);
  const uint32_t count = e1.config_count();
  for (uint32_t w1 = 0; w1 < count; ++w1) {
    if (!e1.test(w1)) continue;
    for (uint32_t w2 = 0; w2 < count; ++w2) {
      if (!e2.test(w2)) continue;
      Rational term(1);
      for (int i = 0; i < n; ++i) {
        int key = 2 * (w1 >> i & 1u) + (w2 >> i & 1u);
        term *= pair_laws[static_cast<size_t>(i)][static_cast<size_t>(key)];
        if (term == 0) break;
      }
      rhs += term;
    }
  }
  report.rhs = rhs;
  report.holds = report.lhs <= report.rhs;
  report.gap = report.rhs - report.lhs;
  return report;
}

TwoArmReport two_arm_check(const perco::Graph& g, int v, int radius, const Rational& p,
                           int cap) {
  perco::Ball ball = perco::build_ball(g, v, radius);
  const int k = static_cast<int>(ball.edge_ids.size());
  if (k > cap)
    throw SizeError("two-arm check needs " + std::to_string(k) + " edges, cap is " +
                    std::to_string(cap));

  // Arm event over the ball's edges: v reaches the sphere through open edges.
  Event arm(k);
  for (uint32_t mask = 0; mask < (uint32_t(1) << k); ++mask) {
    perco::PercSample sample;
    sample.mode = perco::Mode::bond;
    sample.open.assign(static_cast<size_t>(g.edge_count()), false);
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1u)
        sample.open[static_cast<size_t>(ball.edge_ids[static_cast<size_t>(i)])] = true;
    if (perco::reach_sample(g, ball, sample, v)) arm.set(mask);
  }

  std::vector<Rational> weights(static_cast<size_t>(k), p);
  TwoArmReport report;
  report.one_arm = event_probability(arm, weights);
  report.two_arm = event_probability(disjoint_occurrence_fast(arm, arm), weights);
  report.one_arm_squared = report.one_arm * report.one_arm;
  report.product_bound_holds = report.two_arm <= report.one_arm_squared;
  return report;
}

}  // namespace stodom::bk
