#include "lift/one_column.hpp"

namespace stodom {

FiniteMeasure placed_law(const FiniteMeasure& value_pos, const ConfigSpace& target) {
  std::map<Config, Rational> w;
  for (const auto& [vp, q] : value_pos.weights()) {
    Config c(static_cast<size_t>(target.sites), 0);
    if (vp[0] > 0) c[vp[1]] = vp[0];
    w[c] += q;
  }
  return FiniteMeasure(target, std::move(w));
}

FiniteMeasure value_position_law(const FiniteMeasure& column_law) {
  const ConfigSpace& sp = column_law.space();
  int bound = std::max(sp.label_bound, sp.sites - 1);
  std::map<Config, Rational> w;
  for (const auto& [c, q] : column_law.weights()) {
    int pos = 0;
    uint8_t val = 0;
    int nonzero = 0;
    for (int i = 0; i < sp.sites; ++i) {
      if (c[static_cast<size_t>(i)] != 0) {
        ++nonzero;
        pos = i;
        val = c[static_cast<size_t>(i)];
      }
    }
    if (nonzero > 1) throw InputError("column law has more than one nonzero entry");
    Config vp{val, static_cast<uint8_t>(val == 0 ? 0 : pos)};
    w[vp] += q;
  }
  return FiniteMeasure(ConfigSpace{2, bound}, std::move(w));
}

Coupling one_column_coupling(const FiniteMeasure& value_pos, const FiniteMeasure& rho) {
  const int M = rho.space().sites;
  const int N = rho.space().label_bound;
  if (value_pos.space().sites != 2) throw InputError("value-position law must have 2 sites");
  for (const auto& [vp, q] : value_pos.weights()) {
    (void)q;
    if (vp[0] > N) throw InputError("value exceeds target label bound");
    if (vp[1] >= M) throw InputError("position exceeds target site count");
  }

  // Precondition: law(X) dominated by every coordinate marginal of rho.
  FiniteMeasure x_law = site_marginal(value_pos, 0);
  for (int c = 0; c < M; ++c) {
    FiniteMeasure marg = site_marginal(rho, c);
    for (int t = 1; t <= N; ++t) {
      auto tail = [t](const Config& cf) { return cf[0] >= t; };
      if (x_law.mass(tail) > marg.mass(tail)) throw OneColumnError(c);
    }
  }

  // Mass to place per state (value, position), plus the zero state.
  std::map<std::pair<int, int>, Rational> need;
  Rational need_zero(0);
  for (const auto& [vp, q] : value_pos.weights()) {
    if (vp[0] == 0)
      need_zero += q;
    else
      need[{static_cast<int>(vp[0]), static_cast<int>(vp[1])}] += q;
  }

  std::map<Config, Rational> remaining = rho.weights();
  ConfigSpace target = rho.space();
  std::map<std::pair<Config, Config>, Rational> w;

  auto place = [&](const Config& placed, Rational mass,
                   const std::function<bool(const Config&)>& admissible) {
    for (auto& [beta, room] : remaining) {
      if (mass == 0) break;
      if (room == 0 || !admissible(beta)) continue;
      Rational take = std::min(mass, room);
      w[{placed, beta}] += take;
      room -= take;
      mass -= take;
    }
    if (mass != 0) throw InternalError("greedy placement ran out of admissible target mass");
  };

  for (int i = N; i >= 1; --i) {
    for (int j = 0; j < M; ++j) {
      auto it = need.find({i, j});
      if (it == need.end() || it->second == 0) continue;
      Config placed(static_cast<size_t>(M), 0);
      placed[static_cast<size_t>(j)] = static_cast<uint8_t>(i);
      place(placed, it->second,
            [i, j](const Config& beta) { return beta[static_cast<size_t>(j)] >= i; });
    }
  }
  if (need_zero > 0)
    place(Config(static_cast<size_t>(M), 0), need_zero, [](const Config&) { return true; });

  Coupling result(target, target, std::move(w));
  // Both marginals are forced once all mass is placed; keep the exact check
  // as a guard on the construction.
  if (!(result.first_marginal() == placed_law(value_pos, target)) ||
      !(result.second_marginal() == rho))
    throw InternalError("one-column coupling has wrong marginals");
  return result;
}

}  // namespace stodom
