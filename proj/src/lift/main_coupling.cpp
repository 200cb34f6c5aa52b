#include "lift/main_coupling.hpp"

namespace stodom {

namespace {

// Restriction of a configuration to the sites of one fibre, ascending.
Config column_part(const Config& c, const std::vector<int>& fibre) {
  Config out(fibre.size());
  for (size_t i = 0; i < fibre.size(); ++i) out[i] = c[static_cast<size_t>(fibre[i])];
  return out;
}

Config outside_part(const Config& c, const std::vector<int>& outside) {
  Config out(outside.size());
  for (size_t i = 0; i < outside.size(); ++i) out[i] = c[static_cast<size_t>(outside[i])];
  return out;
}

}  // namespace

Coupling build_main_coupling(const FiniteMeasure& mu, const FiniteMeasure& rho,
                             const FibreMap& pm) {
  if (!(mu.space() == rho.space()))
    throw InputError(space_mismatch_msg(mu.space(), rho.space()));
  if (!is_pi_lift(mu, pm)) throw AssumptionError("pi-lift", "mu charges a two-per-fibre atom");
  AssumptionReport a = check_assumption_A(rho, pm);
  if (!a.holds) throw AssumptionError("A", a.witness);

  const int columns = pm.b_count();
  const ConfigSpace space = mu.space();
  const int N = space.label_bound;

  // flattened[n] = mu with columns n..K-1 still intact, 0..n-1 handled later:
  // flattened[K] = mu, flattened[n] = flatten_column(flattened[n+1], n).
  std::vector<FiniteMeasure> flattened;
  flattened.reserve(static_cast<size_t>(columns) + 1);
  flattened.push_back(mu);
  for (int n = columns - 1; n >= 0; --n)
    flattened.push_back(flatten_column(flattened.back(), pm, n));
  std::reverse(flattened.begin(), flattened.end());

  DominatesResult base = dominates(flattened.front(), rho);
  if (!base.yes)
    throw AssumptionError("B", "flattened measure not dominated; violating up-set has mass " +
                                   rational_str(base.violator_mu_mass) + " vs " +
                                   rational_str(base.violator_rho_mass));
  Coupling eta = std::move(*base.witness);

  for (int col = 0; col < columns; ++col) {
    const FiniteMeasure& mu_next = flattened[static_cast<size_t>(col) + 1];
    const std::vector<int>& fibre = pm.fibre(col);
    std::vector<int> outside;
    for (int s = 0; s < space.sites; ++s)
      if (pm.pi(s) != col) outside.push_back(s);

    // Pull eta back through this column's flatten map. The result couples
    // mu_next with rho; outside the column and at the distinguished site it
    // inherits eta's pointwise inequalities, but the column itself may break
    // monotonicity and is rebuilt below.
    Coupling pulled = extend_coupling(
        mu_next, rho,
        [&](const Config& c) -> std::optional<Config> { return flatten_config(c, pm, col); },
        [](const Config& c) -> std::optional<Config> { return c; }, eta);

    // Split on the atoms of the target's outside-column coordinates.
    std::map<Config, std::map<std::pair<Config, Config>, Rational>> groups;
    std::map<Config, Rational> group_mass;
    for (const auto& [pair, q] : pulled.weights()) {
      Config d = outside_part(pair.second, outside);
      groups[d][pair] += q;
      group_mass[d] += q;
    }

    std::vector<std::pair<Rational, Coupling>> parts;
    for (auto& [d, entries] : groups) {
      const Rational& mass = group_mass[d];
      for (auto& [pair, q] : entries) q /= mass;
      Coupling cond(space, space, std::move(entries));

      FiniteMeasure y_cond = cond.first_marginal();
      FiniteMeasure z_cond = cond.second_marginal();
      FiniteMeasure y_col = pushforward_sites(y_cond, fibre, N);
      FiniteMeasure z_col = pushforward_sites(z_cond, fibre, N);

      Coupling column_coupling = one_column_coupling(value_position_law(y_col), z_col);

      // Extend the column coupling back to full configurations; outside the
      // column the conditional pair is already pointwise ordered.
      auto project = [&](const Config& c) -> std::optional<Config> {
        return column_part(c, fibre);
      };
      parts.emplace_back(mass, extend_coupling(y_cond, z_cond, project, project, column_coupling));
    }
    eta = integrate_couplings(parts);
  }

  if (!is_monotone_coupling(eta, mu, rho))
    throw InternalError("main coupling construction produced a non-monotone coupling");
  return eta;
}

}  // namespace stodom
