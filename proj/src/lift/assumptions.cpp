#include "lift/assumptions.hpp"

#include <set>

#include "core/errors.hpp"

namespace stodom {

namespace {

// Sites outside the fibre of b, in ascending order.
std::vector<int> outside_sites(const FibreMap& pm, int b) {
  std::vector<int> out;
  for (int a = 0; a < pm.a_count(); ++a)
    if (pm.pi(a) != b) out.push_back(a);
  return out;
}

}  // namespace

AssumptionReport check_assumption_A(const FiniteMeasure& rho, const FibreMap& pm) {
  if (!pm.has_section()) throw InputError("assumption check requires a distinguished section");
  if (rho.space().sites != pm.a_count())
    throw InputError("measure sites do not match the fibre map's A");
  for (int b = 0; b < pm.b_count(); ++b) {
    std::vector<int> outside = outside_sites(pm, b);
    // Atoms of the outside-column coordinates charged by rho.
    std::set<Config> atoms;
    for (const auto& [c, w] : rho.weights()) {
      (void)w;
      Config d(outside.size());
      for (size_t i = 0; i < outside.size(); ++i)
        d[i] = c[static_cast<size_t>(outside[i])];
      atoms.insert(std::move(d));
    }
    int s_site = pm.section_at(b);
    for (const auto& d : atoms) {
      FiniteMeasure cond = conditional(rho, [&](const Config& c) {
        for (size_t i = 0; i < outside.size(); ++i)
          if (c[static_cast<size_t>(outside[i])] != d[i]) return false;
        return true;
      });
      FiniteMeasure law_s = site_marginal(cond, s_site);
      for (int a : pm.fibre(b)) {
        if (a == s_site) continue;
        if (!scalar_dominates(law_s, site_marginal(cond, a))) {
          return {false, "column " + std::to_string(b) + ", site " + std::to_string(a) +
                             ", conditioning atom (" + config_key(d) +
                             ") on the outside coordinates"};
        }
      }
    }
  }
  return {true, ""};
}

AssumptionReport check_assumption_B(const FiniteMeasure& mu, const FiniteMeasure& rho,
                                    const FibreMap& pm) {
  if (!pm.has_section()) throw InputError("assumption check requires a distinguished section");
  if (!is_pi_lift(mu, pm)) throw InputError("assumption B requires mu to be a pi-lift");
  DominatesResult r = dominates(flatten_all(mu, pm), rho);
  if (r.yes) return {true, ""};
  return {false, "flattened measure not dominated; violating up-set has mass " +
                     rational_str(r.violator_mu_mass) + " vs " +
                     rational_str(r.violator_rho_mass)};
}

AssumptionReport check_assumption_C(const FiniteMeasure& mu, const FiniteMeasure& rho,
                                    const FibreMap& pm, uint64_t section_cap) {
  if (!is_pi_lift(mu, pm)) throw InputError("assumption C requires mu to be a pi-lift");
  FiniteMeasure down = pushdown(mu, pm);
  AssumptionReport report{true, ""};
  for_each_section(pm, section_cap, [&](const std::vector<int>& s) {
    DominatesResult r = dominates(down, section_marginal(rho, pm, s));
    if (!r.yes) {
      std::string desc = "section (";
      for (size_t i = 0; i < s.size(); ++i)
        desc += (i ? "," : "") + std::to_string(s[i]);
      desc += ") has pushdown mass " + rational_str(r.violator_mu_mass) +
              " above marginal mass " + rational_str(r.violator_rho_mass);
      report = {false, desc};
      return false;
    }
    return true;
  });
  return report;
}

FiniteMeasure section_marginal(const FiniteMeasure& rho, const FibreMap& pm,
                               const std::vector<int>& s) {
  if (static_cast<int>(s.size()) != pm.b_count())
    throw InputError("section has wrong length");
  return pushforward_sites(rho, s);
}

bool check_sufficiently_symmetric(const FiniteMeasure& rho, const FibreMap& pm,
                                  const ColumnGenerators& generators) {
  if (static_cast<int>(generators.size()) != pm.b_count())
    throw InputError("one generator list per column required");
  for (int b = 0; b < pm.b_count(); ++b) {
    const auto& fibre = pm.fibre(b);
    const size_t n = fibre.size();
    for (const auto& perm : generators[static_cast<size_t>(b)]) {
      if (perm.size() != n) throw InputError("generator does not fix its column setwise");
      std::vector<bool> seen(n, false);
      for (int v : perm) {
        if (v < 0 || static_cast<size_t>(v) >= n || seen[static_cast<size_t>(v)])
          throw InputError("generator is not a permutation of its fibre");
        seen[static_cast<size_t>(v)] = true;
      }
      // The generator, extended by the identity elsewhere, must preserve rho.
      std::vector<int> site_map(static_cast<size_t>(pm.a_count()));
      for (int a = 0; a < pm.a_count(); ++a) site_map[static_cast<size_t>(a)] = a;
      for (size_t i = 0; i < n; ++i)
        site_map[static_cast<size_t>(fibre[i])] = fibre[static_cast<size_t>(perm[i])];
      if (!(pushforward_sites(rho, site_map) == rho)) return false;
    }
    // Orbit closure of the generators must cover the fibre.
    std::vector<bool> orbit(n, false);
    orbit[0] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& perm : generators[static_cast<size_t>(b)]) {
        for (size_t i = 0; i < n; ++i) {
          size_t j = static_cast<size_t>(perm[i]);
          if (orbit[i] && !orbit[j]) {
            orbit[j] = true;
            grew = true;
          }
          if (orbit[j] && !orbit[i]) {
            orbit[i] = true;
            grew = true;
          }
        }
      }
    }
    for (bool in : orbit)
      if (!in) return false;
  }
  return true;
}

ColumnGenerators transposition_generators(const FibreMap& pm) {
  ColumnGenerators gens(static_cast<size_t>(pm.b_count()));
  for (int b = 0; b < pm.b_count(); ++b) {
    size_t n = pm.fibre(b).size();
    for (size_t i = 0; i + 1 < n; ++i) {
      std::vector<int> perm(n);
      for (size_t k = 0; k < n; ++k) perm[k] = static_cast<int>(k);
      std::swap(perm[i], perm[i + 1]);
      gens[static_cast<size_t>(b)].push_back(std::move(perm));
    }
  }
  return gens;
}

}  // namespace stodom
