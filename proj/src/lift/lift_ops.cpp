#include "lift/lift_ops.hpp"

#include <nlohmann/json.hpp>

#include "core/errors.hpp"

namespace stodom {

bool is_pi_lift(const FiniteMeasure& mu, const FibreMap& pm) {
  if (mu.space().sites != pm.a_count())
    throw InputError("measure sites do not match the fibre map's A");
  for (const auto& [c, w] : mu.weights()) {
    (void)w;
    for (int b = 0; b < pm.b_count(); ++b) {
      int nonzero = 0;
      for (int a : pm.fibre(b))
        if (c[static_cast<size_t>(a)] != 0) ++nonzero;
      if (nonzero > 1) return false;
    }
  }
  return true;
}

FiniteMeasure pushdown(const FiniteMeasure& mu, const FibreMap& pm) {
  if (!is_pi_lift(mu, pm)) throw InputError("pushdown of a measure that is not a pi-lift");
  ConfigSpace target = pm.b_space(mu.space().label_bound);
  return pushforward(
      mu,
      [&](const Config& c) -> std::optional<Config> {
        Config out(static_cast<size_t>(pm.b_count()), 0);
        for (int b = 0; b < pm.b_count(); ++b) {
          uint8_t m = 0;
          for (int a : pm.fibre(b)) m = std::max(m, c[static_cast<size_t>(a)]);
          out[static_cast<size_t>(b)] = m;
        }
        return out;
      },
      target);
}

Config flatten_config(const Config& c, const FibreMap& pm, int b) {
  Config out = c;
  uint8_t m = 0;
  for (int a : pm.fibre(b)) {
    m = std::max(m, c[static_cast<size_t>(a)]);
    out[static_cast<size_t>(a)] = 0;
  }
  out[static_cast<size_t>(pm.section_at(b))] = m;
  return out;
}

FiniteMeasure flatten_column(const FiniteMeasure& mu, const FibreMap& pm, int b) {
  if (!pm.has_section()) throw InputError("flatten requires a distinguished section");
  if (b < 0 || b >= pm.b_count()) throw InputError("column index out of range");
  return pushforward(
      mu,
      [&](const Config& c) -> std::optional<Config> { return flatten_config(c, pm, b); },
      mu.space());
}

FiniteMeasure flatten_all(const FiniteMeasure& mu, const FibreMap& pm) {
  FiniteMeasure out = mu;
  for (int b = 0; b < pm.b_count(); ++b) out = flatten_column(out, pm, b);
  return out;
}

namespace {
void check_env_config(const Config& c, const FibreMap& pm, int label_bound) {
  for (int b = 0; b < pm.b_count(); ++b) {
    if (c[static_cast<size_t>(b)] > label_bound)
      throw InputError("environment X label exceeds bound");
    uint8_t idx = c[static_cast<size_t>(pm.b_count() + b)];
    if (idx >= pm.fibre(b).size())
      throw InputError("environment section index outside fibre at column " + std::to_string(b));
  }
}
}  // namespace

LiftEnvironment::LiftEnvironment(FibreMap pm, int label_bound, FiniteMeasure joint)
    : pm_(std::move(pm)), label_bound_(label_bound), joint_(std::move(joint)) {
  int want_sites = 2 * pm_.b_count();
  if (joint_.space().sites != want_sites)
    throw InputError("environment joint must have " + std::to_string(want_sites) + " sites");
  for (const auto& [c, w] : joint_.weights()) {
    (void)w;
    check_env_config(c, pm_, label_bound_);
  }
}

LiftEnvironment LiftEnvironment::deterministic_strategy(
    const FibreMap& pm, const FiniteMeasure& x_law,
    const std::map<Config, std::vector<int>>& table) {
  if (x_law.space().sites != pm.b_count())
    throw InputError("X law must live on B-space");
  int bound = std::max<int>(x_law.space().label_bound,
                            static_cast<int>(pm.max_fibre_size()) - 1);
  std::map<Config, Rational> joint;
  for (const auto& [x, w] : x_law.weights()) {
    auto it = table.find(x);
    if (it == table.end())
      throw InputError("strategy table missing X configuration " + config_key(x));
    Config c(static_cast<size_t>(2 * pm.b_count()), 0);
    for (int b = 0; b < pm.b_count(); ++b) {
      c[static_cast<size_t>(b)] = x[static_cast<size_t>(b)];
      const auto& fibre = pm.fibre(b);
      int a = it->second[static_cast<size_t>(b)];
      auto pos = std::find(fibre.begin(), fibre.end(), a);
      if (pos == fibre.end())
        throw InputError("strategy section not in fibre at column " + std::to_string(b));
      c[static_cast<size_t>(pm.b_count() + b)] =
          static_cast<uint8_t>(pos - fibre.begin());
    }
    joint[c] += w;
  }
  ConfigSpace space{2 * pm.b_count(), bound};
  return LiftEnvironment(pm, x_law.space().label_bound, FiniteMeasure(space, std::move(joint)));
}

FiniteMeasure LiftEnvironment::x_marginal() const {
  std::vector<int> sites(static_cast<size_t>(pm_.b_count()));
  for (int b = 0; b < pm_.b_count(); ++b) sites[static_cast<size_t>(b)] = b;
  return pushforward_sites(joint_, sites, label_bound_);
}

std::string LiftEnvironment::to_json() const {
  nlohmann::json j;
  j["pm"] = nlohmann::json::parse(pm_.to_json());
  j["label_bound"] = label_bound_;
  j["joint"] = nlohmann::json::parse(joint_.to_json());
  return j.dump();
}

LiftEnvironment LiftEnvironment::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed environment JSON: ") + e.what());
  }
  FibreMap pm = FibreMap::from_json(j.at("pm").dump());
  int bound = j.at("label_bound").get<int>();
  if (j.contains("joint"))
    return LiftEnvironment(std::move(pm), bound,
                           FiniteMeasure::from_json(j.at("joint").dump()));
  // Compact form: independent X plus a deterministic strategy table.
  FiniteMeasure x_law = FiniteMeasure::from_json(j.at("x_law").dump());
  std::map<Config, std::vector<int>> table;
  for (const auto& [key, val] : j.at("strategy").items())
    table[parse_config_key(key, x_law.space())] = val.get<std::vector<int>>();
  return LiftEnvironment::deterministic_strategy(pm, x_law, table);
}

FiniteMeasure lift_distribution(const LiftEnvironment& env) {
  const FibreMap& pm = env.pm();
  ConfigSpace target = pm.a_space(env.label_bound());
  std::map<Config, Rational> w;
  for (const auto& [c, q] : env.joint().weights()) {
    Config y(static_cast<size_t>(pm.a_count()), 0);
    for (int b = 0; b < pm.b_count(); ++b) {
      int a = pm.fibre(b)[c[static_cast<size_t>(pm.b_count() + b)]];
      y[static_cast<size_t>(a)] = c[static_cast<size_t>(b)];
    }
    w[y] += q;
  }
  return FiniteMeasure(target, std::move(w));
}

}  // namespace stodom
