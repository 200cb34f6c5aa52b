#include "core/coupling.hpp"

#include <nlohmann/json.hpp>

#include "core/errors.hpp"

namespace stodom {

namespace {
using nlohmann::json;
}

Coupling::Coupling(ConfigSpace left, ConfigSpace right,
                   std::map<std::pair<Config, Config>, Rational> weights)
    : left_(left), right_(right), weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("coupling with empty support");
  Rational total(0);
  for (const auto& [pair, w] : weights_) {
    if (static_cast<int>(pair.first.size()) != left_.sites ||
        static_cast<int>(pair.second.size()) != right_.sites)
      throw InputError("coupling support pair has wrong site counts");
    if (w <= 0) throw InputError("coupling with non-positive weight");
    total += w;
  }
  if (total != 1)
    throw InputError("coupling weights sum to " + rational_str(total) + ", not 1");
}

FiniteMeasure Coupling::first_marginal() const {
  std::map<Config, Rational> w;
  for (const auto& [pair, q] : weights_) w[pair.first] += q;
  return FiniteMeasure(left_, std::move(w));
}

FiniteMeasure Coupling::second_marginal() const {
  std::map<Config, Rational> w;
  for (const auto& [pair, q] : weights_) w[pair.second] += q;
  return FiniteMeasure(right_, std::move(w));
}

Coupling Coupling::diagonal(const FiniteMeasure& mu) {
  std::map<std::pair<Config, Config>, Rational> w;
  for (const auto& [c, q] : mu.weights()) w.emplace(std::make_pair(c, c), q);
  return Coupling(mu.space(), mu.space(), std::move(w));
}

std::string Coupling::to_json() const {
  if (!(left_ == right_))
    throw InputError("only couplings on a shared space are serialized");
  json j;
  j["sites"] = left_.sites;
  j["label_bound"] = left_.label_bound;
  json w = json::object();
  for (const auto& [pair, q] : weights_)
    w[config_key(pair.first) + "|" + config_key(pair.second)] = rational_str(q);
  j["weights"] = w;
  return j.dump();
}

Coupling Coupling::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed coupling JSON: ") + e.what());
  }
  ConfigSpace space{j.at("sites").get<int>(), j.at("label_bound").get<int>()};
  std::map<std::pair<Config, Config>, Rational> w;
  for (const auto& [key, val] : j.at("weights").items()) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw InputError("coupling key without '|': " + key);
    Config a = parse_config_key(key.substr(0, bar), space);
    Config b = parse_config_key(key.substr(bar + 1), space);
    w[{std::move(a), std::move(b)}] = parse_rational(val.get<std::string>());
  }
  return Coupling(space, space, std::move(w));
}

bool is_monotone_coupling(const Coupling& c, const FiniteMeasure& mu, const FiniteMeasure& rho) {
  if (!(c.left_space() == mu.space()) || !(c.right_space() == rho.space())) return false;
  if (!(c.left_space() == c.right_space())) return false;
  for (const auto& [pair, q] : c.weights()) {
    (void)q;
    if (!config_leq(pair.first, pair.second)) return false;
  }
  return c.first_marginal() == mu && c.second_marginal() == rho;
}

Coupling extend_coupling(const FiniteMeasure& nu1, const FiniteMeasure& nu2,
                         const std::function<std::optional<Config>(const Config&)>& h1,
                         const std::function<std::optional<Config>(const Config&)>& h2,
                         const Coupling& eta) {
  FiniteMeasure pf1 = pushforward(nu1, h1, eta.left_space());
  FiniteMeasure pf2 = pushforward(nu2, h2, eta.right_space());
  if (!(eta.first_marginal() == pf1) || !(eta.second_marginal() == pf2))
    throw InputError("eta does not couple the pushforwards of nu1 and nu2");

  // Fibres of each map over the support images.
  std::map<Config, std::vector<std::pair<Config, Rational>>> fibre1, fibre2;
  for (const auto& [c, q] : nu1.weights()) fibre1[*h1(c)].emplace_back(c, q);
  for (const auto& [c, q] : nu2.weights()) fibre2[*h2(c)].emplace_back(c, q);

  std::map<std::pair<Config, Config>, Rational> w;
  for (const auto& [pair, q] : eta.weights()) {
    const Rational& m1 = pf1.at(pair.first);
    const Rational& m2 = pf2.at(pair.second);
    for (const auto& [x1, w1] : fibre1.at(pair.first))
      for (const auto& [x2, w2] : fibre2.at(pair.second))
        w[{x1, x2}] += q * (w1 / m1) * (w2 / m2);
  }
  return Coupling(nu1.space(), nu2.space(), std::move(w));
}

Coupling integrate_couplings(const std::vector<std::pair<Rational, Coupling>>& parts) {
  if (parts.empty()) throw InputError("integration of zero couplings");
  Rational total(0);
  const ConfigSpace& left = parts.front().second.left_space();
  const ConfigSpace& right = parts.front().second.right_space();
  std::map<std::pair<Config, Config>, Rational> w;
  for (const auto& [prob, part] : parts) {
    if (prob < 0) throw InputError("negative mixture probability");
    if (!(part.left_space() == left) || !(part.right_space() == right))
      throw InputError("mixture of couplings on different spaces");
    total += prob;
    if (prob == 0) continue;
    for (const auto& [pair, q] : part.weights()) w[pair] += prob * q;
  }
  if (total != 1)
    throw InputError("mixture probabilities sum to " + rational_str(total) + ", not 1");
  return Coupling(left, right, std::move(w));
}

}  // namespace stodom
