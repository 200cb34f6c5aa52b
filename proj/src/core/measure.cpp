#include "core/measure.hpp"

#include <nlohmann/json.hpp>

#include "core/errors.hpp"

namespace stodom {

namespace {
using nlohmann::json;

void check_config(const Config& c, const ConfigSpace& space) {
  if (static_cast<int>(c.size()) != space.sites)
    throw InputError("configuration has " + std::to_string(c.size()) + " sites, expected " +
                     std::to_string(space.sites));
  for (uint8_t v : c)
    if (v > space.label_bound)
      throw InputError("label " + std::to_string(int(v)) + " exceeds bound " +
                       std::to_string(space.label_bound));
}
}  // namespace

FiniteMeasure::FiniteMeasure(ConfigSpace space, std::map<Config, Rational> weights)
    : space_(space), weights_(std::move(weights)) {
  if (space_.sites < 0 || space_.label_bound < 0) throw InputError("invalid configuration space");
  if (weights_.empty()) throw InputError("measure with empty support");
  Rational total(0);
  for (const auto& [c, w] : weights_) {
    check_config(c, space_);
    if (w <= 0) throw InputError("measure with non-positive weight at " + config_key(c));
    total += w;
  }
  if (total != 1) throw InputError("measure weights sum to " + rational_str(total) + ", not 1");
}

Rational FiniteMeasure::at(const Config& c) const {
  auto it = weights_.find(c);
  return it == weights_.end() ? Rational(0) : it->second;
}

Rational FiniteMeasure::mass(const std::function<bool(const Config&)>& event) const {
  Rational total(0);
  for (const auto& [c, w] : weights_)
    if (event(c)) total += w;
  return total;
}

FiniteMeasure FiniteMeasure::point_mass(ConfigSpace space, Config c) {
  std::map<Config, Rational> w;
  w.emplace(std::move(c), Rational(1));
  return FiniteMeasure(space, std::move(w));
}

FiniteMeasure FiniteMeasure::uniform(ConfigSpace space, const std::vector<Config>& support) {
  if (support.empty()) throw InputError("uniform measure over empty support");
  std::map<Config, Rational> w;
  Rational share(1, static_cast<unsigned long>(support.size()));
  share.canonicalize();
  for (const auto& c : support) {
    if (!w.emplace(c, share).second)
      throw InputError("duplicate configuration in uniform support: " + config_key(c));
  }
  return FiniteMeasure(space, std::move(w));
}

FiniteMeasure FiniteMeasure::bernoulli_product(int sites, const Rational& p) {
  if (p < 0 || p > 1) throw InputError("Bernoulli parameter outside [0,1]");
  ConfigSpace space{sites, 1};
  std::map<Config, Rational> w;
  Rational q = Rational(1) - p;
  for (const auto& c : all_configs(space, uint64_t(1) << 26)) {
    Rational weight(1);
    for (uint8_t v : c) weight *= (v ? p : q);
    if (weight > 0) w.emplace(c, weight);
  }
  return FiniteMeasure(space, std::move(w));
}

std::string FiniteMeasure::to_json() const {
  json j;
  j["sites"] = space_.sites;
  j["label_bound"] = space_.label_bound;
  json w = json::object();
  for (const auto& [c, q] : weights_) w[config_key(c)] = rational_str(q);
  j["weights"] = w;
  return j.dump();
}

FiniteMeasure FiniteMeasure::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed measure JSON: ") + e.what());
  }
  if (!j.contains("sites") || !j.contains("label_bound") || !j.contains("weights"))
    throw InputError("measure JSON needs sites, label_bound and weights");
  ConfigSpace space{j.at("sites").get<int>(), j.at("label_bound").get<int>()};
  std::map<Config, Rational> w;
  for (const auto& [key, val] : j.at("weights").items())
    w[parse_config_key(key, space)] = parse_rational(val.get<std::string>());
  return FiniteMeasure(space, std::move(w));
}

FiniteMeasure pushforward(const FiniteMeasure& mu,
                          const std::function<std::optional<Config>(const Config&)>& f,
                          ConfigSpace target) {
  std::map<Config, Rational> w;
  for (const auto& [c, q] : mu.weights()) {
    auto image = f(c);
    if (!image) throw InputError("map undefined on support configuration " + config_key(c));
    w[*image] += q;
  }
  return FiniteMeasure(target, std::move(w));
}

FiniteMeasure pushforward_sites(const FiniteMeasure& mu, const std::vector<int>& site_map,
                                int label_bound) {
  for (int s : site_map)
    if (s < 0 || s >= mu.space().sites) throw InputError("site relabelling out of range");
  ConfigSpace target{static_cast<int>(site_map.size()),
                     label_bound < 0 ? mu.space().label_bound : label_bound};
  return pushforward(
      mu,
      [&](const Config& c) -> std::optional<Config> {
        Config out(site_map.size());
        for (size_t i = 0; i < site_map.size(); ++i) out[i] = c[static_cast<size_t>(site_map[i])];
        return out;
      },
      target);
}

FiniteMeasure conditional(const FiniteMeasure& mu,
                          const std::function<bool(const Config&)>& event) {
  Rational total(0);
  std::map<Config, Rational> w;
  for (const auto& [c, q] : mu.weights()) {
    if (event(c)) {
      w.emplace(c, q);
      total += q;
    }
  }
  if (total == 0) throw InputError("conditioning on a null event");
  for (auto& [c, q] : w) q /= total;
  return FiniteMeasure(mu.space(), std::move(w));
}

FiniteMeasure product_measure(const std::vector<FiniteMeasure>& factors,
                              const std::vector<std::vector<int>>& blocks, ConfigSpace joint) {
  if (factors.size() != blocks.size()) throw InputError("one site block per factor required");
  std::vector<int> owner(static_cast<size_t>(joint.sites), -1);
  for (size_t k = 0; k < blocks.size(); ++k) {
    if (static_cast<int>(blocks[k].size()) != factors[k].space().sites)
      throw InputError("block size does not match factor site count");
    for (int s : blocks[k]) {
      if (s < 0 || s >= joint.sites) throw InputError("block site out of range");
      if (owner[static_cast<size_t>(s)] != -1)
        throw InputError("overlapping blocks at site " + std::to_string(s));
      owner[static_cast<size_t>(s)] = static_cast<int>(k);
    }
  }
  for (int s = 0; s < joint.sites; ++s)
    if (owner[static_cast<size_t>(s)] == -1)
      throw InputError("blocks do not cover site " + std::to_string(s));

  std::map<Config, Rational> acc;
  acc.emplace(Config(static_cast<size_t>(joint.sites), 0), Rational(1));
  for (size_t k = 0; k < factors.size(); ++k) {
    std::map<Config, Rational> next;
    for (const auto& [base, wb] : acc) {
      for (const auto& [fc, wf] : factors[k].weights()) {
        Config c = base;
        for (size_t i = 0; i < blocks[k].size(); ++i) {
          uint8_t v = fc[i];
          if (v > joint.label_bound)
            throw InputError("factor label exceeds joint label bound");
          c[static_cast<size_t>(blocks[k][i])] = v;
        }
        next[c] += wb * wf;
      }
    }
    acc = std::move(next);
  }
  return FiniteMeasure(joint, std::move(acc));
}

FiniteMeasure product_measure(const std::vector<FiniteMeasure>& factors) {
  if (factors.empty()) throw InputError("product of zero factors");
  int sites = 0, bound = 0;
  std::vector<std::vector<int>> blocks;
  for (const auto& f : factors) {
    std::vector<int> block;
    for (int i = 0; i < f.space().sites; ++i) block.push_back(sites + i);
    blocks.push_back(std::move(block));
    sites += f.space().sites;
    bound = std::max(bound, f.space().label_bound);
  }
  return product_measure(factors, blocks, ConfigSpace{sites, bound});
}

bool scalar_dominates(const FiniteMeasure& law1, const FiniteMeasure& law2) {
  if (law1.space().sites != 1 || law2.space().sites != 1)
    throw InputError("scalar_dominates expects single-site measures");
  int bound = std::max(law1.space().label_bound, law2.space().label_bound);
  for (int t = 1; t <= bound; ++t) {
    auto tail = [t](const Config& c) { return c[0] >= t; };
    if (law1.mass(tail) > law2.mass(tail)) return false;
  }
  return true;
}

FiniteMeasure site_marginal(const FiniteMeasure& mu, int site) {
  return pushforward_sites(mu, {site});
}

FiniteMeasure sites_marginal(const FiniteMeasure& mu, const std::vector<int>& sites) {
  return pushforward_sites(mu, sites);
}

}  // namespace stodom
