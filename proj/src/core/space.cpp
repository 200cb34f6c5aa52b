#include "core/space.hpp"

#include <sstream>

#include "core/errors.hpp"

namespace stodom {

bool config_leq(const Config& a, const Config& b) {
  if (a.size() != b.size()) throw InputError("config_leq on configurations of different length");
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::string config_key(const Config& c) {
  std::string out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(static_cast<int>(c[i]));
  }
  return out;
}

Config parse_config_key(const std::string& key, const ConfigSpace& space) {
  Config c;
  c.reserve(static_cast<size_t>(space.sites));
  std::stringstream ss(key);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw InputError("empty label in configuration key: " + key);
    int v = 0;
    try {
      v = std::stoi(tok);
    } catch (const std::exception&) {
      throw InputError("malformed label in configuration key: " + key);
    }
    if (v < 0 || v > space.label_bound)
      throw InputError("label " + tok + " outside 0.." + std::to_string(space.label_bound));
    c.push_back(static_cast<uint8_t>(v));
  }
  if (static_cast<int>(c.size()) != space.sites)
    throw InputError("configuration key has " + std::to_string(c.size()) + " labels, expected " +
                     std::to_string(space.sites));
  return c;
}

uint64_t config_count(const ConfigSpace& space, uint64_t cap) {
  uint64_t n = 1;
  for (int i = 0; i < space.sites; ++i) {
    n *= static_cast<uint64_t>(space.label_bound) + 1;
    if (n > cap)
      throw SizeError("configuration space larger than cap " + std::to_string(cap));
  }
  return n;
}

std::vector<Config> all_configs(const ConfigSpace& space, uint64_t cap) {
  uint64_t n = config_count(space, cap);
  std::vector<Config> out;
  out.reserve(n);
  Config c(static_cast<size_t>(space.sites), 0);
  while (true) {
    out.push_back(c);
    int i = space.sites - 1;
    while (i >= 0 && c[static_cast<size_t>(i)] == space.label_bound) {
      c[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++c[static_cast<size_t>(i)];
  }
  return out;
}

std::string space_mismatch_msg(const ConfigSpace& got, const ConfigSpace& want) {
  return "configuration space mismatch: got (" + std::to_string(got.sites) + "," +
         std::to_string(got.label_bound) + "), want (" + std::to_string(want.sites) + "," +
         std::to_string(want.label_bound) + ")";
}

}  // namespace stodom
