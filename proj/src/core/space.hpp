#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stodom {

// A labelled configuration space: `sites` coordinates, each carrying an
// integer label in 0..label_bound. The implicit order is always the
// product order (coordinatewise <=).
struct ConfigSpace {
  int sites = 0;
  int label_bound = 1;
  bool operator==(const ConfigSpace&) const = default;
};

using Config = std::vector<uint8_t>;

bool config_leq(const Config& a, const Config& b);

// "l0,l1,...,l{n-1}" — the key format used by the measure JSON files.
std::string config_key(const Config& c);
Config parse_config_key(const std::string& key, const ConfigSpace& space);

// Number of configurations, or throws SizeError above `cap`.
uint64_t config_count(const ConfigSpace& space, uint64_t cap);

// All configurations in lexicographic order. Guarded by `cap`.
std::vector<Config> all_configs(const ConfigSpace& space, uint64_t cap);

std::string space_mismatch_msg(const ConfigSpace& got, const ConfigSpace& want);

}  // namespace stodom
