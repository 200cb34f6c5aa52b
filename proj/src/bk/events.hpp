#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace stodom::bk {

// A subset of {0,1}^C for a ground set of at most 20 coordinates, stored as
// a membership bitset over all 2^|C| configurations (configuration = bitmask
// of its 1-coordinates).
class Event {
 public:
  explicit Event(int ground_size);

  int ground_size() const { return n_; }
  uint32_t config_count() const { return uint32_t(1) << n_; }
  bool test(uint32_t config) const {
    return bits_[config >> 6] >> (config & 63) & 1u;
  }
  void set(uint32_t config, bool value = true);

  bool operator==(const Event& other) const = default;

  static Event empty(int ground_size) { return Event(ground_size); }
  static Event full(int ground_size);
  // Up-closure of the given configurations (their supersets included).
  static Event from_min_terms(int ground_size, const std::vector<uint32_t>& terms);
  // Hex membership string, lowest configuration = least significant bit.
  static Event from_hex(int ground_size, const std::string& hex);
  std::string to_hex() const;

 private:
  int n_;
  std::vector<uint64_t> bits_;
};

bool is_increasing(const Event& e);

// Membership by exhaustive search over all pairs of disjoint witness sets.
// Exponential (about 4^|C| cylinder checks); guarded for |C| <= 12.
Event disjoint_occurrence_general(const Event& e1, const Event& e2);

// Increasing-events fast path: witnesses need only pin 1-coordinates, so a
// configuration is in the disjoint occurrence iff its 1-set splits into a
// part certifying e1 and a disjoint part certifying e2.
Event disjoint_occurrence_fast(const Event& e1, const Event& e2);

// Fast path when both events are increasing, general search otherwise.
Event disjoint_occurrence(const Event& e1, const Event& e2);

// Exact probability under independent per-coordinate Bernoulli weights.
Rational event_probability(const Event& e, const std::vector<Rational>& p);

// All increasing events on the ground set, generated by recursive up-set
// construction (decideable freely only when no superset has been excluded).
std::vector<Event> enumerate_increasing(int ground_size);

}  // namespace stodom::bk
