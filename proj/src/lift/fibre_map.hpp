#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/space.hpp"

namespace stodom {

// A surjection pi: A -> B between finite index sets, with the fibres
// precomputed, plus an optional distinguished section (one favourite element
// per fibre). Sites of A-space measures are indexed by A, columns by B.
class FibreMap {
 public:
  FibreMap(int a_count, int b_count, std::vector<int> pi,
           std::optional<std::vector<int>> section = std::nullopt);

  int a_count() const { return static_cast<int>(pi_.size()); }
  int b_count() const { return static_cast<int>(fibres_.size()); }
  int pi(int a) const { return pi_[static_cast<size_t>(a)]; }
  const std::vector<int>& fibre(int b) const { return fibres_[static_cast<size_t>(b)]; }
  size_t max_fibre_size() const;

  bool has_section() const { return section_.has_value(); }
  // Distinguished section value at b; input error if absent.
  int section_at(int b) const;
  const std::vector<int>& section() const;

  ConfigSpace a_space(int label_bound) const { return {a_count(), label_bound}; }
  ConfigSpace b_space(int label_bound) const { return {b_count(), label_bound}; }

  std::string to_json() const;
  static FibreMap from_json(const std::string& text);

 private:
  std::vector<int> pi_;
  std::vector<std::vector<int>> fibres_;  // sorted site lists per column
  std::optional<std::vector<int>> section_;
};

// Calls fn with every section of pi (as a vector B -> A), in lexicographic
// order of fibre-local indices. Throws SizeError if the number of sections
// exceeds `cap`. Returning false from fn stops the enumeration.
void for_each_section(const FibreMap& pm, uint64_t cap,
                      const std::function<bool(const std::vector<int>&)>& fn);

uint64_t section_count(const FibreMap& pm, uint64_t cap);

}  // namespace stodom
