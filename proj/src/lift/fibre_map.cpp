#include "lift/fibre_map.hpp"

#include <nlohmann/json.hpp>

#include "core/errors.hpp"

namespace stodom {

FibreMap::FibreMap(int a_count, int b_count, std::vector<int> pi,
                   std::optional<std::vector<int>> section)
    : pi_(std::move(pi)), fibres_(static_cast<size_t>(b_count)), section_(std::move(section)) {
  if (a_count <= 0 || b_count <= 0) throw InputError("fibre map between empty sets");
  if (static_cast<int>(pi_.size()) != a_count)
    throw InputError("pi must assign a column to every element of A");
  for (int a = 0; a < a_count; ++a) {
    int b = pi_[static_cast<size_t>(a)];
    if (b < 0 || b >= b_count) throw InputError("pi value out of range");
    fibres_[static_cast<size_t>(b)].push_back(a);
  }
  for (const auto& f : fibres_)
    if (f.empty()) throw InputError("pi is not surjective: empty fibre");
  if (section_) {
    if (static_cast<int>(section_->size()) != b_count)
      throw InputError("section must choose one element per column");
    for (int b = 0; b < b_count; ++b) {
      int a = (*section_)[static_cast<size_t>(b)];
      if (a < 0 || a >= a_count || pi_[static_cast<size_t>(a)] != b)
        throw InputError("section value at column " + std::to_string(b) +
                         " is not in the fibre");
    }
  }
}

size_t FibreMap::max_fibre_size() const {
  size_t m = 0;
  for (const auto& f : fibres_) m = std::max(m, f.size());
  return m;
}

int FibreMap::section_at(int b) const {
  if (!section_) throw InputError("fibre map has no distinguished section");
  return (*section_)[static_cast<size_t>(b)];
}

const std::vector<int>& FibreMap::section() const {
  if (!section_) throw InputError("fibre map has no distinguished section");
  return *section_;
}

std::string FibreMap::to_json() const {
  nlohmann::json j;
  j["A"] = a_count();
  j["B"] = b_count();
  j["pi"] = pi_;
  if (section_) j["section"] = *section_;
  return j.dump();
}

FibreMap FibreMap::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed fibre map JSON: ") + e.what());
  }
  std::optional<std::vector<int>> section;
  if (j.contains("section")) section = j.at("section").get<std::vector<int>>();
  return FibreMap(j.at("A").get<int>(), j.at("B").get<int>(),
                  j.at("pi").get<std::vector<int>>(), std::move(section));
}

void for_each_section(const FibreMap& pm, uint64_t cap,
                      const std::function<bool(const std::vector<int>&)>& fn) {
  section_count(pm, cap);
  std::vector<size_t> idx(static_cast<size_t>(pm.b_count()), 0);
  std::vector<int> s(static_cast<size_t>(pm.b_count()));
  while (true) {
    for (int b = 0; b < pm.b_count(); ++b)
      s[static_cast<size_t>(b)] = pm.fibre(b)[idx[static_cast<size_t>(b)]];
    if (!fn(s)) return;
    int b = pm.b_count() - 1;
    while (b >= 0 && idx[static_cast<size_t>(b)] + 1 == pm.fibre(b).size()) {
      idx[static_cast<size_t>(b)] = 0;
      --b;
    }
    if (b < 0) return;
    ++idx[static_cast<size_t>(b)];
  }
}

uint64_t section_count(const FibreMap& pm, uint64_t cap) {
  uint64_t n = 1;
  for (int b = 0; b < pm.b_count(); ++b) {
    n *= pm.fibre(b).size();
    if (n > cap)
      throw SizeError("section count exceeds cap " + std::to_string(cap));
  }
  return n;
}

}  // namespace stodom
