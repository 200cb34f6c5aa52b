#include "bk/events.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace stodom::bk {

Event::Event(int ground_size) : n_(ground_size) {
  if (n_ < 0 || n_ > 20) throw InputError("ground set size must be in 0..20");
  bits_.assign((size_t(1) << n_) / 64 + 1, 0);
}

void Event::set(uint32_t config, bool value) {
  if (config >= config_count()) throw InputError("configuration outside the ground space");
  if (value)
    bits_[config >> 6] |= uint64_t(1) << (config & 63);
  else
    bits_[config >> 6] &= ~(uint64_t(1) << (config & 63));
}

Event Event::full(int ground_size) {
  Event e(ground_size);
  for (uint32_t w = 0; w < e.config_count(); ++w) e.set(w);
  return e;
}

Event Event::from_min_terms(int ground_size, const std::vector<uint32_t>& terms) {
  Event e(ground_size);
  for (uint32_t w = 0; w < e.config_count(); ++w)
    for (uint32_t t : terms) {
      if (t >= e.config_count()) throw InputError("min-term outside the ground space");
      if ((w & t) == t) {
        e.set(w);
        break;
      }
    }
  return e;
}

Event Event::from_hex(int ground_size, const std::string& hex) {
  Event e(ground_size);
  std::string digits = hex;
  if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits = digits.substr(2);
  if (digits.empty()) throw InputError("empty event bitmask");
  uint32_t config = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    int v;
    if (*it >= '0' && *it <= '9') v = *it - '0';
    else if (*it >= 'a' && *it <= 'f') v = *it - 'a' + 10;
    else if (*it >= 'A' && *it <= 'F') v = *it - 'A' + 10;
    else throw InputError("bad hex digit in event bitmask");
    for (int b = 0; b < 4; ++b, ++config)
      if (config < e.config_count() && (v >> b & 1)) e.set(config);
  }
  return e;
}

std::string Event::to_hex() const {
  std::string out;
  int digits = static_cast<int>((config_count() + 3) / 4);
  for (int d = digits - 1; d >= 0; --d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      uint32_t config = static_cast<uint32_t>(4 * d + b);
      if (config < config_count() && test(config)) v |= 1 << b;
    }
    out += "0123456789abcdef"[v];
  }
  return "0x" + out;
}

bool is_increasing(const Event& e) {
  for (int i = 0; i < e.ground_size(); ++i) {
    uint32_t bit = uint32_t(1) << i;
    for (uint32_t w = 0; w < e.config_count(); ++w)
      if (!(w & bit) && e.test(w) && !e.test(w | bit)) return false;
  }
  return true;
}

namespace {

// Does every configuration agreeing with w on the pinned set belong to e?
bool cylinder_inside(const Event& e, uint32_t w, uint32_t pinned) {
  uint32_t free = ~pinned & (e.config_count() - 1);
  // Iterate over all subsets of the free coordinates.
  uint32_t sub = free;
  while (true) {
    if (!e.test((w & pinned) | sub)) return false;
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  return true;
}

}  // namespace

Event disjoint_occurrence_general(const Event& e1, const Event& e2) {
  if (e1.ground_size() != e2.ground_size())
    throw InputError("events on different ground sets");
  const int n = e1.ground_size();
  if (n > 12) throw SizeError("general witness search capped at 12 coordinates");
  Event out(n);
  const uint32_t all = (uint32_t(1) << n) - 1;
  for (uint32_t w = 0; w <= all; ++w) {
    bool member = false;
    for (uint32_t p1 = 0; p1 <= all && !member; ++p1) {
      if (!cylinder_inside(e1, w, p1)) continue;
      uint32_t rest = all & ~p1;
      uint32_t p2 = rest;
      while (true) {
        if (cylinder_inside(e2, w, p2)) {
          member = true;
          break;
        }
        if (p2 == 0) break;
        p2 = (p2 - 1) & rest;
      }
    }
    if (member) out.set(w);
  }
  return out;
}

Event disjoint_occurrence_fast(const Event& e1, const Event& e2) {
  if (e1.ground_size() != e2.ground_size())
    throw InputError("events on different ground sets");
  const int n = e1.ground_size();
  Event out(n);
  // reach2[x]: some subset of x certifies e2, i.e. lies in e2 as a bare
  // 1-set. Subset-or transform of e2's membership on bare masks.
  std::vector<uint8_t> reach2(size_t(1) << n);
  for (uint32_t w = 0; w < (uint32_t(1) << n); ++w) reach2[w] = e2.test(w) ? 1 : 0;
  for (int i = 0; i < n; ++i)
    for (uint32_t w = 0; w < (uint32_t(1) << n); ++w)
      if (w >> i & 1u) reach2[w] |= reach2[w ^ (uint32_t(1) << i)];
  for (uint32_t w = 0; w < (uint32_t(1) << n); ++w) {
    uint32_t m1 = w;
    bool member = false;
    while (true) {
      if (e1.test(m1) && reach2[w & ~m1]) {
        member = true;
        break;
      }
      if (m1 == 0) break;
      m1 = (m1 - 1) & w;
    }
    if (member) out.set(w);
  }
  return out;
}

Event disjoint_occurrence(const Event& e1, const Event& e2) {
  if (is_increasing(e1) && is_increasing(e2)) return disjoint_occurrence_fast(e1, e2);
  return disjoint_occurrence_general(e1, e2);
}

Rational event_probability(const Event& e, const std::vector<Rational>& p) {
  if (static_cast<int>(p.size()) != e.ground_size())
    throw InputError("one Bernoulli parameter per coordinate required");
  for (const auto& pi : p)
    if (pi < 0 || pi > 1) throw InputError("Bernoulli parameter outside [0,1]");
  Rational total(0);
  for (uint32_t w = 0; w < e.config_count(); ++w) {
    if (!e.test(w)) continue;
    Rational term(1);
    for (int i = 0; i < e.ground_size(); ++i)
      term *= (w >> i & 1u) ? p[static_cast<size_t>(i)]
                            : Rational(1) - p[static_cast<size_t>(i)];
    total += term;
  }
  return total;
}

namespace {

void enumerate_rec(int n, const std::vector<uint32_t>& order, size_t idx, Event& current,
                   std::vector<Event>& out) {
  if (idx == order.size()) {
    out.push_back(current);
    return;
  }
  uint32_t w = order[idx];
  // Excluding w keeps the up-set property (all subsets processed later can
  // still be excluded freely).
  enumerate_rec(n, order, idx + 1, current, out);
  // Including w is allowed only when every immediate superset is included.
  for (int i = 0; i < n; ++i) {
    uint32_t bit = uint32_t(1) << i;
    if (!(w & bit) && !current.test(w | bit)) return;
  }
  current.set(w, true);
  enumerate_rec(n, order, idx + 1, current, out);
  current.set(w, false);
}

}  // namespace

std::vector<Event> enumerate_increasing(int ground_size) {
  if (ground_size > 5) throw SizeError("increasing-event enumeration capped at 5 coordinates");
  std::vector<uint32_t> order;
  for (uint32_t w = 0; w < (uint32_t(1) << ground_size); ++w) order.push_back(w);
  std::sort(order.begin(), order.end(), [](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  std::vector<Event> out;
  Event current(ground_size);
  enumerate_rec(ground_size, order, 0, current, out);
  return out;
}

}  // namespace stodom::bk
