#pragma once

#include "core/domination.hpp"
#include "lift/fibre_map.hpp"

namespace stodom {

// Joint law of two independent Bernoulli(p) families (a strong bit and a weak
// bit per column) together with a pair of random sections that almost surely
// differ in every column.
struct PairedLiftEnv {
  struct Atom {
    Config x;                // strong bits, one per column
    Config x_weak;           // weak bits, one per column
    std::vector<int> s;      // section for the strong bit
    std::vector<int> s_weak; // section for the weak bit
    Rational weight;
  };
  FibreMap pm;
  Rational p;
  std::vector<Atom> atoms;
};

// Deterministic strategy form: one (s, s_weak) pair per joint value of the
// two bit families.
PairedLiftEnv paired_env_from_strategy(
    const FibreMap& pm, const Rational& p,
    const std::function<std::pair<std::vector<int>, std::vector<int>>(const Config& x,
                                                                      const Config& x_weak)>&
        strategy);

struct MultiliftResult {
  bool dominated = false;
  bool decoded_ok = false;      // the three per-column decoded conditions
  std::string decode_failure;   // description when decoded_ok is false
  // The domination instance on the paired-site space.
  std::optional<FiniteMeasure> lifted_law;
  std::optional<FiniteMeasure> target_law;
  DominatesResult verdict;
};

// Lifts both bits into the space indexed by ordered pairs of distinct sites
// within a fibre, with the combined label 2*strong + weak, and checks
// domination against the pushforward of the independent Bernoulli product by
// the same pair encoding. On a YES verdict, every support pair of the witness
// coupling is decoded back to per-site bits and checked:
//   strong=1, weak=0  ->  the strong-section site carries a 1,
//   strong=1, weak=1  ->  both section sites carry a 1,
//   strong=0, weak=1  ->  at least one of the two section sites carries a 1.
MultiliftResult multilift_domination(const PairedLiftEnv& env);

// The law obtained by also forcing the weak bit onto its own section site
// (the strengthened placement rule), for the two-site single-column instance
// where the section pair flips with the strong bit. Its first-site marginal
// is 1-(1-p)^2, so domination by the Bernoulli product fails for p in (0,1).
FiniteMeasure strengthened_two_site_law(const Rational& p);

}  // namespace stodom
