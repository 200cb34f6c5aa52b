#include <doctest.h>

#include "bk/checks.hpp"
#include "core/errors.hpp"

using namespace stodom;
using namespace stodom::bk;

namespace {

// {at least one of the first two coordinates is set} on n coordinates.
Event one_of_two(int n) { return Event::from_min_terms(n, {0b01, 0b10}); }

}  // namespace

TEST_CASE("event basics") {
  Event e = Event::from_min_terms(2, {0b01});
  CHECK(e.test(0b01));
  CHECK(e.test(0b11));
  CHECK_FALSE(e.test(0b10));
  Event back = Event::from_hex(2, e.to_hex());
  CHECK(back == e);
  CHECK_THROWS_AS(Event(21), InputError);
  CHECK_THROWS_AS(Event::from_hex(2, "0xZZ"), InputError);
}

TEST_CASE("is_increasing") {
  CHECK(is_increasing(Event::full(3)));
  CHECK(is_increasing(one_of_two(2)));
  Event decreasing(2);
  decreasing.set(0b00);
  decreasing.set(0b10);  // first coordinate zero
  CHECK_FALSE(is_increasing(decreasing));
}

TEST_CASE("disjoint occurrence") {
  SUBCASE("two single-coordinate demands need both coordinates") {
    Event e = one_of_two(2);
    Event both = disjoint_occurrence(e, e);
    CHECK(both.test(0b11));
    CHECK_FALSE(both.test(0b01));
    CHECK_FALSE(both.test(0b10));
    CHECK_FALSE(both.test(0b00));
  }
  SUBCASE("full space is absorbed by an empty witness") {
    Event e = one_of_two(3);
    CHECK(disjoint_occurrence(Event::full(3), e) == e);
  }
  SUBCASE("contained in the intersection, commutative, monotone") {
    std::vector<Event> events = enumerate_increasing(3);
    for (size_t i = 0; i < events.size(); i += 3) {
      for (size_t j = 0; j < events.size(); j += 3) {
        Event d = disjoint_occurrence_fast(events[i], events[j]);
        CHECK(d == disjoint_occurrence_fast(events[j], events[i]));
        for (uint32_t w = 0; w < d.config_count(); ++w)
          if (d.test(w)) CHECK((events[i].test(w) && events[j].test(w)));
      }
    }
  }
  SUBCASE("fast path equals general search on every increasing pair, 4 bits") {
    std::vector<Event> events = enumerate_increasing(4);
    // A thinned sweep here; the full 168x168 sweep runs in acceptance.
    for (size_t i = 0; i < events.size(); i += 7)
      for (size_t j = 0; j < events.size(); j += 7)
        CHECK(disjoint_occurrence_fast(events[i], events[j]) ==
              disjoint_occurrence_general(events[i], events[j]));
  }
}

TEST_CASE("increasing-event enumeration") {
  // Cross-checked against brute force over all subsets, not a pinned count.
  for (int n = 0; n <= 3; ++n) {
    std::vector<Event> events = enumerate_increasing(n);
    size_t brute = 0;
    const uint32_t configs = uint32_t(1) << n;
    for (uint64_t mask = 0; mask < (uint64_t(1) << configs); ++mask) {
      Event e(n);
      for (uint32_t w = 0; w < configs; ++w)
        if (mask >> w & 1u) e.set(w);
      if (is_increasing(e)) ++brute;
    }
    CHECK(events.size() == brute);
    for (const auto& e : events) CHECK(is_increasing(e));
  }
}

TEST_CASE("product bound") {
  std::vector<Rational> half{rat(1, 2), rat(1, 2)};
  SUBCASE("pinned two-coordinate example") {
    Event e = one_of_two(2);
    InequalityReport rep = check_product_bound(e, e, half);
    CHECK(rep.lhs == rat(1, 4));
    CHECK(rep.rhs == rat(9, 16));
    CHECK(rep.holds);
  }
  SUBCASE("full space gives equality") {
    Event e = one_of_two(2);
    InequalityReport rep = check_product_bound(e, Event::full(2), half);
    CHECK(rep.lhs == rep.rhs);
    CHECK(rep.holds);
  }
  SUBCASE("non-increasing inputs are rejected") {
    Event decreasing(2);
    decreasing.set(0b00);
    CHECK_THROWS_AS(check_product_bound(decreasing, one_of_two(2), half), InputError);
  }
}

TEST_CASE("paired bound") {
  std::vector<Rational> half{rat(1, 2), rat(1, 2)};
  Event e = one_of_two(2);
  SUBCASE("independent pairs reduce to the product bound exactly") {
    PairLaw independent{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    InequalityReport paired = check_paired_bound(e, e, half, {independent, independent});
    InequalityReport product = check_product_bound(e, e, half);
    CHECK(paired.lhs == product.lhs);
    CHECK(paired.rhs == product.rhs);
  }
  SUBCASE("fibre-selection pairs verify the pinned example") {
    std::vector<PairLaw> laws{fibre_selection_pair_law(), fibre_selection_pair_law()};
    InequalityReport rep = check_paired_bound(e, e, half, laws);
    CHECK(rep.lhs == rat(1, 4));
    CHECK(rep.rhs == rat(1, 2));
    CHECK(rep.holds);
  }
  SUBCASE("marginal below the parameter is rejected") {
    PairLaw weak{rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 8)};
    CHECK_THROWS_AS(check_paired_bound(e, e, half, {weak, weak}), InputError);
  }
}

TEST_CASE("two-arm check") {
  // Cross with four arms of length 2 hanging off vertex 0.
  perco::Graph cross(9, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}, {0, 7}, {7, 8}});
  SUBCASE("degenerate parameters") {
    TwoArmReport all = two_arm_check(cross, 0, 2, Rational(1));
    CHECK(all.one_arm == 1);
    CHECK(all.two_arm == 1);
    TwoArmReport none = two_arm_check(cross, 0, 2, Rational(0));
    CHECK(none.one_arm == 0);
    CHECK(none.two_arm == 0);
  }
  SUBCASE("exact values and the product bound on the cross") {
    Rational p = rat(1, 2);
    TwoArmReport rep = two_arm_check(cross, 0, 2, p);
    // One arm: at least one of four independent length-2 arms fully open.
    Rational arm = p * p;
    Rational expect_one = Rational(1) - rational_pow(Rational(1) - arm, 4);
    CHECK(rep.one_arm == expect_one);
    CHECK(rep.two_arm <= rep.one_arm_squared);
    CHECK(rep.product_bound_holds);
    CHECK(rep.two_arm > 0);
  }
  SUBCASE("cap is enforced") {
    perco::Graph big = perco::graph_from_spec("grid:7x7");
    CHECK_THROWS_AS(two_arm_check(big, 24, 2, rat(1, 2)), SizeError);
  }
}
