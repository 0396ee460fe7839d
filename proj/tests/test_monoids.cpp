#include <doctest.h>

#include <algorithm>

#include "altmon/monoids.hpp"

using namespace altmon;

namespace {

MonoidSpec spec_of(MonoidTag tag, int n) { return monoid_spec(tag, n); }

std::vector<PartialPerm> rank_level(const ElementSet& set, int k) {
  std::vector<PartialPerm> out;
  for (const auto& e : set.elements())
    if (e.rank() == k) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("membership characterizations on the worked examples") {
  // order-preserving X_1 -> X_3 at n=4: gaps (1, 3) share a parity
  auto a = PartialPerm::order_map(4, {2, 3, 4}, {1, 2, 4});
  CHECK(contains(spec_of(MonoidTag::AOn, 4), a));
  // order-reversing X_1 -> X_2 at n=4: gaps (1, 2) differ, and 4 = 0 mod 4
  auto b = PartialPerm::order_map(4, {2, 3, 4}, {1, 3, 4}, false);
  CHECK(contains(spec_of(MonoidTag::AMn, 4), b));
  CHECK_FALSE(contains(spec_of(MonoidTag::AOn, 4), b));
  // order-reversing with gaps (1, 3) at n=5: same parity, and 5 = 1 mod 4
  auto c = PartialPerm::order_map(5, {2, 3, 4, 5}, {1, 2, 4, 5}, false);
  CHECK(contains(spec_of(MonoidTag::AMn, 5), c));
  // the empty map sits in every family except the groups
  for (int n = 2; n <= 4; ++n) {
    PartialPerm empty(n);
    for (MonoidTag tag : {MonoidTag::In, MonoidTag::En, MonoidTag::POIn, MonoidTag::PMIn,
                          MonoidTag::AIn, MonoidTag::AOn, MonoidTag::AMn})
      CHECK(contains(spec_of(tag, n), empty));
    CHECK_FALSE(contains(spec_of(MonoidTag::Sn, n), empty));
    CHECK_FALSE(contains(spec_of(MonoidTag::An, n), empty));
  }
  CHECK_THROWS_AS(contains(spec_of(MonoidTag::AOn, 4), PartialPerm(3)), DimensionError);
}

TEST_CASE("the extension oracle on single-extension cases") {
  // {1->2, 2->3} at n=3 extends only to the even cycle (1 2 3)
  CHECK(contains_by_oracle(spec_of(MonoidTag::AIn, 3), PartialPerm(3, {2, 3, 0})));
  // {1->2} at n=2 extends only to the odd transposition
  CHECK_FALSE(contains_by_oracle(spec_of(MonoidTag::AIn, 2), PartialPerm(2, {2, 0})));
  CHECK_THROWS_AS(contains_by_oracle(spec_of(MonoidTag::AIn, 9), PartialPerm(9)), ResourceError);
}

TEST_CASE("characterization equals oracle over all of I_4, all families") {
  auto all = enumerate(spec_of(MonoidTag::In, 4));
  for (MonoidTag tag : {MonoidTag::In, MonoidTag::Sn, MonoidTag::An, MonoidTag::En,
                        MonoidTag::POIn, MonoidTag::PMIn, MonoidTag::AIn, MonoidTag::AOn,
                        MonoidTag::AMn}) {
    auto spec = spec_of(tag, 4);
    for (const auto& e : all.elements()) CHECK(contains(spec, e) == contains_by_oracle(spec, e));
  }
}

TEST_CASE("enumerate: small frozen counts") {
  auto ao2 = enumerate(spec_of(MonoidTag::AOn, 2));
  CHECK(ao2.size() == 4);
  CHECK(ao2.contains(PartialPerm(2)));
  CHECK(ao2.contains(PartialPerm::partial_identity(2, {1})));
  CHECK(ao2.contains(PartialPerm::partial_identity(2, {2})));
  CHECK(ao2.contains(PartialPerm::identity(2)));

  CHECK(enumerate(spec_of(MonoidTag::AIn, 3)).size() == 22);
  auto e3 = enumerate(spec_of(MonoidTag::En, 3));
  CHECK(e3.size() == 8);
  for (const auto& e : e3.elements()) CHECK(e.is_partial_identity());

  CHECK(enumerate(spec_of(MonoidTag::AOn, 3)).size() == 16);
  CHECK(enumerate(spec_of(MonoidTag::AOn, 4)).size() == 62);
  CHECK(enumerate(spec_of(MonoidTag::AOn, 5)).size() == 240);
  CHECK(enumerate(spec_of(MonoidTag::AMn, 2)).size() == 4);
  CHECK(enumerate(spec_of(MonoidTag::AMn, 3)).size() == 20);
  CHECK(enumerate(spec_of(MonoidTag::AMn, 4)).size() == 107);
  CHECK(enumerate(spec_of(MonoidTag::AMn, 5)).size() == 454);
  CHECK(enumerate(spec_of(MonoidTag::AIn, 4)).size() == 149);
  CHECK(enumerate(spec_of(MonoidTag::POIn, 4)).size() == 70);
  CHECK(enumerate(spec_of(MonoidTag::PMIn, 4)).size() == 123);
  CHECK(enumerate(spec_of(MonoidTag::In, 4)).size() == 209);

  CHECK_THROWS_AS(enumerate(spec_of(MonoidTag::AOn, 9)), ResourceError);
}

TEST_CASE("cardinality formulas on the worked arithmetic") {
  CHECK(cardinality_formula(spec_of(MonoidTag::AOn, 3)) == 16);   // C(6,3) - 4
  CHECK(cardinality_formula(spec_of(MonoidTag::AOn, 5)) == 240);  // C(10,5) - 12
  CHECK(cardinality_formula(spec_of(MonoidTag::AMn, 4)) == 107);  // 2*70 - 32 - 1
  CHECK(cardinality_formula(spec_of(MonoidTag::AMn, 3)) == 20);   // 2*20 - 18 - 2
  CHECK(cardinality_formula(spec_of(MonoidTag::AMn, 5)) == 454);  // 2*252 - 50 - 0
  CHECK(cardinality_formula(spec_of(MonoidTag::AIn, 4)) == 149);  // 12 + 48 + 89
  CHECK(cardinality_formula(spec_of(MonoidTag::PMIn, 4)) == 123);
  CHECK(cardinality_formula(spec_of(MonoidTag::En, 5)) == 32);
  CHECK(cardinality_formula(spec_of(MonoidTag::Sn, 5)) == 120);
  CHECK(cardinality_formula(spec_of(MonoidTag::An, 5)) == 60);
  CHECK_THROWS_AS(cardinality_formula(spec_of(MonoidTag::AMn, 2)), FormulaDomainError);
  // big-n evaluation stays inside 64 bits at the configured cap
  CHECK(cardinality_formula(spec_of(MonoidTag::In, 12)) > 0);
  CHECK_THROWS_AS(cardinality_formula(spec_of(MonoidTag::In, 13)), ResourceError);
}

TEST_CASE("rank level counts") {
  CHECK(rank_level_count(spec_of(MonoidTag::AOn, 4), 3) == 8);
  CHECK(rank_level_count(spec_of(MonoidTag::AMn, 5), 4) == 26);
  for (MonoidTag tag : {MonoidTag::In, MonoidTag::En, MonoidTag::POIn, MonoidTag::PMIn,
                        MonoidTag::AIn, MonoidTag::AOn, MonoidTag::AMn})
    CHECK(rank_level_count(spec_of(tag, 4), 0) == 1);
  CHECK(rank_level_count(spec_of(MonoidTag::Sn, 4), 0) == 0);
  CHECK(rank_level_count(spec_of(MonoidTag::An, 4), 0) == 0);
  // AM_2 has no closed level form; enumeration decides
  CHECK(rank_level_count(spec_of(MonoidTag::AMn, 2), 1) == 2);
  // levels sum to the cardinality
  for (MonoidTag tag : {MonoidTag::POIn, MonoidTag::PMIn, MonoidTag::AIn, MonoidTag::AOn,
                        MonoidTag::AMn, MonoidTag::In}) {
    int64_t total = 0;
    for (int k = 0; k <= 5; ++k) total += rank_level_count(spec_of(tag, 5), k);
    CHECK(total == cardinality_formula(spec_of(tag, 5)));
    CHECK(total == static_cast<int64_t>(enumerate(spec_of(tag, 5)).size()));
  }
}

TEST_CASE("rank level counts match enumeration, n <= 5") {
  for (int n = 3; n <= 5; ++n)
    for (MonoidTag tag : {MonoidTag::AOn, MonoidTag::AMn, MonoidTag::PMIn}) {
      auto set = enumerate(spec_of(tag, n));
      for (int k = 0; k <= n; ++k)
        CHECK(rank_level_count(spec_of(tag, n), k) ==
              static_cast<int64_t>(rank_level(set, k).size()));
    }
}

TEST_CASE("the restriction construction over a subgroup") {
  // trivial subgroup: exactly the partial identities
  CHECK(build_In_G(3, {}) == enumerate(spec_of(MonoidTag::En, 3)));
  // the full symmetric group: everything
  auto s4 = build_In_G(4, {parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)});
  CHECK(s4 == enumerate(spec_of(MonoidTag::In, 4)));
  // the alternating group: the alternating monoid
  auto a4 = build_In_G(4, {parse_cycles("(1 2 3)", 4), parse_cycles("(1 2 4)", 4)});
  CHECK(a4 == enumerate(spec_of(MonoidTag::AIn, 4)));
  CHECK_THROWS_AS(build_In_G(4, {PartialPerm(4, {1, 2, 0, 0})}), PreconditionError);
  // enumerate on an InG spec takes the same route
  auto spec = monoid_spec_in_g(4, {parse_cycles("(1 2 3)", 4), parse_cycles("(1 2 4)", 4)});
  CHECK(enumerate(spec) == a4);
  CHECK(contains(spec, PartialPerm(4, {2, 3, 0, 0})) ==
        contains_by_oracle(spec_of(MonoidTag::AIn, 4), PartialPerm(4, {2, 3, 0, 0})));
}

TEST_CASE("enumerated monoids are closed under product and inverse, n <= 4") {
  for (int n = 2; n <= 4; ++n)
    for (MonoidTag tag : {MonoidTag::En, MonoidTag::POIn, MonoidTag::PMIn, MonoidTag::AIn,
                          MonoidTag::AOn, MonoidTag::AMn, MonoidTag::Sn, MonoidTag::An}) {
      auto set = enumerate(spec_of(tag, n));
      for (const auto& a : set.elements()) {
        CHECK(set.contains(inverse(a)));
        for (const auto& b : set.elements()) CHECK(set.contains(compose(a, b)));
      }
    }
}

TEST_CASE("the intersection identities, exhaustive n <= 6") {
  for (int n = 2; n <= 6; ++n) {
    auto ai = enumerate(spec_of(MonoidTag::AIn, n));
    std::vector<PartialPerm> ao_members, am_members;
    for (const auto& e : ai.elements()) {
      if (is_order_preserving(e)) ao_members.push_back(e);
      if (is_monotone(e)) am_members.push_back(e);
    }
    CHECK(ElementSet(n, ao_members) == enumerate(spec_of(MonoidTag::AOn, n)));
    CHECK(ElementSet(n, am_members) == enumerate(spec_of(MonoidTag::AMn, n)));
  }
}

TEST_CASE("reversing a rank n-1 element preserves membership when n = 1, 2 mod 4") {
  for (int n : {5, 6}) {
    auto pmi = enumerate(spec_of(MonoidTag::PMIn, n));
    auto am = spec_of(MonoidTag::AMn, n);
    for (const auto& a : rank_level(pmi, n - 1))
      CHECK(contains(am, a) == contains(am, reverse(a)));
  }
}

TEST_CASE("below rank n-1 the alternating condition is vacuous, n <= 6") {
  for (int n = 2; n <= 6; ++n) {
    auto am = enumerate(spec_of(MonoidTag::AMn, n));
    auto pmi = enumerate(spec_of(MonoidTag::PMIn, n));
    auto ao = enumerate(spec_of(MonoidTag::AOn, n));
    auto poi = enumerate(spec_of(MonoidTag::POIn, n));
    for (int k = 0; k <= n - 2; ++k) {
      CHECK(rank_level(am, k) == rank_level(pmi, k));
      CHECK(rank_level(ao, k) == rank_level(poi, k));
    }
  }
}

TEST_CASE("the unit group of AM_n") {
  for (int n = 3; n <= 6; ++n) {
    auto units = rank_level(enumerate(spec_of(MonoidTag::AMn, n)), n);
    if (n % 4 == 0 || n % 4 == 1) {
      REQUIRE(units.size() == 2);
      CHECK(units[0] == PartialPerm::identity(n));
      CHECK(units[1] == reversal(n));
    } else {
      REQUIRE(units.size() == 1);
      CHECK(units[0] == PartialPerm::identity(n));
    }
  }
}

TEST_CASE("monoid spec strings") {
  for (const std::string text : {"AO:5", "AM:7", "I:3", "POI:6", "AI:2"})
    CHECK(to_string(parse_monoid_spec(text)) == text);
  auto in_g = parse_monoid_spec("InG:4:[(1 2),(1 2 3 4)]");
  CHECK(in_g.tag == MonoidTag::InG);
  CHECK(in_g.n == 4);
  REQUIRE(in_g.group_generators.size() == 2);
  CHECK(in_g.group_generators[0] == parse_cycles("(1 2)", 4));
  CHECK(to_string(in_g) == "InG:4:[(1 2),(1 2 3 4)]");
  CHECK_THROWS_AS(parse_monoid_spec("NOPE:4"), ParseError);
  CHECK_THROWS_AS(parse_monoid_spec("AO"), ParseError);
  CHECK_THROWS_AS(parse_monoid_spec("AO:x"), ParseError);
  CHECK_THROWS_AS(parse_monoid_spec("AO:4:[(1 2)]"), ParseError);
}
