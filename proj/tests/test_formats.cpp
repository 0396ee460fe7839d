#include <doctest.h>

#include "altmon/monoids.hpp"

using namespace altmon;

TEST_CASE("two-row bracket notation") {
  auto a = PartialPerm(3, {2, 0, 3});
  CHECK(to_string(a) == "[1 3 | 2 3]");
  CHECK(to_string(PartialPerm(3)) == "[]");
  CHECK(to_string(PartialPerm::identity(3)) == "[1 2 3 | 1 2 3]");
  CHECK(parse_partial_perm("[1 3 | 2 3]", 3) == a);
  CHECK(parse_partial_perm("[]", 4) == PartialPerm(4));
  CHECK(parse_partial_perm("[ | ]", 4) == PartialPerm(4));
}

TEST_CASE("notation round-trips over all of I_4") {
  auto all = enumerate(monoid_spec(MonoidTag::In, 4));
  for (const auto& e : all.elements()) CHECK(parse_partial_perm(to_string(e), 4) == e);
}

TEST_CASE("notation parse errors") {
  CHECK_THROWS_AS(parse_partial_perm("1 2 | 2 3", 3), ParseError);
  CHECK_THROWS_AS(parse_partial_perm("[1 2 | 3]", 3), ParseError);
  CHECK_THROWS_AS(parse_partial_perm("[2 1 | 1 2]", 3), ParseError);    // unordered domain
  CHECK_THROWS_AS(parse_partial_perm("[1 2 | 3 3]", 3), ParseError);    // not injective
  CHECK_THROWS_AS(parse_partial_perm("[1 4 | 1 2]", 3), ParseError);    // out of range
  CHECK_THROWS_AS(parse_partial_perm("[1 x | 1 2]", 3), ParseError);
}

TEST_CASE("cycle notation") {
  CHECK(parse_cycles("(1 2)", 4) == PartialPerm(4, {2, 1, 3, 4}));
  CHECK(parse_cycles("(1 2 3 4)", 4) == PartialPerm(4, {2, 3, 4, 1}));
  CHECK(parse_cycles("(1 2)(3 4)", 4) == PartialPerm(4, {2, 1, 4, 3}));
  CHECK(parse_cycles("id", 4) == PartialPerm::identity(4));
  CHECK(to_cycles(PartialPerm::identity(4)) == "id");
  CHECK(to_cycles(PartialPerm(4, {2, 1, 4, 3})) == "(1 2)(3 4)");
  auto s4 = enumerate(monoid_spec(MonoidTag::Sn, 4));
  for (const auto& e : s4.elements()) CHECK(parse_cycles(to_cycles(e), 4) == e);
  CHECK_THROWS_AS(parse_cycles("(1 5)", 4), ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 2", 4), ParseError);
  CHECK_THROWS_AS(to_cycles(PartialPerm(4)), PreconditionError);
}
