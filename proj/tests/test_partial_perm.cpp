#include <doctest.h>

#include <random>

#include "altmon/monoids.hpp"
#include "altmon/partial_perm.hpp"

using namespace altmon;

namespace {

PartialPerm pp(int n, std::vector<int> img) { return PartialPerm(n, img); }

std::vector<PartialPerm> all_of(int n) {
  return enumerate(monoid_spec(MonoidTag::In, n)).elements();
}

}  // namespace

TEST_CASE("compose follows the left-to-right convention") {
  auto a = pp(3, {2, 0, 3});          // 1->2, 3->3
  auto b = pp(3, {0, 1, 2});          // 2->1, 3->2
  CHECK(compose(a, b) == pp(3, {1, 0, 2}));
  CHECK(compose(PartialPerm::identity(3), a) == a);
  CHECK(compose(a, PartialPerm::identity(3)) == a);
  CHECK(compose(PartialPerm(3), a) == PartialPerm(3));
  CHECK(compose(a, PartialPerm(3)) == PartialPerm(3));
  CHECK_THROWS_AS(compose(a, PartialPerm::identity(4)), DimensionError);
}

TEST_CASE("construction validates the image table") {
  CHECK_THROWS_AS(pp(3, {1, 1, 0}), PreconditionError);
  CHECK_THROWS_AS(pp(3, {4, 0, 0}), PreconditionError);
  CHECK_THROWS_AS(pp(3, {1, 2}), PreconditionError);
  CHECK_THROWS_AS(PartialPerm(1), PreconditionError);
  CHECK_THROWS_AS(PartialPerm(13), PreconditionError);
}

TEST_CASE("inverse") {
  CHECK(inverse(PartialPerm::identity(4)) == PartialPerm::identity(4));
  CHECK(inverse(pp(3, {2, 0, 3})) == pp(3, {0, 1, 3}));
  CHECK(inverse(PartialPerm(3)) == PartialPerm(3));
}

TEST_CASE("rank") {
  CHECK(PartialPerm::identity(5).rank() == 5);
  CHECK(PartialPerm(4).rank() == 0);
  CHECK(pp(3, {2, 0, 3}).rank() == 2);
}

TEST_CASE("gaps") {
  CHECK(gaps(pp(3, {2, 3, 0})) == std::pair<int, int>{3, 1});
  CHECK(gaps(PartialPerm::order_map(4, {2, 3, 4}, {1, 2, 4})) == std::pair<int, int>{1, 3});
  CHECK(gaps(pp(2, {1, 0})) == std::pair<int, int>{2, 2});
  CHECK_THROWS_AS(gaps(PartialPerm::identity(3)), PreconditionError);
  CHECK_THROWS_AS(gaps(PartialPerm(3)), PreconditionError);
}

TEST_CASE("completion") {
  CHECK(completion(PartialPerm::order_map(3, {1, 2}, {2, 3})) == pp(3, {2, 3, 1}));
  CHECK(completion(pp(3, {1, 0, 3})) == PartialPerm::identity(3));
  CHECK(completion(PartialPerm::partial_identity(4, {1, 2, 3})) == PartialPerm::identity(4));
  CHECK_THROWS_AS(completion(PartialPerm::identity(3)), PreconditionError);
}

TEST_CASE("completion restricted to the domain is the element, n <= 7") {
  for (int n = 2; n <= 5; ++n)
    for (const auto& a : all_of(n)) {
      if (a.rank() != n - 1) continue;
      auto full = completion(a);
      for (int x = 1; x <= n; ++x)
        if (a.defined(x)) CHECK(full.at(x) == a.at(x));
    }
  // n = 6, 7: rank n-1 elements generated directly
  for (int n = 6; n <= 7; ++n) {
    int64_t count = 0;
    for (int d = 1; d <= n; ++d)
      for (int i = 1; i <= n; ++i) {
        std::vector<int> dom, im;
        for (int x = 1; x <= n; ++x) {
          if (x != d) dom.push_back(x);
          if (x != i) im.push_back(x);
        }
        std::sort(im.begin(), im.end());
        do {
          std::vector<int> img(n, 0);
          for (size_t t = 0; t < dom.size(); ++t) img[dom[t] - 1] = im[t];
          PartialPerm a(n, img);
          auto full = completion(a);
          ++count;
          bool ok = full.at(d) == i;
          for (int x = 1; x <= n; ++x)
            if (a.defined(x) && full.at(x) != a.at(x)) ok = false;
          if (!ok) FAIL("completion does not restrict to the element");
        } while (std::next_permutation(im.begin(), im.end()));
      }
    CHECK(count > 0);
  }
}

TEST_CASE("sign by cycle count") {
  CHECK(sign(PartialPerm::identity(4)) == Parity::even);
  CHECK(sign(pp(3, {2, 3, 1})) == Parity::even);
  CHECK(sign(pp(2, {2, 1})) == Parity::odd);
  CHECK(sign(reversal(4)) == Parity::even);   // (1 4)(2 3)
  CHECK(sign(reversal(6)) == Parity::odd);    // three transpositions
  CHECK_THROWS_AS(sign(pp(3, {2, 0, 3})), PreconditionError);
}

TEST_CASE("sign is multiplicative, exhaustive n <= 5") {
  for (int n = 2; n <= 5; ++n) {
    std::vector<PartialPerm> group;
    for (const auto& a : all_of(n))
      if (a.rank() == n) group.push_back(a);
    for (const auto& s : group)
      for (const auto& t : group)
        CHECK(sign(compose(s, t)) == sign(s) * sign(t));
  }
}

TEST_CASE("order predicates") {
  CHECK(is_order_preserving(PartialPerm::identity(3)));
  CHECK_FALSE(is_order_reversing(PartialPerm::identity(3)));
  auto rev = pp(3, {3, 2, 1});
  CHECK(is_order_reversing(rev));
  CHECK_FALSE(is_order_preserving(rev));
  auto single = pp(3, {1, 0, 0});
  CHECK(is_order_preserving(single));
  CHECK(is_order_reversing(single));
  CHECK(is_monotone(single));
  CHECK(is_order_preserving(PartialPerm(3)));
  CHECK(is_order_reversing(PartialPerm(3)));
}

TEST_CASE("products of monotone maps stay monotone, exhaustive n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<PartialPerm> mono, op;
    for (const auto& a : all_of(n)) {
      if (is_monotone(a)) mono.push_back(a);
      if (is_order_preserving(a)) op.push_back(a);
    }
    for (const auto& a : mono)
      for (const auto& b : mono) CHECK(is_monotone(compose(a, b)));
    for (const auto& a : op)
      for (const auto& b : op) CHECK(is_order_preserving(compose(a, b)));
  }
}

TEST_CASE("reverse") {
  CHECK(reverse(pp(3, {1, 2, 0})) == pp(3, {2, 1, 0}));
  CHECK(reverse(PartialPerm::partial_identity(3, {1, 3})) == pp(3, {3, 0, 1}));
  for (const auto& a : all_of(4)) {
    if (!is_monotone(a) || a.rank() < 2) continue;
    auto r = reverse(a);
    CHECK(r.domain() == a.domain());
    CHECK(r.image() == a.image());
    CHECK(is_order_preserving(r) == !is_order_preserving(a));
    CHECK(reverse(r) == a);
  }
  CHECK_THROWS_AS(reverse(pp(3, {1, 0, 0})), PreconditionError);
  CHECK_THROWS_AS(reverse(PartialPerm(3)), PreconditionError);
  CHECK_THROWS_AS(reverse(pp(3, {2, 1, 3})), PreconditionError);  // not monotone
}

TEST_CASE("associativity, exhaustive n = 3 and sampled n = 4") {
  auto elems3 = all_of(3);
  for (const auto& a : elems3)
    for (const auto& b : elems3)
      for (const auto& c : elems3)
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  auto elems4 = all_of(4);
  std::mt19937 rng(7);
  for (int t = 0; t < 20000; ++t) {
    const auto& a = elems4[rng() % elems4.size()];
    const auto& b = elems4[rng() % elems4.size()];
    const auto& c = elems4[rng() % elems4.size()];
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("inverse laws") {
  for (int n = 2; n <= 3; ++n) {
    auto elems = all_of(n);
    for (const auto& a : elems) {
      CHECK(compose(compose(a, inverse(a)), a) == a);
      for (const auto& b : elems)
        CHECK(inverse(compose(a, b)) == compose(inverse(b), inverse(a)));
    }
  }
  auto elems4 = all_of(4);
  std::mt19937 rng(11);
  for (int t = 0; t < 20000; ++t) {
    const auto& a = elems4[rng() % elems4.size()];
    const auto& b = elems4[rng() % elems4.size()];
    CHECK(compose(compose(a, inverse(a)), a) == a);
    CHECK(inverse(compose(a, b)) == compose(inverse(b), inverse(a)));
  }
}

TEST_CASE("completion is multiplicative when the product keeps rank n-1, n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<PartialPerm> level;
    for (const auto& a : all_of(n))
      if (a.rank() == n - 1) level.push_back(a);
    for (const auto& a : level)
      for (const auto& b : level) {
        auto ab = compose(a, b);
        if (ab.rank() != n - 1) continue;
        CHECK(completion(ab) == compose(completion(a), completion(b)));
      }
  }
}

TEST_CASE("parity algebra") {
  CHECK(Parity::even * Parity::even == Parity::even);
  CHECK(Parity::odd * Parity::odd == Parity::even);
  CHECK(Parity::even * Parity::odd == Parity::odd);
  CHECK(std::string(to_string(Parity::even)) == "even");
}

TEST_CASE("the n = 12 boundary works end to end") {
  auto big = reversal(12);
  CHECK(sign(big) == Parity::even);  // six transpositions
  CHECK(compose(big, big) == PartialPerm::identity(12));
  CHECK(compose_keys(big.key(), big.key(), 12) == PartialPerm::identity(12).key());
  auto restricted = PartialPerm::order_map(12, {1, 2, 3}, {10, 11, 12}, false);
  CHECK(reverse(restricted) == PartialPerm::order_map(12, {1, 2, 3}, {10, 11, 12}));
  CHECK(parse_partial_perm(to_string(restricted), 12) == restricted);
}

TEST_CASE("canonical order matches the packed keys") {
  auto elems = all_of(4);
  std::mt19937 rng(13);
  for (int t = 0; t < 5000; ++t) {
    const auto& a = elems[rng() % elems.size()];
    const auto& b = elems[rng() % elems.size()];
    CHECK((a < b) == (a.key() < b.key()));
    CHECK(compose_keys(a.key(), b.key(), 4) == compose(a, b).key());
  }
}
