#include <doctest.h>

#include <algorithm>

#include "altmon/congruences.hpp"
#include "altmon/genrank.hpp"

using namespace altmon;

namespace {

struct Fixture {
  ElementSet elems;
  GreenStructure gs;
  explicit Fixture(MonoidTag tag, int n)
      : elems(enumerate(monoid_spec(tag, n))), gs(green_structure(elems)) {}
};

int class_labelled(const GreenStructure& gs, const std::string& prefix,
                   const std::string& label) {
  auto poset = j_poset(gs, prefix);
  for (size_t i = 0; i < poset.labels.size(); ++i)
    if (poset.labels[i] == label) return static_cast<int>(i);
  throw std::runtime_error("no class " + label);
}

const Ideal& ideal_sized(const std::vector<Ideal>& ids, size_t size) {
  for (const auto& ideal : ids)
    if (ideal.members.size() == size) return ideal;
  throw std::runtime_error("no ideal of size " + std::to_string(size));
}

// Independent route: all principal congruences by pair closure, then join
// closure.  Quadratic in the monoid, usable only at toy sizes.
std::vector<Congruence> lattice_by_all_pairs(const ElementSet& elems) {
  std::vector<Congruence> found{Congruence(elems.size())};
  auto push = [&](const Congruence& c) {
    for (const auto& f : found)
      if (f == c) return false;
    found.push_back(c);
    return true;
  };
  for (size_t a = 0; a < elems.size(); ++a)
    for (size_t b = a + 1; b < elems.size(); ++b)
      push(principal_congruence(elems, elems[a], elems[b]));
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t i = 0; i < found.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (push(join(found[i], found[j]))) grew = true;
  }
  return found;
}

}  // namespace

TEST_CASE("ideals are the J-order down-sets") {
  Fixture ao4(MonoidTag::AOn, 4);
  CHECK(ideals(ao4.gs).size() == 7);
  Fixture am4(MonoidTag::AMn, 4);
  CHECK(ideals(am4.gs).size() == 5);
  Fixture am5(MonoidTag::AMn, 5);
  CHECK(ideals(am5.gs).size() == 8);

  Fixture ao3(MonoidTag::AOn, 3);
  auto ids = ideals(ao3.gs);
  CHECK(ideal_sized(ids, 10).members.size() == 10);  // empty map plus the nine of rank 1
  for (const auto& ideal : ids) CHECK(is_ideal(ao3.elems, ideal));
}

TEST_CASE("down-set enumeration on a boolean J-order") {
  // E_3's J-classes form the boolean lattice on three points; its nonempty
  // down-sets number 19.
  Fixture e3(MonoidTag::En, 3);
  CHECK(ideals(e3.gs).size() == 19);
}

TEST_CASE("the lattice engine handles the n = 2 boundary monoids") {
  // Both are four-element semilattices with seven congruences, five of them
  // Rees; the same chain-quotient effect as AO_3.
  for (MonoidTag tag : {MonoidTag::AOn, MonoidTag::AMn}) {
    Fixture fx(tag, 2);
    CHECK(congruence_lattice(fx.elems).congruences.size() == 7);
  }
}

TEST_CASE("rees congruences") {
  Fixture ao3(MonoidTag::AOn, 3);
  auto ids = ideals(ao3.gs);
  auto bottom = rees(ao3.elems, ideal_sized(ids, 1));
  CHECK(bottom.is_identity());
  auto top = rees(ao3.elems, ideal_sized(ids, ao3.elems.size()));
  CHECK(top.is_universal());
  auto i1 = rees(ao3.elems, ideal_sized(ids, 10));
  auto blocks = i1.nontrivial_blocks();
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].size() == 10);
  CHECK(i1.block_count() == 7);  // the collapsed ideal plus six singletons

  Ideal not_ideal{{0, static_cast<int>(ao3.elems.size()) - 1}};
  CHECK_THROWS_AS(rees(ao3.elems, not_ideal), PreconditionError);
}

TEST_CASE("theta on the unit class of AM_4 pairs the two units over the rest") {
  Fixture am4(MonoidTag::AMn, 4);
  auto t = theta(am4.gs, class_labelled(am4.gs, "Q", "Q4"));
  auto blocks = t.nontrivial_blocks();
  REQUIRE(blocks.size() == 2);
  std::vector<size_t> sizes{blocks[0].size(), blocks[1].size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes[0] == 2);
  CHECK(sizes[1] == 105);
}

TEST_CASE("theta on the bottom class is the identity congruence") {
  Fixture ao4(MonoidTag::AOn, 4);
  CHECK(theta(ao4.gs, class_labelled(ao4.gs, "J", "J0")).is_identity());
}

TEST_CASE("theta on a split rank n-1 class blocks its H-pairs") {
  Fixture am5(MonoidTag::AMn, 5);
  auto t = theta(am5.gs, class_labelled(am5.gs, "Q", "Q4^o"));
  auto blocks = t.nontrivial_blocks();
  size_t pair_blocks = 0, big = 0;
  for (const auto& b : blocks) {
    if (b.size() == 2)
      ++pair_blocks;
    else
      big = b.size();
  }
  CHECK(pair_blocks == 9);
  CHECK(big == 426);  // all of rank at most 3
}

TEST_CASE("pi equals theta along a chain poset") {
  Fixture am4(MonoidTag::AMn, 4);
  for (int c = 0; c < am4.gs.j_count(); ++c) CHECK(pi(am4.gs, c) == theta(am4.gs, c));
}

TEST_CASE("pi absorbs the incomparable class") {
  Fixture am5(MonoidTag::AMn, 5);
  auto p = pi(am5.gs, class_labelled(am5.gs, "Q", "Q4^e"));
  auto blocks = p.nontrivial_blocks();
  size_t pair_blocks = 0, big = 0;
  for (const auto& b : blocks) {
    if (b.size() == 2)
      ++pair_blocks;
    else
      big = b.size();
  }
  CHECK(big == 426 + 18);  // the lower ideal together with the odd-gap class
  CHECK(pair_blocks == 4);
}

TEST_CASE("pi on a split AO class coincides with a Rees congruence") {
  // H-triviality makes pi(J3^o) collapse exactly the ideal below-or-beside,
  // so it lands in the lattice as rees(I3^e).
  Fixture ao4(MonoidTag::AOn, 4);
  auto p = pi(ao4.gs, class_labelled(ao4.gs, "J", "J3^o"));
  auto ids = ideals(ao4.gs);
  bool is_rees = false;
  for (const auto& ideal : ids)
    if (rees(ao4.elems, ideal) == p) is_rees = true;
  CHECK(is_rees);
}

TEST_CASE("a non-H-related rank n-1 pair generates strictly above theta") {
  // The reverse of id_{1,2,3} falls outside AM_4 (equal gap parities), so
  // the H-pair route is closed there; any distinct rank 3 pair lies in
  // different H-classes and its principal congruence outgrows theta(Q3),
  // landing on rees(F3).
  Fixture am4(MonoidTag::AMn, 4);
  CHECK_FALSE(contains(monoid_spec(MonoidTag::AMn, 4),
                       reverse(PartialPerm::partial_identity(4, {1, 2, 3}))));
  auto eps = PartialPerm::partial_identity(4, {1, 2, 3});
  auto beta = PartialPerm::order_map(4, {1, 2, 3}, {1, 3, 4});  // X4 -> X2
  auto rho = principal_congruence(am4.elems, eps, beta);
  auto t = theta(am4.gs, class_labelled(am4.gs, "Q", "Q3"));
  CHECK(t.leq(rho));
  CHECK_FALSE(rho == t);
  auto f3 = rees(am4.elems, ideal_sized(ideals(am4.gs), 105));
  CHECK(rho == f3);
}

TEST_CASE("the lattice is closed under meet and join with id and omega extremal") {
  for (auto [tag, n] : {std::pair{MonoidTag::AOn, 4}, {MonoidTag::AMn, 4}}) {
    Fixture fx(tag, n);
    auto lat = congruence_lattice(fx.elems);
    CHECK(lat.congruences.front().is_identity());
    CHECK(lat.congruences.back().is_universal());
    for (const auto& a : lat.congruences)
      for (const auto& b : lat.congruences) {
        CHECK(lat.index_of(meet(a, b)) >= 0);
        CHECK(lat.index_of(join(a, b)) >= 0);
        CHECK(lat.congruences.front().leq(a));
        CHECK(a.leq(lat.congruences.back()));
      }
  }
}

TEST_CASE("unions of theta congruences") {
  Fixture am5(MonoidTag::AMn, 5);
  int qo = class_labelled(am5.gs, "Q", "Q4^o");
  int qe = class_labelled(am5.gs, "Q", "Q4^e");
  CHECK(union_theta(am5.gs, qo, qo) == theta(am5.gs, qo));
  auto u = union_theta(am5.gs, qo, qe);
  CHECK(theta(am5.gs, qo).leq(u));
  CHECK(theta(am5.gs, qe).leq(u));
  // meet: the two thetas intersect in the Rees congruence of the shared ideal
  auto ids = ideals(am5.gs);
  auto f3 = rees(am5.elems, ideal_sized(ids, 426));
  CHECK(meet(theta(am5.gs, qo), theta(am5.gs, qe)) == f3);
  // classes with different strict lower sets are rejected
  int q3 = class_labelled(am5.gs, "Q", "Q3");
  CHECK_THROWS_AS(union_theta(am5.gs, q3, qo), PreconditionError);
}

TEST_CASE("principal congruences") {
  Fixture am5(MonoidTag::AMn, 5);
  auto some = am5.elems[17];
  CHECK(principal_congruence(am5.elems, some, some).is_identity());

  // the H-related pair of rank 3 idempotent and its reverse generates theta
  auto eps = PartialPerm::partial_identity(5, {1, 2, 3});
  auto tau = reverse(eps);
  auto rho = principal_congruence(am5.elems, eps, tau);
  CHECK(rho == theta(am5.gs, class_labelled(am5.gs, "Q", "Q3")));
}

TEST_CASE("a pair of comparable partial identities collapses a Rees ideal") {
  // One exception at n = 3: the pair (id_{1,3}, id_3) generates the
  // non-Rees congruence documented below, so it is skipped here and pinned
  // in its own test.
  for (int n = 3; n <= 4; ++n) {
    Fixture ao(MonoidTag::AOn, n);
    for (size_t a = 0; a < ao.elems.size(); ++a) {
      if (!ao.elems[a].is_partial_identity()) continue;
      for (size_t b = 0; b < ao.elems.size(); ++b) {
        if (a == b || !ao.elems[b].is_partial_identity()) continue;
        auto da = ao.elems[a].domain(), db = ao.elems[b].domain();
        if (!std::includes(db.begin(), db.end(), da.begin(), da.end())) continue;
        if (n == 3 && da == std::vector<int>{1, 3} && db.size() == 3) continue;
        // expected: the Rees congruence of the down-set of the larger class
        int jb = ao.gs.j_class[b];
        Ideal down;
        for (size_t c = 0; c < ao.gs.j_members.size(); ++c)
          if (ao.gs.j_leq[c][jb])
            down.members.insert(down.members.end(), ao.gs.j_members[c].begin(),
                                ao.gs.j_members[c].end());
        std::sort(down.members.begin(), down.members.end());
        CHECK(principal_congruence(ao.elems, ao.elems[a], ao.elems[b]) == rees(ao.elems, down));
      }
    }
  }
  // The exceptional pair generates exactly the extra congruence.
  Fixture ao3(MonoidTag::AOn, 3);
  auto rho = principal_congruence(ao3.elems, PartialPerm::partial_identity(3, {1, 3}),
                                  PartialPerm::identity(3));
  auto ids = ideals(ao3.gs);
  for (const auto& ideal : ids) CHECK_FALSE(rees(ao3.elems, ideal) == rho);
  CHECK(rho.block_count() == 2);
}

TEST_CASE("idempotents and the natural order") {
  Fixture ao3(MonoidTag::AOn, 3);
  auto idem = idempotents(ao3.elems);
  CHECK(idem.size() == 8);
  for (const auto& e : idem.elements()) CHECK(e.is_partial_identity());
  auto e12 = PartialPerm::partial_identity(3, {1, 2});
  auto id3 = PartialPerm::identity(3);
  CHECK(natural_order(e12, id3));
  CHECK_FALSE(natural_order(id3, e12));
  CHECK(natural_order(e12, e12));
}

TEST_CASE("congruence lattice counts at toy sizes") {
  Fixture ao4(MonoidTag::AOn, 4);
  CHECK(congruence_lattice(ao4.elems).congruences.size() == 7);
  Fixture am3(MonoidTag::AMn, 3);
  CHECK(congruence_lattice(am3.elems).congruences.size() == 4);
  Fixture am4(MonoidTag::AMn, 4);
  CHECK(congruence_lattice(am4.elems).congruences.size() == 7);

  LatticeOptions tiny;
  tiny.size_cap = 10;
  CHECK_THROWS_AS(congruence_lattice(ao4.elems, tiny), ResourceError);
}

TEST_CASE("AO_3 carries one congruence beyond its Rees family") {
  // The classification picture breaks at n = 3: the quotient by the Rees
  // congruence of I_2^o is a three-element chain semilattice, and its middle
  // congruence lifts.  The lift pairs id_{1,3} with the identity and crushes
  // everything else.
  Fixture ao3(MonoidTag::AOn, 3);
  auto lat = congruence_lattice(ao3.elems);
  CHECK(lat.congruences.size() == 7);

  auto ids = ideals(ao3.gs);
  int rees_members = 0;
  const Congruence* extra = nullptr;
  for (const auto& c : lat.congruences) {
    bool is_rees = false;
    for (const auto& ideal : ids)
      if (rees(ao3.elems, ideal) == c) is_rees = true;
    if (is_rees)
      ++rees_members;
    else
      extra = &c;
  }
  CHECK(rees_members == 6);
  REQUIRE(extra != nullptr);
  CHECK(is_congruence(ao3.elems, *extra));

  auto blocks = extra->nontrivial_blocks();
  REQUIRE(blocks.size() == 2);
  std::vector<size_t> sizes{blocks[0].size(), blocks[1].size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes[0] == 2);
  CHECK(sizes[1] == 14);
  // the two-element block is {id_{1,3}, id_3}
  auto id13 = *ao3.elems.index_of(PartialPerm::partial_identity(3, {1, 3}));
  auto id3 = *ao3.elems.index_of(PartialPerm::identity(3));
  CHECK(extra->related(static_cast<int>(id13), static_cast<int>(id3)));

  // and precisely this member violates the idempotent-collapse property that
  // holds from n = 4 upward
  auto empty_idx = static_cast<int>(*ao3.elems.index_of(PartialPerm(3)));
  CHECK_FALSE(extra->related(static_cast<int>(id3), empty_idx));
}

TEST_CASE("idempotent pairs inside a congruence collapse to the empty map, n = 4") {
  Fixture ao4(MonoidTag::AOn, 4);
  auto lat = congruence_lattice(ao4.elems);
  auto empty_idx = static_cast<int>(*ao4.elems.index_of(PartialPerm(4)));
  for (const auto& rho : lat.congruences)
    for (size_t e = 0; e < ao4.elems.size(); ++e) {
      if (!ao4.elems[e].is_partial_identity()) continue;
      for (size_t f = 0; f < ao4.elems.size(); ++f) {
        if (e == f || !ao4.elems[f].is_partial_identity()) continue;
        if (!natural_order(ao4.elems[f], ao4.elems[e])) continue;
        if (rho.related(static_cast<int>(e), static_cast<int>(f)))
          CHECK(rho.related(static_cast<int>(e), empty_idx));
      }
    }
}

TEST_CASE("the lattice engine agrees with all-pairs principal closure") {
  for (auto [tag, n] : {std::pair{MonoidTag::AOn, 3}, {MonoidTag::AMn, 3}, {MonoidTag::En, 3},
                        {MonoidTag::AOn, 4}}) {
    Fixture fx(tag, n);
    auto lat = congruence_lattice(fx.elems);
    auto oracle = lattice_by_all_pairs(fx.elems);
    CHECK(lat.congruences.size() == oracle.size());
    for (const auto& c : oracle) CHECK(lat.index_of(c) >= 0);
  }
}

TEST_CASE("verify_classification passes from n = 4 and reports the n = 3 defect") {
  auto ao4 = verify_classification(monoid_spec(MonoidTag::AOn, 4));
  CHECK(ao4.pass);
  CHECK(ao4.computed_count == 7);

  auto am3 = verify_classification(monoid_spec(MonoidTag::AMn, 3));
  CHECK(am3.pass);
  CHECK(am3.computed_count == 4);

  auto am4 = verify_classification(monoid_spec(MonoidTag::AMn, 4));
  CHECK(am4.pass);
  CHECK(am4.computed_count == 7);

  auto ao3 = verify_classification(monoid_spec(MonoidTag::AOn, 3));
  CHECK_FALSE(ao3.pass);
  CHECK(ao3.computed_count == 7);
  CHECK(ao3.expected_count == 6);
  CHECK_FALSE(ao3.notes.empty());
}

TEST_CASE("names attach to the lattice") {
  Fixture am4(MonoidTag::AMn, 4);
  auto named = named_congruences(am4.gs, "Q", "F");
  auto lat = congruence_lattice(am4.elems);
  name_lattice(lat, named);
  int with_name = 0;
  for (const auto& name : lat.names)
    if (!name.empty()) ++with_name;
  CHECK(with_name == static_cast<int>(lat.congruences.size()));
  CHECK(lat.names.front().find("id") != std::string::npos);
  CHECK(lat.names.back().find("omega") != std::string::npos);
}

TEST_CASE("lattice construction is deterministic") {
  Fixture am4(MonoidTag::AMn, 4);
  auto a = congruence_lattice(am4.elems);
  auto b = congruence_lattice(am4.elems);
  REQUIRE(a.congruences.size() == b.congruences.size());
  for (size_t i = 0; i < a.congruences.size(); ++i) CHECK(a.congruences[i] == b.congruences[i]);
  CHECK(a.hasse == b.hasse);
}
