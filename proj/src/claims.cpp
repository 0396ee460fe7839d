#include "altmon/claims.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "altmon/congruences.hpp"
#include "altmon/genrank.hpp"
#include "altmon/green.hpp"

namespace altmon {

namespace {

using ordered_json = nlohmann::ordered_json;

// The congruence machinery for one monoid, computed once and shared.
struct LatticeBundle {
  std::vector<NamedCongruence> named;
  CongruenceLattice lat;
};

// Shared, compute-once store for enumerations, Green structures, and
// congruence lattices; claims run concurrently and hit the same monoids
// repeatedly.
class Cache {
 public:
  std::shared_ptr<const ElementSet> set(const MonoidSpec& spec) {
    return get(sets_, to_string(spec), [spec] {
      EnumerateOptions opts;
      return std::make_shared<const ElementSet>(enumerate(spec, opts));
    });
  }
  std::shared_ptr<const GreenStructure> green(const MonoidSpec& spec) {
    auto elems = set(spec);
    return get(greens_, to_string(spec),
               [elems] { return std::make_shared<const GreenStructure>(green_structure(*elems)); });
  }
  std::shared_ptr<const LatticeBundle> lattice(const MonoidSpec& spec,
                                               const LatticeOptions& opts) {
    auto gs = green(spec);
    return get(lattices_, to_string(spec), [gs, spec, opts] {
      auto bundle = std::make_shared<LatticeBundle>();
      bool am = spec.tag == MonoidTag::AMn;
      bundle->named = named_congruences(*gs, am ? "Q" : "J", am ? "F" : "I");
      bundle->lat = congruence_lattice(gs->elems, opts);
      return std::shared_ptr<const LatticeBundle>(std::move(bundle));
    });
  }

 private:
  template <typename T, typename F>
  std::shared_ptr<const T> get(
      std::map<std::string, std::shared_future<std::shared_ptr<const T>>>& table,
      const std::string& key, F make) {
    using Task = std::packaged_task<std::shared_ptr<const T>()>;
    std::shared_future<std::shared_ptr<const T>> fut;
    std::shared_ptr<Task> mine;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = table.find(key);
      if (it == table.end()) {
        mine = std::make_shared<Task>(make);
        fut = mine->get_future().share();
        table.emplace(key, fut);
      } else {
        fut = it->second;
      }
    }
    if (mine) (*mine)();  // compute outside the lock; other threads wait on the future
    return fut.get();
  }

  std::mutex mu_;
  std::map<std::string, std::shared_future<std::shared_ptr<const ElementSet>>> sets_;
  std::map<std::string, std::shared_future<std::shared_ptr<const GreenStructure>>> greens_;
  std::map<std::string, std::shared_future<std::shared_ptr<const LatticeBundle>>> lattices_;
};

std::string render_profile(const std::vector<JClassProfileRow>& rows) {
  auto sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const JClassProfileRow& a, const JClassProfileRow& b) { return a.label < b.label; });
  std::ostringstream out;
  for (const auto& r : sorted) {
    if (out.tellp() > 0) out << "; ";
    out << r.label << ":" << r.size << "/" << r.l_classes << "/" << r.r_classes << "/" << r.max_h;
  }
  return out.str();
}

std::string render_covers(const std::vector<std::pair<std::string, std::string>>& covers) {
  auto sorted = covers;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (const auto& [hi, lo] : sorted) {
    if (out.tellp() > 0) out << ", ";
    out << hi << ">" << lo;
  }
  return out.str();
}

// The lattice translations: a small verified generating family for AO/AM,
// keeping the pair-graph degree low.
std::vector<PartialPerm> lattice_generators(const MonoidSpec& spec) {
  if (spec.tag == MonoidTag::AOn) return make_family(FamilyName::x, spec.n).members;
  static const FamilyName by_mod[4] = {FamilyName::am0, FamilyName::am1, FamilyName::am2,
                                       FamilyName::am3};
  return make_family(by_mod[spec.n % 4], spec.n).members;
}

LatticeOptions lattice_opts(const MonoidSpec& spec) {
  LatticeOptions opts;
  opts.generators = lattice_generators(spec);
  return opts;
}

MonoidSpec AO(int n) { return monoid_spec(MonoidTag::AOn, n); }
MonoidSpec AM(int n) { return monoid_spec(MonoidTag::AMn, n); }

std::string plural_units(const ClassificationReport& rep) {
  std::ostringstream out;
  if (rep.pass) {
    out << "pass: " << rep.expected_count << " congruences, classification verified";
  } else {
    out << "fail: " << rep.computed_count << " congruences (expected " << rep.expected_count
        << ")";
    for (const auto& note : rep.notes) out << "; " << note;
  }
  return out.str();
}

int find_lattice_member(const CongruenceLattice& lat, const std::vector<NamedCongruence>& named,
                        const std::string& name) {
  for (const auto& nc : named)
    if (nc.name == name) return lat.index_of(nc.cong);
  return -1;
}

}  // namespace

std::vector<Claim> build_claims(const ClaimOptions& claim_opts) {
  (void)claim_opts;
  auto cache = std::make_shared<Cache>();
  std::vector<Claim> claims;
  auto add = [&](std::string id, std::string anchor, int n, std::function<ClaimOutcome()> run,
                 bool long_only = false) {
    claims.push_back({std::move(id), std::move(anchor), n, long_only, std::move(run)});
  };

  // ---- criterion 1: cardinalities (closed form == enumeration) ----
  auto card_claim = [cache](MonoidSpec spec) {
    return [cache, spec]() -> ClaimOutcome {
      int64_t formula = cardinality_formula(spec);
      size_t count = cache->set(spec)->size();
      return {std::to_string(formula), std::to_string(count)};
    };
  };
  for (int n = 2; n <= 8; ++n)
    add("1.card.AO." + std::to_string(n), "carAO", n, card_claim(AO(n)));
  for (int n = 3; n <= 8; ++n)
    add("1.card.AM." + std::to_string(n), "carAM", n, card_claim(AM(n)));
  add("1.card.AM.2", "carAM", 2, [cache]() -> ClaimOutcome {
    std::string formula = "domain-error";
    try {
      cardinality_formula(AM(2));
      formula = "no error";
    } catch (const FormulaDomainError&) {
    }
    return {"size=4 formula=domain-error",
            "size=" + std::to_string(cache->set(AM(2))->size()) + " formula=" + formula};
  });
  for (int n = 2; n <= 7; ++n) {
    add("1.card.AI." + std::to_string(n), "AI-count", n,
        card_claim(monoid_spec(MonoidTag::AIn, n)));
    add("1.card.POI." + std::to_string(n), "POI-count", n,
        card_claim(monoid_spec(MonoidTag::POIn, n)));
    add("1.card.PMI." + std::to_string(n), "PMI-count", n,
        card_claim(monoid_spec(MonoidTag::PMIn, n)));
    add("1.card.I." + std::to_string(n), "In-count", n, card_claim(monoid_spec(MonoidTag::In, n)));
  }

  // ---- criterion 2: characterizations agree with the extension oracle ----
  for (int n = 2; n <= 5; ++n)
    add("2.member." + std::to_string(n), "chAO+chAM", n, [cache, n]() -> ClaimOutcome {
      auto all = cache->set(monoid_spec(MonoidTag::In, n));
      int64_t checks = 0, bad = 0;
      for (MonoidTag tag : {MonoidTag::AIn, MonoidTag::AOn, MonoidTag::AMn}) {
        auto spec = monoid_spec(tag, n);
        for (const auto& e : all->elements()) {
          ++checks;
          if (contains(spec, e) != contains_by_oracle(spec, e)) ++bad;
        }
      }
      return {std::to_string(3 * all->size()) + " checks, 0 disagreements",
              std::to_string(checks) + " checks, " + std::to_string(bad) + " disagreements"};
    });
  for (int n = 6; n <= 7; ++n)
    add("2.member.sample." + std::to_string(n), "chAO+chAM", n, [n]() -> ClaimOutcome {
      int64_t checks = 0, bad = 0;
      auto test = [&](const PartialPerm& e) {
        for (MonoidTag tag : {MonoidTag::AIn, MonoidTag::AOn, MonoidTag::AMn}) {
          auto spec = monoid_spec(tag, n);
          ++checks;
          if (contains(spec, e) != contains_by_oracle(spec, e)) ++bad;
        }
      };
      // Exhaustive at the parity-characterized levels (rank n-1 and n).
      std::vector<int> dom, im;
      for (uint32_t dmask = 0; dmask < (1u << n); ++dmask) {
        int k = __builtin_popcount(dmask);
        if (k < n - 1) continue;
        dom.clear();
        for (int x = 1; x <= n; ++x)
          if (dmask & (1u << (x - 1))) dom.push_back(x);
        for (uint32_t imask = 0; imask < (1u << n); ++imask) {
          if (__builtin_popcount(imask) != k) continue;
          im.clear();
          for (int y = 1; y <= n; ++y)
            if (imask & (1u << (y - 1))) im.push_back(y);
          do {
            std::vector<int> img(n, 0);
            for (int t = 0; t < k; ++t) img[dom[t] - 1] = im[t];
            test(PartialPerm(n, img));
          } while (std::next_permutation(im.begin(), im.end()));
        }
      }
      // Plus deterministic random sampling across all ranks.
      std::mt19937 rng(0xA17000u + n);
      for (int t = 0; t < 10000; ++t) {
        uint32_t dmask = rng() & ((1u << n) - 1);
        std::vector<int> points;
        for (int y = 1; y <= n; ++y) points.push_back(y);
        for (size_t s = points.size() - 1; s > 0; --s)
          std::swap(points[s], points[rng() % (s + 1)]);
        std::vector<int> img(n, 0);
        size_t next = 0;
        for (int x = 1; x <= n; ++x)
          if (dmask & (1u << (x - 1))) img[x - 1] = points[next++];
        test(PartialPerm(n, img));
      }
      return {std::to_string(checks) + " checks, 0 disagreements",
              std::to_string(checks) + " checks, " + std::to_string(bad) + " disagreements"};
    });

  // ---- criterion 3: J-class profiles and poset shapes ----
  auto profile_claim = [cache](MonoidSpec spec) {
    return [cache, spec]() -> ClaimOutcome {
      auto gs = cache->green(spec);
      std::string prefix = spec.tag == MonoidTag::AMn ? "Q" : "J";
      auto poset = j_poset(*gs, prefix);
      std::vector<JClassProfileRow> computed;
      for (size_t c = 0; c < gs->j_members.size(); ++c) {
        std::vector<bool> seen_l(gs->l_count(), false), seen_r(gs->r_count(), false);
        int lc = 0, rc = 0, max_h = 0;
        for (int e : gs->j_members[c]) {
          if (!seen_l[gs->l_class[e]]) seen_l[gs->l_class[e]] = true, ++lc;
          if (!seen_r[gs->r_class[e]]) seen_r[gs->r_class[e]] = true, ++rc;
          max_h = std::max(max_h, static_cast<int>(gs->h_members[gs->h_class[e]].size()));
        }
        computed.push_back({poset.labels[c], static_cast<int64_t>(gs->j_members[c].size()), lc,
                            rc, max_h});
      }
      return {render_profile(predicted_profile(spec)), render_profile(computed)};
    };
  };
  auto poset_claim = [cache](MonoidSpec spec) {
    return [cache, spec]() -> ClaimOutcome {
      const int n = spec.n;
      const bool am = spec.tag == MonoidTag::AMn;
      std::string p = am ? "Q" : "J";
      bool split = !am || n % 4 == 1 || n % 4 == 2;
      std::vector<std::pair<std::string, std::string>> want;
      for (int k = 0; k + 1 <= n - 2; ++k)
        want.emplace_back(p + std::to_string(k + 1), p + std::to_string(k));
      if (split) {
        want.emplace_back(p + std::to_string(n - 1) + "^o", p + std::to_string(n - 2));
        want.emplace_back(p + std::to_string(n - 1) + "^e", p + std::to_string(n - 2));
        want.emplace_back(p + std::to_string(n), p + std::to_string(n - 1) + "^o");
        want.emplace_back(p + std::to_string(n), p + std::to_string(n - 1) + "^e");
      } else {
        want.emplace_back(p + std::to_string(n - 1), p + std::to_string(n - 2));
        want.emplace_back(p + std::to_string(n), p + std::to_string(n - 1));
      }
      auto poset = j_poset(*cache->green(spec), p);
      std::vector<std::pair<std::string, std::string>> got;
      for (auto [hi, lo] : poset.hasse) got.emplace_back(poset.labels[hi], poset.labels[lo]);
      return {render_covers(want), render_covers(got)};
    };
  };
  for (int n = 3; n <= 7; ++n) {
    add("3.green.profile.AO." + std::to_string(n), "relJ", n, profile_claim(AO(n)));
    add("3.green.profile.AM." + std::to_string(n), "MrelJ", n, profile_claim(AM(n)));
    add("3.green.poset.AO." + std::to_string(n), "jposet-AO", n, poset_claim(AO(n)));
    add("3.green.poset.AM." + std::to_string(n), "jposet-AM", n, poset_claim(AM(n)));
  }

  // ---- criterion 4: congruence lattices ----
  auto conlat_claim = [cache](MonoidSpec spec, size_t expected_count) {
    return [cache, spec, expected_count]() -> ClaimOutcome {
      auto gs = cache->green(spec);
      auto bundle = cache->lattice(spec, lattice_opts(spec));
      auto rep = verify_classification(spec, *gs, bundle->named, bundle->lat);
      std::string expected = "pass: " + std::to_string(expected_count) +
                             " congruences, classification verified";
      return {expected, plural_units(rep)};
    };
  };
  for (int n = 3; n <= 6; ++n)
    add("4.conlat.AO." + std::to_string(n), "conAO", n, conlat_claim(AO(n), n + 3), n == 6);
  for (int n = 3; n <= 6; ++n) {
    const int counts[4] = {2 * n - 1, 2 * n + 6, 2 * n + 5, 2 * n - 2};
    add("4.conlat.AM." + std::to_string(n), "conAM", n, conlat_claim(AM(n), counts[n % 4]));
  }
  for (int n = 3; n <= 5; ++n)
    add("4.ideals.AO." + std::to_string(n), "ideals-AO", n, [cache, n]() -> ClaimOutcome {
      return {std::to_string(n + 3) + " ideals",
              std::to_string(ideals(*cache->green(AO(n))).size()) + " ideals"};
    });
  for (int n = 3; n <= 6; ++n)
    add("4.ideals.AM." + std::to_string(n), "ideals-AM", n, [cache, n]() -> ClaimOutcome {
      int expect = (n % 4 == 0 || n % 4 == 3) ? n + 1 : n + 3;
      return {std::to_string(expect) + " ideals",
              std::to_string(ideals(*cache->green(AM(n))).size()) + " ideals"};
    });
  for (int n = 3; n <= 6; ++n)
    add("4.identities.AM." + std::to_string(n), "con-bullets", n, [cache, n]() -> ClaimOutcome {
      auto bundle = cache->lattice(AM(n), lattice_opts(AM(n)));
      const auto& named = bundle->named;
      auto get = [&](const std::string& name) -> const Congruence& {
        for (const auto& nc : named)
          if (nc.name == name) return nc.cong;
        throw Error("construction missing: " + name);
      };
      std::vector<std::string> bad;
      auto expect = [&](bool ok, const std::string& what) {
        if (!ok) bad.push_back(what);
      };
      auto R = [&](const std::string& s) -> const Congruence& { return get("rees(F" + s + ")"); };
      auto T = [&](const std::string& s) -> const Congruence& { return get("theta(Q" + s + ")"); };
      auto P = [&](const std::string& s) -> const Congruence& { return get("pi(Q" + s + ")"); };
      // id = rees(F0) = theta(Q0) = theta(Q1) and the alternating chain.
      expect(R("0").is_identity(), "rees(F0) = id");
      expect(T("0") == R("0"), "theta(Q0) = rees(F0)");
      expect(T("1") == R("0"), "theta(Q1) = rees(F0)");
      std::vector<const Congruence*> chain{&R("0")};
      for (int k = 1; k <= n - 2; ++k) {
        if (k >= 2) chain.push_back(&T(std::to_string(k)));
        chain.push_back(&R(std::to_string(k)));
      }
      for (size_t t = 0; t + 1 < chain.size(); ++t)
        expect(chain[t]->leq(*chain[t + 1]) && !(*chain[t] == *chain[t + 1]),
               "chain step " + std::to_string(t) + " strictly ascends");
      if (n % 4 == 0 || n % 4 == 3) {
        for (int k = 0; k <= n; ++k) {
          std::string s = std::to_string(k);
          expect(T(s) == P(s), "theta(Q" + s + ") = pi(Q" + s + ")");
        }
        expect(R(std::to_string(n - 2)) == T(std::to_string(n - 1)),
               "rees(F(n-2)) = theta(Q(n-1))");
        if (n % 4 == 0) {
          expect(R(std::to_string(n - 1)).leq(T(std::to_string(n))) &&
                     !(R(std::to_string(n - 1)) == T(std::to_string(n))),
                 "rees(F(n-1)) below theta(Qn)");
          expect(!T(std::to_string(n)).is_universal(), "theta(Qn) proper");
        } else {
          expect(R(std::to_string(n - 1)) == T(std::to_string(n)),
                 "rees(F(n-1)) = theta(Qn)");
        }
      } else {
        for (int k = 0; k <= n - 2; ++k) {
          std::string s = std::to_string(k);
          expect(T(s) == P(s), "theta(Q" + s + ") = pi(Q" + s + ")");
        }
        expect(T(std::to_string(n)) == P(std::to_string(n)), "theta(Qn) = pi(Qn)");
        std::string o = std::to_string(n - 1) + "^o", e = std::to_string(n - 1) + "^e";
        std::string low = std::to_string(n - 2), hi = std::to_string(n - 1);
        auto strict = [&](const Congruence& a, const Congruence& b, const std::string& what) {
          expect(a.leq(b) && !(a == b), what);
        };
        strict(R(low), T(o), "rees(F(n-2)) < theta(Q^o)");
        strict(T(o), R(o), "theta(Q^o) < rees(F^o)");
        strict(R(o), P(e), "rees(F^o) < pi(Q^e)");
        strict(P(e), R(hi), "pi(Q^e) < rees(F(n-1))");
        strict(R(low), T(e), "rees(F(n-2)) < theta(Q^e)");
        strict(T(e), R(e), "theta(Q^e) < rees(F^e)");
        strict(R(e), P(o), "rees(F^e) < pi(Q^o)");
        strict(P(o), R(hi), "pi(Q^o) < rees(F(n-1))");
        const Congruence& un = get("theta(Q" + o + ")+theta(Q" + e + ")");
        expect(meet(P(o), P(e)) == un, "pi(Q^o) meet pi(Q^e) = theta union");
        expect(meet(R(e), P(e)) == T(e), "rees(F^e) meet pi(Q^e) = theta(Q^e)");
        expect(meet(R(o), P(o)) == T(o), "rees(F^o) meet pi(Q^o) = theta(Q^o)");
        expect(meet(R(o), R(e)) == R(low), "rees(F^o) meet rees(F^e) = rees(F(n-2))");
        expect(meet(T(o), T(e)) == R(low), "theta(Q^o) meet theta(Q^e) = rees(F(n-2))");
        if (n % 4 == 1) {
          strict(R(hi), T(std::to_string(n)), "rees(F(n-1)) < theta(Qn)");
          expect(!T(std::to_string(n)).is_universal(), "theta(Qn) proper");
        } else {
          expect(R(hi) == T(std::to_string(n)), "rees(F(n-1)) = theta(Qn)");
        }
      }
      std::string computed = bad.empty() ? "all identities hold" : "failed: ";
      for (size_t t = 0; t < bad.size(); ++t) computed += (t ? "; " : "") + bad[t];
      return {"all identities hold", computed};
    });
  for (int n = 5; n <= 6; ++n)
    add("4.interval.AM." + std::to_string(n), "conAM-interval", n, [cache, n]() -> ClaimOutcome {
      auto bundle = cache->lattice(AM(n), lattice_opts(AM(n)));
      const auto& named = bundle->named;
      auto lat = bundle->lat;
      name_lattice(lat, named);
      int bot = find_lattice_member(lat, named, "rees(F" + std::to_string(n - 2) + ")");
      int top = find_lattice_member(lat, named, "rees(F" + std::to_string(n - 1) + ")");
      if (bot < 0 || top < 0) return {"9-member interval", "endpoints missing"};
      std::vector<int> members;
      for (size_t i = 0; i < lat.congruences.size(); ++i)
        if (lat.leq[bot][i] && lat.leq[i][top]) members.push_back(static_cast<int>(i));
      int covers = 0;
      for (auto [hi, lo] : lat.hasse) {
        bool hi_in = std::find(members.begin(), members.end(), hi) != members.end();
        bool lo_in = std::find(members.begin(), members.end(), lo) != members.end();
        if (hi_in && lo_in) ++covers;
      }
      return {"9 members, 12 covering pairs", std::to_string(members.size()) + " members, " +
                                                  std::to_string(covers) + " covering pairs"};
    });

  // ---- criterion 5: generating sets ----
  auto family_claim = [cache](FamilyName fam, MonoidSpec spec) {
    return [cache, fam, spec]() -> ClaimOutcome {
      auto family = make_family(fam, spec.n);
      auto result = closure(family);
      bool ok = result.generated == *cache->set(spec);
      std::ostringstream got;
      got << "closure size " << result.generated.size() << (ok ? " == " : " != ") << "monoid size "
          << cache->set(spec)->size();
      for (const auto& note : family.notes) got << " [" << note << "]";
      std::ostringstream want;
      want << "closure size " << cache->set(spec)->size() << " == monoid size "
           << cache->set(spec)->size();
      for (const auto& note : family.notes) want << " [" << note << "]";
      return {want.str(), got.str()};
    };
  };
  for (int n = 3; n <= 7; ++n)
    add("5.gen.x-AO." + std::to_string(n), "genAO", n, family_claim(FamilyName::x, AO(n)));
  for (int n : {4, 5, 8})
    add("5.gen.hgen." + std::to_string(n), "hgen", n, [cache, n]() -> ClaimOutcome {
      auto gens = cache->set(AO(n))->elements();
      gens.push_back(reversal(n));
      auto closed = closure_of(n, gens);
      size_t want = cache->set(AM(n))->size();
      return {"closure of AO+h has size " + std::to_string(want),
              "closure of AO+h has size " + std::to_string(closed.generated.size())};
    });
  add("5.gen.gen2.6", "gen2", 6, [cache]() -> ClaimOutcome {
    auto gens = cache->set(AO(6))->elements();
    for (int i = 1; i <= 6; ++i) gens.push_back(h_gen(i, 6));
    auto closed = closure_of(6, gens);
    size_t want = cache->set(AM(6))->size();
    return {"closure of AO+h_i has size " + std::to_string(want),
            "closure of AO+h_i has size " + std::to_string(closed.generated.size())};
  });
  for (int n : {4, 8})
    add("5.gen.am0." + std::to_string(n), "genAM0", n, family_claim(FamilyName::am0, AM(n)));
  add("5.gen.am1.5", "genAM1", 5, family_claim(FamilyName::am1, AM(5)));
  add("5.gen.am2.6", "genAM2", 6, family_claim(FamilyName::am2, AM(6)));
  for (int n : {3, 7})
    add("5.gen.am3." + std::to_string(n), "genAM3", n, family_claim(FamilyName::am3, AM(n)));

  // ---- criterion 6: ranks ----
  auto lower_claim = [](MonoidSpec spec, int bound) {
    return [spec, bound]() -> ClaimOutcome {
      auto rep = rank_lower_bound_report(spec);
      std::ostringstream got;
      got << (rep.pass ? "all drops lose the monoid" : "some drop still generates")
          << ", bound >= " << rep.implied_bound;
      return {"all drops lose the monoid, bound >= " + std::to_string(bound), got.str()};
    };
  };
  for (int n = 3; n <= 7; ++n)
    add("6.rank.AO.lower." + std::to_string(n), "rkAO", n, lower_claim(AO(n), n));
  auto exhaustive_claim = [](MonoidSpec spec, int expect, int max_size) {
    return [spec, expect, max_size]() -> ClaimOutcome {
      ExhaustiveRankOptions opts;
      opts.max_size = max_size;
      auto res = exhaustive_rank(spec, opts);
      std::string got = res.exact ? "rank = " + std::to_string(res.rank)
                                  : "rank > " + std::to_string(max_size);
      return {"rank = " + std::to_string(expect), got};
    };
  };
  add("6.rank.AO.exhaustive.3", "rkAO", 3, exhaustive_claim(AO(3), 3, 3));
  add("6.rank.AO.exhaustive.4", "rkAO", 4, exhaustive_claim(AO(4), 4, 4));
  add("6.rank.AM.exhaustive.3", "genAM3", 3, exhaustive_claim(AM(3), 3, 3));
  add("6.rank.AM.exhaustive.4", "genAM0", 4, exhaustive_claim(AM(4), 3, 3));
  add("6.rank.AM.exhaustive.5", "genAM1", 5, exhaustive_claim(AM(5), 4, 4));
  add("6.rank.AM.lower.6", "hrk23", 6, lower_claim(AM(6), 6));
  add("6.rank.AM.lower.7", "hrk23", 7, lower_claim(AM(7), 7));
  add("6.rank.AM.lower.8", "hrk01", 8, lower_claim(AM(8), 5));
  auto pool_claim = [](MonoidSpec spec, int expect) {
    return [spec, expect]() -> ClaimOutcome {
      ExhaustiveRankOptions narrow, full;
      narrow.max_size = full.max_size = expect;
      full.full_pool = true;
      auto a = exhaustive_rank(spec, narrow);
      auto b = exhaustive_rank(spec, full);
      return {"pool and full-pool agree: rank = " + std::to_string(expect),
              "pool rank = " + std::to_string(a.rank) +
                  ", full-pool rank = " + std::to_string(b.rank)};
    };
  };
  add("6.rank.pool.AO.3", "rkAO", 3, [pool_claim]() {
    auto inner = pool_claim(monoid_spec(MonoidTag::AOn, 3), 3);
    auto r = inner();
    return ClaimOutcome{"pool and full-pool agree: rank = 3",
                        r.computed == "pool rank = 3, full-pool rank = 3"
                            ? "pool and full-pool agree: rank = 3"
                            : r.computed};
  });
  add("6.rank.pool.AM.3", "genAM3", 3, [pool_claim]() {
    auto inner = pool_claim(monoid_spec(MonoidTag::AMn, 3), 3);
    auto r = inner();
    return ClaimOutcome{"pool and full-pool agree: rank = 3",
                        r.computed == "pool rank = 3, full-pool rank = 3"
                            ? "pool and full-pool agree: rank = 3"
                            : r.computed};
  });

  // ---- criterion 7: the factorization and conjugation lemmas ----
  for (int n = 2; n <= 5; ++n)
    add("7.lemma.ab." + std::to_string(n), "ab", n, [cache, n]() -> ClaimOutcome {
      auto all = cache->set(monoid_spec(MonoidTag::In, n));
      std::vector<PartialPerm> level;
      for (const auto& e : all->elements())
        if (e.rank() == n - 1) level.push_back(e);
      int64_t pairs = 0, bad = 0;
      for (const auto& a : level)
        for (const auto& b : level) {
          auto ab = compose(a, b);
          if (ab.rank() != n - 1) continue;
          ++pairs;
          if (completion(ab) != compose(completion(a), completion(b))) ++bad;
        }
      return {std::to_string(pairs) + " pairs, 0 failures",
              std::to_string(pairs) + " pairs, " + std::to_string(bad) + " failures"};
    });
  for (int n = 4; n <= 5; ++n)
    add("7.lemma.n-2." + std::to_string(n), "n-2", n, [n]() -> ClaimOutcome {
      std::vector<int> failed;
      for (int k = 0; k <= n - 3; ++k)
        if (!rank_level_factors(AO(n), k)) failed.push_back(k);
      std::string got = failed.empty() ? "every level factors through the next"
                                       : "failing levels: " + std::to_string(failed.size());
      return {"every level factors through the next", got};
    });
  for (int n = 4; n <= 5; ++n)
    add("7.lemma.n-1." + std::to_string(n), "n-1", n, [cache, n]() -> ClaimOutcome {
      auto elems = cache->set(AO(n));
      int64_t total = 0, bad = 0;
      for (const auto& alpha : elems->elements()) {
        if (alpha.rank() != n - 1) continue;
        ++total;
        auto [d, i] = gaps(alpha);
        PartialPerm prod = PartialPerm::identity(n);
        for (int t : rank_n1_word(n, d, i)) prod = compose(prod, x_gen(t, n));
        if (prod != alpha) ++bad;
      }
      return {std::to_string(total) + " words evaluate, 0 failures",
              std::to_string(total) + " words evaluate, " + std::to_string(bad) + " failures"};
    });
  auto witness_claim = [cache](int n, const std::string& which) {
    return [cache, n, which]() -> ClaimOutcome {
      auto elems = cache->set(AO(n));
      int64_t total = 0, bad = 0;
      for (const auto& alpha : elems->elements()) {
        if (alpha.rank() != n - 2) continue;
        std::vector<int> dgap, igap;
        for (int x = 1; x <= n; ++x) {
          if (!alpha.defined(x)) dgap.push_back(x);
        }
        auto im = alpha.image();
        for (int y = 1; y <= n; ++y)
          if (!std::binary_search(im.begin(), im.end(), y)) igap.push_back(y);
        bool admissible;
        if (which == "n2a")
          admissible = igap[0] % 2 == 0 && igap[1] % 2 == 0;
        else if (which == "n2b")
          admissible = igap[0] % 2 == 1 || igap[1] % 2 == 1;
        else if (which == "n2c")
          admissible = dgap[0] == 1 && dgap[1] % 2 == 0 && igap[0] == 1 && igap[1] % 2 == 1;
        else
          admissible = dgap[0] == 1 && igap[0] == 1;  // n2d2: 1 outside both
        if (!admissible) continue;
        ++total;
        bool found;
        if (which == "n2a")
          found = witness_make_odd_gap(AO(n), alpha).has_value();
        else if (which == "n2b")
          found = witness_clear_one(AO(n), alpha).has_value();
        else if (which == "n2c") {
          auto w = witness_two_gap_product(AO(n), alpha);
          found = w && compose(w->left, w->right) == alpha;
        } else {
          auto w = witness_avoiding_one(AO(n), alpha);
          found = w && compose(w->left, w->right) == alpha;
        }
        if (!found) ++bad;
      }
      return {std::to_string(total) + " inputs, 0 search failures",
              std::to_string(total) + " inputs, " + std::to_string(bad) + " search failures"};
    };
  };
  for (int n = 4; n <= 5; ++n)
    for (const std::string which : {"n2a", "n2b", "n2c", "n2d2"})
      add("7.lemma." + which + "." + std::to_string(n), which, n, witness_claim(n, which));
  for (int n = 3; n <= 8; ++n)
    add("7.conj." + std::to_string(n), "hxh-display", n, [n]() -> ClaimOutcome {
      auto checks = conjugation_identities(n);
      int64_t bad = 0;
      for (const auto& c : checks) bad += !c.holds;
      std::string want = std::to_string(checks.size()) + " of " + std::to_string(checks.size()) +
                         " identities hold";
      return {want, std::to_string(checks.size() - bad) + " of " +
                        std::to_string(checks.size()) + " identities hold"};
    });

  // ---- criterion 8: structural sanity ----
  auto compat_claim = [cache](MonoidSpec spec) {
    return [cache, spec]() -> ClaimOutcome {
      auto gs = cache->green(spec);
      auto bundle = cache->lattice(spec, lattice_opts(spec));
      int64_t bad = 0;
      for (const auto& c : bundle->lat.congruences)
        if (!is_congruence(gs->elems, c)) ++bad;
      for (const auto& nc : bundle->named)
        if (!is_congruence(gs->elems, nc.cong)) ++bad;
      int64_t total = bundle->lat.congruences.size() + bundle->named.size();
      return {std::to_string(total) + " compatible", std::to_string(total - bad) + " compatible"};
    };
  };
  for (int n = 3; n <= 5; ++n)
    add("8.compat.AO." + std::to_string(n), "compat", n, compat_claim(AO(n)));
  for (int n = 3; n <= 6; ++n)
    add("8.compat.AM." + std::to_string(n), "compat", n, compat_claim(AM(n)));
  for (int n = 2; n <= 5; ++n)
    add("8.closed." + std::to_string(n), "closure", n, [cache, n]() -> ClaimOutcome {
      int64_t bad = 0, families = 0;
      for (MonoidTag tag : {MonoidTag::In, MonoidTag::Sn, MonoidTag::An, MonoidTag::En,
                            MonoidTag::POIn, MonoidTag::PMIn, MonoidTag::AIn, MonoidTag::AOn,
                            MonoidTag::AMn}) {
        ++families;
        auto elems = cache->set(monoid_spec(tag, n));
        for (const auto& a : elems->elements()) {
          if (!elems->contains(inverse(a))) ++bad;
          for (const auto& b : elems->elements())
            if (!elems->contains(compose(a, b))) ++bad;
        }
      }
      return {std::to_string(families) + " families closed under product and inverse",
              bad == 0 ? std::to_string(families) + " families closed under product and inverse"
                       : std::to_string(bad) + " closure violations"};
    });
  add("8.determinism.1", "determinism", 5, []() -> ClaimOutcome {
    auto run_once = []() {
      std::ostringstream out;
      auto spec = monoid_spec(MonoidTag::AMn, 5);
      auto elems = enumerate(spec);
      auto gs = green_structure(elems);
      auto poset = j_poset(gs, "Q");
      out << export_dot(poset);
      auto named = named_congruences(gs, "Q", "F");
      LatticeOptions lopts;
      lopts.generators = make_family(FamilyName::am1, 5).members;
      auto lat = congruence_lattice(elems, lopts);
      name_lattice(lat, named);
      for (size_t i = 0; i < lat.congruences.size(); ++i)
        out << lat.names[i] << "#" << lat.congruences[i].block_count() << "\n";
      for (auto [hi, lo] : lat.hasse) out << hi << ">" << lo << ";";
      return out.str();
    };
    std::string a = run_once(), b = run_once();
    return {"two runs byte-identical",
            a == b ? "two runs byte-identical" : "runs differ"};
  });

  std::sort(claims.begin(), claims.end(),
            [](const Claim& a, const Claim& b) { return a.id < b.id; });
  return claims;
}

std::vector<ClaimResult> run_claims(const std::vector<Claim>& claims, const ClaimOptions& opts) {
  std::vector<ClaimResult> results(claims.size());
  std::atomic<size_t> next{0};
  int jobs = opts.jobs > 0 ? opts.jobs
                           : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= claims.size()) return;
      const Claim& claim = claims[i];
      ClaimResult& res = results[i];
      res.id = claim.id;
      res.anchor = claim.anchor;
      res.n = claim.n;
      if (claim.long_only && !opts.long_runs) {
        res.status = "skipped(budget)";
        res.expected = res.computed = "(pass --long to run)";
        continue;
      }
      if (opts.n_max > 0 && claim.n > opts.n_max) {
        res.status = "skipped(budget)";
        res.expected = res.computed = "(beyond --n-max " + std::to_string(opts.n_max) + ")";
        continue;
      }
      auto start = std::chrono::steady_clock::now();
      try {
        auto outcome = claim.run();
        res.expected = outcome.expected;
        res.computed = outcome.computed;
        res.status = outcome.expected == outcome.computed ? "pass" : "fail";
      } catch (const std::exception& e) {
        res.expected = "(no exception)";
        res.computed = std::string("exception: ") + e.what();
        res.status = "fail";
      }
      res.millis = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

std::string report_json(const std::vector<ClaimResult>& results, const ClaimOptions& opts) {
  ordered_json doc;
  doc["schema"] = 1;
  int pass = 0, fail = 0, skip = 0;
  ordered_json claims = ordered_json::array();
  for (const auto& r : results) {
    ordered_json c;
    c["id"] = r.id;
    c["anchor"] = r.anchor;
    c["n"] = r.n;
    c["expected"] = r.expected;
    c["computed"] = r.computed;
    c["status"] = r.status;
    if (opts.timings) c["millis"] = r.millis;
    claims.push_back(c);
    if (r.status == "pass")
      ++pass;
    else if (r.status == "fail")
      ++fail;
    else
      ++skip;
  }
  doc["claims"] = claims;
  doc["summary"] = {{"pass", pass}, {"fail", fail}, {"skip", skip}};
  return doc.dump(2) + "\n";
}

std::string report_text(const std::vector<ClaimResult>& results) {
  std::ostringstream out;
  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : results) {
    out << (r.status == "pass" ? "PASS" : r.status == "fail" ? "FAIL" : "SKIP") << " " << r.id
        << " [" << r.anchor << "]";
    if (r.status == "fail") out << "\n  expected: " << r.expected << "\n  computed: " << r.computed;
    if (r.status != "pass" && r.status != "fail") out << " " << r.computed;
    out << "\n";
    if (r.status == "pass")
      ++pass;
    else if (r.status == "fail")
      ++fail;
    else
      ++skip;
  }
  out << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
  return out.str();
}

const std::vector<std::pair<int, std::string>>& criterion_titles() {
  static const std::vector<std::pair<int, std::string>> titles = {
      {1, "cardinalities: closed forms match enumeration"},
      {2, "membership characterizations match the extension oracle"},
      {3, "Green structure: J-class profiles and poset shapes"},
      {4, "congruence lattices and their classification"},
      {5, "generating sets"},
      {6, "ranks"},
      {7, "factorization and conjugation identity suites"},
      {8, "structural sanity and determinism"},
  };
  return titles;
}

}  // namespace altmon
