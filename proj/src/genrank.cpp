#include "altmon/genrank.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

namespace altmon {

std::vector<int> chain_minus(int n, int i) {
  std::vector<int> out;
  for (int x = 1; x <= n; ++x)
    if (x != i) out.push_back(x);
  return out;
}

PartialPerm x_gen(int i, int n) {
  if (i < 1 || i > n) throw PreconditionError("x_i needs 1 <= i <= n");
  if (i == 1)
    return PartialPerm::order_map(n, chain_minus(n, 1), chain_minus(n, n % 2 ? n : n - 1));
  if (i == 2)
    return PartialPerm::order_map(n, chain_minus(n, 2), chain_minus(n, n % 2 ? n - 1 : n));
  return PartialPerm::order_map(n, chain_minus(n, i), chain_minus(n, i - 2));
}

PartialPerm y_gen(int i, int n) {
  if (i < 1 || i > n) throw PreconditionError("y_i needs 1 <= i <= n");
  if (i == n) return PartialPerm::order_map(n, chain_minus(n, n), chain_minus(n, 1));
  return PartialPerm::order_map(n, chain_minus(n, i), chain_minus(n, i + 1), false);
}

PartialPerm h_gen(int i, int n) {
  return reverse(PartialPerm::partial_identity(n, chain_minus(n, i)));
}

namespace {

// x_from x_{from-2} ... x_downto, a single member when from == downto.
PartialPerm x_chain(int from, int downto, int n, std::string& label) {
  PartialPerm p = x_gen(from, n);
  label = "x" + std::to_string(from);
  for (int i = from - 2; i >= downto; i -= 2) {
    p = compose(p, x_gen(i, n));
    label += "*x" + std::to_string(i);
  }
  return p;
}

}  // namespace

GeneratorFamily make_family(FamilyName name, int n) {
  GeneratorFamily fam{name, n, {}, {}, {}};
  auto push = [&](const PartialPerm& p, const std::string& label) {
    fam.members.push_back(p);
    fam.labels.push_back(label);
  };
  switch (name) {
    case FamilyName::x:
      for (int i = 1; i <= n; ++i) push(x_gen(i, n), "x" + std::to_string(i));
      return fam;
    case FamilyName::y:
      for (int i = 1; i <= n; ++i) push(y_gen(i, n), "y" + std::to_string(i));
      return fam;
    case FamilyName::h:
      push(reversal(n), "h");
      return fam;
    case FamilyName::h_i:
      for (int i = 1; i <= n; ++i) push(h_gen(i, n), "h" + std::to_string(i));
      return fam;
    case FamilyName::am0: {
      if (n % 4 != 0) throw PreconditionError("am0 needs n = 0 mod 4");
      push(reversal(n), "h");
      if (n / 2 + 3 > n)
        fam.notes.push_back("plain x range x" + std::to_string(n) + "..x" +
                            std::to_string(n / 2 + 3) + " is empty at n=" + std::to_string(n));
      for (int i = n; i >= n / 2 + 3; --i) push(x_gen(i, n), "x" + std::to_string(i));
      std::string label;
      PartialPerm c1 = x_chain(n / 2 + 2, 4, n, label);
      if (n / 2 + 2 == 4) fam.notes.push_back("descending chain collapses to " + label);
      push(c1, label);
      PartialPerm c2 = x_chain(n / 2 + 1, 3, n, label);
      if (n / 2 + 1 == 3) fam.notes.push_back("descending chain collapses to " + label);
      push(c2, label);
      return fam;
    }
    case FamilyName::am1: {
      if (n % 4 != 1) throw PreconditionError("am1 needs n = 1 mod 4");
      push(reversal(n), "h");
      if ((n + 5) / 2 > n)
        fam.notes.push_back("plain x range is empty at n=" + std::to_string(n));
      for (int i = n; i >= (n + 5) / 2; --i) push(x_gen(i, n), "x" + std::to_string(i));
      std::string label;
      PartialPerm c1 = x_chain((n + 3) / 2, 4, n, label);
      if ((n + 3) / 2 == 4) fam.notes.push_back("descending chain collapses to " + label);
      push(c1, label);
      PartialPerm c2 = x_chain((n + 1) / 2, 3, n, label);
      if ((n + 1) / 2 == 3) fam.notes.push_back("descending chain collapses to " + label);
      push(c2, label);
      return fam;
    }
    case FamilyName::am2: {
      if (n % 4 != 2) throw PreconditionError("am2 needs n = 2 mod 4");
      push(compose(x_gen(1, n), h_gen(n - 1, n)), "x1*h" + std::to_string(n - 1));
      push(compose(x_gen(2, n), h_gen(n, n)), "x2*h" + std::to_string(n));
      for (int i = 3; i <= n; ++i) push(x_gen(i, n), "x" + std::to_string(i));
      return fam;
    }
    case FamilyName::am3: {
      if (n % 4 != 3) throw PreconditionError("am3 needs n = 3 mod 4");
      for (int i = 1; i <= n; ++i) push(y_gen(i, n), "y" + std::to_string(i));
      return fam;
    }
  }
  throw Error("unknown family");
}

ClosureResult closure_of(int n, const std::vector<PartialPerm>& members, bool with_witnesses) {
  for (const auto& g : members)
    if (g.n() != n) throw DimensionError("closure members must share one chain size");
  std::unordered_map<uint64_t, uint32_t> seen;  // key -> BFS slot
  std::vector<uint64_t> queue;
  std::vector<std::pair<int32_t, int32_t>> parent;  // (queue slot of prefix, member index)
  uint64_t idk = PartialPerm::identity(n).key();
  seen.emplace(idk, 0);
  queue.push_back(idk);
  parent.emplace_back(-1, -1);
  for (size_t q = 0; q < queue.size(); ++q) {
    for (size_t g = 0; g < members.size(); ++g) {
      uint64_t y = compose_keys(queue[q], members[g].key(), n);
      if (seen.emplace(y, static_cast<uint32_t>(queue.size())).second) {
        queue.push_back(y);
        parent.emplace_back(static_cast<int32_t>(q), static_cast<int32_t>(g));
      }
    }
  }
  std::vector<PartialPerm> elems;
  elems.reserve(queue.size());
  for (uint64_t k : queue) {
    std::vector<int> img(n);
    for (int t = 0; t < n; ++t) img[t] = static_cast<int>((k >> (4 * (n - 1 - t))) & 0xF);
    elems.emplace_back(n, img);
  }
  ClosureResult result{ElementSet(n, elems), {}};
  if (with_witnesses) {
    result.witness_words.resize(result.generated.size());
    for (size_t q = 0; q < queue.size(); ++q) {
      std::vector<int> word;
      for (int32_t at = static_cast<int32_t>(q); parent[at].first >= 0; at = parent[at].first)
        word.push_back(parent[at].second);
      std::reverse(word.begin(), word.end());
      auto idx = result.generated.index_of_key(queue[q]);
      result.witness_words[*idx] = std::move(word);
    }
  }
  return result;
}

ClosureResult closure(const GeneratorFamily& family, bool with_witnesses) {
  return closure_of(family.n, family.members, with_witnesses);
}

bool verify_generates(const GeneratorFamily& family, const MonoidSpec& spec) {
  if (family.n != spec.n) throw DimensionError("family and monoid chain sizes differ");
  return closure(family).generated == enumerate(spec);
}

RankBoundReport rank_lower_bound_report(const MonoidSpec& spec) {
  if (spec.tag != MonoidTag::AOn && spec.tag != MonoidTag::AMn)
    throw PreconditionError("rank_lower_bound_report covers AO and AM only");
  const int n = spec.n;
  RankBoundReport rep;
  rep.monoid = to_string(spec);
  rep.n = n;
  auto elems = enumerate(spec);
  const bool has_h = spec.tag == MonoidTag::AMn && (n % 4 == 0 || n % 4 == 1);

  // Composition never raises rank and the dropped generators all have rank
  // n-1 or n, so the ideal of rank <= n-2 elements survives any drop and the
  // closure question reduces to the rank >= n-1 layer closing on itself.
  std::vector<PartialPerm> high;
  for (const auto& e : elems.elements())
    if (e.rank() >= n - 1) high.push_back(e);

  auto drop_and_close = [&](const std::vector<int>& dropped_domains, bool drop_h,
                            RankBoundClaim& claim) {
    std::vector<PartialPerm> kept;
    PartialPerm h = reversal(n);
    for (const auto& e : high) {
      if (drop_h && e == h) continue;
      if (e.rank() == n - 1) {
        auto dom = e.domain();
        bool dropped = false;
        for (int i : dropped_domains)
          if (dom == chain_minus(n, i)) dropped = true;
        if (dropped) continue;
      }
      kept.push_back(e);
    }
    std::set<uint64_t> reached;
    std::vector<PartialPerm> queue{PartialPerm::identity(n)};
    reached.insert(queue[0].key());
    for (size_t q = 0; q < queue.size(); ++q)
      for (const auto& g : kept) {
        auto y = compose(queue[q], g);
        if (y.rank() < n - 1) continue;
        if (reached.insert(y.key()).second) queue.push_back(y);
      }
    claim.holds = reached.size() != high.size();
    if (claim.holds)
      for (const auto& e : high)
        if (!reached.count(e.key())) {
          claim.missing = to_string(e);
          break;
        }
  };

  if (has_h) {
    // Units {id, h}: generators of rank n-1 land, up to a unit translate, in
    // a domain orbit {X_i, X_{n-i+1}}; each orbit must be hit, and so must h.
    for (int i = 1; i <= (n + 1) / 2; ++i) {
      RankBoundClaim claim;
      int mirror = n - i + 1;
      claim.what = i == mirror ? "drop rank n-1 elements with domain X" + std::to_string(i)
                               : "drop rank n-1 elements with domain in {X" + std::to_string(i) +
                                     ", X" + std::to_string(mirror) + "}";
      drop_and_close(i == mirror ? std::vector<int>{i} : std::vector<int>{i, mirror}, false,
                     claim);
      rep.claims.push_back(claim);
    }
    RankBoundClaim claim;
    claim.what = "drop the unit h";
    drop_and_close({}, true, claim);
    rep.claims.push_back(claim);
    rep.implied_bound = (n + 1) / 2 + 1;
  } else {
    for (int i = 1; i <= n; ++i) {
      RankBoundClaim claim;
      claim.what = "drop rank n-1 elements with domain X" + std::to_string(i);
      drop_and_close({i}, false, claim);
      rep.claims.push_back(claim);
    }
    rep.implied_bound = n;
  }
  rep.pass = std::all_of(rep.claims.begin(), rep.claims.end(),
                         [](const RankBoundClaim& c) { return c.holds; });
  return rep;
}

ExhaustiveRankResult exhaustive_rank(const MonoidSpec& spec, const ExhaustiveRankOptions& opts) {
  const int n = spec.n;
  auto elems = enumerate(spec);
  std::vector<PartialPerm> pool;
  for (const auto& e : elems.elements())
    if (opts.full_pool || e.rank() >= n - 1) pool.push_back(e);

  auto binom = [](uint64_t a, uint64_t b) {
    if (b > a) return uint64_t{0};
    uint64_t r = 1;
    for (uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  uint64_t total = 0;
  for (int k = 1; k <= opts.max_size; ++k) total += binom(pool.size(), k);
  if (total > opts.subset_budget)
    throw ResourceError("exhaustive_rank: " + std::to_string(total) +
                        " subsets exceed the budget");

  ExhaustiveRankResult result;
  std::vector<PartialPerm> subset;
  std::vector<int> pick;
  for (int k = 1; k <= opts.max_size; ++k) {
    pick.assign(k, 0);
    for (int t = 0; t < k; ++t) pick[t] = t;
    while (true) {
      subset.clear();
      for (int t : pick) subset.push_back(pool[t]);
      ++result.subsets_tried;
      if (closure_of(n, subset).generated == elems) {
        result.exact = true;
        result.rank = k;
        for (const auto& p : subset) result.witness.push_back(to_string(p));
        return result;
      }
      // next k-combination
      int t = k - 1;
      while (t >= 0 && pick[t] == static_cast<int>(pool.size()) - k + t) --t;
      if (t < 0) break;
      ++pick[t];
      for (int s = t + 1; s < k; ++s) pick[s] = pick[s - 1] + 1;
    }
  }
  result.exact = false;
  result.rank = opts.max_size + 1;
  return result;
}

namespace {

std::vector<PartialPerm> rank_n1_class(const ElementSet& elems, int dom_parity) {
  std::vector<PartialPerm> out;
  const int n = elems.n();
  for (const auto& e : elems.elements()) {
    if (e.rank() != n - 1) continue;
    if (gaps(e).first % 2 == dom_parity) out.push_back(e);
  }
  return out;
}

}  // namespace

namespace {

std::vector<int> complement_of(const std::vector<int>& sorted_set, int n) {
  std::vector<int> out;
  for (int x = 1; x <= n; ++x)
    if (!std::binary_search(sorted_set.begin(), sorted_set.end(), x)) out.push_back(x);
  return out;
}

}  // namespace

std::optional<TwoFactorWitness> witness_two_gap_product(const MonoidSpec& spec,
                                                        const PartialPerm& alpha) {
  const int n = spec.n;
  if (alpha.rank() != n - 2)
    throw PreconditionError("witness_two_gap_product needs a rank n-2 element");
  auto dgaps = complement_of(alpha.domain(), n);
  auto igaps = complement_of(alpha.image(), n);
  if (dgaps[0] != 1 || dgaps[1] % 2 != 0 || igaps[0] != 1 || igaps[1] % 2 != 1)
    throw PreconditionError(
        "witness_two_gap_product needs domain gaps {1, even} and image gaps {1, odd}");
  auto elems = enumerate(spec);
  auto even = rank_n1_class(elems, 0);
  auto odd = rank_n1_class(elems, 1);
  for (const auto& beta : even)
    for (const auto& gamma : odd)
      if (compose(beta, gamma) == alpha) return TwoFactorWitness{beta, gamma};
  return std::nullopt;
}

std::optional<TwoFactorWitness> witness_avoiding_one(const MonoidSpec& spec,
                                                     const PartialPerm& alpha) {
  const int n = spec.n;
  auto im = alpha.image();
  if (alpha.rank() != n - 2 || alpha.defined(1) ||
      std::binary_search(im.begin(), im.end(), 1))
    throw PreconditionError("witness_avoiding_one needs rank n-2 with 1 outside domain and image");
  auto elems = enumerate(spec);
  std::vector<PartialPerm> level;
  for (const auto& e : elems.elements())
    if (e.rank() == n - 1) level.push_back(e);
  for (const auto& beta : level)
    for (const auto& gamma : level)
      if (compose(beta, gamma) == alpha) return TwoFactorWitness{beta, gamma};
  return std::nullopt;
}

std::optional<PartialPerm> witness_make_odd_gap(const MonoidSpec& spec,
                                                const PartialPerm& alpha) {
  const int n = spec.n;
  auto igaps = complement_of(alpha.image(), n);
  if (alpha.rank() != n - 2 || igaps[0] % 2 != 0 || igaps[1] % 2 != 0)
    throw PreconditionError("witness_make_odd_gap needs rank n-2 with both image gaps even");
  auto elems = enumerate(spec);
  for (const auto& beta : rank_n1_class(elems, 0)) {
    auto prod = compose(alpha, beta);
    if (prod.rank() != n - 2) continue;
    auto im = prod.image();
    bool has_odd_gap = false;
    for (int y = 1; y <= n; ++y)
      if (y % 2 == 1 && !std::binary_search(im.begin(), im.end(), y)) has_odd_gap = true;
    if (has_odd_gap) return beta;
  }
  return std::nullopt;
}

std::optional<PartialPerm> witness_clear_one(const MonoidSpec& spec, const PartialPerm& alpha) {
  const int n = spec.n;
  auto igaps = complement_of(alpha.image(), n);
  bool has_odd = std::any_of(igaps.begin(), igaps.end(), [](int g) { return g % 2 == 1; });
  if (alpha.rank() != n - 2 || !has_odd)
    throw PreconditionError("witness_clear_one needs rank n-2 with an odd image gap");
  auto elems = enumerate(spec);
  for (const auto& beta : rank_n1_class(elems, 1)) {
    auto prod = compose(alpha, beta);
    if (prod.rank() != n - 2) continue;
    auto im = prod.image();
    if (!std::binary_search(im.begin(), im.end(), 1)) return beta;
  }
  return std::nullopt;
}

std::vector<int> rank_n1_word(int n, int dom_gap, int im_gap) {
  const int i = dom_gap, j = im_gap;
  if ((i - j) % 2 != 0) throw PreconditionError("gaps must share a parity");
  std::vector<int> word;
  if (j < i) {
    for (int t = i; t >= j + 2; t -= 2) word.push_back(t);
    return word;
  }
  const int low = i % 2 ? 1 : 2;
  for (int t = i; t >= low; t -= 2) word.push_back(t);
  if (j <= n - 2) {
    int start;
    if (i % 2)
      start = n % 2 ? n : n - 1;
    else
      start = n % 2 ? n - 1 : n;
    for (int t = start; t >= j + 2; t -= 2) word.push_back(t);
  }
  return word;
}

bool rank_level_factors(const MonoidSpec& spec, int k) {
  const int n = spec.n;
  if (k < 0 || k > n - 3) throw PreconditionError("rank_level_factors needs 0 <= k <= n-3");
  auto elems = enumerate(spec);
  std::vector<PartialPerm> level;
  for (const auto& e : elems.elements())
    if (e.rank() == k + 1) level.push_back(e);
  // Semigroup closure of the level: products of one or more members.
  std::unordered_map<uint64_t, bool> seen;
  std::vector<uint64_t> queue;
  for (const auto& e : level)
    if (seen.emplace(e.key(), true).second) queue.push_back(e.key());
  for (size_t q = 0; q < queue.size(); ++q)
    for (const auto& g : level) {
      uint64_t y = compose_keys(queue[q], g.key(), n);
      if (seen.emplace(y, true).second) queue.push_back(y);
    }
  for (const auto& e : elems.elements())
    if (e.rank() == k && !seen.count(e.key())) return false;
  return true;
}

std::vector<IdentityCheck> conjugation_identities(int n) {
  std::vector<IdentityCheck> out;
  PartialPerm h = reversal(n);
  auto conj = [&](const PartialPerm& p) { return compose(compose(h, p), h); };
  for (int i = 3; i <= n; ++i) {
    IdentityCheck c;
    c.lhs = "h*x" + std::to_string(i) + "*h";
    c.rhs = "x" + std::to_string(n - i + 3) + "^-1";
    c.holds = conj(x_gen(i, n)) == inverse(x_gen(n - i + 3, n));
    out.push_back(c);
  }
  {
    IdentityCheck c;
    int target = n % 2 ? 1 : 2;
    c.lhs = "h*x1*h";
    c.rhs = "x" + std::to_string(target) + "^-1";
    c.holds = conj(x_gen(1, n)) == inverse(x_gen(target, n));
    out.push_back(c);
  }
  {
    IdentityCheck c;
    int target = n % 2 ? 2 : 1;
    c.lhs = "h*x2*h";
    c.rhs = "x" + std::to_string(target) + "^-1";
    c.holds = conj(x_gen(2, n)) == inverse(x_gen(target, n));
    out.push_back(c);
  }
  if (n % 4 == 0) {
    auto chain_eval = [&](int from, int downto) {
      PartialPerm p = x_gen(from, n);
      for (int t = from - 2; t >= downto; t -= 2) p = compose(p, x_gen(t, n));
      return p;
    };
    IdentityCheck c1;
    c1.lhs = "x1^-1";
    c1.rhs = "x" + std::to_string(n - 1) + "*x" + std::to_string(n - 3) + "*...*x3";
    c1.holds = inverse(x_gen(1, n)) == chain_eval(n - 1, 3);
    out.push_back(c1);
    IdentityCheck c2;
    c2.lhs = "x2^-1";
    c2.rhs = "x" + std::to_string(n) + "*x" + std::to_string(n - 2) + "*...*x4";
    c2.holds = inverse(x_gen(2, n)) == chain_eval(n, 4);
    out.push_back(c2);
  }
  return out;
}

}  // namespace altmon
