#include "altmon/monoids.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace altmon {

namespace {

int check_dims(const MonoidSpec& spec, const PartialPerm& a) {
  if (spec.n != a.n()) throw DimensionError("element chain size does not match monoid");
  return spec.n;
}

int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int64_t factorial(int n) {
  int64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Parity by inversion count; deliberately not sign().
bool even_by_inversions(const PartialPerm& p) {
  int inv = 0;
  for (int x = 1; x <= p.n(); ++x)
    for (int y = x + 1; y <= p.n(); ++y)
      if (p.at(x) > p.at(y)) ++inv;
  return inv % 2 == 0;
}

// Does some full permutation extending a have even parity?
bool has_even_extension(const PartialPerm& a) {
  int n = a.n();
  std::vector<int> cod, coi;
  uint16_t im = 0;
  for (int x = 1; x <= n; ++x) {
    if (!a.defined(x))
      cod.push_back(x);
    else
      im |= 1u << a.at(x);
  }
  for (int y = 1; y <= n; ++y)
    if (!(im & (1u << y))) coi.push_back(y);
  std::sort(coi.begin(), coi.end());
  do {
    std::vector<int> img(n);
    for (int x = 1; x <= n; ++x) img[x - 1] = a.at(x);
    for (size_t k = 0; k < cod.size(); ++k) img[cod[k] - 1] = coi[k];
    if (even_by_inversions(PartialPerm(n, img))) return true;
  } while (std::next_permutation(coi.begin(), coi.end()));
  return false;
}

// The permutation group generated by full permutations, as sorted keys.
std::vector<uint64_t> group_closure(int n, const std::vector<PartialPerm>& gens) {
  for (const auto& g : gens) {
    if (g.n() != n) throw DimensionError("group generator has wrong chain size");
    if (g.rank() != n) throw PreconditionError("group generator is not a full permutation");
  }
  std::unordered_set<uint64_t> seen;
  std::vector<uint64_t> queue;
  uint64_t idk = PartialPerm::identity(n).key();
  seen.insert(idk);
  queue.push_back(idk);
  for (size_t q = 0; q < queue.size(); ++q) {
    for (const auto& g : gens) {
      uint64_t y = compose_keys(queue[q], g.key(), n);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

PartialPerm from_key(uint64_t key, int n) {
  std::vector<int> img(n);
  for (int k = 0; k < n; ++k) img[k] = static_cast<int>((key >> (4 * (n - 1 - k))) & 0xF);
  return PartialPerm(n, img);
}

bool in_g_member(int n, const std::vector<uint64_t>& group, const PartialPerm& a) {
  for (uint64_t gk : group) {
    PartialPerm g = from_key(gk, n);
    bool ok = true;
    for (int x = 1; x <= n && ok; ++x)
      if (a.defined(x) && g.at(x) != a.at(x)) ok = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

MonoidSpec monoid_spec(MonoidTag tag, int n) {
  if (tag == MonoidTag::InG) throw PreconditionError("InG needs group generators");
  if (n < 2) throw PreconditionError("monoid chain size must be at least 2");
  return MonoidSpec{tag, n, {}};
}

MonoidSpec monoid_spec_in_g(int n, std::vector<PartialPerm> group_generators) {
  if (n < 2) throw PreconditionError("monoid chain size must be at least 2");
  for (const auto& g : group_generators)
    if (g.n() != n || g.rank() != n)
      throw PreconditionError("InG generators must be full permutations of {1..n}");
  return MonoidSpec{MonoidTag::InG, n, std::move(group_generators)};
}

ElementSet::ElementSet(int n, std::vector<PartialPerm> elems) : n_(n), elems_(std::move(elems)) {
  for (const auto& e : elems_)
    if (e.n() != n_) throw DimensionError("element set members must share one chain size");
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  keys_.reserve(elems_.size());
  for (const auto& e : elems_) keys_.push_back(e.key());
}

std::optional<uint32_t> ElementSet::index_of_key(uint64_t key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<uint32_t>(it - keys_.begin());
}

bool contains(const MonoidSpec& spec, const PartialPerm& a) {
  int n = check_dims(spec, a);
  int r = a.rank();
  switch (spec.tag) {
    case MonoidTag::In:
      return true;
    case MonoidTag::Sn:
      return r == n;
    case MonoidTag::An:
      return r == n && sign(a) == Parity::even;
    case MonoidTag::En:
      return a.is_partial_identity();
    case MonoidTag::POIn:
      return is_order_preserving(a);
    case MonoidTag::PMIn:
      return is_monotone(a);
    case MonoidTag::AIn:
      if (r <= n - 2) return true;
      if (r == n - 1) return sign(completion(a)) == Parity::even;
      return sign(a) == Parity::even;
    case MonoidTag::AOn: {
      if (!is_order_preserving(a)) return false;
      if (r != n - 1) return true;  // full rank order-preserving is the identity
      auto [d, i] = gaps(a);
      return (d - i) % 2 == 0;
    }
    case MonoidTag::AMn: {
      if (!is_monotone(a)) return false;
      if (r <= n - 2) return true;
      if (r == n) {
        if (a.is_identity()) return true;
        return a == reversal(n) && (n % 4 == 0 || n % 4 == 1);
      }
      auto [d, i] = gaps(a);
      bool same = (d - i) % 2 == 0;
      if (is_order_preserving(a)) return same;
      return (n % 4 == 0 || n % 4 == 3) ? !same : same;
    }
    case MonoidTag::InG: {
      auto group = group_closure(n, spec.group_generators);
      return in_g_member(n, group, a);
    }
  }
  throw Error("unknown monoid tag");
}

bool contains_by_oracle(const MonoidSpec& spec, const PartialPerm& a) {
  int n = check_dims(spec, a);
  if (n > 8) throw ResourceError("membership oracle limited to n <= 8");
  int r = a.rank();
  switch (spec.tag) {
    case MonoidTag::In:
      return true;
    case MonoidTag::Sn:
      return r == n;
    case MonoidTag::An:
      return r == n && even_by_inversions(a);
    case MonoidTag::En:
      return a.is_partial_identity();
    case MonoidTag::POIn:
      return is_order_preserving(a);
    case MonoidTag::PMIn:
      return is_monotone(a);
    case MonoidTag::AIn:
      return has_even_extension(a);
    case MonoidTag::AOn:
      return is_order_preserving(a) && has_even_extension(a);
    case MonoidTag::AMn:
      return is_monotone(a) && has_even_extension(a);
    case MonoidTag::InG: {
      auto group = group_closure(n, spec.group_generators);
      return in_g_member(n, group, a);
    }
  }
  throw Error("unknown monoid tag");
}

ElementSet enumerate(const MonoidSpec& spec, const EnumerateOptions& opts) {
  int n = spec.n;
  if (n > opts.n_cap)
    throw ResourceError("enumerate: n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(opts.n_cap));
  if (spec.tag == MonoidTag::InG) return build_In_G(n, spec.group_generators);

  std::vector<PartialPerm> out;
  std::vector<int> dom, im;
  for (uint32_t dmask = 0; dmask < (1u << n); ++dmask) {
    dom.clear();
    for (int x = 1; x <= n; ++x)
      if (dmask & (1u << (x - 1))) dom.push_back(x);
    int k = static_cast<int>(dom.size());
    for (uint32_t imask = 0; imask < (1u << n); ++imask) {
      if (__builtin_popcount(imask) != k) continue;
      im.clear();
      for (int y = 1; y <= n; ++y)
        if (imask & (1u << (y - 1))) im.push_back(y);
      do {
        std::vector<int> img(n, 0);
        for (int t = 0; t < k; ++t) img[dom[t] - 1] = im[t];
        PartialPerm p(n, img);
        if (contains(spec, p)) out.push_back(p);
      } while (std::next_permutation(im.begin(), im.end()));
    }
  }
  return ElementSet(n, std::move(out));
}

ElementSet build_In_G(int n, const std::vector<PartialPerm>& group_generators) {
  if (n > 8) throw ResourceError("build_In_G limited to n <= 8");
  auto group = group_closure(n, group_generators);
  std::unordered_set<uint64_t> seen;
  std::vector<PartialPerm> out;
  for (uint64_t gk : group) {
    PartialPerm g = from_key(gk, n);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> img(n, 0);
      for (int x = 1; x <= n; ++x)
        if (mask & (1u << (x - 1))) img[x - 1] = g.at(x);
      PartialPerm p(n, img);
      if (seen.insert(p.key()).second) out.push_back(p);
    }
  }
  return ElementSet(n, std::move(out));
}

std::vector<uint64_t> monoid_closure_keys(int n, const std::vector<uint64_t>& gen_keys) {
  std::unordered_set<uint64_t> seen;
  std::vector<uint64_t> queue;
  uint64_t idk = PartialPerm::identity(n).key();
  seen.insert(idk);
  queue.push_back(idk);
  for (size_t q = 0; q < queue.size(); ++q) {
    for (uint64_t g : gen_keys) {
      uint64_t y = compose_keys(queue[q], g, n);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return queue;
}

int64_t cardinality_formula(const MonoidSpec& spec) {
  int n = spec.n;
  // the closed forms stay inside int64 up to the chain-size cap
  if (n > PartialPerm::max_n)
    throw ResourceError("formula evaluation capped at n = " +
                        std::to_string(PartialPerm::max_n));
  switch (spec.tag) {
    case MonoidTag::In: {
      int64_t s = 0;
      for (int k = 0; k <= n; ++k) s += binomial(n, k) * binomial(n, k) * factorial(k);
      return s;
    }
    case MonoidTag::Sn:
      return factorial(n);
    case MonoidTag::An:
      return factorial(n) / 2;
    case MonoidTag::En:
      return int64_t{1} << n;
    case MonoidTag::POIn:
      return binomial(2 * n, n);
    case MonoidTag::PMIn:
      return 2 * binomial(2 * n, n) - int64_t{n} * n - 1;
    case MonoidTag::AIn: {
      int64_t s = factorial(n) / 2 + factorial(n) * n / 2;
      for (int k = 0; k <= n - 2; ++k) s += binomial(n, k) * binomial(n, k) * factorial(k);
      return s;
    }
    case MonoidTag::AOn:
      return binomial(2 * n, n) - int64_t{n} * n / 2;
    case MonoidTag::AMn: {
      if (n < 3)
        throw FormulaDomainError(
            "the AM cardinality form needs n >= 3; enumerate is authoritative at n = 2");
      int64_t c[4] = {1, 0, 2, 2};
      return 2 * binomial(2 * n, n) - 2 * int64_t{n} * n - c[n % 4];
    }
    case MonoidTag::InG:
      throw FormulaDomainError("no closed form for InG cardinalities");
  }
  throw Error("unknown monoid tag");
}

int64_t rank_level_count(const MonoidSpec& spec, int k) {
  int n = spec.n;
  if (k < 0 || k > n) throw PreconditionError("rank level must lie in 0..n");
  if (n > PartialPerm::max_n)
    throw ResourceError("formula evaluation capped at n = " +
                        std::to_string(PartialPerm::max_n));
  auto by_enumeration = [&] {
    auto set = enumerate(spec);
    int64_t c = 0;
    for (const auto& e : set.elements()) c += e.rank() == k;
    return c;
  };
  switch (spec.tag) {
    case MonoidTag::In:
      return binomial(n, k) * binomial(n, k) * factorial(k);
    case MonoidTag::Sn:
      return k == n ? factorial(n) : 0;
    case MonoidTag::An:
      return k == n ? factorial(n) / 2 : 0;
    case MonoidTag::En:
      return binomial(n, k);
    case MonoidTag::POIn:
      return binomial(n, k) * binomial(n, k);
    case MonoidTag::PMIn:
      if (k == 0) return 1;
      if (k == 1) return int64_t{n} * n;
      return 2 * binomial(n, k) * binomial(n, k);
    case MonoidTag::AIn:
      if (k <= n - 2) return binomial(n, k) * binomial(n, k) * factorial(k);
      if (k == n - 1) return factorial(n) * n / 2;
      return factorial(n) / 2;
    case MonoidTag::AOn:
      if (k <= n - 2) return binomial(n, k) * binomial(n, k);
      if (k == n) return 1;
      return (int64_t{n} * n + (n % 2)) / 2;
    case MonoidTag::AMn: {
      if (n == 2) return by_enumeration();
      if (k == 0) return 1;
      if (k == 1) return int64_t{n} * n;
      if (k <= n - 2) return 2 * binomial(n, k) * binomial(n, k);
      if (k == n) return (n % 4 == 0 || n % 4 == 1) ? 2 : 1;
      return int64_t{n} * n + (n % 4 == 1 ? 1 : 0);
    }
    case MonoidTag::InG:
      return by_enumeration();
  }
  throw Error("unknown monoid tag");
}

namespace {

const std::map<std::string, MonoidTag>& tag_names() {
  static const std::map<std::string, MonoidTag> m = {
      {"I", MonoidTag::In},   {"S", MonoidTag::Sn},    {"A", MonoidTag::An},
      {"E", MonoidTag::En},   {"POI", MonoidTag::POIn}, {"PMI", MonoidTag::PMIn},
      {"AI", MonoidTag::AIn}, {"AO", MonoidTag::AOn},  {"AM", MonoidTag::AMn},
      {"InG", MonoidTag::InG}};
  return m;
}

std::string tag_to_string(MonoidTag tag) {
  for (const auto& [name, t] : tag_names())
    if (t == tag) return name;
  throw Error("unknown monoid tag");
}

}  // namespace

std::string to_string(const MonoidSpec& spec) {
  std::string s = tag_to_string(spec.tag) + ":" + std::to_string(spec.n);
  if (spec.tag == MonoidTag::InG) {
    s += ":[";
    for (size_t i = 0; i < spec.group_generators.size(); ++i) {
      if (i) s += ",";
      s += to_cycles(spec.group_generators[i]);
    }
    s += "]";
  }
  return s;
}

MonoidSpec parse_monoid_spec(const std::string& text) {
  size_t c1 = text.find(':');
  if (c1 == std::string::npos) throw ParseError("monoid spec needs 'TAG:n', got '" + text + "'");
  std::string name = text.substr(0, c1);
  auto it = tag_names().find(name);
  if (it == tag_names().end()) throw ParseError("unknown monoid family '" + name + "'");
  size_t c2 = text.find(':', c1 + 1);
  std::string nstr = text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1);
  int n;
  try {
    n = std::stoi(nstr);
  } catch (...) {
    throw ParseError("bad chain size '" + nstr + "'");
  }
  if (it->second != MonoidTag::InG) {
    if (c2 != std::string::npos) throw ParseError("only InG takes generators");
    return monoid_spec(it->second, n);
  }
  if (c2 == std::string::npos) throw ParseError("InG needs ':[generators]'");
  std::string list = text.substr(c2 + 1);
  if (list.size() < 2 || list.front() != '[' || list.back() != ']')
    throw ParseError("InG generators must be bracketed");
  list = list.substr(1, list.size() - 2);
  std::vector<PartialPerm> gens;
  size_t pos = 0;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) gens.push_back(parse_cycles(cur, n));
    cur.clear();
  };
  for (; pos < list.size(); ++pos) {
    char ch = list[pos];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += ch;
  }
  flush();
  return monoid_spec_in_g(n, std::move(gens));
}

PartialPerm parse_cycles(const std::string& text, int n) {
  std::string s = text;
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw ParseError("empty permutation");
  s = s.substr(b, e - b + 1);
  PartialPerm result = PartialPerm::identity(n);
  if (s == "id") return result;
  size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '(') throw ParseError("expected '(' in cycles '" + text + "'");
    size_t close = s.find(')', pos);
    if (close == std::string::npos) throw ParseError("unbalanced '(' in cycles");
    std::istringstream in(s.substr(pos + 1, close - pos - 1));
    std::vector<int> cyc;
    int v;
    while (in >> v) cyc.push_back(v);
    if (!in.eof()) throw ParseError("bad cycle contents in '" + text + "'");
    if (cyc.size() >= 2) {
      std::vector<int> img(n);
      for (int x = 1; x <= n; ++x) img[x - 1] = x;
      for (size_t i = 0; i < cyc.size(); ++i) {
        int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
        if (from < 1 || from > n) throw ParseError("cycle point out of range");
        img[from - 1] = to;
      }
      result = compose(result, PartialPerm(n, img));
    }
    pos = close + 1;
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }
  return result;
}

std::string to_cycles(const PartialPerm& p) {
  if (p.rank() != p.n()) throw PreconditionError("cycle form needs a full permutation");
  std::string out;
  uint16_t seen = 0;
  for (int x = 1; x <= p.n(); ++x) {
    if (seen & (1u << x)) continue;
    if (p.at(x) == x) {
      seen |= 1u << x;
      continue;
    }
    out += "(";
    int y = x;
    bool first = true;
    while (!(seen & (1u << y))) {
      if (!first) out += " ";
      out += std::to_string(y);
      seen |= 1u << y;
      y = p.at(y);
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

}  // namespace altmon
