#include "altmon/green.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace altmon {

bool BitMatrix::rows_equal(size_t r1, size_t r2) const {
  const uint64_t* a = bits_.data() + r1 * words_;
  const uint64_t* b = bits_.data() + r2 * words_;
  return std::equal(a, a + words_, b);
}

void BitMatrix::or_row_into(size_t src, std::vector<uint64_t>& acc) const {
  const uint64_t* a = bits_.data() + src * words_;
  for (size_t w = 0; w < words_; ++w) acc[w] |= a[w];
}

size_t BitMatrix::row_hash(size_t r) const {
  const uint64_t* a = bits_.data() + r * words_;
  uint64_t h = 0x9e3779b97f4a7c15ull;
  for (size_t w = 0; w < words_; ++w) {
    h ^= a[w] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<size_t>(h);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t m) : parent(m) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    int r = x;
    while (parent[r] != r) r = parent[r];
    while (parent[x] != r) {
      int next = parent[x];
      parent[x] = r;
      x = next;
    }
    return r;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Group elements into classes by equal rows of m; class ids in order of the
// smallest member index.
std::pair<std::vector<int>, std::vector<std::vector<int>>> classes_by_rows(const BitMatrix& m,
                                                                           size_t count) {
  std::vector<int> class_of(count, -1);
  std::vector<std::vector<int>> members;
  std::unordered_map<size_t, std::vector<int>> buckets;  // row hash -> class ids
  for (size_t i = 0; i < count; ++i) {
    size_t h = m.row_hash(i);
    int found = -1;
    for (int cid : buckets[h])
      if (m.rows_equal(i, members[cid].front())) {
        found = cid;
        break;
      }
    if (found < 0) {
      found = static_cast<int>(members.size());
      members.push_back({});
      buckets[h].push_back(found);
    }
    class_of[i] = found;
    members[found].push_back(static_cast<int>(i));
  }
  return {std::move(class_of), std::move(members)};
}

std::pair<std::vector<int>, std::vector<std::vector<int>>> classes_from_uf(UnionFind& uf,
                                                                           size_t count) {
  std::vector<int> class_of(count, -1);
  std::vector<std::vector<int>> members;
  std::map<int, int> root_to_class;
  for (size_t i = 0; i < count; ++i) {
    int r = uf.find(static_cast<int>(i));
    auto [it, fresh] = root_to_class.try_emplace(r, static_cast<int>(members.size()));
    if (fresh) members.push_back({});
    class_of[i] = it->second;
    members[it->second].push_back(static_cast<int>(i));
  }
  return {std::move(class_of), std::move(members)};
}

}  // namespace

GreenStructure green_structure(const ElementSet& elems) {
  const size_t m = elems.size();
  if (m == 0) throw PreconditionError("green_structure: empty element set");
  const int n = elems.n();
  const auto& keys = elems.keys();

  // One-step product tables: left.get(a, x) iff x = u*a for some u, and
  // right.get(a, x) iff x = a*v.  A product outside the set means the input
  // was not closed under composition.
  BitMatrix left(m, m), right(m, m);
  for (size_t a = 0; a < m; ++a) {
    left.set(a, a);  // products over M^1
    right.set(a, a);
    for (size_t u = 0; u < m; ++u) {
      uint64_t k = compose_keys(keys[u], keys[a], n);
      auto idx = elems.index_of_key(k);
      if (!idx) throw PreconditionError("green_structure: set is not closed under composition");
      left.set(a, *idx);
      k = compose_keys(keys[a], keys[u], n);
      idx = elems.index_of_key(k);
      if (!idx) throw PreconditionError("green_structure: set is not closed under composition");
      right.set(a, *idx);
    }
  }

  GreenStructure gs{elems, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};

  // a L b iff Ma = Mb, a R b iff aM = bM.
  std::tie(gs.l_class, gs.l_members) = classes_by_rows(left, m);
  std::tie(gs.r_class, gs.r_members) = classes_by_rows(right, m);

  // H = L meet R.
  {
    std::map<std::pair<int, int>, int> cell_to_class;
    gs.h_class.resize(m);
    for (size_t i = 0; i < m; ++i) {
      auto cell = std::make_pair(gs.l_class[i], gs.r_class[i]);
      auto [it, fresh] = cell_to_class.try_emplace(cell, static_cast<int>(gs.h_members.size()));
      if (fresh) gs.h_members.push_back({});
      gs.h_class[i] = it->second;
      gs.h_members[it->second].push_back(static_cast<int>(i));
    }
  }

  // J: first join L and R (always below J), then merge the resulting blocks
  // by mutual containment of their two-sided ideals MaM.
  UnionFind uf(m);
  for (const auto& cls : gs.l_members)
    for (size_t t = 1; t < cls.size(); ++t) uf.unite(cls[0], cls[t]);
  for (const auto& cls : gs.r_members)
    for (size_t t = 1; t < cls.size(); ++t) uf.unite(cls[0], cls[t]);
  auto [d_class, d_members] = classes_from_uf(uf, m);

  const size_t words = left.words();
  std::vector<std::vector<uint64_t>> ideal(d_members.size(), std::vector<uint64_t>(words, 0));
  for (size_t c = 0; c < d_members.size(); ++c) {
    int rep = d_members[c].front();
    // M rep M = union over x in repM of Mx.
    for (size_t x = 0; x < m; ++x)
      if (right.get(rep, x)) left.or_row_into(x, ideal[c]);
  }
  auto in_ideal = [&](size_t c, int e) { return (ideal[c][e / 64] >> (e % 64)) & 1; };

  UnionFind jf(d_members.size());
  for (size_t c1 = 0; c1 < d_members.size(); ++c1)
    for (size_t c2 = c1 + 1; c2 < d_members.size(); ++c2)
      if (in_ideal(c1, d_members[c2].front()) && in_ideal(c2, d_members[c1].front()))
        jf.unite(static_cast<int>(c1), static_cast<int>(c2));

  // Number J-classes by (rank, smallest member) so ids ascend with rank.
  auto [dj_class, dj_members] = classes_from_uf(jf, d_members.size());
  std::vector<int> elem_j(m);
  for (size_t c = 0; c < d_members.size(); ++c)
    for (int e : d_members[c]) elem_j[e] = dj_class[c];
  std::vector<int> order(dj_members.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> min_elem(dj_members.size(), static_cast<int>(m));
  std::vector<int> cls_rank(dj_members.size(), 0);
  for (size_t i = 0; i < m; ++i) {
    int c = elem_j[i];
    min_elem[c] = std::min(min_elem[c], static_cast<int>(i));
    cls_rank[c] = elems[i].rank();
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (cls_rank[a] != cls_rank[b]) return cls_rank[a] < cls_rank[b];
    return min_elem[a] < min_elem[b];
  });
  std::vector<int> renumber(dj_members.size());
  for (size_t i = 0; i < order.size(); ++i) renumber[order[i]] = static_cast<int>(i);

  gs.j_class.resize(m);
  gs.j_members.assign(dj_members.size(), {});
  gs.j_rank.assign(dj_members.size(), 0);
  for (size_t i = 0; i < m; ++i) {
    int c = renumber[elem_j[i]];
    gs.j_class[i] = c;
    gs.j_members[c].push_back(static_cast<int>(i));
    gs.j_rank[c] = elems[i].rank();
  }

  // J-order from ideal membership of representatives.
  size_t jc = gs.j_members.size();
  gs.j_leq.assign(jc, std::vector<bool>(jc, false));
  std::vector<size_t> mask_of(jc);  // j-class id -> any d-class mask index
  for (size_t c = 0; c < d_members.size(); ++c) mask_of[renumber[dj_class[c]]] = c;
  for (size_t a = 0; a < jc; ++a)
    for (size_t b = 0; b < jc; ++b)
      gs.j_leq[a][b] = in_ideal(mask_of[b], gs.j_members[a].front());

  return gs;
}

JPoset j_poset(const GreenStructure& gs, const std::string& prefix) {
  JPoset poset;
  size_t jc = gs.j_members.size();
  poset.leq = gs.j_leq;
  poset.ranks = gs.j_rank;

  // Pick labels.
  std::map<int, std::vector<int>> by_rank;
  for (size_t c = 0; c < jc; ++c) by_rank[gs.j_rank[c]].push_back(static_cast<int>(c));
  poset.labels.assign(jc, "");
  bool ok = true;
  const int n = gs.elems.n();
  for (auto& [r, classes] : by_rank) {
    if (classes.size() == 1) {
      poset.labels[classes[0]] = prefix + std::to_string(r);
    } else if (classes.size() == 2 && r == n - 1) {
      for (int c : classes) {
        auto [d, i] = gaps(gs.elems[gs.j_members[c].front()]);
        (void)i;
        std::string& lab = poset.labels[c];
        lab = prefix + std::to_string(r) + (d % 2 == 1 ? "^o" : "^e");
      }
      if (poset.labels[classes[0]] == poset.labels[classes[1]]) ok = false;
    } else {
      ok = false;
    }
  }
  if (!ok) {
    // Positional fallback: topological order, bottom first.
    std::vector<int> order(jc);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      size_t below_a = 0, below_b = 0;
      for (size_t c = 0; c < jc; ++c) {
        below_a += gs.j_leq[c][a];
        below_b += gs.j_leq[c][b];
      }
      if (below_a != below_b) return below_a < below_b;
      return a < b;
    });
    for (size_t i = 0; i < jc; ++i) poset.labels[order[i]] = prefix + std::to_string(i);
  }

  for (size_t hi = 0; hi < jc; ++hi)
    for (size_t lo = 0; lo < jc; ++lo) {
      if (hi == lo || !poset.leq[lo][hi]) continue;
      bool cover = true;
      for (size_t mid = 0; mid < jc && cover; ++mid)
        if (mid != hi && mid != lo && poset.leq[lo][mid] && poset.leq[mid][hi]) cover = false;
      if (cover) poset.hasse.emplace_back(static_cast<int>(hi), static_cast<int>(lo));
    }
  std::sort(poset.hasse.begin(), poset.hasse.end(), [&](auto a, auto b) {
    return std::make_pair(poset.labels[a.first], poset.labels[a.second]) <
           std::make_pair(poset.labels[b.first], poset.labels[b.second]);
  });
  return poset;
}

std::vector<JClassProfileRow> predicted_profile(const MonoidSpec& spec) {
  const int n = spec.n;
  auto binom = [](int a, int b) {
    int64_t r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::vector<JClassProfileRow> rows;
  if (spec.tag == MonoidTag::AOn) {
    for (int k = 0; k <= n - 2; ++k) {
      int64_t c = binom(n, k);
      rows.push_back({"J" + std::to_string(k), c * c, static_cast<int>(c), static_cast<int>(c), 1});
    }
    int odd = (n + 1) / 2, even = n / 2;
    rows.push_back({"J" + std::to_string(n - 1) + "^o", int64_t{odd} * odd, odd, odd, 1});
    rows.push_back({"J" + std::to_string(n - 1) + "^e", int64_t{even} * even, even, even, 1});
    rows.push_back({"J" + std::to_string(n), 1, 1, 1, 1});
    return rows;
  }
  if (spec.tag == MonoidTag::AMn) {
    if (n < 3) throw FormulaDomainError("predicted AM profile needs n >= 3");
    rows.push_back({"Q0", 1, 1, 1, 1});
    rows.push_back({"Q1", int64_t{n} * n, n, n, 1});
    for (int k = 2; k <= n - 2; ++k) {
      int64_t c = binom(n, k);
      rows.push_back(
          {"Q" + std::to_string(k), 2 * c * c, static_cast<int>(c), static_cast<int>(c), 2});
    }
    if (n % 4 == 0 || n % 4 == 3) {
      rows.push_back({"Q" + std::to_string(n - 1), int64_t{n} * n, n, n, 1});
    } else {
      int odd = (n + 1) / 2, even = n / 2;
      rows.push_back(
          {"Q" + std::to_string(n - 1) + "^o", int64_t{odd} * odd * 2, odd, odd, 2});
      rows.push_back(
          {"Q" + std::to_string(n - 1) + "^e", int64_t{even} * even * 2, even, even, 2});
    }
    bool two_units = n % 4 == 0 || n % 4 == 1;
    rows.push_back({"Q" + std::to_string(n), two_units ? 2 : 1, 1, 1, two_units ? 2 : 1});
    return rows;
  }
  throw PreconditionError("predicted profiles exist only for AO and AM");
}

JClassProfile jclass_profile(const MonoidSpec& spec, const EnumerateOptions& opts) {
  JClassProfile prof;
  prof.monoid = to_string(spec);
  prof.n = spec.n;
  auto gs = green_structure(enumerate(spec, opts));
  std::string prefix = spec.tag == MonoidTag::AMn ? "Q" : "J";
  auto poset = j_poset(gs, prefix);
  for (size_t c = 0; c < gs.j_members.size(); ++c) {
    JClassProfileRow row;
    row.label = poset.labels[c];
    row.size = static_cast<int64_t>(gs.j_members[c].size());
    std::vector<bool> seen_l(gs.l_count(), false), seen_r(gs.r_count(), false);
    int lc = 0, rc = 0, max_h = 0;
    for (int e : gs.j_members[c]) {
      if (!seen_l[gs.l_class[e]]) {
        seen_l[gs.l_class[e]] = true;
        ++lc;
      }
      if (!seen_r[gs.r_class[e]]) {
        seen_r[gs.r_class[e]] = true;
        ++rc;
      }
      max_h = std::max(max_h, static_cast<int>(gs.h_members[gs.h_class[e]].size()));
    }
    row.l_classes = lc;
    row.r_classes = rc;
    row.max_h = max_h;
    prof.computed.push_back(row);
  }
  if (spec.tag == MonoidTag::AOn || (spec.tag == MonoidTag::AMn && spec.n >= 3))
    prof.predicted = predicted_profile(spec);
  return prof;
}

bool JClassProfile::matches_prediction() const {
  if (predicted.empty()) return false;
  auto key = [](const JClassProfileRow& r) {
    return std::make_tuple(r.label, r.size, r.l_classes, r.r_classes, r.max_h);
  };
  std::vector<std::tuple<std::string, int64_t, int, int, int>> a, b;
  for (const auto& r : computed) a.push_back(key(r));
  for (const auto& r : predicted) b.push_back(key(r));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string export_dot(const JPoset& poset, const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  out << "  rankdir=BT;\n";
  std::vector<int> order(poset.labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (poset.ranks[a] != poset.ranks[b]) return poset.ranks[a] < poset.ranks[b];
    return poset.labels[a] < poset.labels[b];
  });
  for (int c : order) out << "  \"" << poset.labels[c] << "\";\n";
  for (auto [hi, lo] : poset.hasse)
    out << "  \"" << poset.labels[lo] << "\" -> \"" << poset.labels[hi] << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace altmon
