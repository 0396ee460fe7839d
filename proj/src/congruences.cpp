#include "altmon/congruences.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "altmon/union_find.hpp"

namespace altmon {

Congruence::Congruence(size_t m) : part_(m) {
  std::iota(part_.begin(), part_.end(), 0);
}

Congruence Congruence::from_partition(std::vector<int> part) {
  // Renormalize to min-index representatives.
  std::vector<int> min_rep(part.size(), -1);
  for (size_t i = 0; i < part.size(); ++i) {
    int r = part[i];
    if (min_rep[r] < 0) min_rep[r] = static_cast<int>(i);
  }
  Congruence c(part.size());
  for (size_t i = 0; i < part.size(); ++i) c.part_[i] = min_rep[part[i]];
  return c;
}

int Congruence::block_count() const {
  int count = 0;
  for (size_t i = 0; i < part_.size(); ++i) count += part_[i] == static_cast<int>(i);
  return count;
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::map<int, std::vector<int>> by_rep;
  for (size_t i = 0; i < part_.size(); ++i) by_rep[part_[i]].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [rep, members] : by_rep) out.push_back(std::move(members));
  return out;
}

std::vector<std::vector<int>> Congruence::nontrivial_blocks() const {
  auto all = blocks();
  std::vector<std::vector<int>> out;
  for (auto& b : all)
    if (b.size() > 1) out.push_back(std::move(b));
  return out;
}

bool Congruence::is_identity() const {
  for (size_t i = 0; i < part_.size(); ++i)
    if (part_[i] != static_cast<int>(i)) return false;
  return true;
}

bool Congruence::leq(const Congruence& o) const {
  for (size_t i = 0; i < part_.size(); ++i)
    if (o.part_[i] != o.part_[part_[i]]) return false;
  return true;
}

Congruence meet(const Congruence& a, const Congruence& b) {
  std::map<std::pair<int, int>, int> cell;
  std::vector<int> part(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    auto key = std::make_pair(a.rep(static_cast<int>(i)), b.rep(static_cast<int>(i)));
    auto [it, fresh] = cell.try_emplace(key, static_cast<int>(i));
    part[i] = it->second;
  }
  return Congruence::from_partition(std::move(part));
}

Congruence join(const Congruence& a, const Congruence& b) {
  UnionFind uf(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    uf.unite(static_cast<int>(i), a.rep(static_cast<int>(i)));
    uf.unite(static_cast<int>(i), b.rep(static_cast<int>(i)));
  }
  return Congruence::from_partition(uf.canonical());
}

bool is_congruence(const ElementSet& elems, const Congruence& c) {
  const size_t m = elems.size();
  const int n = elems.n();
  if (c.size() != m) throw DimensionError("partition size does not match element set");
  const auto& keys = elems.keys();
  // For each translation x, the map block(a) -> block(xa) (and block(ax))
  // must be well defined.
  std::vector<int> target(m);
  for (int side = 0; side < 2; ++side) {
    for (size_t x = 0; x < m; ++x) {
      std::fill(target.begin(), target.end(), -1);
      for (size_t a = 0; a < m; ++a) {
        uint64_t k = side == 0 ? compose_keys(keys[x], keys[a], n)
                               : compose_keys(keys[a], keys[x], n);
        auto idx = elems.index_of_key(k);
        if (!idx) throw PreconditionError("element set is not closed under composition");
        int block = c.rep(static_cast<int>(a));
        int tb = c.rep(static_cast<int>(*idx));
        if (target[block] < 0)
          target[block] = tb;
        else if (target[block] != tb)
          return false;
      }
    }
  }
  return true;
}

bool is_ideal(const ElementSet& elems, const Ideal& ideal) {
  const int n = elems.n();
  const auto& keys = elems.keys();
  std::vector<bool> in(elems.size(), false);
  for (int i : ideal.members) in[i] = true;
  for (int i : ideal.members) {
    for (size_t u = 0; u < elems.size(); ++u) {
      auto left = elems.index_of_key(compose_keys(keys[u], keys[i], n));
      auto right = elems.index_of_key(compose_keys(keys[i], keys[u], n));
      if (!left || !right) throw PreconditionError("element set is not closed under composition");
      if (!in[*left] || !in[*right]) return false;
    }
  }
  return true;
}

std::vector<Ideal> ideals(const GreenStructure& gs) {
  const size_t jc = gs.j_members.size();
  if (jc > 16) throw ResourceError("ideal enumeration capped at 16 J-classes");
  std::vector<Ideal> out;
  for (uint32_t mask = 1; mask < (1u << jc); ++mask) {
    bool down = true;
    for (size_t c = 0; c < jc && down; ++c) {
      if (!(mask & (1u << c))) continue;
      for (size_t lower = 0; lower < jc && down; ++lower)
        if (gs.j_leq[lower][c] && !(mask & (1u << lower))) down = false;
    }
    if (!down) continue;
    Ideal ideal;
    for (size_t c = 0; c < jc; ++c)
      if (mask & (1u << c))
        ideal.members.insert(ideal.members.end(), gs.j_members[c].begin(), gs.j_members[c].end());
    std::sort(ideal.members.begin(), ideal.members.end());
    out.push_back(std::move(ideal));
  }
  std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

namespace {

void require_congruence(const ElementSet& elems, const Congruence& c, const char* what) {
  if (!is_congruence(elems, c))
    throw Error(std::string(what) + ": constructed relation is not compatible");
}

// Element indices strictly J-below the class (the ideal A(J)).
std::vector<int> strict_lower_set(const GreenStructure& gs, int j_class) {
  std::vector<int> out;
  for (size_t c = 0; c < gs.j_members.size(); ++c) {
    if (static_cast<int>(c) == j_class || !gs.j_leq[c][j_class]) continue;
    out.insert(out.end(), gs.j_members[c].begin(), gs.j_members[c].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// B(J): indices whose class is not above J.
std::vector<int> not_above_set(const GreenStructure& gs, int j_class) {
  std::vector<int> out;
  for (size_t c = 0; c < gs.j_members.size(); ++c) {
    if (gs.j_leq[j_class][c]) continue;
    out.insert(out.end(), gs.j_members[c].begin(), gs.j_members[c].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Congruence block_and_h_classes(const GreenStructure& gs, const std::vector<int>& big_block,
                               const std::vector<int>& j_classes_with_h_blocks) {
  UnionFind uf(gs.elems.size());
  for (size_t t = 1; t < big_block.size(); ++t) uf.unite(big_block[0], big_block[t]);
  for (int jc : j_classes_with_h_blocks) {
    std::map<int, int> h_first;
    for (int e : gs.j_members[jc]) {
      auto [it, fresh] = h_first.try_emplace(gs.h_class[e], e);
      if (!fresh) uf.unite(it->second, e);
    }
  }
  return Congruence::from_partition(uf.canonical());
}

}  // namespace

Congruence rees(const ElementSet& elems, const Ideal& ideal) {
  if (!is_ideal(elems, ideal)) throw PreconditionError("rees: not an ideal");
  UnionFind uf(elems.size());
  for (size_t t = 1; t < ideal.members.size(); ++t) uf.unite(ideal.members[0], ideal.members[t]);
  auto c = Congruence::from_partition(uf.canonical());
  require_congruence(elems, c, "rees");
  return c;
}

Congruence theta(const GreenStructure& gs, int j_class) {
  auto c = block_and_h_classes(gs, strict_lower_set(gs, j_class), {j_class});
  require_congruence(gs.elems, c, "theta");
  return c;
}

Congruence pi(const GreenStructure& gs, int j_class) {
  auto c = block_and_h_classes(gs, not_above_set(gs, j_class), {j_class});
  require_congruence(gs.elems, c, "pi");
  return c;
}

Congruence union_theta(const GreenStructure& gs, int j1, int j2) {
  if (strict_lower_set(gs, j1) != strict_lower_set(gs, j2))
    throw PreconditionError("union_theta: the classes have different strict lower sets");
  auto c = block_and_h_classes(gs, strict_lower_set(gs, j1), {j1, j2});
  require_congruence(gs.elems, c, "union_theta");
  return c;
}

Congruence principal_congruence(const ElementSet& elems, const PartialPerm& a,
                                const PartialPerm& b) {
  auto ia = elems.index_of(a), ib = elems.index_of(b);
  if (!ia || !ib) throw PreconditionError("principal_congruence: elements not in the set");
  const size_t m = elems.size();
  const int n = elems.n();
  const auto& keys = elems.keys();
  UnionFind uf(m);
  std::vector<std::pair<uint32_t, uint32_t>> work{{*ia, *ib}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!uf.unite(x, y)) continue;
    // The bridging pair is the only one whose translates are new constraints.
    for (size_t u = 0; u < m; ++u) {
      auto lx = elems.index_of_key(compose_keys(keys[u], keys[x], n));
      auto ly = elems.index_of_key(compose_keys(keys[u], keys[y], n));
      auto rx = elems.index_of_key(compose_keys(keys[x], keys[u], n));
      auto ry = elems.index_of_key(compose_keys(keys[y], keys[u], n));
      if (!lx || !ly || !rx || !ry)
        throw PreconditionError("element set is not closed under composition");
      if (*lx != *ly) work.emplace_back(*lx, *ly);
      if (*rx != *ry) work.emplace_back(*rx, *ry);
    }
  }
  auto c = Congruence::from_partition(uf.canonical());
  require_congruence(elems, c, "principal_congruence");
  return c;
}

ElementSet idempotents(const ElementSet& elems) {
  std::vector<PartialPerm> out;
  for (const auto& e : elems.elements())
    if (compose(e, e) == e) out.push_back(e);
  return ElementSet(elems.n(), std::move(out));
}

bool natural_order(const PartialPerm& e, const PartialPerm& f) {
  return compose(e, f) == e && compose(f, e) == e;
}

int CongruenceLattice::index_of(const Congruence& c) const {
  for (size_t i = 0; i < congruences.size(); ++i)
    if (congruences[i] == c) return static_cast<int>(i);
  return -1;
}

namespace {

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int x : v) {
      h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<size_t>(h);
  }
};

// Deduplicated store of partitions (as canonical vectors).
struct PartitionStore {
  std::vector<std::vector<int>> parts;
  std::unordered_map<std::vector<int>, int, VecHash> index;

  int insert(std::vector<int> canon) {
    auto it = index.find(canon);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(parts.size());
    index.emplace(canon, id);
    parts.push_back(std::move(canon));
    return id;
  }
};

std::vector<PartialPerm> default_lattice_generators(const ElementSet& elems) {
  const int n = elems.n();
  std::vector<PartialPerm> cands;
  std::vector<uint64_t> cand_keys;
  for (const auto& e : elems.elements())
    if (e.rank() >= n - 1) {
      cands.push_back(e);
      cand_keys.push_back(e.key());
    }
  if (!cands.empty() && monoid_closure_keys(n, cand_keys).size() == elems.size()) return cands;
  return elems.elements();
}

}  // namespace

CongruenceLattice congruence_lattice(const ElementSet& elems, const LatticeOptions& opts) {
  const size_t m = elems.size();
  const int n = elems.n();
  if (m > opts.size_cap)
    throw ResourceError("congruence_lattice: " + std::to_string(m) + " elements exceeds cap " +
                        std::to_string(opts.size_cap));
  const auto& keys = elems.keys();

  std::vector<PartialPerm> gens =
      opts.generators.empty() ? default_lattice_generators(elems) : opts.generators;
  std::vector<uint64_t> gen_keys;
  for (const auto& g : gens) {
    if (g.n() != n) throw DimensionError("lattice generator has wrong chain size");
    if (!elems.contains(g)) throw PreconditionError("lattice generator outside the element set");
    gen_keys.push_back(g.key());
  }
  std::sort(gen_keys.begin(), gen_keys.end());
  gen_keys.erase(std::unique(gen_keys.begin(), gen_keys.end()), gen_keys.end());
  if (monoid_closure_keys(n, gen_keys).size() != m)
    throw PreconditionError("lattice generators do not generate the element set");

  // Pair nodes (i < j), row-major triangular layout.
  const size_t P = m * (m - 1) / 2;
  std::vector<size_t> row_offset(m, 0);
  for (size_t i = 1; i < m; ++i) row_offset[i] = row_offset[i - 1] + (m - 1 - (i - 1));
  std::vector<uint32_t> pair_i(P), pair_j(P);
  for (size_t i = 0, p = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j, ++p) {
      pair_i[p] = static_cast<uint32_t>(i);
      pair_j[p] = static_cast<uint32_t>(j);
    }
  auto pair_id = [&](uint32_t a, uint32_t b) -> size_t {
    if (a > b) std::swap(a, b);
    return row_offset[a] + (b - a - 1);
  };
  const size_t edges_per_node = 2 * gen_keys.size();
  // Translate pair p by generator g on one side; SIZE_MAX when the images
  // coincide (no constraint).
  auto edge_target = [&](size_t p, size_t e) -> size_t {
    uint64_t g = gen_keys[e >> 1];
    uint64_t ka = keys[pair_i[p]], kb = keys[pair_j[p]];
    uint64_t x, y;
    if ((e & 1) == 0) {
      x = compose_keys(g, ka, n);
      y = compose_keys(g, kb, n);
    } else {
      x = compose_keys(ka, g, n);
      y = compose_keys(kb, g, n);
    }
    if (x == y) return SIZE_MAX;
    auto ix = elems.index_of_key(x), iy = elems.index_of_key(y);
    if (!ix || !iy) throw PreconditionError("element set is not closed under composition");
    return pair_id(*ix, *iy);
  };

  PartitionStore store;
  const int id_cid = store.insert(Congruence(m).partition());

  std::map<std::pair<int, int>, int> join_memo;
  auto join_ids = [&](int a, int b) -> int {
    if (a == b) return a;
    auto key = std::minmax(a, b);
    auto it = join_memo.find(key);
    if (it != join_memo.end()) return it->second;
    UnionFind uf(m);
    const auto& pa = store.parts[a];
    const auto& pb = store.parts[b];
    for (size_t i = 0; i < m; ++i) {
      uf.unite(static_cast<int>(i), pa[i]);
      uf.unite(static_cast<int>(i), pb[i]);
    }
    int cid = store.insert(uf.canonical());
    join_memo.emplace(key, cid);
    return cid;
  };

  // Tarjan over the pair translation graph, components processed leaves
  // first (Tarjan pops them in reverse topological order).
  std::vector<int32_t> order_of(P, -1), low(P, 0), scc_of(P, -1);
  std::vector<int32_t> theta_of_scc;  // scc id -> congruence id
  std::vector<bool> on_stack(P, false);
  std::vector<size_t> tarjan_stack;
  struct Frame {
    size_t node;
    size_t edge;
  };
  std::vector<Frame> frames;
  std::vector<size_t> scc_nodes;
  std::vector<int> child_cids;
  int32_t counter = 0;
  int32_t scc_count = 0;

  auto process_scc = [&](const std::vector<size_t>& nodes) {
    const int32_t my_id = scc_count++;
    for (size_t v : nodes) scc_of[v] = my_id;
    child_cids.clear();
    for (size_t v : nodes)
      for (size_t e = 0; e < edges_per_node; ++e) {
        size_t w = edge_target(v, e);
        if (w == SIZE_MAX || scc_of[w] == my_id) continue;
        child_cids.push_back(theta_of_scc[scc_of[w]]);
      }
    std::sort(child_cids.begin(), child_cids.end());
    child_cids.erase(std::unique(child_cids.begin(), child_cids.end()), child_cids.end());
    int base = id_cid;
    for (int c : child_cids) base = join_ids(base, c);
    bool covered = true;
    const auto& bp = store.parts[base];
    for (size_t v : nodes)
      if (bp[pair_i[v]] != bp[pair_j[v]]) {
        covered = false;
        break;
      }
    if (covered) {
      theta_of_scc.push_back(base);
      return;
    }
    UnionFind uf(m);
    for (size_t i = 0; i < m; ++i) uf.unite(static_cast<int>(i), bp[i]);
    for (size_t v : nodes) uf.unite(pair_i[v], pair_j[v]);
    theta_of_scc.push_back(store.insert(uf.canonical()));
  };

  for (size_t root = 0; root < P; ++root) {
    if (order_of[root] >= 0) continue;
    frames.push_back({root, 0});
    order_of[root] = low[root] = counter++;
    tarjan_stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < edges_per_node) {
        size_t w = edge_target(f.node, f.edge++);
        if (w == SIZE_MAX) continue;
        if (order_of[w] < 0) {
          order_of[w] = low[w] = counter++;
          tarjan_stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], order_of[w]);
        }
        continue;
      }
      size_t v = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] == order_of[v]) {
        scc_nodes.clear();
        while (true) {
          size_t w = tarjan_stack.back();
          tarjan_stack.pop_back();
          on_stack[w] = false;
          scc_nodes.push_back(w);
          if (w == v) break;
        }
        process_scc(scc_nodes);
      }
    }
  }

  // Lattice = join closure of the principal congruences (plus the identity).
  std::vector<int> members{id_cid};
  std::vector<bool> present(store.parts.size(), false);
  present[id_cid] = true;
  auto add_member = [&](int cid) {
    if (static_cast<size_t>(cid) >= present.size()) present.resize(store.parts.size(), false);
    if (!present[cid]) {
      present[cid] = true;
      members.push_back(cid);
    }
  };
  std::vector<int> principal_ids(theta_of_scc.begin(), theta_of_scc.end());
  std::sort(principal_ids.begin(), principal_ids.end());
  principal_ids.erase(std::unique(principal_ids.begin(), principal_ids.end()),
                      principal_ids.end());
  for (int cid : principal_ids) add_member(cid);
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = 0; j < i; ++j) add_member(join_ids(members[i], members[j]));

  CongruenceLattice lat;
  for (int cid : members) lat.congruences.push_back(Congruence::from_partition(store.parts[cid]));
  std::sort(lat.congruences.begin(), lat.congruences.end(),
            [&](const Congruence& a, const Congruence& b) {
              if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
              return a.partition() < b.partition();
            });
  const size_t count = lat.congruences.size();
  lat.names.assign(count, "");
  lat.leq.assign(count, std::vector<bool>(count, false));
  for (size_t a = 0; a < count; ++a)
    for (size_t b = 0; b < count; ++b) lat.leq[a][b] = lat.congruences[a].leq(lat.congruences[b]);
  for (size_t hi = 0; hi < count; ++hi)
    for (size_t lo = 0; lo < count; ++lo) {
      if (hi == lo || !lat.leq[lo][hi]) continue;
      bool cover = true;
      for (size_t mid = 0; mid < count && cover; ++mid)
        if (mid != hi && mid != lo && lat.leq[lo][mid] && lat.leq[mid][hi]) cover = false;
      if (cover) lat.hasse.emplace_back(static_cast<int>(hi), static_cast<int>(lo));
    }
  std::sort(lat.hasse.begin(), lat.hasse.end());
  return lat;
}

namespace {

std::string ideal_name(const GreenStructure& gs, const JPoset& poset, const Ideal& ideal,
                       const std::string& ideal_prefix, size_t position) {
  const size_t jc = gs.j_members.size();
  std::vector<bool> has_class(jc, false);
  for (int e : ideal.members) has_class[gs.j_class[e]] = true;
  int max_rank = 0;
  for (size_t c = 0; c < jc; ++c)
    if (has_class[c]) max_rank = std::max(max_rank, gs.j_rank[c]);
  bool full = true;
  std::vector<size_t> top_classes;
  bool lower_full = true;
  for (size_t c = 0; c < jc; ++c) {
    if (gs.j_rank[c] <= max_rank && !has_class[c]) full = false;
    if (gs.j_rank[c] == max_rank) {
      if (has_class[c]) top_classes.push_back(c);
    } else if (gs.j_rank[c] < max_rank && !has_class[c]) {
      lower_full = false;
    }
  }
  if (full) return ideal_prefix + std::to_string(max_rank);
  if (lower_full && top_classes.size() == 1) {
    const std::string& lab = poset.labels[top_classes[0]];
    auto caret = lab.find('^');
    if (caret != std::string::npos)
      return ideal_prefix + std::to_string(max_rank) + lab.substr(caret);
  }
  return ideal_prefix + "#" + std::to_string(position);
}

}  // namespace

std::vector<NamedCongruence> named_congruences(const GreenStructure& gs,
                                               const std::string& class_prefix,
                                               const std::string& ideal_prefix) {
  std::vector<NamedCongruence> out;
  auto poset = j_poset(gs, class_prefix);
  auto ids = ideals(gs);
  for (size_t i = 0; i < ids.size(); ++i)
    out.push_back({"rees(" + ideal_name(gs, poset, ids[i], ideal_prefix, i) + ")",
                   rees(gs.elems, ids[i])});
  const size_t jc = gs.j_members.size();
  for (size_t c = 0; c < jc; ++c) {
    out.push_back({"theta(" + poset.labels[c] + ")", theta(gs, static_cast<int>(c))});
    out.push_back({"pi(" + poset.labels[c] + ")", pi(gs, static_cast<int>(c))});
  }
  for (size_t c1 = 0; c1 < jc; ++c1)
    for (size_t c2 = c1 + 1; c2 < jc; ++c2) {
      if (strict_lower_set(gs, static_cast<int>(c1)) != strict_lower_set(gs, static_cast<int>(c2)))
        continue;
      out.push_back({"theta(" + poset.labels[c1] + ")+theta(" + poset.labels[c2] + ")",
                     union_theta(gs, static_cast<int>(c1), static_cast<int>(c2))});
    }
  return out;
}

void name_lattice(CongruenceLattice& lat, const std::vector<NamedCongruence>& named) {
  for (size_t i = 0; i < lat.congruences.size(); ++i) {
    std::vector<std::string> matches;
    if (lat.congruences[i].is_identity()) matches.push_back("id");
    if (lat.congruences[i].is_universal()) matches.push_back("omega");
    for (const auto& nc : named)
      if (nc.cong == lat.congruences[i]) matches.push_back(nc.name);
    std::string joined;
    for (const auto& s : matches) {
      if (!joined.empty()) joined += " = ";
      joined += s;
    }
    lat.names[i] = joined;
  }
}

ClassificationReport verify_classification(const MonoidSpec& spec, const LatticeOptions& opts) {
  const bool am = spec.tag == MonoidTag::AMn;
  auto elems = enumerate(spec);
  auto gs = green_structure(elems);
  auto named = named_congruences(gs, am ? "Q" : "J", am ? "F" : "I");
  auto lat = congruence_lattice(elems, opts);
  return verify_classification(spec, gs, named, lat);
}

ClassificationReport verify_classification(const MonoidSpec& spec, const GreenStructure& gs,
                                           const std::vector<NamedCongruence>& named,
                                           const CongruenceLattice& lattice) {
  if (spec.tag != MonoidTag::AOn && spec.tag != MonoidTag::AMn)
    throw PreconditionError("verify_classification covers AO and AM only");
  const bool am = spec.tag == MonoidTag::AMn;
  const int n = spec.n;
  ClassificationReport rep;
  rep.monoid = to_string(spec);
  rep.n = n;

  const ElementSet& elems = gs.elems;
  CongruenceLattice lat = lattice;
  name_lattice(lat, named);

  auto find_named = [&](const std::string& name) -> const Congruence* {
    for (const auto& nc : named)
      if (nc.name == name) return &nc.cong;
    return nullptr;
  };

  // The expected member list, as construction names in bottom-up order.
  std::string ip = am ? "F" : "I";
  std::string cp = am ? "Q" : "J";
  std::vector<std::string> chain;  // expected total order, bottom to top
  std::vector<std::string> expected;
  auto reesn = [&](const std::string& suffix) { return "rees(" + ip + suffix + ")"; };
  auto thetan = [&](const std::string& suffix) { return "theta(" + cp + suffix + ")"; };
  auto pin = [&](const std::string& suffix) { return "pi(" + cp + suffix + ")"; };
  std::vector<std::string> interval;  // the nine names for AM, n = 1,2 mod 4
  if (!am) {
    for (int k = 0; k <= n - 2; ++k) chain.push_back(reesn(std::to_string(k)));
    expected = chain;
    expected.push_back(reesn(std::to_string(n - 1) + "^o"));
    expected.push_back(reesn(std::to_string(n - 1) + "^e"));
    expected.push_back(reesn(std::to_string(n - 1)));
    expected.push_back(reesn(std::to_string(n)));
  } else {
    chain.push_back(reesn("0"));
    for (int k = 1; k <= n - 2; ++k) {
      if (k >= 2) chain.push_back(thetan(std::to_string(k)));
      chain.push_back(reesn(std::to_string(k)));
    }
    expected = chain;
    switch (n % 4) {
      case 0:
        expected.push_back(reesn(std::to_string(n - 1)));
        expected.push_back(thetan(std::to_string(n)));
        expected.push_back(reesn(std::to_string(n)));
        break;
      case 3:
        expected.push_back(reesn(std::to_string(n - 1)));
        expected.push_back(reesn(std::to_string(n)));
        break;
      default: {
        std::string o = std::to_string(n - 1) + "^o", e = std::to_string(n - 1) + "^e";
        interval = {reesn(std::to_string(n - 2)),
                    thetan(o),
                    thetan(e),
                    thetan(o) + "+" + thetan(e),
                    reesn(o),
                    reesn(e),
                    pin(o),
                    pin(e),
                    reesn(std::to_string(n - 1))};
        for (size_t t = 1; t + 1 < interval.size(); ++t) expected.push_back(interval[t]);
        expected.push_back(reesn(std::to_string(n - 1)));
        if (n % 4 == 1) expected.push_back(thetan(std::to_string(n)));
        expected.push_back(reesn(std::to_string(n)));
        break;
      }
    }
  }

  // Theorem count: AO n+3; AM by residue.
  size_t theorem_count;
  if (!am)
    theorem_count = n + 3;
  else {
    const int by_mod[4] = {2 * n - 1, 2 * n + 6, 2 * n + 5, 2 * n - 2};
    theorem_count = by_mod[n % 4];
  }
  rep.expected_count = theorem_count;
  rep.computed_count = lat.congruences.size();

  // Resolve expected names to distinct congruences.
  std::vector<std::pair<std::string, const Congruence*>> resolved;
  for (const auto& name : expected) {
    const Congruence* c = find_named(name);
    if (!c) {
      rep.notes.push_back("construction missing: " + name);
      continue;
    }
    bool dup = false;
    for (auto& [nm, pc] : resolved)
      if (*pc == *c) dup = true;
    if (!dup) resolved.emplace_back(name, c);
  }
  if (resolved.size() != theorem_count)
    rep.notes.push_back("expected list resolves to " + std::to_string(resolved.size()) +
                        " distinct congruences, theorem count is " +
                        std::to_string(theorem_count));

  for (auto& [name, c] : resolved)
    if (lat.index_of(*c) < 0) rep.notes.push_back("not found in computed lattice: " + name);
  for (size_t i = 0; i < lat.congruences.size(); ++i) {
    bool matched = false;
    for (auto& [name, c] : resolved)
      if (*c == lat.congruences[i]) matched = true;
    if (!matched) {
      std::ostringstream what;
      what << "computed congruence outside the classification: blocks="
           << lat.congruences[i].block_count();
      what << " nontrivial={";
      bool first_block = true;
      for (const auto& b : lat.congruences[i].nontrivial_blocks()) {
        if (!first_block) what << ", ";
        first_block = false;
        if (b.size() > 8) {
          what << "#" << b.size();
          continue;
        }
        what << "{";
        for (size_t t = 0; t < b.size(); ++t)
          what << (t ? " " : "") << to_string(elems[b[t]]);
        what << "}";
      }
      what << "}";
      rep.notes.push_back(what.str());
    }
  }
  if (!am) {
    // Every member must be a Rees congruence.
    auto ids = ideals(gs);
    for (size_t i = 0; i < lat.congruences.size(); ++i) {
      bool is_rees = false;
      for (const auto& ideal : ids)
        if (rees(elems, ideal) == lat.congruences[i]) is_rees = true;
      if (!is_rees)
        rep.notes.push_back("computed congruence " + std::to_string(i) + " is not Rees");
    }
  }

  // Shape check, only meaningful once the member sets agree.
  if (rep.notes.empty()) {
    std::vector<std::pair<std::string, std::string>> covers;  // (upper, lower)
    auto chain_covers = [&](const std::vector<std::string>& names) {
      for (size_t t = 0; t + 1 < names.size(); ++t) covers.emplace_back(names[t + 1], names[t]);
    };
    if (!am) {
      chain_covers(chain);
      std::string o = std::to_string(n - 1) + "^o", e = std::to_string(n - 1) + "^e";
      covers.emplace_back(reesn(o), chain.back());
      covers.emplace_back(reesn(e), chain.back());
      covers.emplace_back(reesn(std::to_string(n - 1)), reesn(o));
      covers.emplace_back(reesn(std::to_string(n - 1)), reesn(e));
      covers.emplace_back(reesn(std::to_string(n)), reesn(std::to_string(n - 1)));
    } else if (n % 4 == 0 || n % 4 == 3) {
      auto full = chain;
      full.push_back(reesn(std::to_string(n - 1)));
      if (n % 4 == 0) full.push_back(thetan(std::to_string(n)));
      full.push_back(reesn(std::to_string(n)));
      chain_covers(full);
    } else {
      chain_covers(chain);
      std::string o = std::to_string(n - 1) + "^o", e = std::to_string(n - 1) + "^e";
      std::string un = thetan(o) + "+" + thetan(e);
      std::string bot = reesn(std::to_string(n - 2)), top = reesn(std::to_string(n - 1));
      covers.emplace_back(thetan(o), bot);
      covers.emplace_back(thetan(e), bot);
      covers.emplace_back(reesn(o), thetan(o));
      covers.emplace_back(reesn(e), thetan(e));
      covers.emplace_back(un, thetan(o));
      covers.emplace_back(un, thetan(e));
      covers.emplace_back(pin(e), reesn(o));
      covers.emplace_back(pin(o), reesn(e));
      covers.emplace_back(pin(e), un);
      covers.emplace_back(pin(o), un);
      covers.emplace_back(top, pin(o));
      covers.emplace_back(top, pin(e));
      if (n % 4 == 1) {
        covers.emplace_back(thetan(std::to_string(n)), top);
        covers.emplace_back(reesn(std::to_string(n)), thetan(std::to_string(n)));
      } else {
        covers.emplace_back(reesn(std::to_string(n)), top);
      }
    }
    std::set<std::pair<int, int>> want;
    for (auto& [upper, lower] : covers) {
      const Congruence* cu = find_named(upper);
      const Congruence* cl = find_named(lower);
      want.emplace(lat.index_of(*cu), lat.index_of(*cl));
    }
    std::set<std::pair<int, int>> got(lat.hasse.begin(), lat.hasse.end());
    if (want != got) {
      rep.notes.push_back("Hasse shape differs: expected " + std::to_string(want.size()) +
                          " covering pairs, computed " + std::to_string(got.size()));
      for (auto& pr : want)
        if (!got.count(pr))
          rep.notes.push_back("  missing cover: " + lat.names[pr.first] + " over " +
                              lat.names[pr.second]);
      for (auto& pr : got)
        if (!want.count(pr))
          rep.notes.push_back("  extra cover: " + lat.names[pr.first] + " over " +
                              lat.names[pr.second]);
    }
  }

  rep.pass = rep.notes.empty() && rep.computed_count == theorem_count;
  return rep;
}

}  // namespace altmon
