#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altmon/partial_perm.hpp"

namespace altmon {

// The monoid families on the chain {1 < ... < n}:
//   I    all partial permutations
//   S    the symmetric group (full permutations)
//   A    the alternating group (even full permutations)
//   E    the partial identities
//   POI  order-preserving partial permutations
//   PMI  monotone partial permutations
//   AI   partial permutations extendable to an even permutation
//   AO   AI intersect POI
//   AM   AI intersect PMI
//   InG  restrictions of members of a given permutation group G
enum class MonoidTag { In, Sn, An, En, POIn, PMIn, AIn, AOn, AMn, InG };

struct MonoidSpec {
  MonoidTag tag;
  int n;
  // Only for InG: generators of the unit group, all full permutations.
  std::vector<PartialPerm> group_generators;
};

MonoidSpec monoid_spec(MonoidTag tag, int n);
MonoidSpec monoid_spec_in_g(int n, std::vector<PartialPerm> group_generators);

// Short string form: "AO:5", "AM:7", "InG:4:[(1 2),(1 2 3 4)]".
std::string to_string(const MonoidSpec& spec);
MonoidSpec parse_monoid_spec(const std::string& text);

// Cycle notation for full permutations, e.g. "(1 2)(3 4)" or "id".
PartialPerm parse_cycles(const std::string& text, int n);
std::string to_cycles(const PartialPerm& p);

/// A deduplicated set of partial permutations of a common chain, held in the
/// canonical (lexicographic) order.  Lookup is by nibble-packed key.
class ElementSet {
 public:
  ElementSet(int n, std::vector<PartialPerm> elems);

  int n() const { return n_; }
  size_t size() const { return elems_.size(); }
  const PartialPerm& operator[](size_t i) const { return elems_[i]; }
  const std::vector<PartialPerm>& elements() const { return elems_; }
  const std::vector<uint64_t>& keys() const { return keys_; }

  std::optional<uint32_t> index_of_key(uint64_t key) const;
  std::optional<uint32_t> index_of(const PartialPerm& p) const { return index_of_key(p.key()); }
  bool contains(const PartialPerm& p) const { return index_of(p).has_value(); }

  bool operator==(const ElementSet& o) const { return n_ == o.n_ && keys_ == o.keys_; }

 private:
  int n_;
  std::vector<PartialPerm> elems_;  // sorted by key, no duplicates
  std::vector<uint64_t> keys_;      // keys_[i] == elems_[i].key()
};

// Fast membership by the structural characterizations (gap parities for the
// alternating families).
bool contains(const MonoidSpec& spec, const PartialPerm& a);

// Definitional membership: searches the extensions of a to full permutations
// (parity decided by inversion count, an independent route from sign()).
// Limited to n <= 8.
bool contains_by_oracle(const MonoidSpec& spec, const PartialPerm& a);

struct EnumerateOptions {
  int n_cap = 8;
};

// All elements of the monoid, canonically ordered.
ElementSet enumerate(const MonoidSpec& spec, const EnumerateOptions& opts = {});

// Closes the generators into a permutation group G, then collects every
// restriction of every member of G.
ElementSet build_In_G(int n, const std::vector<PartialPerm>& group_generators);

// Keys of the submonoid generated by the given keys (identity included),
// in BFS discovery order.
std::vector<uint64_t> monoid_closure_keys(int n, const std::vector<uint64_t>& gen_keys);

// Exact closed-form cardinality.  For AM the form requires n >= 3.
int64_t cardinality_formula(const MonoidSpec& spec);

// Number of elements of rank exactly k, by the per-level closed forms where
// available, otherwise by enumeration.
int64_t rank_level_count(const MonoidSpec& spec, int k);

}  // namespace altmon
