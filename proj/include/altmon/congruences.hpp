#pragma once

#include <string>
#include <vector>

#include "altmon/green.hpp"

namespace altmon {

/// A partition of element indices, canonicalized so that every index maps to
/// the smallest index of its block.  Congruence-ness (compatibility with
/// multiplication on both sides) is the concern of the builders below, which
/// construct via union-find and re-verify before returning.
class Congruence {
 public:
  // The identity congruence on m elements.
  explicit Congruence(size_t m);
  // From any partition map (values must be arbitrary block representatives).
  static Congruence from_partition(std::vector<int> part);

  size_t size() const { return part_.size(); }
  int rep(int i) const { return part_[i]; }
  bool related(int i, int j) const { return part_[i] == part_[j]; }
  const std::vector<int>& partition() const { return part_; }

  int block_count() const;
  std::vector<std::vector<int>> blocks() const;  // each sorted; ordered by rep
  std::vector<std::vector<int>> nontrivial_blocks() const;

  bool is_identity() const;
  bool is_universal() const { return block_count() == 1; }

  // Refinement: every block of this lies inside a block of o.
  bool leq(const Congruence& o) const;

  bool operator==(const Congruence& o) const { return part_ == o.part_; }

 private:
  std::vector<int> part_;
};

Congruence meet(const Congruence& a, const Congruence& b);
Congruence join(const Congruence& a, const Congruence& b);

// The defining compatibility test: a ~ b implies xa ~ xb and ax ~ bx.
bool is_congruence(const ElementSet& elems, const Congruence& c);

struct Ideal {
  std::vector<int> members;  // sorted element indices
};

bool is_ideal(const ElementSet& elems, const Ideal& ideal);

// All nonempty ideals, i.e. the down-sets of the J-class order, sorted by
// (size, members).
std::vector<Ideal> ideals(const GreenStructure& gs);

// Collapses the ideal to a point.
Congruence rees(const ElementSet& elems, const Ideal& ideal);

// theta(J): one block A(J) = {a : J_a < J}, H-classes inside J as blocks,
// singletons elsewhere.  pi(J) uses B(J) = {a : J is not below J_a} instead.
Congruence theta(const GreenStructure& gs, int j_class);
Congruence pi(const GreenStructure& gs, int j_class);

// theta(J) united with theta(J'); requires A(J) == A(J').
Congruence union_theta(const GreenStructure& gs, int j1, int j2);

// Smallest congruence relating a and b, by pair closure.
Congruence principal_congruence(const ElementSet& elems, const PartialPerm& a,
                                const PartialPerm& b);

ElementSet idempotents(const ElementSet& elems);
// e <= f in the natural order: ef = e = fe.
bool natural_order(const PartialPerm& e, const PartialPerm& f);

struct LatticeOptions {
  size_t size_cap = 2000;
  // Translations used by the pair-orbit search; any monoid generating set of
  // the element set works.  Computed when empty.
  std::vector<PartialPerm> generators;
};

struct CongruenceLattice {
  std::vector<Congruence> congruences;          // deduplicated, deterministic order
  std::vector<std::vector<bool>> leq;           // refinement order
  std::vector<std::string> names;               // "" when unnamed
  std::vector<std::pair<int, int>> hasse;       // (upper, lower) covering pairs

  int index_of(const Congruence& c) const;      // -1 when absent
};

// Every congruence: all principal congruences closed under join.  Principal
// congruences are found per strongly connected component of the pair
// translation graph (pairs in one component generate the same congruence,
// and a component's congruence is the join of its successors' plus its own
// pairs), which keeps the all-pairs sweep near-linear in practice.
CongruenceLattice congruence_lattice(const ElementSet& elems, const LatticeOptions& opts = {});

struct NamedCongruence {
  std::string name;
  Congruence cong;
};

// The rees/theta/pi/union constructions over all ideals and J-classes, with
// ideal names derived from the class labels ("rees(F2)", "theta(Q3^o)", ...).
std::vector<NamedCongruence> named_congruences(const GreenStructure& gs,
                                               const std::string& class_prefix,
                                               const std::string& ideal_prefix);

// Attaches names to lattice members (joined with " = " when several
// constructions coincide).
void name_lattice(CongruenceLattice& lat, const std::vector<NamedCongruence>& named);

struct ClassificationReport {
  std::string monoid;
  int n = 0;
  bool pass = false;
  size_t expected_count = 0;
  size_t computed_count = 0;
  std::vector<std::string> notes;  // diff lines; empty on a clean pass
};

// Checks the congruence lattice of AO_n or AM_n against the classification:
// expected member list by n mod 4, count, and Hasse shape (including the
// nine-element interval for AM with n = 1, 2 mod 4).  Mismatches land in
// notes rather than throwing.
ClassificationReport verify_classification(const MonoidSpec& spec,
                                           const LatticeOptions& opts = {});

// Same check over precomputed pieces (named must come from named_congruences
// on gs, lat from congruence_lattice on gs.elems).
ClassificationReport verify_classification(const MonoidSpec& spec, const GreenStructure& gs,
                                           const std::vector<NamedCongruence>& named,
                                           const CongruenceLattice& lat);

}  // namespace altmon
