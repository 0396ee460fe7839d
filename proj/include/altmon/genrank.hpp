#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "altmon/monoids.hpp"

namespace altmon {

// X_i = {1..n} minus {i}; the shared domain/image pattern of the rank n-1
// generators.
std::vector<int> chain_minus(int n, int i);

// The named generator families:
//   x      x_1..x_n, the order-preserving rank n-1 family
//   y      y_i order-reversing X_i -> X_{i+1} (i < n), y_n order-preserving
//   h      the full reversal
//   h_i    reverses of the rank n-1 partial identities
//   am0..am3  the minimum generating sets of AM_n, one per n mod 4 residue
enum class FamilyName { x, y, h, h_i, am0, am1, am2, am3 };

struct GeneratorFamily {
  FamilyName name;
  int n;
  std::vector<PartialPerm> members;
  std::vector<std::string> labels;  // e.g. "x4", "x6*x4", "h", "x1*h5"
  std::vector<std::string> notes;   // construction remarks (collapsed index ranges)
};

GeneratorFamily make_family(FamilyName name, int n);

// Single members, for direct use in identities.
PartialPerm x_gen(int i, int n);
PartialPerm y_gen(int i, int n);
PartialPerm h_gen(int i, int n);  // reverse of the partial identity on X_i

struct ClosureResult {
  ElementSet generated;
  // generated element index -> word as member indices (shortest, BFS order);
  // only filled on request.
  std::vector<std::vector<int>> witness_words;
};

ClosureResult closure(const GeneratorFamily& family, bool with_witnesses = false);
ClosureResult closure_of(int n, const std::vector<PartialPerm>& members,
                         bool with_witnesses = false);

bool verify_generates(const GeneratorFamily& family, const MonoidSpec& spec);

struct RankBoundClaim {
  std::string what;
  bool holds;
  std::string missing;  // an element the reduced closure cannot reach
};

struct RankBoundReport {
  std::string monoid;
  int n = 0;
  int implied_bound = 0;
  bool pass = false;
  std::vector<RankBoundClaim> claims;
};

// Verifies the generating-set lower bound structurally: dropping all rank
// n-1 elements with domain X_i (or with domain in the orbit {X_i, X_{n-i+1}}
// when the reversal is a unit) must lose the monoid; likewise dropping the
// reversal itself.
RankBoundReport rank_lower_bound_report(const MonoidSpec& spec);

struct ExhaustiveRankOptions {
  int max_size = 4;
  bool full_pool = false;     // search all elements, not just rank >= n-1
  uint64_t subset_budget = 2'000'000;
};

struct ExhaustiveRankResult {
  bool exact = false;          // false means "every subset up to max_size fails"
  int rank = 0;                // valid when exact; otherwise max_size+1 is a lower bound
  uint64_t subsets_tried = 0;
  std::vector<std::string> witness;  // a minimum generating set, printed
};

ExhaustiveRankResult exhaustive_rank(const MonoidSpec& spec, const ExhaustiveRankOptions& opts);

// Factorization witnesses for the rank n-2 production steps.  Search
// failures return nullopt; the suites treat that as falsification.
struct TwoFactorWitness {
  PartialPerm left, right;
};

// alpha of rank n-2 with domain missing {1, even}, image missing {1, odd}:
// a product beta*gamma with beta from the even-gap classes and gamma from
// the odd-gap ones.
std::optional<TwoFactorWitness> witness_two_gap_product(const MonoidSpec& spec,
                                                        const PartialPerm& alpha);
// alpha of rank n-2 avoiding 1 in domain and image: any two rank n-1
// factors inside the monoid.
std::optional<TwoFactorWitness> witness_avoiding_one(const MonoidSpec& spec,
                                                     const PartialPerm& alpha);
// alpha with both image gaps even: a right factor making an image gap odd.
std::optional<PartialPerm> witness_make_odd_gap(const MonoidSpec& spec, const PartialPerm& alpha);
// alpha with an odd image gap: a right factor removing 1 from the image.
std::optional<PartialPerm> witness_clear_one(const MonoidSpec& spec, const PartialPerm& alpha);

// The explicit generator word for a rank n-1 element of AO_n, evaluated and
// checked against the element.
std::vector<int> rank_n1_word(int n, int dom_gap, int im_gap);

// Every rank k element is a product of rank k+1 elements (checked via the
// closure of the k+1 level), for 0 <= k <= n-3.
bool rank_level_factors(const MonoidSpec& spec, int k);

struct IdentityCheck {
  std::string lhs, rhs;
  bool holds;
};

// h x_i h = x_{n-i+3}^{-1} and the x_1/x_2 variants; for n = 0 mod 4 also
// the inverse-chain products used when rebuilding the low x's.
std::vector<IdentityCheck> conjugation_identities(int n);

}  // namespace altmon
