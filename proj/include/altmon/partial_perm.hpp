#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "altmon/error.hpp"

namespace altmon {

enum class Parity : uint8_t { even = 0, odd = 1 };

constexpr Parity operator*(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// An injective partial self-map of the chain {1 < 2 < ... < n}.
///
/// Stored as an image table: at(x) is the image of x, or 0 when x is not in
/// the domain.  Values are immutable after construction; every operation on
/// them is a pure function, so they can be shared freely across threads.
///
/// Application is left to right throughout: compose(a, b) maps x to b(a(x)),
/// written x*a*b elsewhere in this library's documentation.
class PartialPerm {
 public:
  static constexpr int max_n = 12;

  // The empty map on {1..n}.
  explicit PartialPerm(int n) : n_(check_n(n)), img_{} {}

  PartialPerm(int n, const std::vector<int>& img);

  static PartialPerm identity(int n);
  static PartialPerm partial_identity(int n, const std::vector<int>& domain);
  // The unique order-preserving (or order-reversing) map with the given
  // domain and image, which must have equal sizes.
  static PartialPerm order_map(int n, std::vector<int> domain, std::vector<int> image,
                               bool preserving = true);

  int n() const { return n_; }
  int at(int x) const { return img_[x - 1]; }
  bool defined(int x) const { return img_[x - 1] != 0; }

  int rank() const;
  std::vector<int> domain() const;
  std::vector<int> image() const;
  bool is_empty() const { return rank() == 0; }
  bool is_identity() const;
  bool is_partial_identity() const;

  // Nibble-packed image table; orders identically to the lexicographic
  // (canonical) order on PartialPerm values of a common n.
  uint64_t key() const;

  bool operator==(const PartialPerm& o) const { return n_ == o.n_ && img_ == o.img_; }
  // Canonical total order: by n, then lexicographically on the image table.
  std::strong_ordering operator<=>(const PartialPerm& o) const;

 private:
  static int check_n(int n);

  int8_t n_;
  std::array<uint8_t, max_n> img_;
};

PartialPerm compose(const PartialPerm& a, const PartialPerm& b);
PartialPerm inverse(const PartialPerm& a);

inline int rank(const PartialPerm& a) { return a.rank(); }

// Domain and image gaps (d, i) of a rank n-1 element.
std::pair<int, int> gaps(const PartialPerm& a);

// The unique full permutation extending a rank n-1 element.
PartialPerm completion(const PartialPerm& a);

// Parity of a full permutation, from its cycle decomposition.
Parity sign(const PartialPerm& p);

bool is_order_preserving(const PartialPerm& a);
bool is_order_reversing(const PartialPerm& a);
bool is_monotone(const PartialPerm& a);

// The unique monotone map with the same domain and image but the opposite
// orientation.  Defined only for monotone inputs of rank at least 2.
PartialPerm reverse(const PartialPerm& a);

// The full reversal x -> n+1-x.
PartialPerm reversal(int n);

// Two-row bracket notation: "[1 3 | 2 3]" maps 1 to 2 and 3 to 3; "[]" is
// the empty map.  Domain is listed ascending, images in domain order.
std::string to_string(const PartialPerm& a);
PartialPerm parse_partial_perm(const std::string& text, int n);

// Composes nibble-packed image tables directly; agrees with compose() on
// the corresponding values.
uint64_t compose_keys(uint64_t ka, uint64_t kb, int n);

}  // namespace altmon
