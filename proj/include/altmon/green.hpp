#pragma once

#include <string>
#include <vector>

#include "altmon/monoids.hpp"

namespace altmon {

/// Bit rows over element indices; row i holds a subset of {0..m-1}.
class BitMatrix {
 public:
  BitMatrix(size_t rows, size_t cols)
      : cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  void set(size_t r, size_t c) { bits_[r * words_ + c / 64] |= uint64_t{1} << (c % 64); }
  bool get(size_t r, size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1;
  }
  bool rows_equal(size_t r1, size_t r2) const;
  void or_row_into(size_t src, std::vector<uint64_t>& acc) const;
  size_t row_hash(size_t r) const;
  size_t cols() const { return cols_; }
  size_t words() const { return words_; }
  const uint64_t* row(size_t r) const { return bits_.data() + r * words_; }

 private:
  size_t cols_, words_;
  std::vector<uint64_t> bits_;
};

/// Green's relations of a finite monoid of partial permutations, computed
/// generically from one-step products (no use of the Im/Dom shortcuts, which
/// tests assert against this independently).
struct GreenStructure {
  ElementSet elems;
  std::vector<int> l_class, r_class, h_class, j_class;  // element index -> class id
  std::vector<std::vector<int>> l_members, r_members, h_members, j_members;
  // j_leq[a][b]: class a lies below or equals class b in the J-order.
  std::vector<std::vector<bool>> j_leq;
  // Rank of the elements of each J-class (constant within a class here).
  std::vector<int> j_rank;

  int l_count() const { return static_cast<int>(l_members.size()); }
  int r_count() const { return static_cast<int>(r_members.size()); }
  int h_count() const { return static_cast<int>(h_members.size()); }
  int j_count() const { return static_cast<int>(j_members.size()); }
};

GreenStructure green_structure(const ElementSet& elems);

/// The partial order on J-classes with labels and covering pairs.
struct JPoset {
  std::vector<std::string> labels;  // per j-class id
  std::vector<std::vector<bool>> leq;
  std::vector<std::pair<int, int>> hasse;  // (upper, lower) covering pairs
  std::vector<int> ranks;
};

// Labels are "<prefix><rank>" when a rank level holds a single class and
// "<prefix><rank>^o" / "<prefix><rank>^e" (domain-gap parity) when a rank
// n-1 level splits in two; anything else falls back to positional names.
JPoset j_poset(const GreenStructure& gs, const std::string& prefix = "J");

struct JClassProfileRow {
  std::string label;
  int64_t size;
  int l_classes;
  int r_classes;
  int max_h;
};

struct JClassProfile {
  std::string monoid;
  int n;
  std::vector<JClassProfileRow> computed;
  std::vector<JClassProfileRow> predicted;  // empty unless AO/AM
  bool matches_prediction() const;
};

JClassProfile jclass_profile(const MonoidSpec& spec, const EnumerateOptions& opts = {});

// Expected rows for AO/AM from the per-level counting forms.
std::vector<JClassProfileRow> predicted_profile(const MonoidSpec& spec);

std::string export_dot(const JPoset& poset, const std::string& graph_name = "jposet");

}  // namespace altmon
