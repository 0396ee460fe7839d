#pragma once

#include <numeric>
#include <vector>

namespace altmon {

// Union-find with path compression; the smallest index of a block is its
// root, so canonical() doubles as a partition fingerprint.
class UnionFind {
 public:
  explicit UnionFind(size_t m) : parent_(m) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    int r = x;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[x] != r) {
      int next = parent_[x];
      parent_[x] = r;
      x = next;
    }
    return r;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  std::vector<int> canonical() {
    std::vector<int> out(parent_.size());
    for (size_t i = 0; i < parent_.size(); ++i) out[i] = find(static_cast<int>(i));
    return out;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace altmon
