#include "altmon/partial_perm.hpp"

#include <algorithm>
#include <sstream>

namespace altmon {

int PartialPerm::check_n(int n) {
  if (n < 2 || n > max_n)
    throw PreconditionError("chain size must be between 2 and " + std::to_string(max_n) +
                            ", got " + std::to_string(n));
  return n;
}

PartialPerm::PartialPerm(int n, const std::vector<int>& img) : n_(check_n(n)), img_{} {
  if (static_cast<int>(img.size()) != n)
    throw PreconditionError("image table must have length n");
  uint16_t seen = 0;
  for (int k = 0; k < n; ++k) {
    int v = img[k];
    if (v < 0 || v > n) throw PreconditionError("image entries must lie in {0, 1..n}");
    if (v != 0) {
      if (seen & (1u << v)) throw PreconditionError("image entries must be injective");
      seen |= 1u << v;
    }
    img_[k] = static_cast<uint8_t>(v);
  }
}

PartialPerm PartialPerm::identity(int n) {
  PartialPerm p(n);
  for (int k = 1; k <= n; ++k) p.img_[k - 1] = static_cast<uint8_t>(k);
  return p;
}

PartialPerm PartialPerm::partial_identity(int n, const std::vector<int>& domain) {
  PartialPerm p(n);
  for (int x : domain) {
    if (x < 1 || x > n) throw PreconditionError("domain point out of range");
    p.img_[x - 1] = static_cast<uint8_t>(x);
  }
  return p;
}

PartialPerm PartialPerm::order_map(int n, std::vector<int> domain, std::vector<int> image,
                                   bool preserving) {
  if (domain.size() != image.size())
    throw PreconditionError("domain and image must have equal sizes");
  std::sort(domain.begin(), domain.end());
  std::sort(image.begin(), image.end());
  if (!preserving) std::reverse(image.begin(), image.end());
  PartialPerm p(n);
  for (size_t k = 0; k < domain.size(); ++k) {
    int x = domain[k], y = image[k];
    if (x < 1 || x > n || y < 1 || y > n) throw PreconditionError("point out of range");
    if (p.img_[x - 1] != 0) throw PreconditionError("duplicate domain point");
    p.img_[x - 1] = static_cast<uint8_t>(y);
  }
  // order_map relies on image entries being distinct
  return PartialPerm(n, std::vector<int>(p.img_.begin(), p.img_.begin() + n));
}

int PartialPerm::rank() const {
  int r = 0;
  for (int k = 0; k < n_; ++k) r += img_[k] != 0;
  return r;
}

std::vector<int> PartialPerm::domain() const {
  std::vector<int> d;
  for (int k = 1; k <= n_; ++k)
    if (defined(k)) d.push_back(k);
  return d;
}

std::vector<int> PartialPerm::image() const {
  std::vector<int> im;
  for (int k = 1; k <= n_; ++k)
    if (defined(k)) im.push_back(at(k));
  std::sort(im.begin(), im.end());
  return im;
}

bool PartialPerm::is_identity() const {
  for (int k = 1; k <= n_; ++k)
    if (at(k) != k) return false;
  return true;
}

bool PartialPerm::is_partial_identity() const {
  for (int k = 1; k <= n_; ++k)
    if (defined(k) && at(k) != k) return false;
  return true;
}

uint64_t PartialPerm::key() const {
  uint64_t k = 0;
  for (int i = 0; i < n_; ++i) k = (k << 4) | img_[i];
  return k;
}

std::strong_ordering PartialPerm::operator<=>(const PartialPerm& o) const {
  if (n_ != o.n_) return n_ <=> o.n_;
  return key() <=> o.key();
}

PartialPerm compose(const PartialPerm& a, const PartialPerm& b) {
  if (a.n() != b.n()) throw DimensionError("compose: operands have different chain sizes");
  PartialPerm r(a.n());
  std::vector<int> img(a.n(), 0);
  for (int x = 1; x <= a.n(); ++x) {
    int y = a.at(x);
    if (y != 0) img[x - 1] = b.at(y);
  }
  return PartialPerm(a.n(), img);
}

uint64_t compose_keys(uint64_t ka, uint64_t kb, int n) {
  uint64_t out = 0;
  for (int k = 0; k < n; ++k) {
    out <<= 4;
    uint64_t x = (ka >> (4 * (n - 1 - k))) & 0xF;
    if (x != 0) out |= (kb >> (4 * (n - x))) & 0xF;
  }
  return out;
}

PartialPerm inverse(const PartialPerm& a) {
  std::vector<int> img(a.n(), 0);
  for (int x = 1; x <= a.n(); ++x)
    if (a.defined(x)) img[a.at(x) - 1] = x;
  return PartialPerm(a.n(), img);
}

std::pair<int, int> gaps(const PartialPerm& a) {
  if (a.rank() != a.n() - 1)
    throw PreconditionError("gaps: element must have rank n-1");
  int d = 0, i = 0;
  uint16_t im = 0;
  for (int x = 1; x <= a.n(); ++x) {
    if (!a.defined(x))
      d = x;
    else
      im |= 1u << a.at(x);
  }
  for (int y = 1; y <= a.n(); ++y)
    if (!(im & (1u << y))) i = y;
  return {d, i};
}

PartialPerm completion(const PartialPerm& a) {
  if (a.rank() != a.n() - 1)
    throw PreconditionError("completion: element must have rank n-1");
  auto [d, i] = gaps(a);
  std::vector<int> img(a.n());
  for (int x = 1; x <= a.n(); ++x) img[x - 1] = a.defined(x) ? a.at(x) : 0;
  img[d - 1] = i;
  return PartialPerm(a.n(), img);
}

Parity sign(const PartialPerm& p) {
  if (p.rank() != p.n()) throw PreconditionError("sign: element must be a full permutation");
  uint16_t seen = 0;
  int cycles = 0;
  for (int x = 1; x <= p.n(); ++x) {
    if (seen & (1u << x)) continue;
    ++cycles;
    int y = x;
    while (!(seen & (1u << y))) {
      seen |= 1u << y;
      y = p.at(y);
    }
  }
  return (p.n() - cycles) % 2 == 0 ? Parity::even : Parity::odd;
}

bool is_order_preserving(const PartialPerm& a) {
  int prev = 0;
  for (int x = 1; x <= a.n(); ++x) {
    if (!a.defined(x)) continue;
    if (prev != 0 && a.at(x) < prev) return false;
    prev = a.at(x);
  }
  return true;
}

bool is_order_reversing(const PartialPerm& a) {
  int prev = 0;
  for (int x = 1; x <= a.n(); ++x) {
    if (!a.defined(x)) continue;
    if (prev != 0 && a.at(x) > prev) return false;
    prev = a.at(x);
  }
  return true;
}

bool is_monotone(const PartialPerm& a) {
  return is_order_preserving(a) || is_order_reversing(a);
}

PartialPerm reverse(const PartialPerm& a) {
  if (a.rank() < 2) throw PreconditionError("reverse: element must have rank at least 2");
  if (!is_monotone(a)) throw PreconditionError("reverse: element must be monotone");
  return PartialPerm::order_map(a.n(), a.domain(), a.image(), !is_order_preserving(a));
}

PartialPerm reversal(int n) {
  std::vector<int> img(n);
  for (int x = 1; x <= n; ++x) img[x - 1] = n + 1 - x;
  return PartialPerm(n, img);
}

std::string to_string(const PartialPerm& a) {
  if (a.is_empty()) return "[]";
  std::ostringstream dom, im;
  bool first = true;
  for (int x = 1; x <= a.n(); ++x) {
    if (!a.defined(x)) continue;
    if (!first) {
      dom << ' ';
      im << ' ';
    }
    dom << x;
    im << a.at(x);
    first = false;
  }
  return "[" + dom.str() + " | " + im.str() + "]";
}

PartialPerm parse_partial_perm(const std::string& text, int n) {
  auto fail = [&](const std::string& why) {
    throw ParseError("bad partial permutation '" + text + "': " + why);
  };
  size_t lb = text.find('[');
  size_t rb = text.rfind(']');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb) fail("missing brackets");
  std::string body = text.substr(lb + 1, rb - lb - 1);
  size_t bar = body.find('|');
  std::vector<int> dom, im;
  auto read_ints = [&](const std::string& s, std::vector<int>& out) {
    std::istringstream in(s);
    int v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) fail("expected integers");
  };
  if (bar == std::string::npos) {
    read_ints(body, dom);
    if (!dom.empty()) fail("missing '|'");
  } else {
    read_ints(body.substr(0, bar), dom);
    read_ints(body.substr(bar + 1), im);
  }
  if (dom.size() != im.size()) fail("domain and image rows differ in length");
  std::vector<int> img(n, 0);
  for (size_t k = 0; k < dom.size(); ++k) {
    if (dom[k] < 1 || dom[k] > n || im[k] < 1 || im[k] > n) fail("point out of range");
    if (k > 0 && dom[k] <= dom[k - 1]) fail("domain must be strictly ascending");
    if (img[dom[k] - 1] != 0) fail("duplicate domain point");
    img[dom[k] - 1] = im[k];
  }
  try {
    return PartialPerm(n, img);
  } catch (const PreconditionError& e) {
    fail(e.what());
  }
  throw ParseError("unreachable");
}

}  // namespace altmon
