#pragma once

/** @file
 * Subspaces of F_2^n (n <= 64) held in reduced row-echelon form.
 *
 * A vector is a 64-bit word; bit i is coordinate i+1. The pivot of a row is
 * its lowest set bit, rows are sorted by pivot and every pivot column holds a
 * single 1, so two subspaces are equal iff their representations are.
 */

#include "nrz/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrz {

using Vec2 = std::uint64_t;

inline int weight(Vec2 v) { return std::popcount(v); }

inline Vec2 unit_vector(int i) { return Vec2{1} << i; }

/// "10110" -> coordinates 1, 3, 4 set.
inline Vec2 parse_vec2(const std::string& s) {
  if (s.size() > 64) throw std::invalid_argument("vector longer than 64 coordinates");
  Vec2 v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v |= unit_vector(static_cast<int>(i));
    else if (s[i] != '0') throw std::invalid_argument("vector entries must be 0 or 1: " + s);
  }
  return v;
}

inline std::string vec2_to_string(Vec2 v, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (v >> i & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

/// Lexicographic order on 0/1 strings (coordinate 1 most significant).
inline bool lex_less(Vec2 a, Vec2 b) {
  if (a == b) return false;
  Vec2 d = a ^ b;
  return (a & (d & (~d + 1))) == 0;
}

class Subspace2 {
 public:
  Subspace2() = default;

  explicit Subspace2(int n, const std::vector<Vec2>& generators = {}) : n_(n) {
    if (n < 0 || n > 64) throw std::invalid_argument("Subspace2 supports 0 <= n <= 64");
    Vec2 mask = n == 64 ? ~Vec2{0} : (unit_vector(n) - 1);
    for (Vec2 g : generators) {
      if (g & ~mask) throw std::invalid_argument("generator has bits beyond n");
      insert(g);
    }
  }

  int n() const { return n_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec2>& basis() const { return basis_; }

  /// Reduce v against the basis; zero iff v lies in the subspace.
  Vec2 reduce(Vec2 v) const {
    for (Vec2 b : basis_)
      if (v & (b & (~b + 1))) v ^= b;
    return v;
  }

  bool contains(Vec2 v) const { return reduce(v) == 0; }

  /// Adds v to the span; returns false if it was already contained.
  bool insert(Vec2 v) {
    v = reduce(v);
    if (v == 0) return false;
    Vec2 piv = v & (~v + 1);
    for (Vec2& b : basis_)
      if (b & piv) b ^= v;
    basis_.push_back(v);
    std::sort(basis_.begin(), basis_.end(), [](Vec2 a, Vec2 b) {
      return std::countr_zero(a) < std::countr_zero(b);
    });
    return true;
  }

  /// All 2^rank elements, indexed by coefficient vector over the basis.
  std::vector<Vec2> elements() const {
    if (rank() > 24) throw std::length_error("refusing to list more than 2^24 elements");
    std::vector<Vec2> out(std::size_t{1} << rank(), 0);
    for (std::size_t c = 1; c < out.size(); ++c) {
      int low = std::countr_zero(c);
      out[c] = out[c & (c - 1)] ^ basis_[static_cast<std::size_t>(low)];
    }
    return out;
  }

  bool operator==(const Subspace2& o) const { return n_ == o.n_ && basis_ == o.basis_; }
  bool operator<(const Subspace2& o) const {
    return n_ != o.n_ ? n_ < o.n_ : basis_ < o.basis_;
  }

  std::vector<std::string> rows() const {
    std::vector<std::string> out;
    for (Vec2 b : basis_) out.push_back(vec2_to_string(b, n_));
    return out;
  }

 private:
  int n_ = 0;
  std::vector<Vec2> basis_;
};

/// One 0/1 row per line; blank lines and '#' comments are ignored.
inline Subspace2 parse_subspace(const std::string& text, int n = -1) {
  std::vector<Vec2> gens;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
    if (line.empty()) continue;
    int len = static_cast<int>(line.size());
    if (n < 0) n = len;
    if (len != n) throw std::invalid_argument("rows have inconsistent length");
    gens.push_back(parse_vec2(line));
  }
  if (n < 0) throw std::invalid_argument("empty subspace input needs an explicit n");
  return Subspace2(n, gens);
}

inline bool has_even_element(const Subspace2& h) {
  if (h.rank() >= 2) return true;
  return h.rank() == 1 && weight(h.basis()[0]) % 2 == 0;
}

/// A nonzero element of even weight, or 0 if none exists.
inline Vec2 find_even_element(const Subspace2& h) {
  if (h.rank() == 0) return 0;
  const auto& b = h.basis();
  for (Vec2 v : b)
    if (weight(v) % 2 == 0) return v;
  return h.rank() >= 2 ? (b[0] ^ b[1]) : 0;
}

enum class Parity { Zero, Nonzero };

/// Restriction of the weight-parity functional to H.
inline Parity parity_functional_on(const Subspace2& h) {
  for (Vec2 v : h.basis())
    if (weight(v) % 2) return Parity::Nonzero;
  return Parity::Zero;
}

/// Number of k-dimensional subspaces of F_2^n.
inline BigInt gaussian_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= pow2(static_cast<unsigned long>(n - i)) - 1;
    den *= pow2(static_cast<unsigned long>(k - i)) - 1;
  }
  return num / den;
}

inline BigInt galois_number(int n) {
  BigInt s = 0;
  for (int k = 0; k <= n; ++k) s += gaussian_binomial(n, k);
  return s;
}

/// Subspaces of dimension k inside the even-weight hyperplane of F_2^n.
inline BigInt even_subspace_count(int n, int k) { return gaussian_binomial(n - 1, k); }

/// Probability that a uniform k-dimensional subspace consists of even-weight vectors.
inline Rational even_proportion(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw std::domain_error("even_proportion needs 0 <= k <= n, n >= 1");
  Rational p = make_rational(even_subspace_count(n, k), gaussian_binomial(n, k));
  Rational closed = make_rational(pow2(static_cast<unsigned long>(n - k)) - 1,
                                  pow2(static_cast<unsigned long>(n)) - 1);
  if (p != closed) throw std::logic_error("even_proportion: count ratio disagrees with closed form");
  return p;
}

/// An element of weight at most 2n/3. Exhaustive minimum for rank <= 20 (ties
/// go to the lexicographically smallest 0/1 string), otherwise the lightest of
/// the basis rows and their pairwise sums.
inline Vec2 find_short_element(const Subspace2& h) {
  if (h.rank() < 2) throw std::domain_error("find_short_element needs rank >= 2");
  std::vector<Vec2> cand;
  if (h.rank() <= 20) {
    cand = h.elements();
    cand.erase(cand.begin());
  } else {
    const auto& b = h.basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
      cand.push_back(b[i]);
      for (std::size_t j = i + 1; j < b.size(); ++j) cand.push_back(b[i] ^ b[j]);
    }
  }
  Vec2 best = 0;
  int bw = 65;
  for (Vec2 v : cand) {
    int w = weight(v);
    if (w < bw || (w == bw && lex_less(v, best))) {
      best = v;
      bw = w;
    }
  }
  if (3 * bw > 2 * h.n()) throw std::logic_error("find_short_element: no element within 2n/3");
  return best;
}

namespace detail {

/// All invertible r x r matrices over F_2, each as r column words.
inline std::vector<std::vector<std::uint32_t>> build_gl2(int r) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cols;
  const std::uint32_t lim = 1u << r;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cols.size()) == r) {
      out.push_back(cols);
      return;
    }
    for (std::uint32_t c = 1; c < lim; ++c) {
      // c must be outside the span of the columns chosen so far
      bool in_span = false;
      std::size_t k = cols.size();
      for (std::uint32_t m = 0; m < (1u << k) && !in_span; ++m) {
        std::uint32_t s = 0;
        for (std::size_t j = 0; j < k; ++j)
          if (m >> j & 1) s ^= cols[j];
        in_span = (s == c);
      }
      if (in_span) continue;
      cols.push_back(c);
      self(self);
      cols.pop_back();
    }
  };
  rec(rec);
  return out;
}

inline const std::vector<std::vector<std::uint32_t>>& gl2_group(int r) {
  static const auto table = [] {
    std::vector<std::vector<std::vector<std::uint32_t>>> t;
    for (int k = 0; k <= 4; ++k) t.push_back(build_gl2(k));
    return t;
  }();
  if (r < 0 || r > 4) throw std::domain_error("GL(r,2) tables cover r <= 4");
  return table[static_cast<std::size_t>(r)];
}

inline std::uint32_t apply_gl(const std::vector<std::uint32_t>& a, std::uint32_t x) {
  std::uint32_t y = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (x >> j & 1) y ^= a[j];
  return y;
}

}  // namespace detail

/// Columns of the generator matrix, each an r-bit word over the basis rows.
inline std::vector<std::uint32_t> generator_columns(const Subspace2& h) {
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(h.n()), 0);
  for (int r = 0; r < h.rank(); ++r)
    for (int i = 0; i < h.n(); ++i)
      if (h.basis()[static_cast<std::size_t>(r)] >> i & 1) cols[static_cast<std::size_t>(i)] |= 1u << r;
  return cols;
}

/// Canonical key for H up to permutation of coordinates: the least sorted
/// column multiset over all changes of basis. Rank is capped at 4.
inline std::vector<std::uint32_t> permutation_canonical_key(const Subspace2& h) {
  int r = h.rank();
  if (r > 4) throw std::domain_error("permutation canonical form supports rank <= 4");
  auto cols = generator_columns(h);
  if (r == 0) return cols;
  std::vector<std::uint32_t> best, cur(cols.size());
  for (const auto& a : detail::gl2_group(r)) {
    for (std::size_t i = 0; i < cols.size(); ++i) cur[i] = detail::apply_gl(a, cols[i]);
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

/// Representative of the permutation class of H built from its canonical key.
inline Subspace2 permutation_canonical(const Subspace2& h) {
  auto key = permutation_canonical_key(h);
  std::vector<Vec2> rows(static_cast<std::size_t>(h.rank()), 0);
  for (std::size_t i = 0; i < key.size(); ++i)
    for (int r = 0; r < h.rank(); ++r)
      if (key[i] >> r & 1) rows[static_cast<std::size_t>(r)] |= unit_vector(static_cast<int>(i));
  return Subspace2(h.n(), rows);
}

inline bool permutation_equivalent(const Subspace2& a, const Subspace2& b) {
  return a.n() == b.n() && a.rank() == b.rank() &&
         permutation_canonical_key(a) == permutation_canonical_key(b);
}

/// A coordinate permutation perm with perm[i] = image of coordinate i carrying a onto b, if any.
inline std::vector<int> find_coordinate_permutation(const Subspace2& a, const Subspace2& b) {
  if (!permutation_equivalent(a, b)) return {};
  int r = a.rank();
  auto ca = generator_columns(a), cb = generator_columns(b);
  for (const auto& m : detail::gl2_group(std::max(r, 1))) {
    if (r == 0) break;
    std::vector<std::uint32_t> ta(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) ta[i] = detail::apply_gl(m, ca[i]);
    auto sa = ta, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) continue;
    std::vector<int> perm(ca.size(), -1);
    std::vector<char> used(cb.size(), 0);
    for (std::size_t i = 0; i < ta.size(); ++i)
      for (std::size_t j = 0; j < cb.size(); ++j)
        if (!used[j] && cb[j] == ta[i]) {
          used[j] = 1;
          perm[i] = static_cast<int>(j);
          break;
        }
    return perm;
  }
  std::vector<int> id(static_cast<std::size_t>(a.n()));
  for (int i = 0; i < a.n(); ++i) id[static_cast<std::size_t>(i)] = i;
  return id;
}

/// Image of H under the coordinate permutation i -> perm[i].
inline Subspace2 permute_coordinates(const Subspace2& h, const std::vector<int>& perm) {
  std::vector<Vec2> rows;
  for (Vec2 b : h.basis()) {
    Vec2 v = 0;
    for (int i = 0; i < h.n(); ++i)
      if (b >> i & 1) v |= unit_vector(perm[static_cast<std::size_t>(i)]);
    rows.push_back(v);
  }
  return Subspace2(h.n(), rows);
}

}  // namespace nrz
