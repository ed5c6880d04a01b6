#pragma once

/** @file
 * Brute-force ground truth at small sizes. Deliberately self-contained: nothing
 * here includes another nrz header, so oracle values never share code with the
 * formulas they check.
 */

#include <algorithm>
#include <bit>
#include <bitset>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nrz::oracle {

inline constexpr int kMaxOddOrderN = 9;
inline constexpr int kMaxSignedN = 8;
inline constexpr int kMaxSubspaceN = 8;
inline constexpr int kMaxPartitionN = 60;

class CapError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline void require_cap(const char* what, int n, int lo, int cap) {
  if (n < lo || n > cap)
    throw CapError(std::string(what) + ": n=" + std::to_string(n) + " outside [" + std::to_string(lo) + ", " +
                   std::to_string(cap) + "]");
}

/// Cycle type written as the descending list of all cycle lengths, fixed points included.
using Shape = std::vector<int>;

struct OddOrderCensus {
  int n = 0;
  std::uint64_t total = 0;
  std::map<Shape, std::uint64_t> by_shape;
};

namespace detail {

inline Shape shape_of(const std::vector<int>& perm) {
  const std::size_t n = perm.size();
  std::vector<char> seen(n, 0);
  Shape s;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    s.push_back(len);
  }
  std::sort(s.rbegin(), s.rend());
  return s;
}

inline std::uint64_t fact(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// Split [0, n) among workers by the image of the first point and merge.
template <class Partial, class Work, class Merge>
Partial chunked(int n, int jobs, Work work, Merge merge) {
  jobs = std::max(1, std::min(jobs, n));
  std::vector<Partial> parts(static_cast<std::size_t>(jobs));
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (int first = w; first < n; first += jobs) work(first, parts[static_cast<std::size_t>(w)]);
    });
  for (auto& t : pool) t.join();
  Partial out{};
  for (auto& p : parts) merge(out, p);
  return out;
}

}  // namespace detail

/// Full iteration over S_n.
inline OddOrderCensus enum_odd_order(int n, int jobs = 1) {
  require_cap("enum_odd_order", n, 0, kMaxOddOrderN);
  OddOrderCensus c;
  c.n = n;
  if (n == 0) {
    c.total = 1;
    c.by_shape[{}] = 1;
    return c;
  }
  auto work = [n](int first, OddOrderCensus& acc) {
    // permutations with perm[0] == first, remaining values in lexicographic order
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
      if (v != first) rest.push_back(v);
    std::vector<int> perm(static_cast<std::size_t>(n));
    do {
      perm[0] = first;
      std::copy(rest.begin(), rest.end(), perm.begin() + 1);
      Shape s = detail::shape_of(perm);
      if (std::all_of(s.begin(), s.end(), [](int k) { return k % 2 == 1; })) {
        ++acc.total;
        ++acc.by_shape[s];
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  };
  auto merge = [](OddOrderCensus& out, const OddOrderCensus& p) {
    out.total += p.total;
    for (const auto& [s, k] : p.by_shape) out.by_shape[s] += k;
  };
  OddOrderCensus r = detail::chunked<OddOrderCensus>(n, jobs, work, merge);
  r.n = n;
  return r;
}

/// Same census from odd partitions and class sizes n! / prod(k^{m_k} m_k!).
inline OddOrderCensus enum_odd_order_by_classes(int n) {
  require_cap("enum_odd_order_by_classes", n, 0, kMaxOddOrderN);
  OddOrderCensus c;
  c.n = n;
  Shape cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      std::uint64_t denom = 1;
      std::map<int, int> mult;
      for (int k : cur) ++mult[k];
      for (auto [k, m] : mult) {
        for (int i = 0; i < m; ++i) denom *= static_cast<std::uint64_t>(k);
        denom *= detail::fact(m);
      }
      std::uint64_t size = detail::fact(n) / denom;
      c.by_shape[cur] = size;
      c.total += size;
      return;
    }
    for (int k = std::min(left, maxpart); k >= 1; --k) {
      if (k % 2 == 0) continue;
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return c;
}

/// Order of a signed permutation by direct iteration of (point, sign) states.
inline std::uint64_t signed_order(const std::vector<int>& perm, const std::vector<int>& sign) {
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    std::size_t p = i;
    int s = 1;
    std::uint64_t t = 0;
    do {
      s *= sign[p];
      p = static_cast<std::size_t>(perm[p]);
      ++t;
    } while (p != i || s != 1);
    ord = std::lcm(ord, t);
  }
  return ord;
}

/// Number of odd-order elements of O(n, Z), every signed permutation visited.
inline std::uint64_t enum_signed_odd_order(int n, int jobs = 1) {
  require_cap("enum_signed_odd_order", n, 1, kMaxSignedN);
  auto work = [n](int first, std::uint64_t& acc) {
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
      if (v != first) rest.push_back(v);
    std::vector<int> perm(static_cast<std::size_t>(n)), sign(static_cast<std::size_t>(n));
    do {
      perm[0] = first;
      std::copy(rest.begin(), rest.end(), perm.begin() + 1);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (int i = 0; i < n; ++i) sign[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? -1 : 1;
        if (signed_order(perm, sign) % 2 == 1) ++acc;
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  };
  auto merge = [](std::uint64_t& out, const std::uint64_t& p) { out += p; };
  return detail::chunked<std::uint64_t>(n, jobs, work, merge);
}

/// Visit every signed permutation of size n as (image, sign) with 0-based images.
inline void for_each_signed_perm(int n, const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
  require_cap("for_each_signed_perm", n, 1, kMaxSignedN);
  std::vector<int> perm(static_cast<std::size_t>(n)), sign(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      for (int i = 0; i < n; ++i) sign[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? -1 : 1;
      fn(perm, sign);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

// ---------------------------------------------------------------------------
// Subspaces of F_2^n, stored by their full element sets

struct OracleSubspace {
  int n = 0;
  int dim = 0;
  std::bitset<256> elements;  // bit v set when vector v lies in the subspace
  std::vector<std::uint32_t> basis;

  bool all_even() const {
    for (std::uint32_t v = 0; v < (1u << n); ++v)
      if (elements[v] && std::popcount(v) % 2) return false;
    return true;
  }
};

/// Every subspace, one per reduced row echelon basis: choose pivot columns,
/// then every filling of the non-pivot columns to the right of each pivot.
inline std::vector<OracleSubspace> enum_subspaces(int n) {
  require_cap("enum_subspaces", n, 0, kMaxSubspaceN);
  std::vector<OracleSubspace> out;
  for (std::uint32_t pivots = 0; pivots < (1u << n); ++pivots) {
    std::vector<int> piv;
    for (int c = 0; c < n; ++c)
      if ((pivots >> c) & 1u) piv.push_back(c);
    // free slots: (row, column) with column > pivot of row and column not a pivot
    std::vector<std::pair<std::size_t, int>> slots;
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (!((pivots >> c) & 1u)) slots.emplace_back(r, c);
    for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << slots.size()); ++fill) {
      OracleSubspace h;
      h.n = n;
      h.dim = static_cast<int>(piv.size());
      for (int c : piv) h.basis.push_back(1u << c);
      for (std::size_t i = 0; i < slots.size(); ++i)
        if ((fill >> i) & 1u) h.basis[slots[i].first] |= 1u << slots[i].second;
      for (std::uint32_t combo = 0; combo < (1u << h.dim); ++combo) {
        std::uint32_t v = 0;
        for (int r = 0; r < h.dim; ++r)
          if ((combo >> r) & 1u) v ^= h.basis[static_cast<std::size_t>(r)];
        h.elements.set(v);
      }
      out.push_back(std::move(h));
    }
  }
  return out;
}

/// Subspace counts indexed by dimension; `even_only` keeps those inside the even-weight hyperplane.
inline std::vector<std::uint64_t> subspace_counts(int n, bool even_only = false) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& h : enum_subspaces(n))
    if (!even_only || h.all_even()) ++c[static_cast<std::size_t>(h.dim)];
  return c;
}

inline std::vector<OracleSubspace> enum_even_subspaces(int n, int k) {
  std::vector<OracleSubspace> out;
  for (auto& h : enum_subspaces(n))
    if (h.dim == k && h.all_even()) out.push_back(std::move(h));
  return out;
}

// ---------------------------------------------------------------------------
// Partitions

using PartPredicate = std::function<bool(int)>;

/// All partitions of N (descending parts) whose parts all satisfy `allowed`.
inline std::vector<std::vector<int>> enum_partitions(int N, const PartPredicate& allowed) {
  require_cap("enum_partitions", N, 0, kMaxPartitionN);
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(left, maxpart); k >= 1; --k) {
      if (!allowed(k)) continue;
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  rec(N, N);
  return out;
}

inline bool odd_part(int k) { return k % 2 == 1; }
inline bool odd_part_ge3(int k) { return k % 2 == 1 && k >= 3; }

// ---------------------------------------------------------------------------
// Point defect by trigonometry: (1+z)/(1-z) = i cot(pi j/m), so each term is
// -cot(pi k a/m) cot(pi k b/m).

inline long double numeric_defect(long a, long b, int m) {
  if (m < 2) throw std::domain_error("numeric_defect needs m >= 2");
  const long double pi = 3.14159265358979323846264338327950288L;
  long double s = 0;
  for (long k = 1; k < m; ++k) {
    long double ta = pi * static_cast<long double>(((k * a) % m + m) % m) / m;
    long double tb = pi * static_cast<long double>(((k * b) % m + m) % m) / m;
    s -= (std::cos(ta) / std::sin(ta)) * (std::cos(tb) / std::sin(tb));
  }
  return s;
}

}  // namespace nrz::oracle
