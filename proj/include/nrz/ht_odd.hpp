#pragma once

/** @file
 * Odd-order cycle types: stabilizer-set obstructions, the standard-linear
 * orbit calculus, and a bounded search for realizing trees.
 *
 * A tree node is an orbit of d copies of CP^2. The stabilizer of one copy has
 * order s = m/d and acts linearly with weights (a, b) mod s, so its coordinate
 * points carry tangent weights (a, b), (-a, b-a), (-b, a-b) and its coordinate
 * lines rotate with weights a, b, b-a.
 */

#include "nrz/bigint.hpp"
#include "nrz/signed_perm.hpp"
#include "nrz/verdict.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace nrz {

namespace rules {
inline constexpr const char* kMu = "ht.mu";
inline constexpr const char* kPrimeCycles = "ht.prime_cycles";
inline constexpr const char* kTwoMinPrimes = "ht.two_min_primes";
inline constexpr const char* k357 = "ht.357";
inline constexpr const char* kTwoLengths = "ht.two_lengths";
inline constexpr const char* kSlSearch = "ht.sl_search";
}  // namespace rules

inline long lmod(long x, long m) { return m == 0 ? x : ((x % m) + m) % m; }

/// Additive order of x in Z/m.
inline long additive_order(long x, long m) { return m / std::gcd(lmod(x, m), m); }

inline bool is_odd_prime(long x) {
  if (x < 3 || x % 2 == 0) return false;
  for (long d = 3; d * d <= x; d += 2)
    if (x % d == 0) return false;
  return true;
}

/// lcm of the parts, i.e. the order of any permutation with this cycle type.
inline BigInt cycle_order(const CycleType& ct) {
  BigInt m = 1;
  for (int d : ct.parts) mpz_lcm_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(d));
  return m;
}

inline void require_odd(const CycleType& ct) {
  if (!ct.all_odd()) throw std::domain_error("cycle type has an even part: " + ct.to_string());
}

// ---------------------------------------------------------------------------
// Stabilizer sets and the necessary checks

struct StabilizerSet {
  BigInt m;
  std::vector<BigInt> orders;  // ascending, one per distinct cycle length d, value m/d

  json to_json() const {
    json o = json::array();
    for (const auto& x : orders) o.push_back(x.get_str());
    return {{"m", m.get_str()}, {"orders", o}};
  }
};

inline StabilizerSet stabilizer_set(const CycleType& ct, const BigInt& m) {
  if (m < 1 || mpz_even_p(m.get_mpz_t())) throw std::domain_error("stabilizer_set needs odd m");
  StabilizerSet st;
  st.m = m;
  std::set<int> lengths;
  for (int d : ct.full_parts()) lengths.insert(d);
  for (int d : lengths) {
    if (!mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(d)))
      throw std::domain_error("cycle length " + std::to_string(d) + " does not divide m");
    st.orders.push_back(m / d);
  }
  std::sort(st.orders.begin(), st.orders.end());
  return st;
}

inline StabilizerSet stabilizer_set(const CycleType& ct) { return stabilizer_set(ct, cycle_order(ct)); }

/// Members of orders \ {m} that divide no other member.
inline std::vector<BigInt> maximal_proper_orders(const StabilizerSet& st) {
  std::vector<BigInt> proper;
  for (const auto& x : st.orders)
    if (x != st.m) proper.push_back(x);
  std::vector<BigInt> out;
  for (const auto& x : proper) {
    bool maximal = true;
    for (const auto& y : proper)
      if (y != x && mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) maximal = false;
    if (maximal) out.push_back(x);
  }
  return out;
}

inline int mu(const CycleType& ct, const BigInt& m) {
  return static_cast<int>(maximal_proper_orders(stabilizer_set(ct, m)).size());
}

inline int mu(const CycleType& ct) { return mu(ct, cycle_order(ct)); }

struct CheckResult {
  std::string rule;
  bool applies = true;
  bool pass = true;
  json data = json::object();

  Witness witness() const { return {rule, data}; }
};

inline int ht_bound(int c1) { return std::max(2, 3 * c1); }

inline CheckResult check_mu(const CycleType& ct) {
  require_odd(ct);
  auto st = stabilizer_set(ct);
  auto maxi = maximal_proper_orders(st);
  const int c1 = ct.count(1);
  CheckResult r{rules::kMu};
  json mo = json::array();
  for (const auto& x : maxi) mo.push_back(x.get_str());
  r.data = {{"mu", maxi.size()}, {"c1", c1}, {"bound", ht_bound(c1)}, {"maximal_orders", mo},
            {"stabilizers", st.to_json()}};
  r.pass = static_cast<int>(maxi.size()) <= ht_bound(c1);
  return r;
}

inline constexpr double kNaturalLogBase = 0.0;  // sentinel: use ln

/// (log n)^2 in the given base; base 0 means natural log.
inline double prime_threshold(int n, double log_base = kNaturalLogBase) {
  if (n < 2) return 0.0;
  double l = std::log(static_cast<double>(n));
  if (log_base != kNaturalLogBase) l /= std::log(log_base);
  return l * l;
}

/// Odd primes p <= (log n)^2 that occur as cycle lengths.
inline std::vector<int> counted_primes(const CycleType& ct, double log_base = kNaturalLogBase) {
  const double thr = prime_threshold(ct.n, log_base);
  std::set<int> ps;
  for (int d : ct.parts)
    if (is_odd_prime(d) && d <= thr) ps.insert(d);
  return {ps.begin(), ps.end()};
}

inline int prime_cycle_count(const CycleType& ct, double log_base = kNaturalLogBase) {
  return static_cast<int>(counted_primes(ct, log_base).size());
}

inline CheckResult check_prime_cycles(const CycleType& ct, double log_base = kNaturalLogBase) {
  require_odd(ct);
  auto ps = counted_primes(ct, log_base);
  const int c1 = ct.count(1);
  CheckResult r{rules::kPrimeCycles};
  r.data = {{"P_n", ps.size()}, {"primes", ps}, {"threshold", prime_threshold(ct.n, log_base)},
            {"c1", c1}, {"bound", ht_bound(c1)}};
  r.pass = static_cast<int>(ps.size()) <= ht_bound(c1);
  return r;
}

/// Distinct cycle lengths > 1 not divisible by any other such length.
inline std::vector<int> minimal_lengths(const CycleType& ct) {
  std::set<int> vals;
  for (int d : ct.parts)
    if (d > 1) vals.insert(d);
  std::vector<int> out;
  for (int x : vals) {
    bool minimal = true;
    for (int y : vals)
      if (y != x && x % y == 0) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

/// Without fixed points, two divisibility-minimal primes p, q force pq | every other length.
inline CheckResult check_two_min_primes(const CycleType& ct) {
  require_odd(ct);
  CheckResult r{rules::kTwoMinPrimes};
  std::vector<int> primes;
  for (int x : minimal_lengths(ct))
    if (is_odd_prime(x)) primes.push_back(x);
  r.applies = ct.count(1) == 0 && primes.size() >= 2;
  if (!r.applies) return r;
  for (std::size_t i = 0; i < primes.size() && r.pass; ++i)
    for (std::size_t j = i + 1; j < primes.size() && r.pass; ++j) {
      const long pq = static_cast<long>(primes[i]) * primes[j];
      for (int d : ct.parts) {
        if (d == primes[i] || d == primes[j] || d % pq == 0) continue;
        r.pass = false;
        r.data = {{"p", primes[i]}, {"q", primes[j]}, {"length", d}};
        break;
      }
    }
  if (r.pass) r.data = {{"minimal_primes", primes}};
  return r;
}

/// With exactly one fixed point, lengths 3, 5 and 7 cannot all occur.
inline CheckResult check_357(const CycleType& ct) {
  require_odd(ct);
  CheckResult r{rules::k357};
  r.applies = ct.count(1) == 1;
  if (!r.applies) return r;
  r.pass = !(ct.count(3) > 0 && ct.count(5) > 0 && ct.count(7) > 0);
  r.data = {{"c1", 1}, {"lengths", {3, 5, 7}}};
  return r;
}

inline std::vector<CheckResult> necessary_checks(const CycleType& ct, double log_base = kNaturalLogBase) {
  return {check_mu(ct), check_prime_cycles(ct, log_base), check_two_min_primes(ct), check_357(ct)};
}

inline bool passes_necessary_checks(const CycleType& ct, double log_base = kNaturalLogBase) {
  for (const auto& c : necessary_checks(ct, log_base))
    if (c.applies && !c.pass) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Orbit calculus

/// Orbit lengths of a linear Z/m action on CP^2 with weights (a, b).
inline std::set<long> orbit_sizes_cp2(long a, long b, long m) {
  if (m < 1) throw std::domain_error("orbit_sizes_cp2 needs m >= 1");
  return {1, m, additive_order(b, m), additive_order(a, m), additive_order(a - b, m)};
}

/// Nontrivial initial orbit lengths of the rotation of S^4 with weights (a, b).
inline std::set<long> s4_initial_orbits(long a, long b, long m) {
  const long oa = additive_order(a, m), ob = additive_order(b, m);
  if (std::lcm(oa, ob) != m) throw std::domain_error("s4_initial_orbits: action is not faithful");
  return {oa, ob, m};
}

enum class SiteKind { Root, Pole, Point, Line, Circle, Generic };

inline const char* site_name(SiteKind k) {
  switch (k) {
    case SiteKind::Root: return "root";
    case SiteKind::Pole: return "pole";
    case SiteKind::Point: return "point";
    case SiteKind::Line: return "line";
    case SiteKind::Circle: return "circle";
    default: return "generic";
  }
}

struct SLNode {
  int parent = -1;  // -1: glued to the sphere, or the root copy itself
  long d = 1;       // orbit length
  long s = 1;       // stabilizer order, m / d
  long a = 0, b = 0;
  SiteKind via = SiteKind::Root;
  int site = 0;
  int depth = 0;
};

/// An admissible tree in the simplified calculus: an S^4 root or a fixed root
/// copy, with orbits of copies glued along orbits of the parent.
struct SLTree {
  enum class RootKind { Sphere, Copy };
  long m = 1;
  RootKind root = RootKind::Copy;
  long a = 0, b = 0;  // sphere weights; a Copy root keeps its weights in nodes[0]
  std::vector<SLNode> nodes;

  std::vector<int> orbit_lengths() const {
    std::vector<int> out;
    for (const auto& v : nodes) out.push_back(static_cast<int>(v.d));
    return out;
  }

  bool faithful() const {
    long l = 1;
    for (const auto& v : nodes) l = std::lcm(l, v.d);
    return l == m;
  }

  void validate() const;

  json to_json() const {
    json ns = json::array();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& v = nodes[i];
      ns.push_back({{"id", i},
                    {"parent", v.parent},
                    {"orbit", v.d},
                    {"stabilizer", v.s},
                    {"weights", {v.a, v.b}},
                    {"via", site_name(v.via)},
                    {"site", v.site}});
    }
    json r = {{"kind", root == RootKind::Sphere ? "sphere" : "copy"}};
    if (root == RootKind::Sphere) r["weights"] = {a, b};
    return {{"m", m}, {"root", r}, {"nodes", ns}};
  }
};

inline CycleType tree_to_cycle_type(const SLTree& t) {
  auto parts = t.orbit_lengths();
  return CycleType(parts);
}

namespace detail {

struct Site {
  SiteKind kind;
  int index;
  long d, s, a, b;
  bool limited;
};

inline std::array<std::pair<long, long>, 3> tangent_weights(long a, long b) {
  return {{{a, b}, {-a, b - a}, {-b, a - b}}};
}

/// All sites on a node, ignoring whether limited ones are already taken.
inline std::vector<Site> node_sites(const SLNode& v) {
  std::vector<Site> out;
  const long s = v.s;
  auto tw = tangent_weights(v.a, v.b);
  for (int i = 0; i < 3; ++i)
    out.push_back({SiteKind::Point, i, v.d, s, lmod(-tw[static_cast<std::size_t>(i)].first, s),
                   lmod(tw[static_cast<std::size_t>(i)].second, s), true});
  const std::array<std::pair<long, long>, 3> lines{{{v.a, v.b}, {v.b, v.a}, {v.b - v.a, -v.a}}};
  for (int i = 0; i < 3; ++i) {
    auto [w, normal] = lines[static_cast<std::size_t>(i)];
    long k = std::gcd(lmod(w, s), s);
    if (k == 0) k = s;
    out.push_back({SiteKind::Line, i, v.d * (s / k), k, 0, lmod(normal, k), false});
  }
  out.push_back({SiteKind::Generic, 0, v.d * s, 1, 0, 0, false});
  return out;
}

inline std::vector<Site> sphere_sites(long a, long b, long m) {
  std::vector<Site> out;
  out.push_back({SiteKind::Pole, 0, 1, m, lmod(-a, m), lmod(b, m), true});
  out.push_back({SiteKind::Pole, 1, 1, m, lmod(a, m), lmod(b, m), true});
  long ka = std::gcd(lmod(a, m), m), kb = std::gcd(lmod(b, m), m);
  if (ka == 0) ka = m;
  if (kb == 0) kb = m;
  out.push_back({SiteKind::Circle, 0, m / ka, ka, 0, lmod(b, ka), false});
  out.push_back({SiteKind::Circle, 1, m / kb, kb, 0, lmod(a, kb), false});
  out.push_back({SiteKind::Generic, 0, m, 1, 0, 0, false});
  return out;
}

// Point 0 of a glued copy is its gluing point; the root copy has all three free.
struct SlotState {
  std::vector<std::array<bool, 3>> points;
  std::array<bool, 2> poles{false, false};

  void add(const SLNode& v) { points.push_back({v.via != SiteKind::Root, false, false}); }
};

}  // namespace detail

inline void SLTree::validate() const {
  if (m < 1 || m % 2 == 0) throw std::logic_error("SLTree: m must be odd and positive");
  if (root == RootKind::Sphere && std::lcm(additive_order(a, m), additive_order(b, m)) != m)
    throw std::logic_error("SLTree: sphere action is not faithful");
  std::array<bool, 2> poles{false, false};
  std::vector<std::array<bool, 3>> points;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& v = nodes[i];
    if (v.d * v.s != m) throw std::logic_error("SLTree: orbit length times stabilizer differs from m");
    if (std::gcd(std::gcd(lmod(v.a, v.s), lmod(v.b, v.s)), v.s) != 1 && v.s != 1)
      throw std::logic_error("SLTree: stabilizer does not act effectively on a copy");
    if (v.via == SiteKind::Root) {
      if (root != RootKind::Copy || i != 0 || v.d != 1) throw std::logic_error("SLTree: misplaced root copy");
      points.push_back({false, false, false});
      continue;
    }
    points.push_back({true, false, false});
    std::vector<detail::Site> sites;
    if (v.parent < 0) {
      if (root != RootKind::Sphere) throw std::logic_error("SLTree: node glued to a missing sphere");
      sites = detail::sphere_sites(a, b, m);
    } else {
      if (static_cast<std::size_t>(v.parent) >= i) throw std::logic_error("SLTree: parent after child");
      const auto& p = nodes[static_cast<std::size_t>(v.parent)];
      if (v.depth != p.depth + 1) throw std::logic_error("SLTree: depth mismatch");
      if (v.d % p.d != 0) throw std::logic_error("SLTree: orbit length is not a multiple of the parent's");
      sites = detail::node_sites(p);
    }
    auto it = std::find_if(sites.begin(), sites.end(),
                           [&](const detail::Site& s) { return s.kind == v.via && s.index == v.site; });
    if (it == sites.end()) throw std::logic_error("SLTree: unknown attachment site");
    if (it->d != v.d || it->s != v.s || it->a != lmod(v.a, v.s) || it->b != lmod(v.b, v.s))
      throw std::logic_error("SLTree: node data disagrees with its attachment site");
    if (v.via == SiteKind::Pole) {
      if (poles[static_cast<std::size_t>(v.site)]) throw std::logic_error("SLTree: pole used twice");
      poles[static_cast<std::size_t>(v.site)] = true;
    }
    if (v.via == SiteKind::Point) {
      auto& used = points[static_cast<std::size_t>(v.parent)][static_cast<std::size_t>(v.site)];
      if (used) throw std::logic_error("SLTree: coordinate point used twice");
      used = true;
    }
  }
  if (root == RootKind::Copy && (nodes.empty() || nodes[0].via != SiteKind::Root))
    throw std::logic_error("SLTree: copy root missing");
  if (!faithful()) throw std::logic_error("SLTree: lcm of orbit lengths differs from m");
}

// ---------------------------------------------------------------------------
// Construction and search

/// Builder that tracks free limited sites while nodes are appended.
class SLBuilder {
 public:
  static SLBuilder sphere(long a, long b, long m) {
    SLBuilder bl;
    bl.t_.m = m;
    bl.t_.root = SLTree::RootKind::Sphere;
    bl.t_.a = lmod(a, m);
    bl.t_.b = lmod(b, m);
    return bl;
  }
  static SLBuilder copy(long a, long b, long m) {
    SLBuilder bl;
    bl.t_.m = m;
    bl.t_.root = SLTree::RootKind::Copy;
    SLNode r;
    r.s = m;
    r.a = lmod(a, m);
    r.b = lmod(b, m);
    bl.t_.nodes.push_back(r);
    bl.slots_.add(r);
    return bl;
  }

  const SLTree& tree() const { return t_; }

  /// Sites available on target (-1 is the sphere).
  std::vector<detail::Site> free_sites(int target) const {
    std::vector<detail::Site> all, out;
    if (target < 0) {
      if (t_.root != SLTree::RootKind::Sphere) return {};
      all = detail::sphere_sites(t_.a, t_.b, t_.m);
    } else {
      all = detail::node_sites(t_.nodes[static_cast<std::size_t>(target)]);
    }
    for (const auto& s : all) {
      if (s.kind == SiteKind::Pole && slots_.poles[static_cast<std::size_t>(s.index)]) continue;
      if (s.kind == SiteKind::Point &&
          slots_.points[static_cast<std::size_t>(target)][static_cast<std::size_t>(s.index)])
        continue;
      out.push_back(s);
    }
    return out;
  }

  int depth_of(int target) const {
    return target < 0 ? 0 : t_.nodes[static_cast<std::size_t>(target)].depth + 1;
  }

  int attach(int target, const detail::Site& s) {
    SLNode v;
    v.parent = target;
    v.d = s.d;
    v.s = s.s;
    v.a = s.a;
    v.b = s.b;
    v.via = s.kind;
    v.site = s.index;
    v.depth = depth_of(target);
    if (s.kind == SiteKind::Pole) slots_.poles[static_cast<std::size_t>(s.index)] = true;
    if (s.kind == SiteKind::Point)
      slots_.points[static_cast<std::size_t>(target)][static_cast<std::size_t>(s.index)] = true;
    t_.nodes.push_back(v);
    slots_.add(v);
    return static_cast<int>(t_.nodes.size()) - 1;
  }

  void detach_last() {
    const SLNode v = t_.nodes.back();
    t_.nodes.pop_back();
    slots_.points.pop_back();
    if (v.via == SiteKind::Pole) slots_.poles[static_cast<std::size_t>(v.site)] = false;
    if (v.via == SiteKind::Point)
      slots_.points[static_cast<std::size_t>(v.parent)][static_cast<std::size_t>(v.site)] = false;
  }

  /// Attach a fixed copy at the shallowest free fixed site.
  bool attach_fixed_copy(int max_depth) {
    std::vector<int> targets;
    if (t_.root == SLTree::RootKind::Sphere) targets.push_back(-1);
    for (std::size_t i = 0; i < t_.nodes.size(); ++i)
      if (t_.nodes[i].d == 1) targets.push_back(static_cast<int>(i));
    std::stable_sort(targets.begin(), targets.end(),
                     [this](int x, int y) { return depth_of(x) < depth_of(y); });
    for (int tg : targets) {
      if (depth_of(tg) > max_depth) continue;
      for (const auto& s : free_sites(tg))
        if (s.d == 1) {
          attach(tg, s);
          return true;
        }
    }
    return false;
  }

 private:
  SLTree t_;
  detail::SlotState slots_;
};

/// At most two distinct lengths > 1: an S^4 rotation whose two circles carry
/// the long orbits, with fixed copies chained from the poles.
inline std::optional<SLTree> sufficient_two_lengths(const CycleType& ct) {
  require_odd(ct);
  std::vector<int> vals;
  for (int d : ct.parts)
    if (d > 1 && std::find(vals.begin(), vals.end(), d) == vals.end()) vals.push_back(d);
  if (vals.size() > 2) return std::nullopt;
  const int c1 = ct.count(1);
  constexpr int kUnbounded = 1 << 30;
  SLBuilder bl = SLBuilder::sphere(0, 0, 1);
  if (vals.empty()) {
    if (c1 > 0) {
      bl = SLBuilder::copy(0, 0, 1);
      for (int i = 1; i < c1; ++i)
        if (!bl.attach_fixed_copy(kUnbounded)) throw std::logic_error("fixed chain failed");
    }
  } else {
    const long k = vals[0], l = vals.size() > 1 ? vals[1] : 1;
    const long m = std::lcm(k, l);
    bl = SLBuilder::sphere(m / k, lmod(m / l, m), m);
    for (int i = 0; i < c1; ++i)
      if (!bl.attach_fixed_copy(kUnbounded)) throw std::logic_error("fixed chain failed");
    for (int c = 0; c < 2; ++c) {
      const long len = c == 0 ? k : l;
      if (len == 1) continue;
      auto sites = bl.free_sites(-1);
      auto it = std::find_if(sites.begin(), sites.end(),
                             [c](const detail::Site& s) { return s.kind == SiteKind::Circle && s.index == c; });
      for (int i = 0; i < ct.count(static_cast<int>(len)); ++i) bl.attach(-1, *it);
    }
  }
  SLTree t = bl.tree();
  t.validate();
  if (!(tree_to_cycle_type(t) == CycleType(ct.full_parts())))
    throw std::logic_error("sufficient_two_lengths: construction misses the cycle type");
  return t;
}

struct SearchBounds {
  int max_depth = 6;
  long max_m = 100000;
  std::uint64_t budget = 200000;  // DFS expansions over all roots
};

namespace detail {

inline std::vector<long> divisors(long m) {
  std::vector<long> out;
  for (long d = 1; d * d <= m; ++d)
    if (m % d == 0) {
      out.push_back(d);
      if (d * d != m) out.push_back(m / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

class SLSearch {
 public:
  SLSearch(std::map<long, int> need, const SearchBounds& b, std::uint64_t& budget)
      : need_(std::move(need)), bounds_(b), budget_(budget) {}

  bool run(SLBuilder& bl) { return dfs(bl); }

 private:
  bool dfs(SLBuilder& bl) {
    if (budget_ == 0) return false;
    --budget_;
    auto it = std::find_if(need_.begin(), need_.end(), [](const auto& kv) { return kv.second > 0; });
    if (it == need_.end()) return true;
    const long v = it->first;
    const auto& t = bl.tree();
    std::vector<std::pair<int, Site>> options;
    std::set<std::tuple<bool, long, long, long>> seen;
    std::vector<int> targets;
    if (t.root == SLTree::RootKind::Sphere) targets.push_back(-1);
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
      if (v % t.nodes[i].d == 0) targets.push_back(static_cast<int>(i));
    std::stable_sort(targets.begin(), targets.end(),
                     [&bl](int x, int y) { return bl.depth_of(x) < bl.depth_of(y); });
    for (int tg : targets) {
      if (bl.depth_of(tg) > bounds_.max_depth) continue;
      for (const auto& s : bl.free_sites(tg)) {
        if (s.d != v) continue;
        if (!seen.insert({s.limited, s.s, s.a, s.b}).second) continue;
        options.emplace_back(tg, s);
      }
    }
    std::stable_sort(options.begin(), options.end(),
                     [](const auto& x, const auto& y) { return !x.second.limited && y.second.limited; });
    for (const auto& [tg, s] : options) {
      bl.attach(tg, s);
      --it->second;
      if (dfs(bl)) return true;
      ++it->second;
      bl.detach_last();
      if (budget_ == 0) return false;
    }
    return false;
  }

  std::map<long, int> need_;
  SearchBounds bounds_;
  std::uint64_t& budget_;
};

/// Coarse invariants of a weight pair, used to skip near-duplicate roots.
inline std::array<long, 4> root_key(long a, long b, long m) {
  std::array<long, 4> k{std::gcd(lmod(a, m), m), std::gcd(lmod(b, m), m), std::gcd(lmod(a - b, m), m),
                        std::gcd(lmod(a + b, m), m)};
  if (k[0] > k[1]) std::swap(k[0], k[1]);
  if (k[2] > k[3]) std::swap(k[2], k[3]);
  return k;
}

}  // namespace detail

/// Depth-first search for a tree with the given cycle type. Failure only means
/// the bounds ran out.
inline std::optional<SLTree> sl_search(const CycleType& ct, const SearchBounds& bounds = {}) {
  require_odd(ct);
  const BigInt mb = cycle_order(ct);
  if (mb > bounds.max_m) return std::nullopt;
  const long m = mb.get_si();
  std::map<long, int> need;
  for (int d : ct.full_parts()) ++need[d];
  const int c1 = ct.count(1);
  std::uint64_t budget = bounds.budget;

  std::set<std::array<long, 4>> tried_sphere, tried_copy;
  for (long a : detail::divisors(m)) {
    for (long b = 0; b < m; ++b) {
      if (std::gcd(std::gcd(lmod(a, m), b), m) != 1 && m != 1) continue;
      if (budget == 0) return std::nullopt;
      auto key = detail::root_key(a, b, m);
      if (tried_sphere.insert(key).second) {
        SLBuilder bl = SLBuilder::sphere(a, b, m);
        detail::SLSearch s(need, bounds, budget);
        if (s.run(bl)) {
          SLTree t = bl.tree();
          t.validate();
          return t;
        }
      }
      if (c1 > 0 && tried_copy.insert(key).second) {
        SLBuilder bl = SLBuilder::copy(a, b, m);
        auto rest = need;
        --rest[1];
        detail::SLSearch s(rest, bounds, budget);
        if (s.run(bl)) {
          SLTree t = bl.tree();
          t.validate();
          return t;
        }
      }
    }
  }
  return std::nullopt;
}

/// Random tree from bounded attachment sequences; nullopt when the emitted
/// orbit lengths are not faithful to m.
template <class URBG>
std::optional<SLTree> random_sltree(URBG& g, long max_m = 105, int max_nodes = 12, int max_depth = 6) {
  std::uniform_int_distribution<long> pick_m(0, (max_m - 1) / 2);
  const long m = 2 * pick_m(g) + 1;
  std::uniform_int_distribution<long> pick_w(0, m - 1);
  long a = 0, b = 0;
  const bool sphere = std::bernoulli_distribution(0.5)(g);
  for (int tries = 0; tries < 64; ++tries) {
    a = pick_w(g);
    b = pick_w(g);
    bool ok = sphere ? std::lcm(additive_order(a, m), additive_order(b, m)) == m
                     : (m == 1 || std::gcd(std::gcd(a, b), m) == 1);
    if (ok) break;
    if (tries == 63) return std::nullopt;
  }
  SLBuilder bl = sphere ? SLBuilder::sphere(a, b, m) : SLBuilder::copy(a, b, m);
  const int count = std::uniform_int_distribution<int>(0, max_nodes)(g);
  for (int i = 0; i < count; ++i) {
    const int ntargets = static_cast<int>(bl.tree().nodes.size()) + (sphere ? 1 : 0);
    int tg = std::uniform_int_distribution<int>(0, ntargets - 1)(g) - (sphere ? 1 : 0);
    if (bl.depth_of(tg) > max_depth) continue;
    auto sites = bl.free_sites(tg);
    if (sites.empty()) continue;
    bl.attach(tg, sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(g)]);
  }
  SLTree t = bl.tree();
  if (!t.faithful()) return std::nullopt;
  t.validate();
  return t;
}

// ---------------------------------------------------------------------------
// Verdict

inline json certificate_json(const SLTree& t, const char* construction) {
  return {{"construction", construction}, {"tree", t.to_json()},
          {"cycle_type", tree_to_cycle_type(t).to_string()}};
}

/// Realizability of the cyclic subgroup generated by a permutation with this
/// odd cycle type, acting on H_2 of the n-fold sum.
inline Verdict verdict_odd_element(const CycleType& ct, const SearchBounds& bounds = {},
                                   double log_base = kNaturalLogBase) {
  require_odd(ct);
  std::vector<Witness> failed;
  for (const auto& c : necessary_checks(ct, log_base))
    if (c.applies && !c.pass) failed.push_back(c.witness());
  auto two = sufficient_two_lengths(ct);
  if (!failed.empty()) {
    if (two) throw std::logic_error("verdict_odd_element: certificate contradicts a necessary check");
    return Verdict::not_realizable(failed);
  }
  if (two) return Verdict::realizable(certificate_json(*two, "two_lengths"), rules::kTwoLengths);
  if (auto t = sl_search(ct, bounds)) return Verdict::realizable(certificate_json(*t, "sl_search"), rules::kSlSearch);
  return Verdict::unknown("necessary checks pass and the bounded tree search found nothing");
}

}  // namespace nrz
