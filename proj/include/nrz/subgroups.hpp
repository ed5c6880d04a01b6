#pragma once

/** @file
 * Verdict rules for explicit finite subgroups of O(n,Z): 2-group generator
 * bounds, the abelian odd-n obstruction, symmetric subgroups, and a table of
 * known facts.
 */

#include "nrz/diagonal.hpp"
#include "nrz/ht_odd.hpp"
#include "nrz/signed_perm.hpp"
#include "nrz/subspace2.hpp"
#include "nrz/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrz {

namespace rules {
inline constexpr const char* kTwoGroupBound = "group.2group_generation_bound";
inline constexpr const char* kAbelianOddN = "group.abelian_odd_n";
inline constexpr const char* kSymmetricLarge = "group.symmetric_large_k";
inline constexpr const char* kSymmetricSmall = "group.symmetric_small_n";
inline constexpr const char* kSmallCyclic = "group.cyclic_n_le_3";
inline constexpr const char* kTrivial = "group.trivial";
}  // namespace rules

/// Closure of a generating set under composition; throws past the cap.
inline std::vector<SignedPermutation> closure(int n, const std::vector<SignedPermutation>& gens,
                                              std::size_t cap = std::size_t{1} << 16) {
  std::set<SignedPermutation> seen{SignedPermutation::identity(n)};
  std::deque<SignedPermutation> queue{SignedPermutation::identity(n)};
  while (!queue.empty()) {
    SignedPermutation x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      if (g.n() != n) throw std::invalid_argument("closure: generator dimension mismatch");
      SignedPermutation y = compose(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw std::length_error("closure exceeds the group size cap");
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

/// A finite subgroup of O(n,Z) given by its full element list.
class ExplicitGroup {
 public:
  static constexpr std::size_t kMaxOrder = std::size_t{1} << 16;

  /// Verifies that the list is a subgroup: it must equal the closure of a
  /// greedily chosen generating subset drawn from it.
  ExplicitGroup(int n, std::vector<SignedPermutation> elements) : n_(n) {
    if (n < 1) throw std::invalid_argument("ExplicitGroup needs n >= 1");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.size() > kMaxOrder) throw std::length_error("ExplicitGroup exceeds 2^16 elements");
    for (const auto& e : elements)
      if (e.n() != n) throw std::invalid_argument("ExplicitGroup: element dimension mismatch");
    if (!std::binary_search(elements.begin(), elements.end(), SignedPermutation::identity(n)))
      throw std::invalid_argument("ExplicitGroup: identity missing");
    std::set<SignedPermutation> all(elements.begin(), elements.end());
    std::set<SignedPermutation> generated{SignedPermutation::identity(n)};
    for (const auto& e : elements) {
      if (generated.count(e)) continue;
      gens_.push_back(e);
      std::vector<SignedPermutation> c;
      try {
        c = closure(n, gens_, elements.size());
      } catch (const std::length_error&) {
        throw std::invalid_argument("ExplicitGroup: element list is not closed");
      }
      for (const auto& x : c)
        if (!all.count(x)) throw std::invalid_argument("ExplicitGroup: element list is not closed");
      generated = std::set<SignedPermutation>(c.begin(), c.end());
    }
    elements_ = std::move(elements);
  }

  static ExplicitGroup from_generators(int n, const std::vector<SignedPermutation>& gens) {
    return ExplicitGroup(n, closure(n, gens, kMaxOrder));
  }

  int n() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<SignedPermutation>& elements() const { return elements_; }
  /// A generating set found while verifying closure; not necessarily minimal.
  const std::vector<SignedPermutation>& generators() const { return gens_; }

  bool contains(const SignedPermutation& x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (!(compose(gens_[i], gens_[j]) == compose(gens_[j], gens_[i]))) return false;
    return true;
  }

  std::vector<SignedPermutation> center() const {
    std::vector<SignedPermutation> out;
    for (const auto& x : elements_) {
      bool central = std::all_of(gens_.begin(), gens_.end(),
                                 [&](const SignedPermutation& g) { return compose(x, g) == compose(g, x); });
      if (central) out.push_back(x);
    }
    return out;
  }

  /// An element whose powers exhaust the group, if any.
  std::optional<SignedPermutation> cyclic_generator() const {
    for (const auto& e : elements_)
      if (nrz::order(e) == static_cast<unsigned long>(order())) return e;
    return std::nullopt;
  }

  bool is_2group() const { return order() > 0 && (order() & (order() - 1)) == 0; }

  bool is_diagonal() const {
    return std::all_of(elements_.begin(), elements_.end(), [](const auto& e) { return e.is_diagonal(); });
  }

  bool is_unsigned() const {
    return std::all_of(elements_.begin(), elements_.end(), [](const auto& e) {
      return std::all_of(e.sign().begin(), e.sign().end(), [](int s) { return s > 0; });
    });
  }

  /// Elements of 2-power order; a subgroup when the group is abelian.
  ExplicitGroup two_primary_part() const {
    if (!is_abelian()) throw std::domain_error("two_primary_part needs an abelian group");
    std::vector<SignedPermutation> out;
    for (const auto& e : elements_) {
      BigInt o = nrz::order(e);
      if ((o & (o - 1)) == 0) out.push_back(e);
    }
    return ExplicitGroup(n_, std::move(out));
  }

 private:
  int n_;
  std::vector<SignedPermutation> elements_;
  std::vector<SignedPermutation> gens_;
};

/// d(P) = log2 |P / Phi(P)|, where Phi(P) is generated by the squares.
inline int min_generators_2group(const ExplicitGroup& p) {
  if (!p.is_2group()) throw std::domain_error("min_generators_2group needs a 2-group");
  std::set<SignedPermutation> squares;
  for (const auto& x : p.elements()) squares.insert(compose(x, x));
  auto phi = closure(p.n(), {squares.begin(), squares.end()}, p.order());
  std::size_t index = p.order() / phi.size();
  int d = 0;
  while ((std::size_t{1} << d) < index) ++d;
  if ((std::size_t{1} << d) != index) throw std::logic_error("Frattini index is not a power of 2");
  return d;
}

/// Smallest generating set size by breadth-first search over generated subgroups.
inline int min_generators_brute_force(const ExplicitGroup& g) {
  const auto& el = g.elements();
  const std::size_t N = el.size();
  if (N > 256) throw std::domain_error("min_generators_brute_force is limited to 256 elements");
  std::map<SignedPermutation, std::size_t> idx;
  for (std::size_t i = 0; i < N; ++i) idx[el[i]] = i;
  std::vector<std::vector<std::size_t>> mul(N, std::vector<std::size_t>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) mul[i][j] = idx.at(compose(el[i], el[j]));
  const std::size_t id = idx.at(SignedPermutation::identity(g.n()));
  using Sub = std::vector<bool>;
  auto close = [&](Sub s, std::size_t x) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < N; ++i)
      if (s[i]) members.push_back(i);
    std::vector<std::size_t> gens = members;
    gens.push_back(x);
    std::deque<std::size_t> q(members.begin(), members.end());
    if (!s[x]) {
      s[x] = true;
      q.push_back(x);
    }
    while (!q.empty()) {
      std::size_t a = q.front();
      q.pop_front();
      for (std::size_t b : gens) {
        std::size_t c = mul[a][b];
        if (!s[c]) {
          s[c] = true;
          q.push_back(c);
          gens.push_back(c);
        }
      }
    }
    return s;
  };
  Sub start(N, false);
  start[id] = true;
  if (N == 1) return 0;
  std::set<Sub> level{start};
  for (int k = 1;; ++k) {
    std::set<Sub> next;
    for (const auto& s : level)
      for (std::size_t x = 0; x < N; ++x) {
        if (s[x]) continue;
        Sub t = close(s, x);
        if (std::all_of(t.begin(), t.end(), [](bool b) { return b; })) return k;
        next.insert(std::move(t));
      }
    level = std::move(next);
  }
}

inline int ceil_log2(long long n) {
  int c = 0;
  while ((1LL << c) < n) ++c;
  return c;
}

inline int two_group_generation_bound(int n) { return ceil_log2(n) + 5; }

inline CheckResult check_2group_generation_bound(int d, int n) {
  CheckResult r{rules::kTwoGroupBound};
  r.pass = d <= two_group_generation_bound(n);
  r.data = {{"d", d}, {"n", n}, {"bound", two_group_generation_bound(n)}};
  return r;
}

inline CheckResult check_2group_generation_bound(const ExplicitGroup& p) {
  return check_2group_generation_bound(min_generators_2group(p), p.n());
}

/// Number of +1 entries on the diagonal of the signed permutation matrix.
inline int plus_diagonal_count(const SignedPermutation& f) {
  int c = 0;
  for (int i = 0; i < f.n(); ++i)
    if (f.image(i) == i && f.sign(i) > 0) ++c;
  return c;
}

inline bool is_involution(const SignedPermutation& f) {
  return !f.is_identity() && compose(f, f).is_identity();
}

/// Abelian H at odd n: an involution with an odd number of diagonal +1s plus a
/// 2-primary part needing at least 4 generators (so no embedding in SO(4)).
inline Verdict verdict_abelian_odd_n(const ExplicitGroup& h) {
  if (h.n() % 2 == 0) throw std::domain_error("verdict_abelian_odd_n needs odd n");
  if (!h.is_abelian()) throw std::domain_error("verdict_abelian_odd_n needs an abelian group");
  std::optional<SignedPermutation> odd_inv;
  for (const auto& e : h.elements())
    if (is_involution(e) && plus_diagonal_count(e) % 2 == 1) {
      odd_inv = e;
      break;
    }
  const int d2 = min_generators_2group(h.two_primary_part());
  if (odd_inv && d2 >= 4)
    return Verdict::not_realizable({{rules::kAbelianOddN,
                                     {{"involution", odd_inv->to_text()},
                                      {"plus_ones", plus_diagonal_count(*odd_inv)},
                                      {"d_2primary", d2}}}});
  Verdict v = Verdict::unknown(odd_inv ? "2-primary part needs at most 3 generators"
                                       : "no involution with an odd number of diagonal +1s");
  return v;
}

/// S_k permuting k of the n basis classes.
inline Verdict verdict_symmetric_subgroup(int k, int n) {
  if (k < 1 || k > n) throw std::domain_error("verdict_symmetric_subgroup needs 1 <= k <= n");
  // k - 2 > max(n/2, 5), compared in integers
  if (n >= 8 && 2 * (k - 2) > n && k - 2 > 5)
    return Verdict::not_realizable({{rules::kSymmetricLarge, {{"k", k}, {"n", n}, {"k_minus_2", k - 2}}}});
  if (k == 1)
    return Verdict::realizable({{"construction", "identity"}}, rules::kTrivial);
  if (k == n && n <= 5)
    return Verdict::realizable({{"construction", "simplex_vertices_on_equatorial_S3"}, {"n", n}},
                               rules::kSymmetricSmall);
  return Verdict::unknown("no symmetric-subgroup rule applies");
}

struct Fact {
  std::string key;
  std::string subject;
  Status status;
  json data = json::object();

  json to_json() const {
    return {{"key", key}, {"subject", subject}, {"status", status_name(status)}, {"data", data}};
  }
};

/// A cycle type in S_n with no realizing action, for n >= 15.
inline std::optional<CycleType> nonrealizable_cyclic_witness(int n) {
  if (n < 15) return std::nullopt;
  if (n == 16) return CycleType({1, 3, 5, 7}, 16);
  if (n % 2 == 0) return CycleType({3, 5, 7, n - 15}, n);
  if ((n - 8) % 15 != 0) return CycleType({3, 5, n - 8}, n);
  return CycleType({3, 7, n - 10}, n);
}

/// Known realizability facts for the n-fold sum, as data.
inline std::vector<Fact> headline_facts(int n) {
  std::vector<Fact> out;
  if (n >= 4) out.push_back({"fact.whole_group_not_realizable", "O(n,Z)", Status::NotRealizable});
  if (n == 2 || n == 3) out.push_back({"fact.all_cyclic_realizable", "cyclic subgroups of O(n,Z)", Status::Realizable});
  out.push_back({"fact.diagonal_rank_le_2", "subgroups of G_n of rank <= 2", Status::Realizable});
  if (n % 2 == 1 && n >= 4)
    out.push_back({"fact.diagonal_rank_ge_4_odd_n", "subgroups of G_n of rank >= 4", Status::NotRealizable});
  if (n <= 5) out.push_back({"fact.symmetric_small", "S_n", Status::Realizable});
  if (n == 6) out.push_back({"fact.alternating_6", "A_6", Status::Realizable});
  if (n >= 8) out.push_back({"fact.symmetric_large", "S_n", Status::NotRealizable});
  if (n <= 8) out.push_back({"fact.cyclic_in_S_n_small", "cyclic subgroups of S_n", Status::Realizable});
  if (auto w = nonrealizable_cyclic_witness(n))
    out.push_back({"fact.cyclic_in_S_n_obstructed", "some cyclic subgroup of S_n", Status::NotRealizable,
                   {{"cycle_type", w->to_string()}}});
  if (n == 10) out.push_back({"fact.orthoplex_5", "rotation group of the 5-orthoplex", Status::Realizable});
  if (n == 32) out.push_back({"fact.cube_5", "rotation group of the 5-cube", Status::Realizable});
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch for single elements and explicit groups

inline Subspace2 diagonal_subspace(int n, const std::vector<SignedPermutation>& gens) {
  std::vector<Vec2> vs;
  for (const auto& g : gens) {
    if (!g.is_diagonal()) throw std::invalid_argument("diagonal_subspace: non-diagonal generator");
    Vec2 v = 0;
    for (int i = 0; i < n; ++i)
      if (g.sign(i) < 0) v |= Vec2{1} << i;
    vs.push_back(v);
  }
  return Subspace2(n, vs);
}

/// Verdict for the cyclic group generated by one element.
inline Verdict verdict_element(const SignedPermutation& f, const SearchBounds& bounds = {}) {
  if (f.is_identity()) return Verdict::realizable({{"construction", "identity"}}, rules::kTrivial);
  if (is_odd_order(f)) return verdict_odd_element(cycle_type(f), bounds);
  if (f.is_diagonal()) return verdict_diagonal(diagonal_subspace(f.n(), {f}));
  if (f.n() <= 3) return Verdict::realizable({{"construction", "small_n_cyclic"}, {"n", f.n()}}, rules::kSmallCyclic);
  return Verdict::unknown("no rule covers this element");
}

/// Combine every applicable rule; a certificate together with a witness is an
/// internal error.
inline Verdict verdict_group(const ExplicitGroup& g, const SearchBounds& bounds = {}) {
  std::vector<Witness> witnesses;
  std::optional<Verdict> realized;
  std::vector<std::string> notes;
  auto take = [&](const Verdict& v) {
    if (v.status == Status::NotRealizable)
      witnesses.insert(witnesses.end(), v.witnesses.begin(), v.witnesses.end());
    else if (v.status == Status::Realizable && !realized)
      realized = v;
    else
      notes.insert(notes.end(), v.notes.begin(), v.notes.end());
  };
  if (g.order() == 1) take(Verdict::realizable({{"construction", "identity"}}, rules::kTrivial));
  if (g.is_diagonal()) take(verdict_diagonal(diagonal_subspace(g.n(), g.generators())));
  if (auto c = g.cyclic_generator(); c && g.order() > 1) take(verdict_element(*c, bounds));
  if (g.is_abelian() && g.n() % 2 == 1) take(verdict_abelian_odd_n(g));
  if (g.is_2group() && g.is_unsigned()) {
    auto c = check_2group_generation_bound(g);
    if (!c.pass) witnesses.push_back(c.witness());
  }
  if (realized && !witnesses.empty())
    throw std::logic_error("verdict_group: a certificate coexists with an obstruction");
  if (!witnesses.empty()) return Verdict::not_realizable(witnesses);
  if (realized) return *realized;
  Verdict v = Verdict::unknown("no rule decides this group");
  v.notes.insert(v.notes.end(), notes.begin(), notes.end());
  return v;
}

}  // namespace nrz
