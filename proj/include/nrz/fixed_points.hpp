#pragma once

/** @file
 * Edmonds invariants of prime-order elements of O(n,Z) and the arithmetic
 * constraints they put on fixed sets of realizing actions.
 */

#include "nrz/bigint.hpp"
#include "nrz/signed_perm.hpp"
#include "nrz/verdict.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nrz {

struct EdmondsInvariants {
  int p = 2;
  int t = 0;  // trivial summands
  int c = 0;  // cyclotomic summands, dimension p-1
  int r = 0;  // regular summands, dimension p
  int dimension() const { return t + c * (p - 1) + r * p; }
};

inline bool is_prime(long long x) {
  if (x < 2) return false;
  for (long long d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

inline EdmondsInvariants edmonds_invariants(const SignedPermutation& f, int p) {
  if (!is_prime(p)) throw std::domain_error("edmonds_invariants: p must be prime");
  if (order(f) != p) throw std::domain_error("edmonds_invariants: element order differs from p");
  EdmondsInvariants inv;
  inv.p = p;
  for (const auto& [len, parity] : signed_cycle_type(f).cycles) {
    if (len == 1) {
      if (p == 2 && parity) ++inv.c;
      else ++inv.t;
    } else if (len == p) {
      ++inv.r;
    } else {
      throw std::logic_error("edmonds_invariants: cycle length incompatible with order p");
    }
  }
  if (inv.dimension() != f.n()) throw std::logic_error("edmonds_invariants: dimension mismatch");
  return inv;
}

/// Euler characteristic of the fixed set; nonzero forces a nonempty fixed set.
inline int euler_char_fixed(const EdmondsInvariants& inv) { return inv.t - inv.c + 2; }

/// (k, s): k isolated points and s surfaces with k + 2s = t + 2, surfaces needed when c > 0.
inline std::vector<std::pair<int, int>> feasible_fixed_profiles(const EdmondsInvariants& inv) {
  std::vector<std::pair<int, int>> out;
  const int total = inv.t + 2;
  for (int s = 0; 2 * s <= total; ++s) {
    if (s == 0 && inv.c != 0) continue;
    out.emplace_back(total - 2 * s, s);
  }
  return out;
}

/// Required total self-intersection of fixed surfaces for an involution: 2(t + r) - n.
inline int gsig_balance_involution(const SignedPermutation& f) {
  auto inv = edmonds_invariants(f, 2);
  int a = 2 * (inv.t + inv.r) - f.n();
  int b = f.n() - 2 * (inv.c + inv.r);
  if (a != b) throw std::logic_error("gsig_balance_involution: the two evaluations disagree");
  return a;
}

struct FreeInvolutionReport {
  EdmondsInvariants inv;
  int n = 0;
  bool euler_zero = false;         // t + 2 = c
  bool signature_balanced = false; // 2 (t + r) = n
  int derived_n = 0;               // 2 (t + r + 1), forced by t + 2 = c
  int solutions = 0;               // triples (t,c,r) of size n meeting both constraints
  bool inconsistent = true;

  json to_json() const {
    return {{"n", n},
            {"t", inv.t},
            {"c", inv.c},
            {"r", inv.r},
            {"constraints", {"t + 2 = c", "t + r = n/2"}},
            {"euler_zero", euler_zero},
            {"signature_balanced", signature_balanced},
            {"derived_n", derived_n},
            {"solutions", solutions},
            {"inconsistent", inconsistent}};
  }
};

/// A free involution needs an empty fixed set (t + 2 = c) and multiplicative
/// signature (t + r = n/2); no triple with t + c + 2r = n satisfies both.
inline FreeInvolutionReport free_involution_report(const SignedPermutation& f) {
  FreeInvolutionReport rep;
  rep.inv = edmonds_invariants(f, 2);
  rep.n = f.n();
  rep.euler_zero = rep.inv.t + 2 == rep.inv.c;
  rep.signature_balanced = 2 * (rep.inv.t + rep.inv.r) == rep.n;
  rep.derived_n = 2 * (rep.inv.t + rep.inv.r + 1);
  for (int r = 0; 2 * r <= rep.n; ++r)
    for (int t = 0; t + 2 * r <= rep.n; ++t) {
      int c = rep.n - t - 2 * r;
      if (t + 2 == c && 2 * (t + r) == rep.n) ++rep.solutions;
    }
  rep.inconsistent = rep.solutions == 0 && !(rep.euler_zero && rep.signature_balanced);
  return rep;
}

enum class SurfaceKind { Point, Sphere, ProjectivePlane, Torus, Klein, Genus2, N3, N4 };

struct SurfaceConstant {
  SurfaceKind kind;
  const char* name;
  int constant;
  const char* derivation;
};

/// Strict upper bounds c on the realizable rank contributed by a fixed component.
/// Conservative, not claimed sharp.
inline const std::array<SurfaceConstant, 8>& surface_constants() {
  static const std::array<SurfaceConstant, 8> table{{
      {SurfaceKind::Point, "point", 4, "(Z/2)^k acting faithfully on a tangent R^4 by SO(4) has k <= 3"},
      {SurfaceKind::Sphere, "S2", 3, "orientation-preserving (Z/2)^k on S^2 has k <= 2"},
      {SurfaceKind::ProjectivePlane, "RP2", 4, "orientation double cover S^2 adds at most 1"},
      {SurfaceKind::Torus, "T2", 5, "(Z/2)^k on T^2 has k <= 4"},
      {SurfaceKind::Klein, "N2", 6, "orientation double cover T^2 adds at most 1"},
      {SurfaceKind::Genus2, "Sigma2", 7, "|Isom+| <= 84(g-1) = 84 gives k <= 6"},
      {SurfaceKind::N3, "N3", 8, "double cover Sigma2 adds at most 1; upper bound only"},
      {SurfaceKind::N4, "N4", 8, "global bound c < 8 applied; upper bound only"},
  }};
  return table;
}

inline const SurfaceConstant& surface_constant(SurfaceKind k) {
  for (const auto& s : surface_constants())
    if (s.kind == k) return s;
  throw std::logic_error("unknown surface kind");
}

inline SurfaceKind parse_surface_kind(const std::string& s) {
  for (const auto& c : surface_constants())
    if (s == c.name) return c.kind;
  throw std::invalid_argument("unknown surface kind: " + s);
}

/// Realizable rank must be strictly below c(kind) + v_2(k).
inline int rank_bound_from_fixed_data(SurfaceKind kind, std::uint64_t k) {
  return surface_constant(kind).constant + static_cast<int>(v2(k));
}

}  // namespace nrz
