#pragma once

#include "nrz/cp2_tree.hpp"
#include "nrz/subspace2.hpp"
#include "nrz/verdict.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace nrz {

namespace rules {
inline constexpr const char* kRankLe2 = "diag.rank_le_2";
inline constexpr const char* kOddN = "diag.rank_ge_4_odd_n";
inline constexpr const char* kOddComplement = "diag.rank_ge_4_odd_complement";
inline constexpr const char* kLogBound = "diag.rank_above_log_bound";
inline constexpr const char* kRank3Catalog = "diag.rank3_catalog";
}  // namespace rules

/// Shared rank-3 catalogs, built once per n.
inline const std::vector<CatalogEntry>& cached_rank3_catalog(int n, int max_vertices = 8) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<CatalogEntry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, max_vertices);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, rank3_catalog(n, max_vertices)).first;
  return it->second;
}

/// Realizability verdict for a subgroup of the diagonal group G_n.
inline Verdict verdict_diagonal(const Subspace2& h, int max_catalog_vertices = 8) {
  const int n = h.n();
  const int rk = h.rank();
  if (rk <= 2) {
    Verdict v = Verdict::realizable(realize_rank2(h).to_json(), rules::kRankLe2);
    return v;
  }
  if (rk == 3) {
    if (n <= max_catalog_vertices) {
      if (auto r = realize_from_catalog(h, cached_rank3_catalog(n, max_catalog_vertices)))
        return Verdict::realizable(r->to_json(), rules::kRank3Catalog);
    }
    return Verdict::unknown("rank 3 outside the CP2-tree catalog");
  }
  if (n % 2 == 1) return Verdict::not_realizable({{rules::kOddN, {{"n", n}, {"rank", rk}}}});
  for (Vec2 b : h.basis())
    if ((n - weight(b)) % 2 == 1)
      return Verdict::not_realizable(
          {{rules::kOddComplement, {{"element", vec2_to_string(b, n)}, {"n_minus_weight", n - weight(b)}}}});
  // 2^rank > 2^8 n, compared in integers
  if (pow2(static_cast<unsigned long>(rk)) > BigInt(256) * n)
    return Verdict::not_realizable({{rules::kLogBound, {{"rank", rk}, {"n", n}}}});
  return Verdict::unknown("n even, every n - weight even, rank within 8 + log2 n");
}

}  // namespace nrz
