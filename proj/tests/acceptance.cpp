// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include "nrz/analytic.hpp"
#include "nrz/cp2_tree.hpp"
#include "nrz/diagonal.hpp"
#include "nrz/fixed_points.hpp"
#include "nrz/g_signature.hpp"
#include "nrz/ht_odd.hpp"
#include "nrz/oracle.hpp"
#include "nrz/samplers.hpp"
#include "nrz/subgroups.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace nrz;

namespace {

// pinned tolerances
constexpr double kChiSquareLevel = 1e-3;
constexpr double kSigmas = 3.0;
constexpr double kDefectTolerance = 1e-9;
constexpr double kRatioTolerance = 0.05;
constexpr double kProportionTolerance = 0.01;
constexpr int kSamplerDraws = 1000000;
constexpr int kTrendSamples = 10000;
constexpr int kPartitionSamples = 10000;
constexpr int kRandomTrees = 100000;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rational rpow(const Rational& x, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

Outcome criterion1() {
  Outcome o;
  auto t0 = Clock::now();
  const Rational one(1), half(1, 2);
  for (int n = 0; n <= oracle::kMaxOddOrderN; ++n) {
    auto census = oracle::enum_odd_order(n, 2);
    o.require(a_n_scaled(one, n) == BigInt(std::to_string(census.total)), "a_n(1) at n=" + std::to_string(n));
  }
  for (int n = 1; n <= oracle::kMaxSignedN; ++n) {
    auto brute = oracle::enum_signed_odd_order(n, 2);
    o.require(a_n_scaled(half, n) == BigInt(std::to_string(brute)), "2^n a_n(1/2) at n=" + std::to_string(n));
  }
  double secs = seconds_since(t0);
  o.require(secs < 120, "runtime");
  o.detail << (o.pass ? "" : "; ") << "n<=9 unsigned, n<=8 signed, " << secs << " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int n = 0; n <= oracle::kMaxSubspaceN; ++n) {
    auto all = oracle::subspace_counts(n);
    auto even = oracle::subspace_counts(n, true);
    for (int k = 0; k <= n; ++k) {
      o.require(gaussian_binomial(n, k) == BigInt(std::to_string(all[static_cast<std::size_t>(k)])), "gaussian_binomial");
      if (n >= 1)
        o.require(even_subspace_count(n, k) == BigInt(std::to_string(even[static_cast<std::size_t>(k)])),
                  "even_subspace_count n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  for (int n = 1; n <= 30; ++n)
    for (int k = 0; k <= n; ++k) {
      Rational want = make_rational(pow2(static_cast<unsigned long>(n - k)) - 1, pow2(static_cast<unsigned long>(n)) - 1);
      o.require(even_proportion(n, k) == want, "even_proportion formula");
    }
  double worst = 0;
  for (int k = 0; k <= 8; ++k) {
    double v = to_double(even_proportion(60, k));
    worst = std::max(worst, std::fabs(v / std::ldexp(1.0, -k) - 1.0));
  }
  o.require(worst < kProportionTolerance, "limit 2^-k at n=60");
  o.detail << (o.pass ? "" : "; ") << "max rel gap to 2^-k at n=60: " << worst;
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto t0 = Clock::now();
  long checked = 0;
  for (long m = 3; m <= 45; m += 2)
    for (long a = 1; a < m; ++a)
      for (long b = 1; b < m; ++b) {
        if (std::gcd(a, m) != 1 || std::gcd(b, m) != 1 || std::gcd(mod_pos(a - b, m), m) != 1) continue;
        ++checked;
        if (!verify_gsignature_cp2(a, b, static_cast<int>(m)).holds)
          o.require(false, "identity at (" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(m) + ")");
      }
  o.require(defect_point(1, 1, 2) == 0, "defect at m=2");
  double worst = 0;
  for (int m : {3, 5, 7, 9, 15, 21, 45})
    for (long a = 1; a < m; ++a)
      for (long b = 1; b < m; ++b) {
        if (std::gcd(a, static_cast<long>(m)) != 1 || std::gcd(b, static_cast<long>(m)) != 1) continue;
        long double ex = to_long_double(defect_point(a, b, m));
        worst = std::max(worst, static_cast<double>(std::fabs(defect_point_numeric({a, b, m}) - ex)));
        worst = std::max(worst, static_cast<double>(std::fabs(oracle::numeric_defect(a, b, m) - ex)));
      }
  o.require(worst < kDefectTolerance, "numeric agreement");
  double secs = seconds_since(t0);
  o.require(secs < 300, "runtime");
  o.detail << (o.pass ? "" : "; ") << checked << " triples, max numeric gap " << worst << ", " << secs << " s";
  return o;
}

Subspace2 span(int n, std::initializer_list<const char*> rows) {
  std::vector<Vec2> g;
  for (const char* r : rows) g.push_back(parse_vec2(r));
  return Subspace2(n, g);
}

Outcome criterion4() {
  Outcome o;
  auto keys = [](int n) {
    std::set<std::vector<std::uint32_t>> s;
    for (const auto& e : rank3_catalog(n)) s.insert(e.key);
    return s;
  };
  std::set<std::vector<std::uint32_t>> g4{permutation_canonical_key(span(4, {"1000", "0110", "0011"})),
                                          permutation_canonical_key(span(4, {"1000", "0100", "0011"}))};
  std::set<std::vector<std::uint32_t>> g5{permutation_canonical_key(span(5, {"10000", "01000", "00111"})),
                                          permutation_canonical_key(span(5, {"10000", "01100", "00011"})),
                                          permutation_canonical_key(span(5, {"10000", "01100", "00111"})),
                                          permutation_canonical_key(span(5, {"11000", "00110", "00011"}))};
  auto k4 = keys(4), k5 = keys(5);
  o.require(k4 == g4, "n=4 catalog");
  o.require(k5 == g5, "n=5 catalog");
  o.detail << (o.pass ? "" : "; ") << "n=4: " << k4.size() << " classes, n=5: " << k5.size() << " classes";
  return o;
}

Outcome criterion5() {
  Outcome o;
  RandomStream rs(20240505);
  for (int i = 0; i < 200; ++i) {
    int n = 1 + static_cast<int>(rs.below(20));
    int k = static_cast<int>(rs.below(static_cast<std::uint64_t>(std::min(2, n) + 1)));
    auto h = sample_subspace(n, k, rs);
    auto r = realize_rank2(h);
    o.require(realized_subgroup(r.tree, r.generators) == h, "round trip at n=" + std::to_string(n) + " rank " + std::to_string(k));
  }
  o.detail << (o.pass ? "" : "; ") << "200 subgroups, n<=20";
  return o;
}

Outcome criterion6() {
  Outcome o;
  o.require(verdict_odd_element(CycleType({3, 5, 7}, 15)).status == Status::NotRealizable, "(3,5,7)");
  o.require(verdict_odd_element(CycleType({1, 3, 5, 7}, 16)).status == Status::NotRealizable, "(1,3,5,7)");
  auto v = verdict_odd_element(CycleType({9, 15, 25}, 49));
  bool via_mu = false;
  for (const auto& w : v.witnesses) via_mu |= w.rule == rules::kMu;
  o.require(v.status == Status::NotRealizable && via_mu, "(9,15,25) via mu");
  int types = 0;
  for (int n = 0; n <= 8; ++n)
    for (const auto& [shape, cnt] : oracle::enum_odd_order_by_classes(n).by_shape) {
      ++types;
      o.require(verdict_odd_element(CycleType(shape, n)).status == Status::Realizable,
                "odd type " + CycleType(shape, n).to_string());
    }
  std::vector<Vec2> e;
  for (int i = 0; i < 4; ++i) e.push_back(unit_vector(i));
  o.require(verdict_diagonal(Subspace2(9, e)).status == Status::NotRealizable, "rank-4 diagonal at n=9");
  o.detail << (o.pass ? "" : "; ") << types << " odd types with n<=8 realizable";
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto t0 = Clock::now();
  double min_p = 1;
  for (const Rational& th : {Rational(1), Rational(1, 2)})
    for (int n = 1; n <= 8; ++n) {
      auto census = oracle::enum_odd_order_by_classes(n);
      std::map<std::vector<int>, double> prob;
      Rational total = 0;
      for (const auto& [shape, cnt] : census.by_shape) total += Rational(static_cast<unsigned long>(cnt)) * rpow(th, shape.size());
      for (const auto& [shape, cnt] : census.by_shape)
        prob[shape] = to_double(Rational(static_cast<unsigned long>(cnt)) * rpow(th, shape.size()) / total);
      std::map<std::vector<int>, long> seen;
      RandomStream rs(7000 + static_cast<std::uint64_t>(n), th == 1 ? 1 : 2);
      auto sampler = odd_perm_sampler(n, th);
      for (int i = 0; i < kSamplerDraws; ++i) {
        auto ct = sampler->sample(rs);
        auto full = ct.full_parts();
        std::sort(full.rbegin(), full.rend());
        ++seen[full];
      }
      double stat = 0;
      bool unknown = false;
      for (const auto& [shape, c] : seen) unknown |= !prob.count(shape);
      for (const auto& [shape, p] : prob) {
        double e = p * kSamplerDraws;
        double c = seen.count(shape) ? static_cast<double>(seen[shape]) : 0.0;
        stat += (c - e) * (c - e) / e;
      }
      o.require(!unknown, "sampled a shape outside the support");
      if (prob.size() > 1) {
        boost::math::chi_squared dist(static_cast<double>(prob.size() - 1));
        double p = boost::math::cdf(boost::math::complement(dist, stat));
        min_p = std::min(min_p, p);
        o.require(p > kChiSquareLevel, "chi-square n=" + std::to_string(n) + " theta=" + th.get_str());
      }
    }
  double worst_z = 0;
  for (const Rational& th : {Rational(1), Rational(1, 2)}) {
    const int n = 50, draws = 100000;
    double want = to_double(prob_no_p_cycle(n, 3, th));
    RandomStream rs(50, th == 1 ? 1 : 2);
    long hits = 0;
    for (int i = 0; i < draws; ++i) hits += sample_odd_order_perm(n, th, rs).count(3) == 0;
    double se = std::sqrt(want * (1 - want) / draws);
    double z = std::fabs(static_cast<double>(hits) / draws - want) / se;
    worst_z = std::max(worst_z, z);
    o.require(z <= kSigmas, "P(C_3=0) at n=50 theta=" + th.get_str());
  }
  o.detail << (o.pass ? "" : "; ") << "min chi-square p " << min_p << ", n=50 |z| " << worst_z << ", "
           << seconds_since(t0) << " s";
  return o;
}

Outcome criterion8() {
  Outcome o;
  auto t0 = Clock::now();
  const Rational one(1);
  long double prev = -1;
  std::ostringstream series;
  for (int n : {100, 1000, 10000, 100000}) {
    auto e = expected_P_n(n, one);
    o.require(e.value >= prev, "monotone at n=" + std::to_string(n));
    prev = e.value;
    series << static_cast<double>(e.value) << (n < 100000 ? "," : "");
  }
  o.require(prev > 1.0L, "E[P_n] > 1 at n=1e5");
  const int n = 10000;
  const double want = static_cast<double>(expected_P_n(n, one).value);
  RandomStream rs(8080);
  double sum = 0, sq = 0;
  for (int i = 0; i < kTrendSamples; ++i) {
    double x = prime_cycle_count(sample_odd_order_perm(n, one, rs));
    sum += x;
    sq += x * x;
  }
  double mean = sum / kTrendSamples;
  double sd = std::sqrt(std::max(0.0, sq / kTrendSamples - mean * mean));
  double se = sd / std::sqrt(static_cast<double>(kTrendSamples));
  o.require(std::fabs(mean - want) <= kSigmas * se, "empirical mean of P_n");
  double secs = seconds_since(t0);
  o.require(secs < 600, "runtime");
  o.detail << (o.pass ? "" : "; ") << "E[P_n] " << series.str() << "; empirical " << mean << " vs " << want
           << " (se " << se << ")";
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto t = q_tables(200);
  auto d = q_distinct(200);
  for (int N = 0; N <= 200; ++N) o.require(t.q_odd[static_cast<std::size_t>(N)] == d[static_cast<std::size_t>(N)], "Euler identity");
  long double worst = 0;
  for (int s = 0; s <= 100; ++s) worst = std::max(worst, q_ratio_check(10000, s).rel_error);
  o.require(worst < kRatioTolerance, "ratio model");
  const int n = 10000;
  const double a = 0.5, b = 2.0;
  const double want = static_cast<double>(expected_R_n_approx(n, a, b));
  RandomStream rs(9090);
  const int t_max = default_t_max(n);
  double sum = 0, sq = 0;
  for (int i = 0; i < kPartitionSamples; ++i) {
    double x = R_n(sample_odd_partition_bounded_ones(n, t_max, rs), n, a, b);
    sum += x;
    sq += x * x;
  }
  double mean = sum / kPartitionSamples;
  double se = std::sqrt(std::max(0.0, sq / kPartitionSamples - mean * mean) / kPartitionSamples);
  o.require(std::fabs(mean - want) <= kSigmas * se, "empirical E[R_n]");
  o.detail << (o.pass ? "" : "; ") << "max ratio error " << static_cast<double>(worst) << "; E[R_n] " << mean << " vs "
           << want << " (se " << se << ")";
  return o;
}

Outcome criterion10() {
  Outcome o;
  long elements = 0, subspaces = 0;
  for (int n = 1; n <= 6; ++n) {
    oracle::for_each_signed_perm(n, [&](const std::vector<int>& im, const std::vector<int>& sg) {
      ++elements;
      try {
        if (!verdict_element(SignedPermutation(im, sg)).is_consistent()) o.require(false, "element verdict");
      } catch (const std::logic_error& e) {
        o.require(false, std::string("element verdict: ") + e.what());
      }
    });
    for (const auto& s : oracle::enum_subspaces(n)) {
      ++subspaces;
      std::vector<Vec2> rows(s.basis.begin(), s.basis.end());
      try {
        if (!verdict_diagonal(Subspace2(n, rows)).is_consistent()) o.require(false, "diagonal verdict");
      } catch (const std::logic_error& e) {
        o.require(false, std::string("diagonal verdict: ") + e.what());
      }
    }
  }
  std::mt19937_64 rng(10);
  int made = 0;
  while (made < kRandomTrees) {
    auto t = random_sltree(rng);
    if (!t) continue;
    ++made;
    if (!passes_necessary_checks(tree_to_cycle_type(*t))) o.require(false, "tree " + t->to_json().dump());
  }
  o.detail << (o.pass ? "" : "; ") << elements << " elements, " << subspaces << " diagonal subgroups, " << made
           << " trees";
  return o;
}

Outcome criterion11() {
  Outcome o;
  long involutions = 0;
  for (int n = 1; n <= 6; ++n)
    oracle::for_each_signed_perm(n, [&](const std::vector<int>& im, const std::vector<int>& sg) {
      SignedPermutation f(im, sg);
      if (!is_involution(f)) return;
      ++involutions;
      o.require(free_involution_report(f).inconsistent, "free involution at " + f.to_text());
    });
  int bal = gsig_balance_involution(SignedPermutation::transposition(8, 0, 1));
  o.require(bal == 6, "transposition balance");
  o.detail << (o.pass ? "" : "; ") << involutions << " involutions, balance " << bal;
  return o;
}

}  // namespace

int main() {
  using Fn = Outcome (*)();
  const Fn criteria[] = {criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                         criterion7, criterion8, criterion9, criterion10, criterion11};
  int failed = 0;
  for (int i = 0; i < 11; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
