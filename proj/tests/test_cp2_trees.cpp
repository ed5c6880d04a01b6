#include "nrz/cp2_tree.hpp"
#include "nrz/diagonal.hpp"
#include "nrz/samplers.hpp"

#include <gtest/gtest.h>

using namespace nrz;

namespace {

Subspace2 span(int n, std::initializer_list<const char*> rows) {
  std::vector<Vec2> g;
  for (const char* r : rows) g.push_back(parse_vec2(r));
  return Subspace2(n, g);
}

std::set<std::vector<std::uint32_t>> catalog_keys(int n) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& e : rank3_catalog(n)) out.insert(e.key);
  return out;
}

CP2Tree star(EdgeKind x, EdgeKind y, EdgeKind z) {
  CP2Tree t;
  t.n = 4;
  t.edges = {{0, 1, x, Point::X}, {0, 2, y, Point::Y}, {0, 3, z, Point::Z}};
  return t;
}

}  // namespace

TEST(Propagate, StarOfHingesMatchesConstructionMatrices) {
  auto ca = propagate(star(EdgeKind::Hinge, EdgeKind::Hinge, EdgeKind::Hinge));
  EXPECT_EQ(ca.signs(kFX), (std::vector<int>{1, 1, -1, -1}));
  EXPECT_EQ(ca.signs(kFY), (std::vector<int>{1, -1, 1, -1}));
  EXPECT_EQ(ca.signs(kJ), (std::vector<int>{-1, 1, 1, 1}));
}

TEST(Propagate, SingleEdges) {
  CP2Tree triv;
  triv.n = 2;
  triv.edges = {{0, 1, EdgeKind::Trivial, Point::X}};
  auto a = propagate(triv);
  EXPECT_EQ(a.chi[0], a.chi[1]);
  CP2Tree hinge;
  hinge.n = 2;
  hinge.edges = {{0, 1, EdgeKind::Hinge, Point::Y}};
  auto b = propagate(hinge);
  EXPECT_EQ(b.signs(kJ), (std::vector<int>{-1, 1}));
  EXPECT_EQ(b.signs(kFX), (std::vector<int>{1, -1}));
}

TEST(Propagate, CharactersAreLinear) {
  RandomStream rs(3);
  for (int trial = 0; trial < 200; ++trial) {
    CP2Tree t;
    t.n = 1 + static_cast<int>(rs.below(9));
    std::vector<std::uint8_t> used(static_cast<std::size_t>(t.n), 0);
    for (int v = 1; v < t.n; ++v) {
      for (int tries = 0; tries < 50; ++tries) {
        int p = static_cast<int>(rs.below(static_cast<std::uint64_t>(v)));
        auto pt = static_cast<Point>(rs.below(3));
        auto bit = static_cast<std::uint8_t>(1u << static_cast<int>(pt));
        if (used[static_cast<std::size_t>(p)] & bit) continue;
        used[static_cast<std::size_t>(p)] |= bit;
        used[static_cast<std::size_t>(v)] |= bit;
        t.edges.push_back({p, v, rs.below(2) ? EdgeKind::Hinge : EdgeKind::Trivial, pt});
        break;
      }
    }
    if (static_cast<int>(t.edges.size()) != t.n - 1) continue;
    auto ca = propagate(t);
    for (Gen3 g = 0; g < 8; ++g)
      for (Gen3 h = 0; h < 8; ++h)
        EXPECT_EQ(realized_vector(ca, g ^ h), realized_vector(ca, g) ^ realized_vector(ca, h));
  }
}

TEST(Tree, ValidationAndText) {
  CP2Tree bad;
  bad.n = 3;
  bad.edges = {{0, 1, EdgeKind::Trivial, Point::X}, {0, 2, EdgeKind::Hinge, Point::X}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  auto t = star(EdgeKind::Hinge, EdgeKind::Trivial, EdgeKind::Hinge);
  auto back = parse_cp2_tree(t.to_text());
  EXPECT_EQ(back.to_text(), t.to_text());
}

TEST(Realized, ExampleGroups) {
  const std::vector<Gen3> all{kFX, kFY, kJ};
  auto full = realized_subgroup(star(EdgeKind::Hinge, EdgeKind::Hinge, EdgeKind::Hinge), all);
  EXPECT_TRUE(permutation_equivalent(full, span(4, {"1000", "0110", "0011"})));
  auto mixed = realized_subgroup(star(EdgeKind::Hinge, EdgeKind::Hinge, EdgeKind::Trivial), all);
  EXPECT_TRUE(permutation_equivalent(mixed, span(4, {"1000", "0100", "0011"})));
  CP2Tree chain;
  chain.n = 3;
  chain.edges = {{0, 1, EdgeKind::Hinge, Point::X}, {1, 2, EdgeKind::Hinge, Point::Y}};
  EXPECT_EQ(realized_subgroup(chain, all).rank(), 3);
}

TEST(Catalog, FourVertices) {
  std::set<std::vector<std::uint32_t>> want{permutation_canonical_key(span(4, {"1000", "0110", "0011"})),
                                            permutation_canonical_key(span(4, {"1000", "0100", "0011"}))};
  EXPECT_EQ(catalog_keys(4), want);
}

TEST(Catalog, FiveVertices) {
  std::set<std::vector<std::uint32_t>> want{
      permutation_canonical_key(span(5, {"10000", "01000", "00111"})),
      permutation_canonical_key(span(5, {"10000", "01100", "00011"})),
      permutation_canonical_key(span(5, {"10000", "01100", "00111"})),
      permutation_canonical_key(span(5, {"11000", "00110", "00011"}))};
  EXPECT_EQ(catalog_keys(5), want);
}

TEST(Catalog, ThreeVerticesContainsFullGroup) {
  EXPECT_TRUE(catalog_keys(3).count(permutation_canonical_key(span(3, {"100", "010", "001"}))));
}

TEST(Catalog, EntriesRespectObstructions) {
  for (int n = 3; n <= 7; ++n)
    for (const auto& e : rank3_catalog(n)) {
      EXPECT_EQ(realized_subgroup(e.realization.tree, e.realization.generators), e.realized);
      EXPECT_TRUE(permutation_equivalent(e.realized, e.representative));
      EXPECT_EQ(e.realized.rank(), 3);
    }
}

TEST(Rank2, ProofCases) {
  for (auto h : {span(3, {"110"}), span(3, {"110", "011"}), span(2, {"10", "01"}), span(1, {"1"})}) {
    auto r = realize_rank2(h);
    EXPECT_EQ(realized_subgroup(r.tree, r.generators), h) << h.rows()[0];
  }
  EXPECT_THROW(realize_rank2(span(3, {"100", "010", "001"})), std::domain_error);
}

TEST(Rank2, RandomRoundTrips) {
  RandomStream rs(77);
  for (int i = 0; i < 200; ++i) {
    int n = 1 + static_cast<int>(rs.below(20));
    int k = 1 + static_cast<int>(rs.below(std::min<std::uint64_t>(2, static_cast<std::uint64_t>(n))));
    auto h = sample_subspace(n, k, rs);
    auto r = realize_rank2(h);
    r.tree.validate();
    ASSERT_EQ(realized_subgroup(r.tree, r.generators), h);
  }
}

TEST(Rank3, CatalogLookupRelabels) {
  auto h = span(5, {"00001", "00110", "11000"});
  auto v = verdict_diagonal(h);
  EXPECT_EQ(v.status, Status::Realizable);
  EXPECT_EQ(v.witnesses.at(0).rule, rules::kRank3Catalog);
  EXPECT_EQ(verdict_diagonal(span(5, {"10000", "01000", "00100"})).status, Status::Unknown);
}
