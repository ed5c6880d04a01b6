#pragma once

/** @file
 * CP^2-trees: connected sums of copies of CP^2 glued at the coordinate points
 * X, Y, Z, with trivial or hinge edges, and the sign characters they induce for
 * the (Z/2)^3 generated by f_X, f_Y and J.
 *
 * Every copy carries an identification iota_v of the abstract generators with
 * its local (f_X, f_Y, J). A trivial edge keeps it; a hinge at W whose chart
 * coordinates are (U, V) sends f_U -> J, f_V -> J f_W, J -> f_U and fixes f_W.
 * On copy v an element g acts on the CP^1 class by (-1)^{chi_v(g)}, where chi_v
 * is the J-row of iota_v. The base copy has chi = J^*.
 */

#include "nrz/subspace2.hpp"
#include "nrz/verdict.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrz {

enum class Point : std::uint8_t { X = 0, Y = 1, Z = 2 };
enum class EdgeKind : std::uint8_t { Trivial, Hinge };

inline char point_name(Point p) { return "XYZ"[static_cast<int>(p)]; }
inline Point next_point(Point p) { return static_cast<Point>((static_cast<int>(p) + 1) % 3); }

inline Point parse_point(const std::string& s) {
  if (s == "X") return Point::X;
  if (s == "Y") return Point::Y;
  if (s == "Z") return Point::Z;
  throw std::invalid_argument("point must be X, Y or Z: " + s);
}

/// Elements of the abstract (Z/2)^3 as 3-bit masks.
using Gen3 = std::uint8_t;
inline constexpr Gen3 kFX = 1, kFY = 2, kJ = 4;

inline std::string gen3_name(Gen3 g) {
  if (g == 0) return "1";
  std::string s;
  auto add = [&](const char* t) { s += (s.empty() ? "" : " ") + std::string(t); };
  if (g & kJ) add("J");
  if ((g & 3) == 3) add("f_Z");
  else if (g & kFX) add("f_X");
  else if (g & kFY) add("f_Y");
  return s;
}

inline int eval_char(Gen3 chi, Gen3 g) { return __builtin_parity(static_cast<unsigned>(chi & g)); }

struct CP2Edge {
  int parent = 0;
  int child = 0;
  EdgeKind kind = EdgeKind::Trivial;
  Point point = Point::X;  // used on both sides of the edge
};

struct CP2Tree {
  int n = 1;
  int base = 0;
  std::vector<CP2Edge> edges;

  /// Throws unless the edges form a tree on 0..n-1 with each point used once per vertex.
  void validate() const {
    if (n < 1) throw std::invalid_argument("CP2Tree needs at least one vertex");
    if (static_cast<int>(edges.size()) != n - 1) throw std::invalid_argument("CP2Tree must have n-1 edges");
    if (base < 0 || base >= n) throw std::invalid_argument("base vertex out of range");
    std::vector<std::uint8_t> used(static_cast<std::size_t>(n), 0);
    std::vector<int> comp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
      while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)];
      return x;
    };
    for (const auto& e : edges) {
      if (e.parent < 0 || e.parent >= n || e.child < 0 || e.child >= n || e.parent == e.child)
        throw std::invalid_argument("edge endpoint out of range");
      std::uint8_t bit = static_cast<std::uint8_t>(1u << static_cast<int>(e.point));
      for (int v : {e.parent, e.child}) {
        if (used[static_cast<std::size_t>(v)] & bit) throw std::invalid_argument("attachment point used twice");
        used[static_cast<std::size_t>(v)] |= bit;
      }
      int a = find(e.parent), b = find(e.child);
      if (a == b) throw std::invalid_argument("edges contain a cycle");
      comp[static_cast<std::size_t>(a)] = b;
    }
  }

  json to_json() const {
    json e = json::array();
    for (const auto& x : edges)
      e.push_back({x.parent + 1, x.child + 1, x.kind == EdgeKind::Hinge ? "hinge" : "trivial",
                   std::string(1, point_name(x.point))});
    return {{"n", n}, {"base", base + 1}, {"edges", e}};
  }

  /// "n N base B" header followed by lines "parent child kind point" (1-based).
  std::string to_text() const {
    std::string s = "n " + std::to_string(n) + " base " + std::to_string(base + 1) + "\n";
    for (const auto& x : edges)
      s += std::to_string(x.parent + 1) + " " + std::to_string(x.child + 1) + " " +
           (x.kind == EdgeKind::Hinge ? "hinge" : "trivial") + " " + point_name(x.point) + "\n";
    return s;
  }
};

inline CP2Tree parse_cp2_tree(const std::string& text) {
  CP2Tree t;
  t.n = -1;
  std::stringstream ss(text);
  std::string line;
  int max_v = 0;
  while (std::getline(ss, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::stringstream ls(line);
    std::string a;
    if (!(ls >> a)) continue;
    if (a == "n") {
      std::string key;
      ls >> t.n;
      while (ls >> key) {
        if (key == "base") {
          ls >> t.base;
          t.base -= 1;
        }
      }
      continue;
    }
    CP2Edge e;
    std::string kind, pt;
    e.parent = std::stoi(a) - 1;
    ls >> e.child >> kind >> pt;
    e.child -= 1;
    if (kind == "hinge") e.kind = EdgeKind::Hinge;
    else if (kind == "trivial") e.kind = EdgeKind::Trivial;
    else throw std::invalid_argument("edge kind must be trivial or hinge: " + kind);
    e.point = parse_point(pt);
    max_v = std::max({max_v, e.parent + 1, e.child + 1});
    t.edges.push_back(e);
  }
  if (t.n < 0) t.n = std::max(1, max_v);
  t.validate();
  return t;
}

/// Rows of iota_v: row k is the local coordinate k (f_X, f_Y, J) as a mask over abstract generators.
using Frame = std::array<Gen3, 3>;

/// Frame after crossing a hinge at point w.
inline Frame hinge_frame(const Frame& in, Point w) {
  static constexpr Gen3 kF[3] = {kFX, kFY, kFX | kFY};
  int wi = static_cast<int>(w);
  int u = wi == 0 ? 1 : 0;
  int v = wi == 2 ? 1 : 2;
  auto img_f = [&](int idx) -> Gen3 {
    if (idx == u) return kJ;
    if (idx == v) return static_cast<Gen3>(kJ | kF[wi]);
    return kF[wi];
  };
  // images of the local basis f_X, f_Y, J
  const Gen3 img[3] = {img_f(0), img_f(1), kF[u]};
  Frame out{0, 0, 0};
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j)
      if (img[j] >> k & 1) out[static_cast<std::size_t>(k)] ^= in[static_cast<std::size_t>(j)];
  return out;
}

/// Per-vertex sign characters chi_v, as masks over (f_X, f_Y, J).
struct CharacterAssignment {
  std::vector<Gen3> chi;
  std::vector<Frame> frames;
  /// (-1)^{chi_v(g)} for every vertex.
  std::vector<int> signs(Gen3 g) const {
    std::vector<int> s;
    for (Gen3 c : chi) s.push_back(eval_char(c, g) ? -1 : 1);
    return s;
  }
};

inline CharacterAssignment propagate(const CP2Tree& t) {
  t.validate();
  std::vector<std::vector<std::pair<int, const CP2Edge*>>> adj(static_cast<std::size_t>(t.n));
  for (const auto& e : t.edges) {
    adj[static_cast<std::size_t>(e.parent)].push_back({e.child, &e});
    adj[static_cast<std::size_t>(e.child)].push_back({e.parent, &e});
  }
  CharacterAssignment ca;
  ca.frames.assign(static_cast<std::size_t>(t.n), Frame{0, 0, 0});
  std::vector<char> seen(static_cast<std::size_t>(t.n), 0);
  std::vector<int> stack{t.base};
  ca.frames[static_cast<std::size_t>(t.base)] = Frame{kFX, kFY, kJ};
  seen[static_cast<std::size_t>(t.base)] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[static_cast<std::size_t>(x)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      const Frame& f = ca.frames[static_cast<std::size_t>(x)];
      ca.frames[static_cast<std::size_t>(w)] = e->kind == EdgeKind::Hinge ? hinge_frame(f, e->point) : f;
      stack.push_back(w);
    }
  }
  for (const auto& f : ca.frames) ca.chi.push_back(f[2]);
  return ca;
}

inline Vec2 realized_vector(const CharacterAssignment& ca, Gen3 g) {
  Vec2 v = 0;
  for (std::size_t i = 0; i < ca.chi.size(); ++i)
    if (eval_char(ca.chi[i], g)) v |= unit_vector(static_cast<int>(i));
  return v;
}

inline Subspace2 realized_subgroup(const CP2Tree& t, const std::vector<Gen3>& generators) {
  auto ca = propagate(t);
  std::vector<Vec2> rows;
  for (Gen3 g : generators) rows.push_back(realized_vector(ca, g));
  return Subspace2(t.n, rows);
}

/// A tree together with the abstract generators whose image is the target group.
struct Realization {
  CP2Tree tree;
  std::vector<Gen3> generators;

  json to_json() const {
    json g = json::array();
    for (Gen3 x : generators) g.push_back(gen3_name(x));
    return {{"tree", tree.to_json()}, {"generators", g}};
  }
};

inline CP2Tree relabel(const CP2Tree& t, const std::vector<int>& perm) {
  CP2Tree out = t;
  out.base = perm[static_cast<std::size_t>(t.base)];
  for (auto& e : out.edges) {
    e.parent = perm[static_cast<std::size_t>(e.parent)];
    e.child = perm[static_cast<std::size_t>(e.child)];
  }
  return out;
}

namespace detail {

struct RootedShape {
  std::vector<RootedShape> kids;
  int size = 1;
};

/// Rooted trees of the given size with at most max_kids children per root and
/// subtrees listed in nondecreasing size; non-root vertices have at most 2 children.
inline std::vector<RootedShape> rooted_shapes(int size, int max_kids) {
  std::vector<RootedShape> out;
  std::vector<RootedShape> cur;
  auto rec = [&](auto&& self, int remaining, int min_size) -> void {
    if (remaining == 0) {
      RootedShape s;
      s.kids = cur;
      s.size = size;
      out.push_back(std::move(s));
      return;
    }
    if (static_cast<int>(cur.size()) == max_kids) return;
    for (int sz = min_size; sz <= remaining; ++sz)
      for (auto& sub : rooted_shapes(sz, 2)) {
        cur.push_back(sub);
        self(self, remaining - sz, sz);
        cur.pop_back();
      }
  };
  rec(rec, size - 1, 1);
  return out;
}

inline int max_degree(const RootedShape& s, bool is_root) {
  int d = static_cast<int>(s.kids.size()) + (is_root ? 0 : 1);
  for (const auto& k : s.kids) d = std::max(d, max_degree(k, false));
  return d;
}

/// Lays out a shape as edges; points[k] lists the point of each edge in preorder.
inline void layout(const RootedShape& s, int self_id, int& next_id, std::vector<CP2Edge>& edges) {
  for (const auto& k : s.kids) {
    int id = next_id++;
    edges.push_back({self_id, id, EdgeKind::Trivial, Point::X});
    layout(k, id, next_id, edges);
  }
}

/// All point assignments for the laid-out edges. In normalized mode the root's
/// children take X, Y, Z in order and a vertex entered at W gives its children
/// succ(W), succ(succ(W)) in order.
inline void assign_points(const CP2Tree& skel, bool normalized, std::vector<std::vector<Point>>& out) {
  int m = static_cast<int>(skel.edges.size());
  std::vector<Point> in_point(static_cast<std::size_t>(skel.n), Point::X);
  std::vector<int> kid_index(static_cast<std::size_t>(m), 0);
  std::vector<int> count(static_cast<std::size_t>(skel.n), 0);
  for (int i = 0; i < m; ++i) kid_index[static_cast<std::size_t>(i)] = count[static_cast<std::size_t>(skel.edges[static_cast<std::size_t>(i)].parent)]++;
  std::vector<Point> cur(static_cast<std::size_t>(m));
  std::vector<std::uint8_t> used(static_cast<std::size_t>(skel.n), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      out.push_back(cur);
      return;
    }
    const auto& e = skel.edges[static_cast<std::size_t>(i)];
    std::vector<Point> options;
    if (normalized) {
      Point start = e.parent == skel.base ? Point::X : next_point(in_point[static_cast<std::size_t>(e.parent)]);
      Point p = start;
      for (int k = 0; k < kid_index[static_cast<std::size_t>(i)]; ++k) p = next_point(p);
      options.push_back(p);
    } else {
      options = {Point::X, Point::Y, Point::Z};
    }
    for (Point p : options) {
      std::uint8_t bit = static_cast<std::uint8_t>(1u << static_cast<int>(p));
      if ((used[static_cast<std::size_t>(e.parent)] | used[static_cast<std::size_t>(e.child)]) & bit) continue;
      used[static_cast<std::size_t>(e.parent)] |= bit;
      used[static_cast<std::size_t>(e.child)] |= bit;
      in_point[static_cast<std::size_t>(e.child)] = p;
      cur[static_cast<std::size_t>(i)] = p;
      self(self, i + 1);
      used[static_cast<std::size_t>(e.parent)] &= static_cast<std::uint8_t>(~bit);
      used[static_cast<std::size_t>(e.child)] &= static_cast<std::uint8_t>(~bit);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Visits every CP^2-tree on n vertices rooted at a maximum-degree vertex (the
/// base), with max degree <= 3, all point assignments and all edge kinds.
/// With require_degree3 only trees having a degree-3 vertex are visited.
template <class F>
void for_each_cp2_tree(int n, bool normalized, bool require_degree3, F&& visit) {
  if (n < 1) return;
  for (const auto& shape : detail::rooted_shapes(n, 3)) {
    int md = detail::max_degree(shape, true);
    if (static_cast<int>(shape.kids.size()) != md) continue;
    if (require_degree3 && md != 3) continue;
    CP2Tree skel;
    skel.n = n;
    skel.base = 0;
    int next = 1;
    detail::layout(shape, 0, next, skel.edges);
    std::vector<std::vector<Point>> assignments;
    detail::assign_points(skel, normalized, assignments);
    const int m = n - 1;
    for (const auto& pts : assignments) {
      CP2Tree t = skel;
      for (int i = 0; i < m; ++i) t.edges[static_cast<std::size_t>(i)].point = pts[static_cast<std::size_t>(i)];
      for (std::uint32_t kinds = 0; kinds < (1u << m); ++kinds) {
        for (int i = 0; i < m; ++i)
          t.edges[static_cast<std::size_t>(i)].kind = (kinds >> i & 1) ? EdgeKind::Hinge : EdgeKind::Trivial;
        visit(static_cast<const CP2Tree&>(t));
      }
    }
  }
}

struct CatalogEntry {
  Subspace2 representative;         // canonical member of the class
  Subspace2 realized;               // group realized by the stored tree
  std::vector<std::uint32_t> key;   // permutation canonical key
  Realization realization;
};

/// Rank-3 groups realized by (f_X, f_Y, J) on CP^2-trees with n vertices, up to
/// permutation of coordinates. For n >= 4 a degree-3 vertex is required; for
/// n = 3 chains are allowed. Empty when n exceeds max_vertices.
inline std::vector<CatalogEntry> rank3_catalog(int n, int max_vertices = 8, bool normalized = true) {
  std::map<std::vector<std::uint32_t>, CatalogEntry> found;
  if (n < 3 || n > max_vertices || n > 12) return {};
  const std::vector<Gen3> gens{kFX, kFY, kJ};
  for_each_cp2_tree(n, normalized, n >= 4, [&](const CP2Tree& t) {
    Subspace2 h = realized_subgroup(t, gens);
    if (h.rank() != 3) return;
    auto key = permutation_canonical_key(h);
    if (found.count(key)) return;
    found.emplace(key, CatalogEntry{permutation_canonical(h), h, key, Realization{t, gens}});
  });
  std::vector<CatalogEntry> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

/// Relabels a catalog tree so that it realizes exactly h, if h is in the catalog.
inline std::optional<Realization> realize_from_catalog(const Subspace2& h,
                                                       const std::vector<CatalogEntry>& catalog) {
  if (h.rank() != 3) return std::nullopt;
  auto key = permutation_canonical_key(h);
  for (const auto& e : catalog) {
    if (e.key != key || e.realized.n() != h.n()) continue;
    auto perm = find_coordinate_permutation(e.realized, h);
    if (perm.empty()) continue;
    Realization r{relabel(e.realization.tree, perm), e.realization.generators};
    if (!(realized_subgroup(r.tree, r.generators) == h))
      throw std::logic_error("relabelled catalog tree does not realize the target");
    return r;
  }
  return std::nullopt;
}

namespace detail {

struct Skeleton {
  CP2Tree tree;
  std::vector<Gen3> chi;
  std::vector<std::uint8_t> free_points;  // mask of unused points per vertex
};

inline const std::vector<Skeleton>& rank2_skeletons() {
  static const std::vector<Skeleton> table = [] {
    std::vector<Skeleton> out;
    for (int m = 1; m <= 5; ++m)
      for_each_cp2_tree(m, false, false, [&](const CP2Tree& t) {
        Skeleton s;
        s.tree = t;
        s.chi = propagate(t).chi;
        s.free_points.assign(static_cast<std::size_t>(m), 7);
        for (const auto& e : t.edges) {
          std::uint8_t bit = static_cast<std::uint8_t>(1u << static_cast<int>(e.point));
          s.free_points[static_cast<std::size_t>(e.parent)] &= static_cast<std::uint8_t>(~bit);
          s.free_points[static_cast<std::size_t>(e.child)] &= static_cast<std::uint8_t>(~bit);
        }
        out.push_back(std::move(s));
      });
    return out;
  }();
  return table;
}

inline Point first_point(std::uint8_t mask) {
  for (int p = 0; p < 3; ++p)
    if (mask >> p & 1) return static_cast<Point>(p);
  throw std::logic_error("no free attachment point");
}

}  // namespace detail

/// Builds a CP^2-tree and abstract generators realizing a subgroup of rank <= 2:
/// a small hinge skeleton supplies one copy of each needed sign pattern and
/// chains of trivial edges supply the remaining copies.
inline Realization realize_rank2(const Subspace2& h) {
  if (h.rank() > 2) throw std::domain_error("realize_rank2 needs rank <= 2");
  const int n = h.n();
  if (n < 1) throw std::domain_error("realize_rank2 needs n >= 1");
  const int r = h.rank();
  // type of coordinate i: bit 0 = first basis row, bit 1 = second
  std::vector<int> type(static_cast<std::size_t>(n), 0);
  std::array<int, 4> need{0, 0, 0, 0};
  for (int i = 0; i < n; ++i) {
    int t = 0;
    for (int k = 0; k < r; ++k)
      if (h.basis()[static_cast<std::size_t>(k)] >> i & 1) t |= 1 << k;
    type[static_cast<std::size_t>(i)] = t;
    ++need[static_cast<std::size_t>(t)];
  }

  std::vector<std::vector<Gen3>> gen_choices;
  if (r == 0) gen_choices.push_back({});
  for (Gen3 a = 1; a < 8 && r >= 1; ++a) {
    if (r == 1) {
      gen_choices.push_back({a});
      continue;
    }
    for (Gen3 b = 1; b < 8; ++b)
      if (b != a) gen_choices.push_back({a, b});
  }

  for (const auto& sk : detail::rank2_skeletons()) {
    const int m = sk.tree.n;
    if (m > n) continue;
    for (const auto& gens : gen_choices) {
      std::array<int, 4> have{0, 0, 0, 0};
      std::array<int, 4> chain_from{-1, -1, -1, -1};
      std::vector<int> vtype(static_cast<std::size_t>(m));
      for (int v = 0; v < m; ++v) {
        int t = 0;
        for (std::size_t k = 0; k < gens.size(); ++k)
          if (eval_char(sk.chi[static_cast<std::size_t>(v)], gens[k])) t |= 1 << k;
        vtype[static_cast<std::size_t>(v)] = t;
        ++have[static_cast<std::size_t>(t)];
        if (sk.free_points[static_cast<std::size_t>(v)] && chain_from[static_cast<std::size_t>(t)] < 0)
          chain_from[static_cast<std::size_t>(t)] = v;
      }
      bool ok = true;
      for (int t = 0; t < 4 && ok; ++t) {
        if (have[static_cast<std::size_t>(t)] > need[static_cast<std::size_t>(t)]) ok = false;
        else if (have[static_cast<std::size_t>(t)] < need[static_cast<std::size_t>(t)] && chain_from[static_cast<std::size_t>(t)] < 0) ok = false;
      }
      if (!ok) continue;

      // assign coordinates: skeleton vertices first, then chains of copies
      std::array<std::vector<int>, 4> pool;
      for (int i = n - 1; i >= 0; --i) pool[static_cast<std::size_t>(type[static_cast<std::size_t>(i)])].push_back(i);
      std::vector<int> label(static_cast<std::size_t>(m));
      for (int v = 0; v < m; ++v) {
        auto& p = pool[static_cast<std::size_t>(vtype[static_cast<std::size_t>(v)])];
        label[static_cast<std::size_t>(v)] = p.back();
        p.pop_back();
      }
      CP2Tree out;
      out.n = n;
      out.base = label[static_cast<std::size_t>(sk.tree.base)];
      for (const auto& e : sk.tree.edges)
        out.edges.push_back({label[static_cast<std::size_t>(e.parent)], label[static_cast<std::size_t>(e.child)], e.kind, e.point});
      for (int t = 0; t < 4; ++t) {
        auto& p = pool[static_cast<std::size_t>(t)];
        if (p.empty()) continue;
        int prev = label[static_cast<std::size_t>(chain_from[static_cast<std::size_t>(t)])];
        std::uint8_t free = sk.free_points[static_cast<std::size_t>(chain_from[static_cast<std::size_t>(t)])];
        while (!p.empty()) {
          int cur = p.back();
          p.pop_back();
          Point pt = detail::first_point(free);
          out.edges.push_back({prev, cur, EdgeKind::Trivial, pt});
          free = static_cast<std::uint8_t>(7 & ~(1u << static_cast<int>(pt)));
          prev = cur;
        }
      }
      Realization res{out, gens};
      if (!(realized_subgroup(res.tree, res.generators) == h))
        throw std::logic_error("realize_rank2 produced a tree realizing the wrong group");
      return res;
    }
  }
  throw std::logic_error("realize_rank2: no skeleton fits");
}

}  // namespace nrz
