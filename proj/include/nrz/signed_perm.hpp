#pragma once

/** @file
 * Signed permutation matrices, i.e. the group O(n,Z) = (Z/2)^n x| S_n.
 *
 * A SignedPermutation sends basis vector e_i to sign[i] * e_{image[i]}, so the
 * column i of its matrix carries sign[i] in row image[i]. Points are 0-based
 * in memory and 1-based in every text format.
 */

#include "nrz/bigint.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace nrz {

struct CycleType {
  std::vector<int> parts;  // sorted ascending, fixed points optional
  int n = 0;               // ambient size, >= sum of parts

  CycleType() = default;
  CycleType(std::vector<int> p, int ambient = -1) : parts(std::move(p)) {
    std::sort(parts.begin(), parts.end());
    int s = 0;
    for (int x : parts) {
      if (x < 1) throw std::invalid_argument("cycle lengths must be positive");
      s += x;
    }
    n = ambient < 0 ? s : ambient;
    if (n < s) throw std::invalid_argument("cycle type exceeds ambient size");
  }

  int part_sum() const { return std::accumulate(parts.begin(), parts.end(), 0); }

  /// C_{d,n}: number of d-cycles, with implicit fixed points counted for d = 1.
  int count(int d) const {
    int c = static_cast<int>(std::count(parts.begin(), parts.end(), d));
    if (d == 1) c += n - part_sum();
    return c;
  }

  /// Number of cycles, implicit fixed points included.
  int num_cycles() const { return static_cast<int>(parts.size()) + (n - part_sum()); }

  /// All parts with implicit fixed points made explicit.
  std::vector<int> full_parts() const {
    std::vector<int> out(static_cast<std::size_t>(n - part_sum()), 1);
    out.insert(out.end(), parts.begin(), parts.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Parts greater than one.
  std::vector<int> nontrivial_parts() const {
    std::vector<int> out;
    for (int x : parts)
      if (x > 1) out.push_back(x);
    return out;
  }

  bool all_odd() const {
    return std::all_of(parts.begin(), parts.end(), [](int x) { return x % 2 == 1; });
  }

  bool operator==(const CycleType& o) const {
    return n == o.n && full_parts() == o.full_parts();
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts[i]);
    }
    return s;
  }
};

/// Parse "3,5,7"; ambient n defaults to the sum of the parts.
inline CycleType parse_cycle_type(const std::string& text, int ambient = -1) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad cycle length: " + tok);
    parts.push_back(v);
  }
  return CycleType(parts, ambient);
}

struct SignedCycleType {
  // (length, sign parity) sorted
  std::vector<std::pair<int, int>> cycles;
  bool operator==(const SignedCycleType& o) const { return cycles == o.cycles; }
  bool operator<(const SignedCycleType& o) const { return cycles < o.cycles; }
};

class SignedPermutation {
 public:
  SignedPermutation() = default;

  SignedPermutation(std::vector<int> image, std::vector<int> sign)
      : image_(std::move(image)), sign_(std::move(sign)) {
    if (image_.size() != sign_.size()) throw std::invalid_argument("image/sign length mismatch");
    if (image_.empty()) throw std::invalid_argument("n must be positive");
    std::vector<char> seen(image_.size(), 0);
    for (int x : image_) {
      if (x < 0 || x >= n() || seen[static_cast<std::size_t>(x)])
        throw std::invalid_argument("image is not a bijection");
      seen[static_cast<std::size_t>(x)] = 1;
    }
    for (int s : sign_)
      if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
  }

  static SignedPermutation identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    return SignedPermutation(im, std::vector<int>(static_cast<std::size_t>(n), 1));
  }

  static SignedPermutation diagonal(const std::vector<int>& signs) {
    auto f = identity(static_cast<int>(signs.size()));
    f.sign_ = signs;
    return SignedPermutation(f.image_, f.sign_);
  }

  /// Plain permutation from a 0-based image vector.
  static SignedPermutation permutation(const std::vector<int>& image) {
    return SignedPermutation(image, std::vector<int>(image.size(), 1));
  }

  /// Transposition of 0-based points a and b in S_n.
  static SignedPermutation transposition(int n, int a, int b) {
    auto f = identity(n);
    std::swap(f.image_[static_cast<std::size_t>(a)], f.image_[static_cast<std::size_t>(b)]);
    return f;
  }

  int n() const { return static_cast<int>(image_.size()); }
  const std::vector<int>& image() const { return image_; }
  const std::vector<int>& sign() const { return sign_; }
  int image(int i) const { return image_[static_cast<std::size_t>(i)]; }
  int sign(int i) const { return sign_[static_cast<std::size_t>(i)]; }

  bool is_identity() const {
    for (int i = 0; i < n(); ++i)
      if (image(i) != i || sign(i) != 1) return false;
    return true;
  }

  bool is_diagonal() const {
    for (int i = 0; i < n(); ++i)
      if (image(i) != i) return false;
    return true;
  }

  std::vector<std::vector<int>> matrix() const {
    std::vector<std::vector<int>> m(image_.size(), std::vector<int>(image_.size(), 0));
    for (int i = 0; i < n(); ++i) m[static_cast<std::size_t>(image(i))][static_cast<std::size_t>(i)] = sign(i);
    return m;
  }

  SignedPermutation inverse() const {
    std::vector<int> im(image_.size()), sg(image_.size());
    for (int i = 0; i < n(); ++i) {
      im[static_cast<std::size_t>(image(i))] = i;
      sg[static_cast<std::size_t>(image(i))] = sign(i);
    }
    return SignedPermutation(im, sg);
  }

  /// Cycles of the underlying permutation, each listed from its smallest point.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(image_.size(), 0);
    for (int i = 0; i < n(); ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      std::vector<int> c;
      for (int j = i; !seen[static_cast<std::size_t>(j)]; j = image(j)) {
        seen[static_cast<std::size_t>(j)] = 1;
        c.push_back(j);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  bool operator==(const SignedPermutation& o) const { return image_ == o.image_ && sign_ == o.sign_; }
  bool operator<(const SignedPermutation& o) const {
    return std::tie(image_, sign_) < std::tie(o.image_, o.sign_);
  }

  /// Text form "n; i1,...,in; s1,...,sn" with 1-based images.
  std::string to_text() const {
    std::string s = std::to_string(n()) + "; ";
    for (int i = 0; i < n(); ++i) s += (i ? "," : "") + std::to_string(image(i) + 1);
    s += "; ";
    for (int i = 0; i < n(); ++i) s += std::string(i ? "," : "") + (sign(i) > 0 ? "+" : "-");
    return s;
  }

 private:
  std::vector<int> image_;
  std::vector<int> sign_;
};

/// Matrix product f * g (apply g first).
inline SignedPermutation compose(const SignedPermutation& f, const SignedPermutation& g) {
  if (f.n() != g.n()) throw std::invalid_argument("compose: dimension mismatch");
  std::vector<int> im(static_cast<std::size_t>(f.n())), sg(static_cast<std::size_t>(f.n()));
  for (int i = 0; i < f.n(); ++i) {
    int j = g.image(i);
    im[static_cast<std::size_t>(i)] = f.image(j);
    sg[static_cast<std::size_t>(i)] = g.sign(i) * f.sign(j);
  }
  return SignedPermutation(im, sg);
}

inline SignedPermutation conjugate(const SignedPermutation& h, const SignedPermutation& f) {
  return compose(compose(h, f), h.inverse());
}

inline SignedCycleType signed_cycle_type(const SignedPermutation& f) {
  SignedCycleType t;
  for (const auto& c : f.cycles()) {
    int parity = 0;
    for (int j : c)
      if (f.sign(j) < 0) parity ^= 1;
    t.cycles.emplace_back(static_cast<int>(c.size()), parity);
  }
  std::sort(t.cycles.begin(), t.cycles.end());
  return t;
}

inline CycleType cycle_type(const SignedPermutation& f) {
  std::vector<int> parts;
  for (const auto& c : f.cycles()) parts.push_back(static_cast<int>(c.size()));
  return CycleType(parts, f.n());
}

inline SignedPermutation project(const SignedPermutation& f) {
  return SignedPermutation::permutation(f.image());
}

/// A cycle of length d contributes d, or 2d when its sign product is -1.
inline BigInt order(const SignedPermutation& f) {
  BigInt r = 1;
  for (const auto& [len, parity] : signed_cycle_type(f).cycles) {
    BigInt c = parity ? 2 * len : len;
    mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

inline bool is_odd_order(const SignedPermutation& f) {
  for (const auto& [len, parity] : signed_cycle_type(f).cycles)
    if (len % 2 == 0 || parity) return false;
  return true;
}

/// Number of odd-order signed lifts of a permutation with odd cycle type: 2^{n - c}.
inline BigInt count_odd_order_lifts(const CycleType& ct) {
  if (!ct.all_odd()) throw std::domain_error("count_odd_order_lifts: even cycle length");
  return pow2(static_cast<unsigned long>(ct.n - ct.num_cycles()));
}

inline SignedPermutation parse_signed_perm(const std::string& text) {
  auto split = [](const std::string& s, char d) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, d)) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      out.push_back(tok);
    }
    return out;
  };
  auto fields = split(text, ';');
  if (fields.size() != 3) throw std::invalid_argument("expected 'n; images; signs'");
  int n = std::stoi(fields[0]);
  auto ims = split(fields[1], ',');
  auto sgs = split(fields[2], ',');
  if (n <= 0 || static_cast<int>(ims.size()) != n || static_cast<int>(sgs.size()) != n)
    throw std::invalid_argument("length mismatch in signed permutation");
  std::vector<int> im, sg;
  for (const auto& t : ims) im.push_back(std::stoi(t) - 1);
  for (const auto& t : sgs) {
    if (t == "+" || t == "+1" || t == "1") sg.push_back(1);
    else if (t == "-" || t == "-1") sg.push_back(-1);
    else throw std::invalid_argument("bad sign: " + t);
  }
  return SignedPermutation(im, sg);
}

}  // namespace nrz
