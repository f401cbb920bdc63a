#ifndef FLATFIB_TESTS_SUPPORT_HPP
#define FLATFIB_TESTS_SUPPORT_HPP

// Shared test helpers: brute-force oracles built only on word enumeration
// and the definitions, and randomized conjugates of catalog instances.

#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "flatfib/flatfib.hpp"

namespace flatfib::testing {

// ---- oracles ---------------------------------------------------------------

class Ball {
 public:
  Ball(const std::vector<Isometry>& gens, std::size_t dim, std::size_t radius)
      : elems_(enumerate_ball(gens, dim, radius)), set_(elems_.begin(), elems_.end()) {}

  bool has(const Isometry& x) const { return set_.count(x) > 0; }
  const std::vector<Isometry>& elements() const { return elems_; }

 private:
  std::vector<Isometry> elems_;
  std::unordered_set<Isometry> set_;
};

/// Span of the pure translations among N's short words.
inline Subspace oracle_span(const Ball& n_ball, std::size_t dim) {
  std::vector<Vec> t;
  for (const auto& x : n_ball.elements())
    if (x.is_translation()) t.push_back(x.translation_part());
  return Subspace::span(dim, t);
}

/// Conjugates of N's generators by Γ's generators (both directions) all
/// appear among N's short words.
inline bool oracle_normal(const std::vector<Isometry>& gamma, const std::vector<Isometry>& n, const Ball& n_ball) {
  for (const auto& g : gamma)
    for (const auto& x : n)
      if (!n_ball.has(conjugate(g, x)) || !n_ball.has(conjugate(g.inverse(), x))) return false;
  return true;
}

/// Normal, and every short word of Γ that translates inside V and fixes V⊥
/// is a short word of N.
inline bool oracle_complete(const std::vector<Isometry>& gamma, const std::vector<Isometry>& n, const Ball& gamma_ball,
                            const Ball& n_ball, std::size_t dim) {
  if (!oracle_normal(gamma, n, n_ball)) return false;
  const Subspace v = oracle_span(n_ball, dim);
  const Subspace v_perp = orthogonal_complement(v);
  for (const auto& x : gamma_ball.elements())
    if (v.contains(x.translation_part()) && v_perp.is_fixed_by(x.linear_part()) && !n_ball.has(x)) return false;
  return true;
}

/// x ∈ NK iff some short word ν of N leaves ν⁻¹x acting trivially on V.
inline bool oracle_nk(const Ball& n_ball, const Subspace& v, const Isometry& x) {
  const Subspace v_perp = orthogonal_complement(v);
  for (const auto& nu : n_ball.elements()) {
    const Isometry k = nu.inverse() * x;
    if (v_perp.contains(k.translation_part()) && v.is_fixed_by(k.linear_part())) return true;
  }
  return false;
}

// ---- random instances ------------------------------------------------------

/// p ↦ λQp + c with rational λ > 0 and rational orthogonal Q.
struct Similarity {
  Rat scale{1};
  Mat q = Mat::identity(2);
  Vec shift{0, 0};

  Isometry conj(const Isometry& x) const {
    const Mat a = q * x.linear_part() * q.transpose();
    return Isometry(scale * (q * x.translation_part()) + shift - a * shift, a);
  }
  std::vector<Isometry> conj(const std::vector<Isometry>& xs) const {
    std::vector<Isometry> out;
    for (const auto& x : xs) out.push_back(conj(x));
    return out;
  }
  Subspace map(const Subspace& s) const {
    std::vector<Vec> b;
    for (const auto& v : s.basis()) b.push_back(q * v);
    return Subspace::span(2, b);
  }
};

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rat rational(int max_num, int max_den) { return Rat(uniform(-max_num, max_num), uniform(1, max_den)); }
  Rat unit_interval(int max_den) {
    const int d = uniform(1, max_den);
    return Rat(uniform(0, d - 1), d);
  }

  Mat orthogonal() {
    static const std::vector<Mat> pool{
        Mat::identity(2),
        Mat{{0, 1}, {1, 0}},
        Mat{{Rat(3, 5), Rat(-4, 5)}, {Rat(4, 5), Rat(3, 5)}},
        Mat{{Rat(5, 13), Rat(-12, 13)}, {Rat(12, 13), Rat(5, 13)}},
        Mat{{-1, 0}, {0, 1}},
        Mat{{0, -1}, {1, 0}},
        Mat{{Rat(4, 5), Rat(3, 5)}, {Rat(3, 5), Rat(-4, 5)}},
    };
    return pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))];
  }

  Similarity similarity() {
    static const std::vector<Rat> scales{Rat(1), Rat(2), Rat(1, 2), Rat(3), Rat(2, 3), Rat(5, 4)};
    Similarity s;
    s.scale = scales[static_cast<std::size_t>(uniform(0, static_cast<int>(scales.size()) - 1))];
    s.q = orthogonal();
    s.shift = Vec{rational(6, 6), rational(6, 6)};
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct Instance {
  std::string desc;
  SpaceGroup group;
  std::vector<Isometry> n;
};

/// A catalog row or pillow group with its designated N, moved by a random
/// similarity.
inline Instance random_instance(Random& r) {
  const int pick = r.uniform(1, 10);
  std::vector<Isometry> gens, n;
  std::string desc;
  if (pick <= 9) {
    const auto& e = entry(pick);
    gens = e.group.generators();
    n = e.n_generators;
    desc = "IT " + std::to_string(pick);
  } else {
    const Rat v = r.unit_interval(9);
    const auto p = pillow(v);
    gens = p.group.generators();
    n = p.n.generators();
    desc = "pillow v=" + v.to_string();
  }
  const Similarity s = r.similarity();
  return Instance{desc, SpaceGroup(s.conj(gens)), s.conj(n)};
}

}  // namespace flatfib::testing

#endif  // FLATFIB_TESTS_SUPPORT_HPP
