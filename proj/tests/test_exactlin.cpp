#include <gtest/gtest.h>

#include <random>

#include "flatfib/lattice.hpp"
#include "flatfib/linalg.hpp"
#include "flatfib/rational.hpp"

using namespace flatfib;

namespace {

std::mt19937_64 rng(20240601);

int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
Rat small_rat() { return Rat(uniform(-4, 4), uniform(1, 3)); }

Vec random_vec(std::size_t n) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = small_rat();
  return v;
}

Subspace random_subspace(std::size_t n) {
  std::vector<Vec> gens;
  const int k = uniform(0, static_cast<int>(n));
  for (int i = 0; i < k; ++i) gens.push_back(random_vec(n));
  return Subspace::span(n, gens);
}

}  // namespace

TEST(Rational, NormalizesSignAndGcd) {
  const Rat r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rat(0, 5), Rat(0));
  EXPECT_EQ(Rat(0, 5).den(), 1);
}

TEST(Rational, FloorAndFrac) {
  EXPECT_EQ(Rat(-1, 2).floor(), -1);
  EXPECT_EQ(Rat(-1, 2).frac(), Rat(1, 2));
  EXPECT_EQ(Rat(7, 3).floor(), 2);
  EXPECT_EQ(Rat(-6, 3).frac(), Rat(0));
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rat(1, 2) + Rat(1, 3), Rat(5, 6));
  EXPECT_EQ(Rat(1, 2) * Rat(2, 3), Rat(1, 3));
  EXPECT_EQ(Rat(1, 2) / Rat(-1, 4), Rat(-2));
  EXPECT_LT(Rat(1, 3), Rat(1, 2));
  EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rat::parse("-3/6"), Rat(-1, 2));
  EXPECT_EQ(Rat::parse("+4"), Rat(4));
  EXPECT_THROW(Rat::parse("1/0"), parse_error);
  EXPECT_THROW(Rat::parse("x"), parse_error);
  EXPECT_THROW(Rat::parse(""), parse_error);
  EXPECT_THROW(Rat::parse("1/2/3"), parse_error);
}

TEST(Rational, OverflowIsReported) {
  const Rat big(std::numeric_limits<Rat::int_type>::max() / 2);
  EXPECT_THROW(big * Rat(4), std::overflow_error);
}

TEST(LinAlg, RrefAndNullspace) {
  const Mat m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  const auto r = rref(m);
  EXPECT_EQ(r.rank, 2u);
  const auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE((m * ns[0]).is_zero());
}

TEST(LinAlg, InverseRoundTrip) {
  const Mat m{{Rat(3, 5), Rat(-4, 5)}, {Rat(4, 5), Rat(3, 5)}};
  EXPECT_EQ(m * inverse(m), Mat::identity(2));
  EXPECT_EQ(inverse(m), m.transpose());
  EXPECT_THROW(inverse(Mat{{1, 2}, {2, 4}}), std::domain_error);
}

TEST(LinAlg, SubspaceCanonicalForm) {
  const auto a = Subspace::span(2, {Vec{2, 4}});
  const auto b = Subspace::span(2, {Vec{Rat(-1, 3), Rat(-2, 3)}});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains(Vec{1, 2}));
  EXPECT_FALSE(a.contains(Vec{1, 0}));
}

TEST(LinAlg, EigenspaceOfReflection) {
  const Mat b{{1, 0}, {0, -1}};
  EXPECT_EQ(eigenspace(b, Rat(-1)), Subspace::span(2, {Vec{0, 1}}));
  EXPECT_EQ(eigenspace(b, Rat(1)), Subspace::span(2, {Vec{1, 0}}));
  EXPECT_TRUE(eigenspace(b, Rat(2)).is_zero());
  EXPECT_THROW(eigenspace(b, Rat(1), Subspace::span(2, {Vec{1, 1}})), rejected_input);
}

TEST(LinAlgProperty, EigenvectorsSatisfyEquation) {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(2, 3));
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(uniform(-2, 2));
    const Rat lambda(uniform(-2, 2));
    const Subspace e = eigenspace(m, lambda);
    for (const auto& v : e.basis()) EXPECT_EQ(m * v, lambda * v);
  }
}

TEST(LinAlgProperty, IntersectLaws) {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(2, 3));
    const auto a = random_subspace(n), b = random_subspace(n), c = random_subspace(n);
    EXPECT_EQ(intersect(a, b), intersect(b, a));
    EXPECT_EQ(intersect(intersect(a, b), c), intersect(a, intersect(b, c)));
    EXPECT_EQ(intersect(a, a), a);
    EXPECT_TRUE(a.contains(intersect(a, b)));
  }
}

TEST(LinAlgProperty, ComplementIsInvolution) {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(2, 3));
    const auto a = random_subspace(n);
    const auto c = orthogonal_complement(a);
    EXPECT_EQ(orthogonal_complement(c), a);
    EXPECT_EQ(a.dim() + c.dim(), n);
    for (const auto& u : a.basis())
      for (const auto& v : c.basis()) EXPECT_EQ(dot(u, v), Rat(0));
  }
}

TEST(Lattice, HermiteFormIsCanonical) {
  const auto a = Lattice::generated_by(2, {Vec{2, 0}, Vec{1, 1}, Vec{0, 2}});
  const auto b = Lattice::generated_by(2, {Vec{1, 1}, Vec{1, -1}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rank(), 2u);
  EXPECT_TRUE(a.contains(Vec{3, 1}));
  EXPECT_FALSE(a.contains(Vec{1, 0}));
}

TEST(Lattice, HalfIntegerGenerators) {
  const auto l = Lattice::generated_by(2, {Vec{1, 0}, Vec{Rat(1, 2), Rat(1, 2)}});
  EXPECT_TRUE(l.contains(Vec{0, 1}));
  EXPECT_FALSE(l.contains(Vec{Rat(1, 2), 0}));
  EXPECT_EQ(lattice_index(l, Lattice::standard(2)), std::optional<Rat::int_type>(2));
}

TEST(Lattice, SolveExamples) {
  const auto z2 = Lattice::standard(2);
  const auto e1 = Subspace::span(2, {Vec{1, 0}});
  const auto x = lattice_solve(z2, Vec{Rat(1, 2), 0}, e1);
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(e1.contains(*x));
  EXPECT_TRUE(z2.contains(*x - Vec{Rat(1, 2), 0}));
  EXPECT_FALSE(lattice_solve(z2, Vec{Rat(1, 2), Rat(1, 2)}, e1).has_value());
  const auto diag = Lattice::generated_by(2, {Vec{1, 1}});
  const auto y = lattice_solve(diag, Vec{0, 0}, Subspace::zero(2));
  ASSERT_TRUE(y.has_value());
  EXPECT_TRUE(y->is_zero());
}

TEST(Lattice, IntersectWithLine) {
  const auto l = Lattice::generated_by(2, {Vec{1, 0}, Vec{Rat(1, 3), 1}});
  const auto along = lattice_intersect(l, Subspace::span(2, {Vec{0, 1}}));
  ASSERT_EQ(along.rank(), 1u);
  EXPECT_EQ(along, Lattice::generated_by(2, {Vec{0, 3}}));
}

TEST(LatticeProperty, SolveAgreesWithEnumeration) {
  int solvable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int rank = uniform(1, 2);
    std::vector<Vec> gens;
    for (int i = 0; i < rank; ++i) gens.push_back(Vec{Rat(uniform(-2, 2), uniform(1, 2)), Rat(uniform(-2, 2), uniform(1, 2))});
    const auto l = Lattice::generated_by(2, gens);
    const Vec target{Rat(uniform(-3, 3), uniform(1, 4)), Rat(uniform(-3, 3), uniform(1, 4))};
    Subspace constraint = Subspace::zero(2);
    switch (uniform(0, 2)) {
      case 0: break;
      case 1: constraint = Subspace::span(2, {Vec{Rat(uniform(-2, 2)), Rat(uniform(-2, 2))}}); break;
      default: constraint = Subspace::full(2);
    }
    bool brute = false;
    for (int a = -60; a <= 60 && !brute; ++a)
      for (int b = -60; b <= 60 && !brute; ++b) {
        Vec x = target + Rat(a) * gens[0];
        if (rank == 2) x = x + Rat(b) * gens[1];
        brute = constraint.contains(x);
      }
    const auto got = lattice_solve(l, target, constraint);
    if (got) {
      EXPECT_TRUE(constraint.contains(*got));
      EXPECT_TRUE(l.contains(*got - target));
      ++solvable;
    }
    EXPECT_EQ(got.has_value(), brute) << "trial " << trial << " lattice " << l.to_string() << " target "
                                      << target.to_string() << " constraint " << constraint.to_string();
  }
  EXPECT_GT(solvable, 0);
}
