#include <gtest/gtest.h>

#include <random>

#include "cosymp/subspace.hpp"
#include "support.hpp"

using namespace cosymp;
using testing_support::e;
using testing_support::ints;

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-12"), Rational(-12));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("3e-2"), Rational(3, 100));
  EXPECT_EQ(parse_rational("-2.5E1"), Rational(-25));
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rref, RankAndNullspaceExact) {
  Matrix<Rational> a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank(a), 2u);
  auto ns = nullspace(a);
  ASSERT_EQ(ns.size(), 1u);
  auto image = a.apply(ns[0]);
  for (const auto& x : image) EXPECT_EQ(x, 0);
}

TEST(Rref, InverseRoundTrip) {
  Matrix<Rational> a{{2, 1, 0}, {0, 1, 3}, {1, 0, 1}};
  auto inv = inverse(a);
  EXPECT_EQ(a * inv, Matrix<Rational>::identity(3));
  Matrix<double> ad = convert<double>(a);
  auto invd = inverse(ad);
  EXPECT_LE((ad * invd - Matrix<double>::identity(3)).max_abs(), 1e-12);
}

TEST(Rref, SingularDetected) {
  Matrix<Rational> a{{1, 2}, {2, 4}};
  EXPECT_FALSE(try_inverse(a).has_value());
  EXPECT_THROW(inverse(a), Error);
  Matrix<double> ad{{1.0, 2.0}, {2.0, 4.0 + 1e-14}};
  EXPECT_FALSE(invertible(ad));
}

TEST(Solve, Exact) {
  Matrix<Rational> a{{0, 1}, {-1, 0}};
  auto x = solve<Rational>(a, ints({1, 0}));
  EXPECT_EQ(x, ints({0, 1}));
}

TEST(Subspace, CanonicalFormIsUnique) {
  auto a = Subspace<Rational>::span(3, {ints({1, 1, 0}), ints({0, 1, 0})});
  auto b = Subspace<Rational>::span(3, {ints({2, 0, 0}), ints({3, 5, 0}), ints({1, 1, 0})});
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.basis()[0], ints({1, 0, 0}));
  EXPECT_EQ(a.basis()[1], ints({0, 1, 0}));
}

TEST(Subspace, SumIntersectMember) {
  auto s1 = Subspace<Rational>::span(3, {e(3, 0)});
  auto s2 = Subspace<Rational>::span(3, {e(3, 1)});
  EXPECT_EQ(sum(s1, s2), Subspace<Rational>::span(3, {e(3, 0), e(3, 1)}));
  auto a = Subspace<Rational>::span(3, {e(3, 0), e(3, 1)});
  auto b = Subspace<Rational>::span(3, {e(3, 1), e(3, 2)});
  EXPECT_EQ(intersect(a, b), Subspace<Rational>::span(3, {e(3, 1)}));
  EXPECT_TRUE(a.contains(std::span<const Rational>(ints({3, -7, 0}))));
  EXPECT_FALSE(a.contains(std::span<const Rational>(ints({0, 0, 1}))));
  EXPECT_EQ(intersect(a, Subspace<Rational>::zero(3)).dim(), 0u);
}

TEST(Subspace, DimensionMismatch) {
  auto a = Subspace<Rational>::full(3);
  auto b = Subspace<Rational>::full(5);
  EXPECT_THROW(sum(a, b), Error);
  EXPECT_THROW(intersect(a, b), Error);
}

TEST(Subspace, FloatEqualityWithinTolerance) {
  auto a = Subspace<double>::span(3, {{1.0, 1.0, 0.0}});
  auto b = Subspace<double>::span(3, {{2.0, 2.0 + 1e-12, 0.0}});
  EXPECT_EQ(a, b);
}

TEST(SubspaceProperty, IntersectionDimensionFormula) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 3 + 2 * (trial % 3);
    auto f = testing_support::random_subspace(rng, d);
    auto g = testing_support::random_subspace(rng, d);
    auto s = sum(f, g);
    auto i = intersect(f, g);
    EXPECT_EQ(s.dim() + i.dim(), f.dim() + g.dim());
    EXPECT_TRUE(f.contains(i));
    EXPECT_TRUE(g.contains(i));
    EXPECT_TRUE(s.contains(f));
    EXPECT_TRUE(s.contains(g));
  }
}
