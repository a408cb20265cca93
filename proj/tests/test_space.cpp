#include <gtest/gtest.h>

#include <random>

#include "cosymp/space.hpp"
#include "support.hpp"

using namespace cosymp;
using testing_support::e;
using testing_support::ex1_space;
using testing_support::ints;

namespace {

Subspace<Rational> span_of(std::size_t d, std::initializer_list<std::size_t> idx) {
  std::vector<Vec<Rational>> vs;
  for (auto i : idx) vs.push_back(e(d, i));
  return Subspace<Rational>::span(d, vs);
}

}  // namespace

TEST(BuildSpace, StandardThree) {
  Matrix<Rational> b{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}};
  auto s = build_space<Rational>(b, ints({0, 0, 1}));
  EXPECT_EQ(s.reeb(), ints({0, 0, 1}));
  EXPECT_EQ(s.b(), standard_space<Rational>(1).b());
}

TEST(BuildSpace, Rejections) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code_of([] { build_space<Rational>(Matrix<Rational>(3, 3), ints({0, 0, 1})); }), ErrorCode::Degenerate);
  EXPECT_EQ(code_of([] { build_space<Rational>(Matrix<Rational>(3, 3), ints({0, 0, 0})); }), ErrorCode::TrivialPsi);
  EXPECT_EQ(code_of([] { build_space<Rational>(Matrix<Rational>(4, 4), ints({0, 0, 0, 1})); }),
            ErrorCode::EvenDimension);
  EXPECT_EQ(code_of([] {
              build_space<Rational>(Matrix<Rational>{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}, ints({0, 0, 1}));
            }),
            ErrorCode::NotAntisymmetric);
  EXPECT_EQ(code_of([] { build_space<Rational>(Matrix<Rational>(3, 3), ints({0, 1})); }),
            ErrorCode::DimensionMismatch);
}

TEST(BuildSpace, Ex1ReebIsE3) {
  auto s = ex1_space();
  EXPECT_EQ(s.reeb(), e(5, 2));
  EXPECT_NE(s.reeb(), e(5, 0));
}

TEST(Musical, Examples) {
  auto s = standard_space<Rational>(1);
  EXPECT_EQ(s.musical(e(3, 0)), ints({0, 1, 0}));
  EXPECT_EQ(s.musical(s.reeb()), s.psi());
  auto t = ex1_space();
  EXPECT_EQ(t.musical(e(5, 2)), ints({0, 0, 1, 0, 0}));
  EXPECT_EQ(s.musical_inverse(s.psi()), s.reeb());
  EXPECT_EQ(s.musical_inverse(ints({0, 0, 0})), ints({0, 0, 0}));
  EXPECT_EQ(s.musical_inverse(ints({1, 0, 0})), ints({0, -1, 0}));
  EXPECT_THROW(s.musical(ints({1, 0})), Error);
}

TEST(Orthogonal, Examples) {
  auto s = ex1_space();
  EXPECT_EQ(orthogonal(s, span_of(5, {1, 2, 3})), span_of(5, {1, 3}));
  EXPECT_NE(orthogonal(s, span_of(5, {1, 2, 3})), span_of(5, {0, 4}));
  EXPECT_EQ(orthogonal(s, s.reeb_line()), s.kernel_psi());
  EXPECT_EQ(orthogonal(s, Subspace<Rational>::full(5)).dim(), 0u);
  EXPECT_EQ(orthogonal(s, Subspace<Rational>::zero(5)), Subspace<Rational>::full(5));
  EXPECT_THROW(orthogonal(s, Subspace<Rational>::full(3)), Error);
}

TEST(Classify, Examples) {
  auto s = ex1_space();
  auto c23 = classify(s, span_of(5, {1, 2}));
  EXPECT_FALSE(c23.isotropic);
  EXPECT_FALSE(c23.lagrangian_like);
  // b(e₁,e₂) = 1, so span{e₁,e₂} is not isotropic; span{e₁,e₄} is.
  EXPECT_FALSE(classify(s, span_of(5, {0, 1})).isotropic);
  auto c14 = classify(s, span_of(5, {0, 3}));
  EXPECT_TRUE(c14.isotropic);
  EXPECT_TRUE(c14.lagrangian_like);
  EXPECT_EQ(orthogonal(s, span_of(5, {0, 3})), span_of(5, {0, 2, 3}));
  for (std::size_t n = 1; n <= 4; ++n) {
    auto st = standard_space<Rational>(n);
    std::vector<Vec<Rational>> es;
    for (std::size_t i = 0; i < n; ++i) es.push_back(e(2 * n + 1, i));
    EXPECT_TRUE(classify(st, Subspace<Rational>::span(2 * n + 1, es)).lagrangian_like);
  }
  auto reeb = classify(s, s.reeb_line());
  EXPECT_TRUE(reeb.contains_reeb);
  EXPECT_TRUE(reeb.cosymplectic_sub);
  EXPECT_FALSE(reeb.isotropic);
}

TEST(StandardSpace, Shapes) {
  EXPECT_EQ(standard_space<Rational>(2).reeb(), e(5, 4));
  auto s3 = standard_space<Rational>(3);
  EXPECT_EQ(s3.dim(), 7u);
  EXPECT_TRUE(invertible(s3.musical_matrix()));
  EXPECT_THROW(standard_space<Rational>(0), Error);
}

TEST(WeilSpace, Shapes) {
  auto w11 = weil_space<Rational>(1, 1);
  auto s1 = standard_space<Rational>(1);
  EXPECT_EQ(w11.b(), s1.b());
  EXPECT_EQ(w11.psi(), s1.psi());
  EXPECT_THROW(weil_forms<Rational>(1, 2), Error);
}

// The z-block of B + ψᵀψ is the all-ones matrix, so rank drops by l - 1.
TEST(WeilSpace, DegenerateForLargerAlgebras) {
  for (auto [n, l] : {std::pair<std::size_t, std::size_t>{1, 3}, {2, 3}, {1, 5}}) {
    auto [b, psi] = weil_forms<Rational>(n, l);
    EXPECT_EQ(b.rows(), (2 * n + 1) * l);
    EXPECT_EQ(rank(b + outer<Rational>(psi, psi)), 2 * n * l + 1);
    try {
      weil_space<Rational>(n, l);
      ADD_FAILURE() << "degenerate Weil forms accepted";
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), ErrorCode::Degenerate);
    }
    // The averaged z-field still solves η(ξ) = 1, ι_ξω = 0, just not uniquely.
    Vec<Rational> xi(b.rows(), Rational(0));
    for (std::size_t j = 0; j < l; ++j) xi[2 * n * l + j] = Rational(1, l);
    EXPECT_EQ(dot<Rational>(psi, xi), 1);
    for (const auto& x : b.apply(xi)) EXPECT_EQ(x, 0);
  }
}

class RandomSpaces : public ::testing::TestWithParam<std::size_t> {};

TEST_P(RandomSpaces, OrthogonalMatchesBruteForce) {
  std::mt19937_64 rng(11 + GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    auto s = testing_support::random_space(rng, GetParam());
    auto f = testing_support::random_subspace(rng, s.dim());
    EXPECT_EQ(orthogonal(s, f), testing_support::brute_force_orthogonal(s, f));
  }
}

TEST_P(RandomSpaces, OrthogonalityIdentitiesThatHold) {
  std::mt19937_64 rng(101 + GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    auto s = testing_support::random_space(rng, GetParam());
    auto f = testing_support::random_subspace(rng, s.dim());
    auto g = testing_support::random_subspace(rng, s.dim(), 1 + trial % 2);
    auto fp = orthogonal(s, f);
    auto gp = orthogonal(s, g);
    EXPECT_EQ(f.dim() + fp.dim(), s.dim());
    auto gf = intersect(f, g);
    EXPECT_TRUE(orthogonal(s, gf).contains(fp));
    EXPECT_EQ(orthogonal(s, sum(f, g)), intersect(fp, gp));
    EXPECT_EQ(sum(fp, gp), orthogonal(s, gf));
  }
}

// The left orthogonal twice is F transported by M⁻ᵀM, the reflection along
// ker ψ ⊕ span ξ; it returns F only when F splits along that sum.
TEST_P(RandomSpaces, DoubleOrthogonalIsReflectedSubspace) {
  std::mt19937_64 rng(303 + GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    auto s = testing_support::random_space(rng, GetParam());
    auto f = testing_support::random_subspace(rng, s.dim());
    const auto reflect = inverse(s.musical_matrix().transpose()) * s.musical_matrix();
    auto image = Subspace<Rational>::from_columns(reflect * f.basis_matrix());
    EXPECT_EQ(orthogonal(s, orthogonal(s, f)), image);
    auto split = sum(intersect(f, s.kernel_psi()), intersect(f, s.reeb_line()));
    if (split == f) {
      EXPECT_EQ(orthogonal(s, orthogonal(s, f)), f);
    }
  }
}

TEST_P(RandomSpaces, MusicalRoundTrip) {
  std::mt19937_64 rng(505 + GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    auto s = testing_support::random_space(rng, GetParam());
    auto v = testing_support::random_vector(rng, s.dim());
    EXPECT_EQ(s.musical_inverse(s.musical(v)), v);
    EXPECT_EQ(s.musical(s.musical_inverse(v)), v);
  }
}

TEST_P(RandomSpaces, ClassificationLaws) {
  std::mt19937_64 rng(707 + GetParam());
  for (int trial = 0; trial < 60; ++trial) {
    auto s = testing_support::random_space(rng, GetParam());
    Subspace<Rational> f = testing_support::random_subspace(rng, s.dim());
    auto c = classify(s, f);
    auto fp = orthogonal(s, f);
    EXPECT_EQ(c.isotropic, classify(s, fp).coisotropic);
    if (c.isotropic) {
      EXPECT_FALSE(c.contains_reeb);
      EXPECT_LE(f.dim(), s.n());
    }
    EXPECT_EQ(c.lagrangian_like, c.isotropic && f.dim() + 1 == fp.dim());
    EXPECT_EQ(c.cosymplectic_sub, intersect(f, fp).dim() == 0 && sum(f, fp).dim() == s.dim());
  }
}

TEST_P(RandomSpaces, ExactAndFloatAgree) {
  std::mt19937_64 rng(909 + GetParam());
  for (int trial = 0; trial < 30; ++trial) {
    auto s = testing_support::random_space(rng, GetParam(), 9);
    auto f = testing_support::random_subspace(rng, s.dim());
    auto sd = build_space<double>(convert<double>(s.b()), convert<double>(s.psi()));
    std::vector<Vec<double>> basis;
    for (const auto& v : f.basis()) basis.push_back(convert<double>(v));
    auto fd = Subspace<double>::span(s.dim(), basis);
    EXPECT_EQ(classify(s, f), classify(sd, fd));
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, RandomSpaces, ::testing::Values(3u, 5u, 7u));
