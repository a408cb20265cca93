#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cosymp/moser.hpp"

using namespace cosymp;

namespace {

std::vector<Point> grid2(double lo, double hi, std::size_t res) { return sample_box({lo, lo}, {hi, hi}, res); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Models, FlatStandardReeb) {
  auto m = flat_standard(2);
  auto v = validate_model(m);
  EXPECT_EQ(v.max_domega, 0.0);
  EXPECT_EQ(v.max_reeb_residual, 0.0);
  for (const auto& x : model_samples(m)) {
    auto xi = reeb_at(m, x);
    EXPECT_EQ(xi, (Point{0, 0, 0, 0, 1}));
  }
}

TEST(Models, TorusValid) { EXPECT_NO_THROW(torus_standard(1)); }

TEST(Models, NonClosedOmegaRejected) {
  // ω = dx₁∧dx₂ + x₁ dx₄∧dx₅ has dω = dx₁∧dx₄∧dx₅.
  auto omega = [](std::span<const double> x) {
    Matrix<double> m(5, 5);
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
    m(3, 4) = 1.0 + x[0];
    m(4, 3) = -(1.0 + x[0]);
    return m;
  };
  auto eta = [](std::span<const double>) { return Covector{0, 0, 1, 0, 0}; };
  EXPECT_EQ(code_of([&] { custom_model(5, omega, eta, {Domain::Kind::Flat, Point(5, -0.5), Point(5, 0.5)}); }),
            ErrorCode::NotClosed);
}

TEST(Models, WeilChartIsPointwiseDegenerate) {
  EXPECT_NO_THROW(weil_chart(1, 1));
  EXPECT_EQ(code_of([] { weil_chart(1, 3); }), ErrorCode::PointwiseDegenerate);
}

TEST(Submanifold, ConstantHeightIsLagrangian) {
  auto m = flat_standard(2);
  ParamSubmanifold l;
  l.k = 2;
  l.param = [](std::span<const double> u) { return Point{u[0], u[1], 0.0, 0.0, 0.4}; };
  l.samples = grid2(-1, 1, 9);
  auto r = check_lagrangian_submanifold(m, l);
  EXPECT_TRUE(r.verdict);
  EXPECT_LE(r.max_omega_pullback, 1e-12);
  EXPECT_LE(r.max_eta_pullback, 1e-12);
}

TEST(Submanifold, GraphOfSquareIsRefuted) {
  auto m = flat_standard(2);
  ParamSubmanifold l;
  l.k = 2;
  l.param = [](std::span<const double> u) { return Point{u[0], u[1], 0.0, 0.0, u[0] * u[0]}; };
  l.samples = grid2(-1, 1, 9);
  auto r = check_lagrangian_submanifold(m, l);
  EXPECT_FALSE(r.verdict);
  EXPECT_NEAR(r.max_eta_pullback, 2.0, 2e-2 * 2.0);
  EXPECT_LE(r.max_omega_pullback, 1e-12);
}

TEST(Submanifold, RankDeficient) {
  auto m = flat_standard(1);
  ParamSubmanifold l;
  l.k = 1;
  l.param = [](std::span<const double> u) { return Point{u[0] * u[0], 0.0, 0.0}; };
  l.samples = {{0.0}};
  EXPECT_EQ(code_of([&] { check_lagrangian_submanifold(m, l); }), ErrorCode::RankDeficient);
}

TEST(Graph, IdentityTranslationScaling) {
  auto m = flat_standard(1);
  auto samples = sample_box(Point(3, -1), Point(3, 1), 5);
  auto id = check_graph_cosymplectomorphism(m, m, [](std::span<const double> x) { return Point(x.begin(), x.end()); },
                                            std::nullopt, samples);
  EXPECT_TRUE(id.verdict);
  auto tr = check_graph_cosymplectomorphism(
      m, m, [](std::span<const double> x) { return Point{x[0] + 0.3, x[1], x[2] - 0.2}; }, std::nullopt, samples);
  EXPECT_TRUE(tr.verdict);
  auto sc = check_graph_cosymplectomorphism(
      m, m, [](std::span<const double> x) { return Point{2 * x[0], x[1], x[2]}; }, std::nullopt, samples);
  EXPECT_FALSE(sc.verdict);
  EXPECT_NEAR(sc.max_omega_residual, 1.0, 1e-9);
  EXPECT_EQ(sc.verdict, sc.direct_verdict);
}

TEST(Graph, RoutesAgreeOnRandomMaps) {
  auto m = flat_standard(1);
  auto samples = sample_box(Point(3, -0.5), Point(3, 0.5), 4);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng), c = trial % 2 ? 0.0 : u(rng);
    // shear (q, p + a q, z) is symplectic; the c term breaks it
    MapField phi = [=](std::span<const double> x) { return Point{x[0] + c * x[0] * x[0], x[1] + a * x[0], x[2] + b}; };
    auto r = check_graph_cosymplectomorphism(m, m, phi, std::nullopt, samples);
    EXPECT_EQ(r.verdict, r.direct_verdict);
    EXPECT_NEAR(r.max_omega_residual, r.direct_omega_residual, 1e-12);
    EXPECT_EQ(r.verdict, c == 0.0);
  }
}

TEST(OneFormGraph, Examples) {
  auto samples = grid2(-1, 1, 7);
  auto exact = check_oneform_graph(2, [](std::span<const double> x) { return Covector{x[1], x[0]}; }, std::nullopt,
                                   samples, 0.7);
  EXPECT_TRUE(exact.verdict);
  auto twist = check_oneform_graph(2, [](std::span<const double> x) { return Covector{0.0, x[0]}; }, std::nullopt,
                                   samples, 0.0);
  EXPECT_FALSE(twist.verdict);
  EXPECT_NEAR(twist.max_closedness_defect, 1.0, 1e-9);
  EXPECT_NEAR(twist.max_omega_pullback, 1.0, 1e-9);
  auto zero = check_oneform_graph(2, [](std::span<const double>) { return Covector{0.0, 0.0}; }, std::nullopt,
                                  samples, 0.0);
  EXPECT_TRUE(zero.verdict);
}

TEST(Homotopy, Examples) {
  HomotopyOperator h2({0.0, 0.0});
  TwoFormField area = [](std::span<const double>) { return Matrix<double>{{0.0, 1.0}, {-1.0, 0.0}}; };
  auto p = h2.primitive(area, Point{0.4, -0.7});
  EXPECT_NEAR(p[0], 0.5 * 0.7, 1e-14);
  EXPECT_NEAR(p[1], 0.5 * 0.4, 1e-14);
  HomotopyOperator h1({0.0});
  OneFormField dx = [](std::span<const double>) { return Covector{1.0}; };
  EXPECT_NEAR(h1.primitive(dx, Point{0.8}), 0.8, 1e-14);
  TwoFormField zero = [](std::span<const double>) { return Matrix<double>(2, 2); };
  EXPECT_EQ(h2.primitive(zero, Point{0.3, 0.2}), (Covector{0.0, 0.0}));
}

TEST(Homotopy, NotClosedRejected) {
  HomotopyOperator h({0.0, 0.0});
  OneFormField twist = [](std::span<const double> x) { return Covector{0.0, x[0]}; };
  EXPECT_EQ(code_of([&] { h.checked_primitive(twist, Point{0.1, 0.2}); }), ErrorCode::NotClosed);
}

// d(Iα) = α for random closed polynomial 2-forms α = dθ with θ a cubic
// 1-form, so α vanishes at the center only through its constant part.
TEST(Homotopy, RandomClosedTwoForms) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HomotopyOperator h(Point(3, 0.0));
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Polynomial> theta(3, Polynomial(3));
    for (auto& t : theta)
      for (unsigned a = 0; a <= 3; ++a)
        for (unsigned b = 0; a + b <= 3; ++b)
          for (unsigned c = 0; a + b + c <= 3; ++c) t.add({a, b, c}, u(rng));
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> upper;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        Polynomial comp = theta[j].derivative(i);
        const Polynomial minus = theta[i].derivative(j);
        for (const auto& [e, c] : minus.terms()) comp.add(e, -c);
        upper[{i, j}] = comp;
      }
    TwoFormField alpha = as_field(3, upper);
    OneFormField prim = [&](std::span<const double> x) { return h.checked_primitive(alpha, x); };
    for (int s = 0; s < 20; ++s) {
      Point x{0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng)};
      std::vector<Covector> grad(3);
      for (std::size_t i = 0; i < 3; ++i) grad[i] = fd::partial(prim, x, i, 1e-3);
      auto a = alpha(x);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) EXPECT_NEAR(grad[i][j] - grad[j][i], a(i, j), 1e-6);
    }
  }
}

TEST(Moser, IdenticalModelsGiveIdentity) {
  auto m = flat_standard(1, 0.3);
  MoserConfig cfg;
  cfg.seeds_per_axis = 3;
  cfg.steps = 8;
  MoserFlow flow(m, m, cfg);
  auto r = flow.run(8);
  EXPECT_LE(r.omega_residual, 1e-9);
  EXPECT_EQ(r.origin_drift, 0.0);
  for (const auto& x : flow.seeds()) EXPECT_EQ(flow.flow(x, 8), x);
}

TEST(Moser, DisagreementAtOriginRejected) {
  auto m0 = flat_standard(1, 0.3);
  auto m1 = custom_model(
      3, [](std::span<const double>) { return Matrix<double>{{0, 2, 0}, {-2, 0, 0}, {0, 0, 0}}; },
      [](std::span<const double>) { return Covector{0, 0, 1}; },
      {Domain::Kind::Flat, Point(3, -0.3), Point(3, 0.3)});
  EXPECT_EQ(code_of([&] { MoserFlow(m0, m1); }), ErrorCode::StructuresDisagreeAtQ);
}

TEST(Moser, PerturbedOmegaSmallGrid) {
  MoserConfig cfg;
  cfg.seeds_per_axis = 3;
  MoserFlow flow(flat_standard(1, 0.3), perturbed_omega_model(0.3), cfg);
  auto r = flow.run(16);
  EXPECT_LE(r.omega_residual, 1e-4);
  EXPECT_LE(r.eta_residual, 1e-4);
  EXPECT_LE(r.origin_drift, 1e-12);
  EXPECT_LE(r.reeb_contraction, 1e-12);
  // analytic field: X_q = −3q³/(40a), a = 1 + 0.3 t q²
  const Point x{0.2, 0.1, 0.0};
  auto v = flow.velocity(0.5, x);
  const double a = 1.0 + 0.15 * 0.04;
  EXPECT_NEAR(v[0], -3.0 * 0.008 / (40.0 * a), 1e-13);
  EXPECT_NEAR(v[1], -3.0 * 0.1 * 0.04 / (40.0 * a), 1e-13);
}

TEST(Moser, PerturbedEtaSmallGrid) {
  MoserConfig cfg;
  cfg.seeds_per_axis = 3;
  MoserFlow flow(flat_standard(1, 0.3), perturbed_eta_model(0.3), cfg);
  auto r = flow.run(16);
  EXPECT_LE(r.omega_residual, 1e-4);
  EXPECT_LE(r.eta_residual, 1e-4);
  EXPECT_LE(r.origin_speed, 1e-12);
  const Point x{0.2, 0.0, 0.3};
  auto v = flow.velocity(1.0, x);
  EXPECT_NEAR(v[2], -0.3 * 0.04 / 20.0 / (1.0 + 0.04 / 20.0), 1e-13);
}
