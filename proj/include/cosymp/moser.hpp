#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cosymp/chart.hpp"
#include "cosymp/homotopy.hpp"

namespace cosymp {

struct MoserConfig {
  double box_radius = 0.3;
  std::size_t steps = 64;
  std::size_t seeds_per_axis = 9;
  double stencil = 1e-3;        // spacing of the neighbour trajectories used for Dθ
  double escape_factor = 1.25;  // trajectories must stay in escape_factor · box_radius
  double tol_lin = kTolLin;
  double tol_pde = kTolPde;
};

struct MoserReport {
  double omega_residual = 0.0;  // max ‖θ*ω₁ − ω₀‖ over seeds
  double eta_residual = 0.0;    // max ‖θ*η₁ − η₀‖
  double origin_drift = 0.0;    // ‖θ(0)‖
  double origin_speed = 0.0;    // max_t ‖X_t(0)‖
  double reeb_contraction = 0.0;  // max ‖ι_{ξ_t}(ω₁ − ω₀)‖ at samples
  double reeb_beta_gradient = 0.0;  // max ‖d(β(ξ_t))‖ at samples
  double reeb_normalization = 0.0;  // max |η_t(ξ_t) − 1| at samples
  std::size_t steps = 0;
  std::size_t seeds = 0;
};

/// Relative Moser flow between two flat models agreeing at the origin.
/// X_t solves Ĩ_t(X_t) = −β − f η_t with β, f the radial primitives of
/// ω₁ − ω₀ and η₁ − η₀; θ is its time-one RK4 flow.
class MoserFlow {
 public:
  MoserFlow(ChartModel m0, ChartModel m1, MoserConfig cfg = {})
      : m0_(std::move(m0)), m1_(std::move(m1)), cfg_(cfg), h_(Point(m0_.dim, 0.0), cfg.tol_pde) {
    if (m0_.dim != m1_.dim) throw Error(ErrorCode::DomainMismatch, "models differ in dimension");
    const Point origin(m0_.dim, 0.0);
    if ((m0_.omega(origin) - m1_.omega(origin)).max_abs() > cfg_.tol_lin ||
        max_abs<double>(axpy<double>(-1.0, m1_.eta(origin), m0_.eta(origin))) > cfg_.tol_lin) {
      throw Error(ErrorCode::StructuresDisagreeAtQ, "structures differ at the origin");
    }
    domega_ = [this](std::span<const double> x) { return m1_.omega(x) - m0_.omega(x); };
    deta_ = [this](std::span<const double> x) { return axpy<double>(-1.0, m0_.eta(x), m1_.eta(x)); };
  }

  const MoserConfig& config() const noexcept { return cfg_; }

  CosymplecticSpace<double> space_at(double t, std::span<const double> x) const {
    Matrix<double> w = m0_.omega(x) + t * domega_(x);
    Covector e = axpy<double>(t, deta_(x), m0_.eta(x));
    try {
      return build_space<double>(std::move(w), std::move(e), cfg_.tol_lin);
    } catch (const Error& err) {
      throw Error(ErrorCode::DegenerateInterpolation, std::string("interpolated structure fails: ") + err.what());
    }
  }

  Covector beta(std::span<const double> x) const { return h_.primitive(domega_, x); }
  double f(std::span<const double> x) const { return h_.primitive(deta_, x); }

  /// Solves M_tᵀ X = −β − f η_t with M_t = Ω_t + η_tᵀη_t by LU; the full
  /// structure checks (Reeb, η_t(ξ_t) = 1) run at samples in `run`.
  Point velocity(double t, std::span<const double> x) const {
    const std::size_t d = m0_.dim;
    const Matrix<double> w0 = m0_.omega(x), w1 = m1_.omega(x);
    const Covector e0 = m0_.eta(x), e1 = m1_.eta(x);
    Eigen::MatrixXd mt(d, d);
    Eigen::VectorXd et(d);
    for (std::size_t i = 0; i < d; ++i) et(i) = e0[i] + t * (e1[i] - e0[i]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) mt(j, i) = w0(i, j) + t * (w1(i, j) - w0(i, j)) + et(i) * et(j);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(mt);
    if (!(lu.rcond() > cfg_.tol_lin)) throw Error(ErrorCode::DegenerateInterpolation, "Ω_t + η_tᵀη_t is singular");
    const auto [b, fx] = h_.primitive_pair(m1_.omega, m0_.omega, m1_.eta, m0_.eta, x);
    Eigen::VectorXd rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs(i) = -b[i] - fx * et(i);
    const Eigen::VectorXd v = lu.solve(rhs);
    return Point(v.data(), v.data() + d);
  }

  /// θ(x0) by RK4 with `steps` uniform steps on [0, 1].
  Point flow(std::span<const double> x0, std::size_t steps) const {
    Point x(x0.begin(), x0.end());
    const double dt = 1.0 / static_cast<double>(steps);
    const double limit = cfg_.escape_factor * cfg_.box_radius;
    auto shifted = [](const Point& a, const Point& k, double c) {
      Point out = a;
      for (std::size_t i = 0; i < a.size(); ++i) out[i] += c * k[i];
      return out;
    };
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = static_cast<double>(s) * dt;
      const Point k1 = velocity(t, x);
      const Point k2 = velocity(t + 0.5 * dt, shifted(x, k1, 0.5 * dt));
      const Point k3 = velocity(t + 0.5 * dt, shifted(x, k2, 0.5 * dt));
      const Point k4 = velocity(t + dt, shifted(x, k3, dt));
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (max_abs<double>(x) > limit) throw Error(ErrorCode::FlowEscapedBox, "trajectory left the box");
    }
    return x;
  }

  std::vector<Point> seeds() const {
    const std::size_t d = m0_.dim;
    return sample_box(Point(d, -cfg_.box_radius), Point(d, cfg_.box_radius), cfg_.seeds_per_axis,
                      std::size_t(1) << 20);
  }

  /// Pullback residuals at every seed; Dθ from neighbour trajectories at ±δ, ±2δ.
  MoserReport run(std::size_t steps) const {
    MoserReport r;
    r.steps = steps;
    const std::size_t d = m0_.dim;
    const double dl = cfg_.stencil;
    for (const auto& x : seeds()) {
      const Point y = flow(x, steps);
      Matrix<double> j(d, d);
      for (std::size_t c = 0; c < d; ++c) {
        auto at = [&](double s) {
          Point p = x;
          p[c] += s * dl;
          return flow(p, steps);
        };
        const Point a = at(-2.0), b = at(-1.0), e = at(1.0), g = at(2.0);
        for (std::size_t i = 0; i < d; ++i) j(i, c) = (a[i] - 8.0 * b[i] + 8.0 * e[i] - g[i]) / (12.0 * dl);
      }
      r.omega_residual = std::max(r.omega_residual, (j.transpose() * m1_.omega(y) * j - m0_.omega(x)).max_abs());
      r.eta_residual =
          std::max(r.eta_residual, max_abs<double>(axpy<double>(-1.0, m0_.eta(x), j.apply_left(m1_.eta(y)))));
      ++r.seeds;
    }
    const Point origin(d, 0.0);
    r.origin_drift = max_abs<double>(flow(origin, steps));
    for (std::size_t s = 0; s <= steps; ++s)
      r.origin_speed = std::max(r.origin_speed, max_abs<double>(velocity(static_cast<double>(s) / steps, origin)));
    runtime_checks(r);
    return r;
  }

 private:
  void runtime_checks(MoserReport& r) const {
    const std::size_t d = m0_.dim;
    const double h = 1e-3;
    for (const auto& x : seeds()) {
      for (double t : {0.0, 0.5, 1.0}) {
        const auto st = space_at(t, x);
        const Point xi = st.reeb();
        r.reeb_normalization = std::max(r.reeb_normalization, std::fabs(st.psi_of(xi) - 1.0));
        r.reeb_contraction = std::max(r.reeb_contraction, max_abs<double>(domega_(x).apply_left(xi)));
        auto beta_xi = [&](std::span<const double> p) { return dot<double>(beta(p), space_at(t, p).reeb()); };
        for (std::size_t c = 0; c < d; ++c)
          r.reeb_beta_gradient = std::max(r.reeb_beta_gradient, std::fabs(fd::partial(beta_xi, x, c, h)));
      }
    }
  }

  ChartModel m0_;
  ChartModel m1_;
  MoserConfig cfg_;
  HomotopyOperator h_;
  TwoFormField domega_;
  OneFormField deta_;
};

struct ConvergenceStudy {
  std::vector<std::size_t> steps;
  std::vector<double> residuals;  // max(ω, η) residual per step count
  std::vector<double> ratios;     // residual[k] / residual[k+1] where both exceed the floor
  double floor = 1e-11;
  bool measurable = false;
  double min_ratio = 0.0;
};

/// Residuals along a doubling ladder of RK4 step counts. Ratios are only
/// formed where both residuals are above `floor`; below it roundoff dominates.
inline ConvergenceStudy moser_convergence(const MoserFlow& flow, std::vector<std::size_t> ladder,
                                          double floor = 1e-11) {
  ConvergenceStudy c;
  c.floor = floor;
  c.steps = std::move(ladder);
  for (auto k : c.steps) {
    const auto rep = flow.run(k);
    c.residuals.push_back(std::max(rep.omega_residual, rep.eta_residual));
  }
  c.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < c.residuals.size(); ++i) {
    if (c.residuals[i] > floor && c.residuals[i + 1] > floor) {
      const double ratio = c.residuals[i] / c.residuals[i + 1];
      c.ratios.push_back(ratio);
      c.min_ratio = std::min(c.min_ratio, ratio);
      c.measurable = true;
    }
  }
  if (!c.measurable) c.min_ratio = 0.0;
  return c;
}

/// ω₁ = d(q + q³/10)∧dp, η₁ = dz on the flat (q, p, z) box.
inline ChartModel perturbed_omega_model(double radius = 0.3) {
  const Covector eta{0.0, 0.0, 1.0};
  return custom_model(
      3,
      [](std::span<const double> x) {
        const double a = 1.0 + 0.3 * x[0] * x[0];
        return Matrix<double>{{0.0, a, 0.0}, {-a, 0.0, 0.0}, {0.0, 0.0, 0.0}};
      },
      [eta](std::span<const double>) { return eta; },
      {Domain::Kind::Flat, Point(3, -radius), Point(3, radius)});
}

/// ω₁ = dq∧dp, η₁ = d(z + z q²/20).
inline ChartModel perturbed_eta_model(double radius = 0.3) {
  const Matrix<double> w{{0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  return custom_model(
      3, [w](std::span<const double>) { return w; },
      [](std::span<const double> x) { return Covector{x[2] * x[0] / 10.0, 0.0, 1.0 + x[0] * x[0] / 20.0}; },
      {Domain::Kind::Flat, Point(3, -radius), Point(3, radius)});
}

}  // namespace cosymp
