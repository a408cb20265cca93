#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cosymp/forms.hpp"
#include "cosymp/space.hpp"

namespace cosymp {

struct Domain {
  enum class Kind { Flat, Torus };
  Kind kind = Kind::Flat;
  Point lo;  // torus: zeros
  Point hi;  // torus: periods
};

struct ChartModel {
  std::string name;
  std::size_t dim = 0;
  TwoFormField omega;
  OneFormField eta;
  Domain domain;
  std::size_t grid_res = 8;
};

struct ModelValidation {
  double max_domega = 0.0;
  double max_deta = 0.0;
  double max_reeb_residual = 0.0;  // max ‖Ω ξ‖
  std::size_t samples = 0;
};

inline std::vector<Point> model_samples(const ChartModel& m) {
  return sample_box(m.domain.lo, m.domain.hi, m.grid_res);
}

/// Finite-difference step: the grid spacing along the narrowest axis.
inline double model_step(const ChartModel& m) {
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.dim; ++i)
    h = std::min(h, (m.domain.hi[i] - m.domain.lo[i]) / static_cast<double>(std::max<std::size_t>(m.grid_res - 1, 1)));
  return h;
}

inline CosymplecticSpace<double> space_at(const ChartModel& m, std::span<const double> x, double tol_lin = kTolLin) {
  return build_space<double>(m.omega(x), m.eta(x), tol_lin);
}

inline Point reeb_at(const ChartModel& m, std::span<const double> x, double tol_lin = kTolLin) {
  return space_at(m, x, tol_lin).reeb();
}

/// Pointwise cosymplectic test and dω = dη = 0 on the model's sample set.
inline ModelValidation validate_model(const ChartModel& m, double tol_lin = kTolLin, double tol_pde = kTolPde) {
  ModelValidation v;
  const double h = model_step(m);
  for (const auto& x : model_samples(m)) {
    try {
      auto s = space_at(m, x, tol_lin);
      v.max_reeb_residual = std::max(v.max_reeb_residual, max_abs<double>(s.b().apply(s.reeb())));
    } catch (const Error& err) {
      throw Error(ErrorCode::PointwiseDegenerate, "structure fails at a sample point (" + std::string(err.what()) + ")");
    }
    v.max_domega = std::max(v.max_domega, fd::d_twoform(m.omega, x, h));
    v.max_deta = std::max(v.max_deta, fd::d_oneform(m.eta, x, h));
    ++v.samples;
  }
  if (v.max_domega > tol_pde) throw Error(ErrorCode::NotClosed, "dω = " + std::to_string(v.max_domega));
  if (v.max_deta > tol_pde) throw Error(ErrorCode::NotClosed, "dη = " + std::to_string(v.max_deta));
  return v;
}

inline ChartModel validated(ChartModel m, double tol_lin = kTolLin, double tol_pde = kTolPde) {
  validate_model(m, tol_lin, tol_pde);
  return m;
}

/// Constant forms of the standard space on a chart of `dim` coordinates.
inline ChartModel constant_model(std::string name, const Matrix<double>& b, const Covector& psi, Domain dom,
                                 std::size_t grid) {
  ChartModel m;
  m.name = std::move(name);
  m.dim = b.rows();
  m.omega = [b](std::span<const double>) { return b; };
  m.eta = [psi](std::span<const double>) { return psi; };
  m.domain = std::move(dom);
  m.grid_res = grid;
  return m;
}

inline ChartModel flat_standard(std::size_t n, double radius = 1.0, std::size_t grid = 8) {
  auto s = standard_space<double>(n);
  const std::size_t d = 2 * n + 1;
  return validated(constant_model("flat_standard", s.b(), s.psi(), {Domain::Kind::Flat, Point(d, -radius), Point(d, radius)}, grid));
}

inline ChartModel torus_standard(std::size_t n, std::size_t grid = 8) {
  auto s = standard_space<double>(n);
  const std::size_t d = 2 * n + 1;
  return validated(constant_model("torus_standard", s.b(), s.psi(), {Domain::Kind::Torus, Point(d, 0.0), Point(d, 1.0)}, grid));
}

/// Weil bundle chart forms. Validation rejects l > 1 as pointwise degenerate.
inline ChartModel weil_chart(std::size_t n, std::size_t l, double radius = 1.0, std::size_t grid = 8) {
  auto [b, psi] = weil_forms<double>(n, l);
  const std::size_t d = b.rows();
  return validated(constant_model("weil_chart", b, psi, {Domain::Kind::Flat, Point(d, -radius), Point(d, radius)}, grid));
}

/// The same forms without validation, for diagnostics on the degenerate case.
inline ChartModel weil_forms_model(std::size_t n, std::size_t l, double radius = 1.0, std::size_t grid = 8) {
  auto [b, psi] = weil_forms<double>(n, l);
  const std::size_t d = b.rows();
  return constant_model("weil_forms", b, psi, {Domain::Kind::Flat, Point(d, -radius), Point(d, radius)}, grid);
}

inline ChartModel custom_model(std::size_t dim, TwoFormField omega, OneFormField eta, Domain dom,
                               std::size_t grid = 8, double tol_lin = kTolLin, double tol_pde = kTolPde) {
  ChartModel m;
  m.name = "custom";
  m.dim = dim;
  m.omega = std::move(omega);
  m.eta = std::move(eta);
  m.domain = std::move(dom);
  m.grid_res = grid;
  return validated(std::move(m), tol_lin, tol_pde);
}

struct ParamSubmanifold {
  std::size_t k = 0;
  MapField param;
  std::optional<JacobianField> jacobian;  // finite differences when absent
  std::vector<Point> samples;

  Matrix<double> jacobian_at(std::span<const double> u, double h = 1e-3) const {
    return jacobian ? (*jacobian)(u) : fd::jacobian(param, u, h);
  }
};

/// L₂ = {y = 0, z_{c+k} = −z_k, z_l = 0} in the Weil chart, l = 2c + 1,
/// parametrised by (x_{i,j}, z_1..z_c) on [−r, r].
inline ParamSubmanifold weil_l2(std::size_t n, std::size_t l, double radius = 1.0, std::size_t res = 5) {
  if (l % 2 == 0) throw Error(ErrorCode::EvenDimension, "l must be odd");
  const std::size_t c = (l - 1) / 2, nl = n * l, d = (2 * n + 1) * l, k = nl + c;
  Matrix<double> j(d, k);
  for (std::size_t a = 0; a < nl; ++a) j(a, a) = 1.0;
  for (std::size_t m = 0; m < c; ++m) {
    j(2 * nl + m, nl + m) = 1.0;
    j(2 * nl + c + m, nl + m) = -1.0;
  }
  ParamSubmanifold s;
  s.k = k;
  s.param = [j](std::span<const double> u) { return j.apply(u); };
  s.jacobian = [j](std::span<const double>) { return j; };
  s.samples = sample_box(Point(k, -radius), Point(k, radius), res);
  return s;
}

struct LagrangianReport {
  double max_omega_pullback = 0.0;
  double max_eta_pullback = 0.0;
  bool dim_ok = false;
  bool verdict = false;
  Point worst_point;
};

/// Pullbacks JᵀΩJ and ηJ at every parameter sample.
inline LagrangianReport check_lagrangian_submanifold(const ChartModel& model, const ParamSubmanifold& sub,
                                                     double tol_pde = kTolPde) {
  LagrangianReport r;
  double worst = -1.0;
  for (const auto& u : sub.samples) {
    const Point x = sub.param(u);
    if (x.size() != model.dim) throw Error(ErrorCode::DimensionMismatch, "submanifold lands in another dimension");
    const Matrix<double> j = sub.jacobian_at(u);
    if (rank(j, 1e-9) < sub.k) throw Error(ErrorCode::RankDeficient, "parametrization is not an immersion at a sample");
    const double wo = (j.transpose() * model.omega(x) * j).max_abs();
    const double we = max_abs<double>(j.apply_left(model.eta(x)));
    r.max_omega_pullback = std::max(r.max_omega_pullback, wo);
    r.max_eta_pullback = std::max(r.max_eta_pullback, we);
    if (std::max(wo, we) > worst) {
      worst = std::max(wo, we);
      r.worst_point = u;
    }
  }
  r.dim_ok = sub.k == (model.dim - 1) / 2;
  r.verdict = r.max_omega_pullback <= tol_pde && r.max_eta_pullback <= tol_pde && r.dim_ok;
  return r;
}

struct GraphReport {
  double max_omega_residual = 0.0;  // through the product forms on M₁ × M₂
  double max_eta_residual = 0.0;
  double direct_omega_residual = 0.0;  // ‖φ*ω₂ − ω₁‖
  double direct_eta_residual = 0.0;
  bool verdict = false;
  bool direct_verdict = false;
  Point worst_point;
};

/// Graph of φ is Lagrangian-like in (M₁ × M₂, π₁*ω₁ − π₂*ω₂, π₁*η₁ − π₂*η₂)
/// iff φ is a cosymplectomorphism; both routes are evaluated.
inline GraphReport check_graph_cosymplectomorphism(const ChartModel& m1, const ChartModel& m2, const MapField& phi,
                                                   const std::optional<JacobianField>& dphi,
                                                   const std::vector<Point>& samples, double tol_pde = kTolPde) {
  if (m1.dim != m2.dim) throw Error(ErrorCode::DomainMismatch, "graph check needs equal dimensions");
  const std::size_t d = m1.dim;
  GraphReport r;
  double worst = -1.0;
  for (const auto& x : samples) {
    const Point y = phi(x);
    if (y.size() != d) throw Error(ErrorCode::DomainMismatch, "φ lands in another dimension");
    const Matrix<double> jp = dphi ? (*dphi)(x) : fd::jacobian(phi, x, 1e-4);
    const Matrix<double> w1 = m1.omega(x), w2 = m2.omega(y);
    const Covector e1 = m1.eta(x), e2 = m2.eta(y);

    // graph embedding x ↦ (x, φ(x)) with Jacobian [I; Dφ]
    Matrix<double> g(2 * d, d);
    Matrix<double> prod(2 * d, 2 * d);
    Covector prod_eta(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      g(i, i) = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        g(d + i, j) = jp(i, j);
        prod(i, j) = w1(i, j);
        prod(d + i, d + j) = -w2(i, j);
      }
      prod_eta[i] = e1[i];
      prod_eta[d + i] = -e2[i];
    }
    const double wo = (g.transpose() * prod * g).max_abs();
    const double we = max_abs<double>(g.apply_left(prod_eta));
    const double dwo = (jp.transpose() * w2 * jp - w1).max_abs();
    Covector de = jp.apply_left(e2);
    for (std::size_t i = 0; i < d; ++i) de[i] -= e1[i];
    const double dwe = max_abs<double>(de);

    r.max_omega_residual = std::max(r.max_omega_residual, wo);
    r.max_eta_residual = std::max(r.max_eta_residual, we);
    r.direct_omega_residual = std::max(r.direct_omega_residual, dwo);
    r.direct_eta_residual = std::max(r.direct_eta_residual, dwe);
    if (std::max(wo, we) > worst) {
      worst = std::max(wo, we);
      r.worst_point = x;
    }
  }
  r.verdict = r.max_omega_residual <= tol_pde && r.max_eta_residual <= tol_pde;
  r.direct_verdict = r.direct_omega_residual <= tol_pde && r.direct_eta_residual <= tol_pde;
  return r;
}

struct OneFormGraphReport {
  double max_closedness_defect = 0.0;  // max |∂_iβ_j − ∂_jβ_i|
  double max_omega_pullback = 0.0;     // through the embedding into T*N × ℝ
  double max_eta_pullback = 0.0;
  double t0 = 0.0;
  bool verdict = false;
};

/// L = {(x, β_x, t₀)} ⊂ T*N × ℝ with ω = Σ dx_i∧dp_i and η = dt.
inline OneFormGraphReport check_oneform_graph(std::size_t n_dim, const OneFormField& beta,
                                              const std::optional<JacobianField>& dbeta,
                                              const std::vector<Point>& samples, double t0,
                                              double tol_pde = kTolPde) {
  OneFormGraphReport r;
  r.t0 = t0;
  const std::size_t d = 2 * n_dim + 1;
  Matrix<double> omega(d, d);
  for (std::size_t i = 0; i < n_dim; ++i) {
    omega(i, n_dim + i) = 1.0;
    omega(n_dim + i, i) = -1.0;
  }
  Covector eta(d, 0.0);
  eta[d - 1] = 1.0;
  const MapField beta_map = [&](std::span<const double> x) { return beta(x); };
  for (const auto& x : samples) {
    if (x.size() != n_dim) throw Error(ErrorCode::DimensionMismatch, "sample dimension");
    const Matrix<double> jb = dbeta ? (*dbeta)(x) : fd::jacobian(beta_map, x, 1e-3);  // jb(i, j) = ∂_j β_i
    for (std::size_t i = 0; i < n_dim; ++i)
      for (std::size_t j = i + 1; j < n_dim; ++j)
        r.max_closedness_defect = std::max(r.max_closedness_defect, std::fabs(jb(j, i) - jb(i, j)));
    Matrix<double> g(d, n_dim);  // x ↦ (x, β(x), t₀)
    for (std::size_t i = 0; i < n_dim; ++i) {
      g(i, i) = 1.0;
      for (std::size_t j = 0; j < n_dim; ++j) g(n_dim + i, j) = jb(i, j);
    }
    r.max_omega_pullback = std::max(r.max_omega_pullback, (g.transpose() * omega * g).max_abs());
    r.max_eta_pullback = std::max(r.max_eta_pullback, max_abs<double>(g.apply_left(eta)));
  }
  r.verdict = r.max_omega_pullback <= tol_pde && r.max_eta_pullback <= tol_pde;
  return r;
}

}  // namespace cosymp
