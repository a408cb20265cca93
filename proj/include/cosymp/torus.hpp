#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cosymp/chart.hpp"

namespace cosymp {

/// Coordinates on T^{2n+1}: q_i at i, p_i at n + i, z at 2n. Periods 1.
inline std::size_t torus_dim(std::size_t n) { return 2 * n + 1; }

/// Component of a − b wrapped into [−½, ½).
inline double wrap(double v) { return v - std::floor(v + 0.5); }

inline double torus_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double w = wrap(a[i] - b[i]);
    s += w * w;
  }
  return std::sqrt(s);
}

/// res points per axis at k/res; Sobol points in [0,1)^d above `cap`.
inline std::vector<Point> torus_grid(std::size_t dim, std::size_t res, std::size_t cap = std::size_t(1) << 18) {
  const double hi = 1.0 - 1.0 / static_cast<double>(res);
  return sample_box(Point(dim, 0.0), Point(dim, hi), res, cap);
}

/// Σ c_k cos 2π⟨k,x⟩ + s_k sin 2π⟨k,x⟩.
class TrigPolynomial {
 public:
  struct Term {
    std::vector<int> k;
    double c = 0.0;
    double s = 0.0;
  };

  TrigPolynomial() = default;
  explicit TrigPolynomial(std::size_t vars) : vars_(vars) {}

  std::size_t vars() const noexcept { return vars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  void add(std::vector<int> k, double c, double s) {
    if (k.size() != vars_) throw Error(ErrorCode::DimensionMismatch, "frequency length");
    terms_.push_back({std::move(k), c, s});
  }

  double operator()(std::span<const double> x) const {
    double acc = 0.0;
    for (const auto& t : terms_) {
      const double a = phase(t, x);
      acc += t.c * std::cos(a) + t.s * std::sin(a);
    }
    return acc;
  }

  Covector gradient(std::span<const double> x) const {
    Covector g(vars_, 0.0);
    for (const auto& t : terms_) {
      const double a = phase(t, x);
      const double w = 2.0 * std::numbers::pi * (t.s * std::cos(a) - t.c * std::sin(a));
      for (std::size_t j = 0; j < vars_; ++j) g[j] += w * t.k[j];
    }
    return g;
  }

 private:
  static double phase(const Term& t, std::span<const double> x) {
    double a = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) a += t.k[j] * x[j];
    return 2.0 * std::numbers::pi * a;
  }

  std::size_t vars_ = 0;
  std::vector<Term> terms_;
};

struct TorusOptions {
  std::size_t grid = 64;      // periods, C⁰ sweeps, zero search
  std::size_t check_res = 8;  // structural checks (graph test, periodicity, closedness)
  double tol_pde = kTolPde;
  double tol_fix = 1e-12;
  std::size_t max_iter = 50;
  double fd_step = 1e-4;  // Jacobians without an analytic form
};

/// Near-identity map h(x) = x + δ(x) mod 1 with periodic δ.
struct TorusMap {
  std::size_t n = 0;
  MapField displacement;
  std::optional<JacobianField> jacobian;  // Dδ
  double c0_bound = 0.0;
  double fd_step = 1e-4;

  std::size_t dim() const { return torus_dim(n); }

  /// x + δ(x) without reduction mod 1.
  Point operator()(std::span<const double> x) const {
    Point y = displacement(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += x[i];
    return y;
  }

  Matrix<double> ddelta(std::span<const double> x) const {
    return jacobian ? (*jacobian)(x) : fd::jacobian(displacement, x, fd_step);
  }

  Matrix<double> dh(std::span<const double> x) const {
    Matrix<double> j = ddelta(x);
    for (std::size_t i = 0; i < j.rows(); ++i) j(i, i) += 1.0;
    return j;
  }
};

/// Validates periodicity on the faces of the check grid and caches sup‖δ‖.
inline TorusMap make_torus_map(std::size_t n, MapField disp, std::optional<JacobianField> jac,
                               const TorusOptions& o = {}) {
  TorusMap h{n, std::move(disp), std::move(jac), 0.0, o.fd_step};
  const std::size_t d = h.dim();
  for (const auto& x : torus_grid(d, o.check_res)) {
    const Point v = h.displacement(x);
    if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "displacement has wrong length");
    double s = 0.0;
    for (double c : v) s += c * c;
    h.c0_bound = std::max(h.c0_bound, std::sqrt(s));
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] != 0.0) continue;
      Point y = x;
      y[i] = 1.0;
      if (max_abs<double>(axpy<double>(-1.0, h.displacement(y), v)) > o.tol_pde)
        throw Error(ErrorCode::NotPeriodic, "displacement is not 1-periodic");
    }
  }
  if (!(h.c0_bound < 0.25)) throw Error(ErrorCode::TooFarFromIdentity, "sup of the displacement is not below 1/4");
  return h;
}

inline TorusMap identity_map(std::size_t n) {
  const std::size_t d = torus_dim(n);
  return make_torus_map(
      n, [d](std::span<const double>) { return Point(d, 0.0); },
      [d](std::span<const double>) { return Matrix<double>(d, d); });
}

inline TorusMap translation(std::size_t n, Point shift) {
  const std::size_t d = torus_dim(n);
  if (shift.size() != d) throw Error(ErrorCode::DimensionMismatch, "translation vector length");
  return make_torus_map(
      n, [shift](std::span<const double>) { return shift; },
      [d](std::span<const double>) { return Matrix<double>(d, d); });
}

/// max over the grid of the torus distance between f(x) and g(x).
inline double c0_distance(const TorusMap& f, const TorusMap& g, std::size_t grid = 64) {
  if (f.n != g.n) throw Error(ErrorCode::DimensionMismatch, "maps on different tori");
  double worst = 0.0;
  for (const auto& x : torus_grid(f.dim(), grid)) worst = std::max(worst, torus_distance(f(x), g(x)));
  return worst;
}

/// Closed 1-form on the torus with its periods over the coordinate loops through 0.
struct ClosedOneForm {
  std::size_t dim = 0;
  OneFormField components;
  std::optional<JacobianField> jacobian;  // (i, j) = ∂_j α_i
  Covector periods;
  double fd_step = 1e-4;

  Covector operator()(std::span<const double> x) const { return components(x); }
  Matrix<double> d_coeffs(std::span<const double> x) const {
    if (jacobian) return (*jacobian)(x);
    const MapField f = [this](std::span<const double> y) { return components(y); };
    return fd::jacobian(f, x, fd_step);
  }
};

/// Trapezoid rule with `res` nodes on each loop s ↦ s·e_i.
inline Covector loop_periods(const OneFormField& a, std::size_t dim, std::size_t res) {
  Covector p(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    Point x(dim, 0.0);
    for (std::size_t k = 0; k < res; ++k) {
      x[i] = static_cast<double>(k) / static_cast<double>(res);
      p[i] += a(x)[i];
    }
    p[i] /= static_cast<double>(res);
  }
  return p;
}

/// Largest asymmetry of the coefficient Jacobian over the check grid.
inline double closedness_defect(const ClosedOneForm& a, std::size_t check_res) {
  double worst = 0.0;
  for (const auto& x : torus_grid(a.dim, check_res)) {
    const Matrix<double> j = a.d_coeffs(x);
    for (std::size_t r = 0; r < a.dim; ++r)
      for (std::size_t c = r + 1; c < a.dim; ++c) worst = std::max(worst, std::fabs(j(r, c) - j(c, r)));
  }
  return worst;
}

inline ClosedOneForm make_closed_form(std::size_t dim, OneFormField comps, std::optional<JacobianField> jac,
                                      const TorusOptions& o = {}) {
  ClosedOneForm a{dim, std::move(comps), std::move(jac), {}, o.fd_step};
  if (closedness_defect(a, o.check_res) > o.tol_pde) throw Error(ErrorCode::NotClosed, "1-form is not closed");
  a.periods = loop_periods(a.components, dim, o.grid);
  return a;
}

/// Σ_i (g_i + dF_i) with trigonometric potentials is the usual input; here
/// any list of per-component trig polynomials, checked for closedness.
inline ClosedOneForm trig_form(const std::vector<TrigPolynomial>& comps, const TorusOptions& o = {}) {
  const std::size_t d = comps.size();
  return make_closed_form(
      d,
      [comps](std::span<const double> x) {
        Covector c(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) c[i] = comps[i](x);
        return c;
      },
      [comps, d](std::span<const double> x) {
        Matrix<double> j(d, d);
        for (std::size_t i = 0; i < d; ++i) {
          const Covector g = comps[i].gradient(x);
          for (std::size_t c = 0; c < d; ++c) j(i, c) = g[c];
        }
        return j;
      },
      o);
}

inline ClosedOneForm scaled(const ClosedOneForm& a, double t) {
  ClosedOneForm s = a;
  s.components = [f = a.components, t](std::span<const double> x) {
    Covector c = f(x);
    for (double& v : c) v *= t;
    return c;
  };
  if (a.jacobian)
    s.jacobian = [f = *a.jacobian, t](std::span<const double> x) { return t * f(x); };
  else
    s.jacobian.reset();
  for (double& v : s.periods) v *= t;
  return s;
}

namespace detail {

inline Eigen::MatrixXd eig(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix<double> back(const Eigen::MatrixXd& e) {
  Matrix<double> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

// (q, p, z) displacement -> midpoint-chart covector (−Δp, Δq, 0), row form
inline Matrix<double> chart_rows(std::size_t n) {
  const std::size_t d = torus_dim(n);
  Matrix<double> s(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, n + i) = -1.0;
    s(n + i, i) = 1.0;
  }
  return s;
}

}  // namespace detail

struct WeinsteinForm {
  ClosedOneForm form;
  double reeb_shift = 0.0;
  GraphReport graph;
};

/// Midpoint-chart Weinstein form: at m, with x + δ(x)/2 = m,
/// W_L(h)(m) = Σ δ_{q_i}(x) dp_i − δ_{p_i}(x) dq_i, zero dz-component;
/// the z-displacement is returned separately as the Reeb shift.
inline WeinsteinForm weinstein_oneform(const TorusMap& h, const TorusOptions& o = {}) {
  const std::size_t n = h.n, d = h.dim();
  if (!(h.c0_bound < 0.25)) throw Error(ErrorCode::TooFarFromIdentity, "sup of the displacement is not below 1/4");
  const auto model = torus_standard(n);
  const auto samples = torus_grid(d, o.check_res);
  const MapField hm = [h](std::span<const double> x) { return h(x); };
  const JacobianField hj = [h](std::span<const double> x) { return h.dh(x); };
  GraphReport g = check_graph_cosymplectomorphism(model, model, hm, hj, samples, o.tol_pde);
  if (!g.verdict) throw Error(ErrorCode::NotCosymplectomorphism, "graph of h is not Lagrangian-like");

  const double u = h.displacement(Point(d, 0.0))[d - 1];
  for (const auto& x : samples)
    if (std::fabs(h.displacement(x)[d - 1] - u) > o.tol_pde)
      throw Error(ErrorCode::NonConstantReebShift, "z-displacement is not constant");

  const double tol = o.tol_fix;
  const std::size_t iters = std::max<std::size_t>(o.max_iter, 100);
  // x with x + δ(x)/2 = m
  auto foot = [h, tol, iters](std::span<const double> m) {
    Point x(m.begin(), m.end());
    Point dx = h.displacement(x);
    for (std::size_t k = 0; k < iters; ++k) {
      Point next(m.begin(), m.end());
      for (std::size_t i = 0; i < next.size(); ++i) next[i] -= 0.5 * dx[i];
      double step = 0.0;
      for (std::size_t i = 0; i < next.size(); ++i) step = std::max(step, std::fabs(next[i] - x[i]));
      x = std::move(next);
      dx = h.displacement(x);
      if (step < tol) return std::make_pair(x, dx);
    }
    throw Error(ErrorCode::NoConvergence, "midpoint foot iteration did not converge");
  };
  const Matrix<double> s = detail::chart_rows(n);
  OneFormField comps = [foot, s](std::span<const double> m) { return s.apply(foot(m).second); };
  JacobianField jac = [foot, s, h, d](std::span<const double> m) {
    const Point x = foot(m).first;
    const Eigen::MatrixXd dd = detail::eig(h.ddelta(x));
    const Eigen::MatrixXd dx = (Eigen::MatrixXd::Identity(d, d) + 0.5 * dd).inverse();
    return detail::back(detail::eig(s) * dd * dx);
  };
  return {make_closed_form(d, std::move(comps), std::move(jac), o), u, std::move(g)};
}

/// Solves W_L(h) = (α, u): y ← x + Δ((x + y)/2), Δ(m) = (α_p(m), −α_q(m), u).
/// Jacobian by the Cayley form (I − A/2)⁻¹(I + A/2), A = DΔ.
inline TorusMap weinstein_inverse(const ClosedOneForm& alpha, double u, const TorusOptions& o = {}) {
  const std::size_t d = alpha.dim;
  if (d % 2 == 0) throw Error(ErrorCode::EvenDimension, "torus dimension must be odd");
  const std::size_t n = (d - 1) / 2;
  for (const auto& x : torus_grid(d, o.check_res)) {
    const Covector a = alpha(x);
    if (std::fabs(a[d - 1]) > o.tol_pde) throw Error(ErrorCode::InvalidArgument, "α(ξ) must vanish");
    if (!(max_abs<double>(a) < 0.125)) throw Error(ErrorCode::TooFarFromIdentity, "α is not below 1/8");
  }
  const Matrix<double> s = detail::chart_rows(n);
  const Matrix<double> st = s.transpose();  // covector -> displacement: inverse of s on the (q, p) block
  auto delta_at = [alpha, st, u, d](std::span<const double> m) {
    Point v = st.apply(alpha(m));
    v[d - 1] = u;
    return v;
  };
  const double tol = o.tol_fix;
  const std::size_t iters = o.max_iter;
  auto solve = [delta_at, tol, iters](std::span<const double> x) {
    Point y(x.begin(), x.end());
    Point mid(x.size());
    for (std::size_t k = 0; k < iters; ++k) {
      for (std::size_t i = 0; i < x.size(); ++i) mid[i] = 0.5 * (x[i] + y[i]);
      const Point dl = delta_at(mid);
      double step = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double next = x[i] + dl[i];
        step = std::max(step, std::fabs(next - y[i]));
        y[i] = next;
      }
      if (step < tol) return y;
    }
    throw Error(ErrorCode::NoConvergence, "inverse fixed-point iteration did not converge");
  };
  MapField disp = [solve](std::span<const double> x) {
    Point y = solve(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= x[i];
    return y;
  };
  JacobianField jac = [solve, alpha, st, d](std::span<const double> x) {
    const Point y = solve(x);
    Point mid(d);
    for (std::size_t i = 0; i < d; ++i) mid[i] = 0.5 * (x[i] + y[i]);
    const Eigen::MatrixXd a = detail::eig(st) * detail::eig(alpha.d_coeffs(mid));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd dh = (id - 0.5 * a).partialPivLu().solve(id + 0.5 * a);
    return detail::back(dh - id);
  };
  return make_torus_map(n, std::move(disp), std::move(jac), o);
}

struct Isotopy {
  std::size_t n = 0;
  std::vector<TorusMap> maps;  // at t_k = k / K
  double endpoint_c0 = 0.0;    // distance of the last map to its target, when built from one

  std::size_t steps() const { return maps.size() - 1; }
};

/// Graph test of every slice on a coarse grid; NotCosymplectic on failure.
inline void check_isotopy(const Isotopy& iso, std::size_t res, double tol_pde) {
  if (iso.maps.size() < 3) throw Error(ErrorCode::InvalidArgument, "isotopy needs at least two time steps");
  const std::size_t d = torus_dim(iso.n);
  if (max_abs<double>(iso.maps.front().displacement(Point(d, 0.0))) > tol_pde)
    throw Error(ErrorCode::InvalidArgument, "isotopy must start at the identity");
  const auto model = torus_standard(iso.n);
  const auto samples = torus_grid(d, res);
  for (const auto& m : iso.maps) {
    const MapField f = [&m](std::span<const double> x) { return m(x); };
    const JacobianField j = [&m](std::span<const double> x) { return m.dh(x); };
    if (!check_graph_cosymplectomorphism(model, model, f, j, samples, tol_pde).verdict)
      throw Error(ErrorCode::NotCosymplectic, "an isotopy slice is not a cosymplectomorphism");
  }
}

/// h_t = W_L⁻¹(t·W_L(h)) at t_k = k / K.
inline Isotopy canonical_isotopy(const TorusMap& h, std::size_t k_steps, const TorusOptions& o = {}) {
  if (k_steps < 2) throw Error(ErrorCode::InvalidArgument, "need at least two time steps");
  const WeinsteinForm w = weinstein_oneform(h, o);
  Isotopy iso;
  iso.n = h.n;
  for (std::size_t k = 0; k <= k_steps; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(k_steps);
    iso.maps.push_back(weinstein_inverse(scaled(w.form, t), t * w.reeb_shift, o));
  }
  iso.endpoint_c0 = c0_distance(iso.maps.back(), h, o.check_res);
  if (iso.endpoint_c0 > o.tol_pde) throw Error(ErrorCode::NoConvergence, "canonical isotopy misses h");
  check_isotopy(iso, std::max<std::size_t>(o.check_res / 2, 2), o.tol_pde);
  return iso;
}

/// φ_t = x + t·v.
inline Isotopy translation_isotopy(std::size_t n, const Point& v, std::size_t k_steps) {
  Isotopy iso;
  iso.n = n;
  for (std::size_t k = 0; k <= k_steps; ++k) {
    Point s = v;
    for (double& c : s) c *= static_cast<double>(k) / static_cast<double>(k_steps);
    iso.maps.push_back(translation(n, s));
  }
  return iso;
}

/// Isotopy followed by another (each reparametrised to half the time).
inline Isotopy concatenate(const Isotopy& a, const Isotopy& b) {
  if (a.n != b.n || a.steps() != b.steps()) throw Error(ErrorCode::InvalidArgument, "concatenation needs alike grids");
  Isotopy c;
  c.n = a.n;
  c.maps = a.maps;
  const TorusMap end = a.maps.back();
  for (std::size_t k = 1; k < b.maps.size(); ++k) {
    const TorusMap g = b.maps[k];
    MapField disp = [end, g](std::span<const double> x) {
      const Point y = end(x);
      Point out = g(y);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] -= x[i];
      return out;
    };
    JacobianField jac = [end, g](std::span<const double> x) {
      Matrix<double> j = g.dh(end(x)) * end.dh(x);
      for (std::size_t i = 0; i < j.rows(); ++i) j(i, i) -= 1.0;
      return j;
    };
    c.maps.push_back(TorusMap{a.n, std::move(disp), std::move(jac), 0.0, end.fd_step});
  }
  return c;
}

struct Coflux {
  ClosedOneForm form;  // ∫₀¹ φ_t*(Ĩ(φ̇_t)) dt
  double can1 = 0.0;   // ∫₀¹ η(φ̇_t)∘φ_t dt at the base point
};

/// Trapezoid in t of φ̇ᵀ M Dφ over the isotopy's own time grid; φ̇ by central
/// differences (second-order one-sided at the ends). M = B + ψᵀψ standard.
inline Coflux coflux(const Isotopy& iso, const TorusOptions& o = {}) {
  check_isotopy(iso, std::max<std::size_t>(o.check_res / 2, 2), o.tol_pde);
  const std::size_t d = torus_dim(iso.n);
  const Matrix<double> msharp = standard_space<double>(iso.n).musical_matrix();
  const std::size_t kk = iso.steps();
  const double dt = 1.0 / static_cast<double>(kk);
  auto velocities = [iso, kk, dt](std::span<const double> x) {
    std::vector<Point> pos;
    for (const auto& m : iso.maps) pos.push_back(m(x));
    std::vector<Point> vel(kk + 1, Point(x.size()));
    for (std::size_t k = 0; k <= kk; ++k)
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (k == 0)
          vel[k][i] = (-3.0 * pos[0][i] + 4.0 * pos[1][i] - pos[2][i]) / (2.0 * dt);
        else if (k == kk)
          vel[k][i] = (3.0 * pos[kk][i] - 4.0 * pos[kk - 1][i] + pos[kk - 2][i]) / (2.0 * dt);
        else
          vel[k][i] = (pos[k + 1][i] - pos[k - 1][i]) / (2.0 * dt);
      }
    return vel;
  };
  auto weight = [kk, dt](std::size_t k) { return (k == 0 || k == kk) ? 0.5 * dt : dt; };
  OneFormField comps = [iso, velocities, weight, msharp, kk, d](std::span<const double> x) {
    const auto vel = velocities(x);
    Covector acc(d, 0.0);
    for (std::size_t k = 0; k <= kk; ++k) {
      const Covector c = iso.maps[k].dh(x).apply_left(msharp.apply_left(vel[k]));
      for (std::size_t i = 0; i < d; ++i) acc[i] += weight(k) * c[i];
    }
    return acc;
  };
  Coflux out;
  out.form = ClosedOneForm{d, comps, std::nullopt, {}, o.fd_step};
  if (closedness_defect(out.form, 2) > o.tol_pde) throw Error(ErrorCode::NotClosed, "co-flux form is not closed");
  out.form.periods = loop_periods(comps, d, o.grid);
  const auto vel0 = velocities(Point(d, 0.0));
  for (std::size_t k = 0; k <= kk; ++k) out.can1 += weight(k) * vel0[k][d - 1];
  return out;
}

struct FluxComparison {
  Covector periods_weinstein;
  Covector periods_flux;
  double reeb_shift = 0.0;
  double max_diff = 0.0;          // max |S̃ − ([W_L(h)] + u·[η])| over the loops
  double reeb_pairing_max = 0.0;  // max |W_L(h)(ξ)| over the grid
  double can1_scalar = 0.0;
  double can1_vs_shift = 0.0;
  double endpoint_c0 = 0.0;
};

/// Both sides of [W_L(h)] = S̃({h_t^c}). The chart keeps the Reeb part of h in
/// the separate shift u, so the co-flux is matched against W_L(h) + u·dz.
inline FluxComparison flux_vs_weinstein(const TorusMap& h, std::size_t k_steps, const TorusOptions& o = {}) {
  const std::size_t d = h.dim();
  const WeinsteinForm w = weinstein_oneform(h, o);
  const Isotopy iso = canonical_isotopy(h, k_steps, o);
  const Coflux cf = coflux(iso, o);
  FluxComparison r;
  r.periods_weinstein = w.form.periods;
  r.periods_flux = cf.form.periods;
  r.reeb_shift = w.reeb_shift;
  r.can1_scalar = cf.can1;
  r.can1_vs_shift = std::fabs(cf.can1 - w.reeb_shift);
  r.endpoint_c0 = iso.endpoint_c0;
  for (std::size_t i = 0; i < d; ++i) {
    const double expect = r.periods_weinstein[i] + (i == d - 1 ? w.reeb_shift : 0.0);
    r.max_diff = std::max(r.max_diff, std::fabs(r.periods_flux[i] - expect));
  }
  const Point xi = standard_space<double>(h.n).reeb();
  for (const auto& x : torus_grid(d, o.grid))
    r.reeb_pairing_max = std::max(r.reeb_pairing_max, std::fabs(dot<double>(w.form(x), xi)));
  return r;
}

struct ZeroReport {
  std::vector<Point> points;  // verified fixed points of f on the slice z = 0
  std::size_t rejected = 0;   // Newton limits that were not fixed points
  bool identically_zero = false;
  double max_fixed_distance = 0.0;
};

/// Seeds at local minima of |W_L(f)| on the z = 0 slice of the grid, refined
/// by Newton in the (q, p) block; a zero is kept if f moves it by ≤ 10·τ_pde.
inline ZeroReport zeros_of_weinstein_form(const TorusMap& f, const TorusOptions& o = {}) {
  const std::size_t n = f.n, d = f.dim(), m = 2 * n;
  const WeinsteinForm w = weinstein_oneform(f, o);
  ZeroReport r;
  const auto slice = torus_grid(m, o.grid);
  std::vector<double> norm(slice.size());
  auto lift = [d](std::span<const double> y) {
    Point x(d, 0.0);
    std::copy(y.begin(), y.end(), x.begin());
    return x;
  };
  for (std::size_t s = 0; s < slice.size(); ++s) norm[s] = max_abs<double>(w.form(lift(slice[s])));
  const double top = *std::max_element(norm.begin(), norm.end());
  if (top <= o.tol_pde) {
    r.identically_zero = true;
    for (const auto& y : torus_grid(d, o.grid)) r.points.push_back(y);
    for (const auto& x : r.points) r.max_fixed_distance = std::max(r.max_fixed_distance, torus_distance(f(x), x));
    return r;
  }
  const std::size_t res = o.grid;
  auto index = [res, m](std::vector<std::ptrdiff_t> idx) {
    std::size_t flat = 0, mul = 1;
    for (std::size_t i = 0; i < m; ++i) {
      const auto r_ = static_cast<std::ptrdiff_t>(res);
      flat += static_cast<std::size_t>(((idx[i] % r_) + r_) % r_) * mul;
      mul *= res;
    }
    return flat;
  };
  for (std::size_t s = 0; s < slice.size(); ++s) {
    std::vector<std::ptrdiff_t> idx(m);
    std::size_t rest = s;
    for (std::size_t i = 0; i < m; ++i) {
      idx[i] = static_cast<std::ptrdiff_t>(rest % res);
      rest /= res;
    }
    bool minimum = true;
    for (std::size_t i = 0; i < m && minimum; ++i)
      for (int sgn : {-1, 1}) {
        auto nb = idx;
        nb[i] += sgn;
        if (norm[index(nb)] < norm[s]) minimum = false;
      }
    if (!minimum) continue;
    Point x = lift(slice[s]);
    bool converged = false;
    for (std::size_t it = 0; it < o.max_iter; ++it) {
      const Covector a = w.form(x);
      Eigen::VectorXd rhs(m);
      for (std::size_t i = 0; i < m; ++i) rhs(i) = a[i];
      if (rhs.lpNorm<Eigen::Infinity>() < o.tol_fix) {
        converged = true;
        break;
      }
      const Eigen::MatrixXd jac = detail::eig(w.form.d_coeffs(x)).topLeftCorner(m, m);
      const Eigen::VectorXd step = jac.fullPivLu().solve(rhs);
      for (std::size_t i = 0; i < m; ++i) x[i] -= step(i);
      if (step.lpNorm<Eigen::Infinity>() > 0.5) break;
    }
    if (!converged) continue;
    for (std::size_t i = 0; i < m; ++i) x[i] -= std::floor(x[i]);
    bool fresh = true;
    for (const auto& p : r.points)
      if (torus_distance(p, x) < 0.5 / static_cast<double>(res)) fresh = false;
    if (!fresh) continue;
    const double moved = torus_distance(f(x), x);
    if (moved <= 10.0 * o.tol_pde) {
      r.points.push_back(x);
      r.max_fixed_distance = std::max(r.max_fixed_distance, moved);
    } else {
      ++r.rejected;
    }
  }
  return r;
}

/// Time-one RK4 flow of X = Ĩ⁻¹(γ) for the autonomous closed form γ with γ(ξ) = 0.
inline TorusMap flow_of_form(std::size_t n, const OneFormField& gamma, std::size_t steps = 16,
                             const TorusOptions& o = {}) {
  const std::size_t d = torus_dim(n);
  const Matrix<double> st = detail::chart_rows(n).transpose();
  auto field = [gamma, st](std::span<const double> x) { return st.apply(gamma(x)); };
  MapField disp = [field, steps, d](std::span<const double> x0) {
    Point x(x0.begin(), x0.end());
    const double dt = 1.0 / static_cast<double>(steps);
    auto at = [&](const Point& base, const Point& k, double c) {
      Point y = base;
      for (std::size_t i = 0; i < d; ++i) y[i] += c * k[i];
      return y;
    };
    for (std::size_t s = 0; s < steps; ++s) {
      const Point k1 = field(x), k2 = field(at(x, k1, 0.5 * dt)), k3 = field(at(x, k2, 0.5 * dt)),
                  k4 = field(at(x, k3, dt));
      for (std::size_t i = 0; i < d; ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    for (std::size_t i = 0; i < d; ++i) x[i] -= x0[i];
    return x;
  };
  return make_torus_map(n, std::move(disp), std::nullopt, o);
}

/// γ = ε·dq₁: X = −ε∂_{p₁}, so h is the translation by −ε along p₁.
inline TorusMap eps_flow(std::size_t n = 1, double eps = 0.01) {
  Point v(torus_dim(n), 0.0);
  v[n] = -eps;
  return translation(n, v);
}

/// γ = ε(dq₁ + dH), H = sin 2πq₁ · cos 2πp₁ / 2π: a non-exact, non-constant flow.
inline TorusMap ham_flow(std::size_t n = 1, double eps = 0.01, std::size_t steps = 16, const TorusOptions& o = {}) {
  const std::size_t d = torus_dim(n);
  constexpr double tp = 2.0 * std::numbers::pi;
  OneFormField gamma = [n, d, eps](std::span<const double> x) {
    Covector g(d, 0.0);
    g[0] = eps * (1.0 + std::cos(tp * x[0]) * std::cos(tp * x[n]));
    g[n] = -eps * std::sin(tp * x[0]) * std::sin(tp * x[n]);
    return g;
  };
  return flow_of_form(n, gamma, steps, o);
}

/// ε·d(cos 2πq₁ · cos 2πp₁) as a trigonometric form.
inline ClosedOneForm exact_test_form(std::size_t n = 1, double eps = 0.01, const TorusOptions& o = {}) {
  const std::size_t d = torus_dim(n);
  // cos a cos b = ½cos(a+b) + ½cos(a−b); gradient components as trig polynomials
  const double c = eps * std::numbers::pi;  // ∂_q: −2π·ε·sin a cos b = −πε(sin(a+b) + sin(a−b))
  std::vector<TrigPolynomial> comps(d, TrigPolynomial(d));
  std::vector<int> plus(d, 0), minus(d, 0);
  plus[0] = 1, plus[n] = 1;
  minus[0] = 1, minus[n] = -1;
  comps[0].add(plus, 0.0, -c);
  comps[0].add(minus, 0.0, -c);
  comps[n].add(plus, 0.0, -c);   // ∂_p: −πε(sin(a+b) − sin(a−b))
  comps[n].add(minus, 0.0, c);
  return trig_form(comps, o);
}

inline TorusMap exact_form_map(std::size_t n = 1, double eps = 0.01, const TorusOptions& o = {}) {
  return weinstein_inverse(exact_test_form(n, eps, o), 0.0, o);
}

}  // namespace cosymp
