#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/random/sobol.hpp>
#include <boost/random/uniform_01.hpp>

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cosymp/matrix.hpp"

namespace cosymp {

using Point = std::vector<double>;
using Covector = std::vector<double>;

/// Pointwise fields on a coordinate chart.
using ScalarField = std::function<double(std::span<const double>)>;
using OneFormField = std::function<Covector(std::span<const double>)>;
using TwoFormField = std::function<Matrix<double>(std::span<const double>)>;
using MapField = std::function<Point(std::span<const double>)>;
using JacobianField = std::function<Matrix<double>(std::span<const double>)>;

inline constexpr double kTolPde = 1e-6;

/// Sparse real polynomial in `vars` variables: exponent vector -> coefficient.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  Polynomial() = default;
  explicit Polynomial(std::size_t vars) : vars_(vars) {}

  static Polynomial constant(std::size_t vars, double c) {
    Polynomial p(vars);
    p.add(Exponents(vars, 0), c);
    return p;
  }

  std::size_t vars() const noexcept { return vars_; }
  const std::map<Exponents, double>& terms() const noexcept { return terms_; }

  void add(const Exponents& e, double c) {
    if (e.size() != vars_) throw Error(ErrorCode::DimensionMismatch, "polynomial exponent length");
    if (c == 0.0) return;
    double& slot = terms_[e];
    slot += c;
    if (slot == 0.0) terms_.erase(e);
  }

  double operator()(std::span<const double> x) const {
    if (x.size() != vars_) throw Error(ErrorCode::DimensionMismatch, "polynomial argument length");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = c;
      for (std::size_t i = 0; i < vars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  Polynomial derivative(std::size_t var) const {
    Polynomial d(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      --f[var];
      d.add(f, c * e[var]);
    }
    return d;
  }

  bool is_zero() const noexcept { return terms_.empty(); }

 private:
  std::size_t vars_ = 0;
  std::map<Exponents, double> terms_;
};

/// 1-form with polynomial coefficients.
inline OneFormField as_field(const std::vector<Polynomial>& comps) {
  return [comps](std::span<const double> x) {
    Covector c(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) c[i] = comps[i](x);
    return c;
  };
}

/// 2-form with polynomial coefficients; `upper(i, j)` for i < j, antisymmetric fill.
inline TwoFormField as_field(std::size_t dim, const std::map<std::pair<std::size_t, std::size_t>, Polynomial>& upper) {
  return [dim, upper](std::span<const double> x) {
    Matrix<double> m(dim, dim);
    for (const auto& [ij, p] : upper) {
      const double v = p(x);
      m(ij.first, ij.second) += v;
      m(ij.second, ij.first) -= v;
    }
    return m;
  };
}

namespace fd {

/// Fourth-order central difference of g along coordinate `axis` with step h.
template <class F>
auto partial(const F& g, std::span<const double> x, std::size_t axis, double h) {
  Point p(x.begin(), x.end());
  auto at = [&](double s) {
    p[axis] = x[axis] + s * h;
    return g(std::span<const double>(p));
  };
  auto fm2 = at(-2.0), fm1 = at(-1.0), fp1 = at(1.0), fp2 = at(2.0);
  if constexpr (std::is_same_v<decltype(fm2), double>) {
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  } else if constexpr (std::is_same_v<decltype(fm2), Matrix<double>>) {
    return (1.0 / (12.0 * h)) * (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2);
  } else {
    std::vector<double> out(fm2.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (fm2[i] - 8.0 * fm1[i] + 8.0 * fp1[i] - fp2[i]) / (12.0 * h);
    return out;
  }
}

/// Jacobian of a vector-valued map by fourth-order central differences.
inline Matrix<double> jacobian(const MapField& f, std::span<const double> x, double h) {
  const std::size_t k = x.size();
  Matrix<double> j;
  for (std::size_t c = 0; c < k; ++c) {
    const auto col = partial(f, x, c, h);
    if (c == 0) j = Matrix<double>(col.size(), k);
    for (std::size_t r = 0; r < col.size(); ++r) j(r, c) = col[r];
  }
  return j;
}

/// max_{i<j} |∂_i α_j − ∂_j α_i|.
inline double d_oneform(const OneFormField& alpha, std::span<const double> x, double h) {
  const std::size_t d = x.size();
  std::vector<Covector> grad(d);
  for (std::size_t i = 0; i < d; ++i) grad[i] = partial(alpha, x, i, h);
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) worst = std::max(worst, std::fabs(grad[i][j] - grad[j][i]));
  return worst;
}

/// max_{i<j<k} |∂_i ω_jk + ∂_j ω_ki + ∂_k ω_ij|.
inline double d_twoform(const TwoFormField& omega, std::span<const double> x, double h) {
  const std::size_t d = x.size();
  std::vector<Matrix<double>> grad(d);
  for (std::size_t i = 0; i < d; ++i) grad[i] = partial(omega, x, i, h);
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k)
        worst = std::max(worst, std::fabs(grad[i](j, k) + grad[j](k, i) + grad[k](i, j)));
  return worst;
}

}  // namespace fd

/// Tensor grid with `res` points per axis on [lo_i, hi_i]; when res^dim
/// exceeds `cap`, `cap` Sobol points in the same box instead.
inline std::vector<Point> sample_box(const Point& lo, const Point& hi, std::size_t res, std::size_t cap = 4096) {
  const std::size_t d = lo.size();
  double total = std::pow(static_cast<double>(res), static_cast<double>(d));
  std::vector<Point> pts;
  if (total <= static_cast<double>(cap)) {
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
      Point p(d);
      for (std::size_t i = 0; i < d; ++i)
        p[i] = res == 1 ? lo[i] : lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx[i]) / static_cast<double>(res - 1);
      pts.push_back(std::move(p));
      std::size_t k = 0;
      while (k < d && ++idx[k] == res) idx[k++] = 0;
      if (k == d) break;
    }
    return pts;
  }
  boost::random::sobol gen(d);
  boost::random::uniform_01<double> u01;
  for (std::size_t s = 0; s < cap; ++s) {
    Point p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * u01(gen);
    pts.push_back(std::move(p));
  }
  return pts;
}

/// Nodes and weights of the 32-point Gauss-Legendre rule mapped to [0, 1].
struct Quadrature01 {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline const Quadrature01& gauss_legendre_32() {
  static const Quadrature01 rule = [] {
    using G = boost::math::quadrature::gauss<double, 32>;
    Quadrature01 q;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      q.nodes.push_back(0.5 * (1.0 - a[i]));
      q.weights.push_back(0.5 * w[i]);
      q.nodes.push_back(0.5 * (1.0 + a[i]));
      q.weights.push_back(0.5 * w[i]);
    }
    return q;
  }();
  return rule;
}

}  // namespace cosymp
