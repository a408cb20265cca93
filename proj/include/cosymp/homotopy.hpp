#pragma once

#include <cstddef>
#include <utility>

#include "cosymp/forms.hpp"

namespace cosymp {

/// Radial homotopy operator around `center` with 32-node Gauss-Legendre
/// quadrature. For a closed form α vanishing under the constant retraction,
/// d(Iα) = α.
class HomotopyOperator {
 public:
  explicit HomotopyOperator(Point center, double tol_pde = kTolPde, double fd_step = 1e-3)
      : center_(std::move(center)), tol_(tol_pde), h_(fd_step) {}

  const Point& center() const noexcept { return center_; }

  /// Iα(x) = ∫₀¹ α(c + u(x−c))·(x−c) du.
  double primitive(const OneFormField& alpha, std::span<const double> x) const {
    check(x.size());
    const auto& q = gauss_legendre_32();
    Point y(x.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = center_[i] + q.nodes[k] * (x[i] - center_[i]);
      const Covector a = alpha(y);
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * (x[i] - center_[i]);
      acc += q.weights[k] * s;
    }
    return acc;
  }

  /// (Iα)_j(x) = ∫₀¹ u Σ_i (x−c)_i α_ij(c + u(x−c)) du.
  Covector primitive(const TwoFormField& alpha, std::span<const double> x) const {
    check(x.size());
    const auto& q = gauss_legendre_32();
    const std::size_t d = x.size();
    Point y(d);
    Covector out(d, 0.0);
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      const double u = q.nodes[k];
      for (std::size_t i = 0; i < d; ++i) y[i] = center_[i] + u * (x[i] - center_[i]);
      const Matrix<double> a = alpha(y);
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += (x[i] - center_[i]) * a(i, j);
        out[j] += q.weights[k] * u * s;
      }
    }
    return out;
  }

  /// Both radial primitives of the differences ω₁ − ω₀ and η₁ − η₀ in one pass.
  template <class W1, class W0, class E1, class E0>
  std::pair<Covector, double> primitive_pair(const W1& w1, const W0& w0, const E1& e1, const E0& e0,
                                             std::span<const double> x) const {
    check(x.size());
    const auto& q = gauss_legendre_32();
    const std::size_t d = x.size();
    Point y(d), r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = x[i] - center_[i];
    Covector out(d, 0.0);
    double acc = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      const double u = q.nodes[k];
      for (std::size_t i = 0; i < d; ++i) y[i] = center_[i] + u * r[i];
      const Matrix<double> a1 = w1(y), a0 = w0(y);
      const Covector b1 = e1(y), b0 = e0(y);
      double s1 = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += r[i] * (a1(i, j) - a0(i, j));
        out[j] += q.weights[k] * u * s;
        s1 += (b1[j] - b0[j]) * r[j];
      }
      acc += q.weights[k] * s1;
    }
    return {std::move(out), acc};
  }

  /// As `primitive`, after checking dα ≈ 0 at x.
  double checked_primitive(const OneFormField& alpha, std::span<const double> x) const {
    if (fd::d_oneform(alpha, x, h_) > tol_) throw Error(ErrorCode::NotClosed, "1-form is not closed at sample");
    return primitive(alpha, x);
  }

  Covector checked_primitive(const TwoFormField& alpha, std::span<const double> x) const {
    if (fd::d_twoform(alpha, x, h_) > tol_) throw Error(ErrorCode::NotClosed, "2-form is not closed at sample");
    return primitive(alpha, x);
  }

 private:
  void check(std::size_t n) const {
    if (n != center_.size()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from center");
  }

  Point center_;
  double tol_;
  double h_;
};

}  // namespace cosymp
