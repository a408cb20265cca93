#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "cosymp/subspace.hpp"

namespace cosymp {

/// A cosymplectic vector space (V, b, psi): b antisymmetric, psi a nonzero
/// covector, and the musical matrix M = B + psiᵀpsi invertible. With this
/// convention the musical map is v ↦ vᵀM, i.e. Ĩ(v)(u) = b(v,u) + psi(v)psi(u).
template <class T>
class CosymplecticSpace {
 public:
  /// Validates (B, psi) and caches M, M⁻ᵀ and the Reeb vector.
  static CosymplecticSpace build(Matrix<T> b, Vec<T> psi, double tol = kTolLin) {
    const std::size_t d = b.rows();
    if (!b.square() || psi.size() != d) {
      throw Error(ErrorCode::DimensionMismatch, "B must be square and psi of the same length");
    }
    if (d % 2 == 0) throw Error(ErrorCode::EvenDimension, "dimension " + std::to_string(d) + " is even");
    const double scale = std::max(1.0, b.max_abs());
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j)
        if (!ScalarTraits<T>::negligible(b(i, j) + b(j, i), tol * scale)) {
          throw Error(ErrorCode::NotAntisymmetric,
                      "B(" + std::to_string(i) + "," + std::to_string(j) + ") + B(j,i) != 0");
        }
    if (max_abs<T>(psi) == 0.0 || (!ScalarTraits<T>::exact && max_abs<T>(psi) <= tol)) {
      throw Error(ErrorCode::TrivialPsi, "psi is the zero covector");
    }

    CosymplecticSpace s;
    s.tol_ = tol;
    s.b_ = std::move(b);
    s.psi_ = std::move(psi);
    s.musical_ = s.b_ + outer<T>(s.psi_, s.psi_);
    auto inv = try_inverse(s.musical_.transpose(), tol);
    if (!inv) throw Error(ErrorCode::Degenerate, "B + psiᵀpsi is singular: not a cosymplectic structure");
    s.musical_inv_t_ = std::move(*inv);
    // ξ = M⁻¹ψᵀ; equivalently Mᵀξ = ψᵀ since Bξ = 0 and ψ(ξ) = 1.
    s.reeb_ = solve<T>(s.musical_, s.psi_, tol);

    const T one = dot<T>(s.psi_, s.reeb_);
    const Vec<T> b_xi = s.b_.apply(s.reeb_);
    if (!ScalarTraits<T>::negligible(one - T(1), tol) || !ScalarTraits<T>::negligible(T(max_abs<T>(b_xi)), tol * scale)) {
      throw Error(ErrorCode::Degenerate, "Reeb vector failed re-verification");
    }
    return s;
  }

  std::size_t dim() const noexcept { return b_.rows(); }
  std::size_t n() const noexcept { return (dim() - 1) / 2; }
  double tol() const noexcept { return tol_; }
  const Matrix<T>& b() const noexcept { return b_; }
  const Vec<T>& psi() const noexcept { return psi_; }
  const Vec<T>& reeb() const noexcept { return reeb_; }
  const Matrix<T>& musical_matrix() const noexcept { return musical_; }

  /// Ĩ(v) = ι_v b + ψ(v)ψ as a covector.
  Vec<T> musical(std::span<const T> v) const {
    check(v.size());
    return musical_.apply_left(v);
  }

  /// The unique v with Ĩ(v) = alpha.
  Vec<T> musical_inverse(std::span<const T> alpha) const {
    check(alpha.size());
    return musical_inv_t_.apply(alpha);
  }

  /// Ĩ(u)(v).
  T pairing(std::span<const T> u, std::span<const T> v) const { return dot<T>(musical(u), v); }

  T form(std::span<const T> u, std::span<const T> v) const { return dot<T>(b_.apply_left(u), v); }

  T psi_of(std::span<const T> v) const {
    check(v.size());
    return dot<T>(psi_, v);
  }

  /// Projection onto ker ψ along ξ.
  Vec<T> project_kernel(std::span<const T> v) const {
    return axpy<T>(T(-psi_of(v)), reeb_, Vec<T>(v.begin(), v.end()));
  }

  Subspace<T> kernel_psi() const { return Subspace<T>::span(dim(), nullspace(Matrix<T>::from_rows(dim(), {psi_}), tol_), tol_); }
  Subspace<T> reeb_line() const { return Subspace<T>::span(dim(), {reeb_}, tol_); }

  bool is_zero(const T& x) const {
    return ScalarTraits<T>::negligible(x, tol_ * std::max(1.0, musical_.max_abs()));
  }

 private:
  CosymplecticSpace() = default;

  void check(std::size_t len) const {
    if (len != dim()) throw Error(ErrorCode::DimensionMismatch, "vector length differs from space dimension");
  }

  double tol_ = kTolLin;
  Matrix<T> b_;
  Vec<T> psi_;
  Matrix<T> musical_;
  Matrix<T> musical_inv_t_;
  Vec<T> reeb_;
};

template <class T>
CosymplecticSpace<T> build_space(Matrix<T> b, Vec<T> psi, double tol = kTolLin) {
  return CosymplecticSpace<T>::build(std::move(b), std::move(psi), tol);
}

/// ℝ^{2n+1} in the basis (e_1..e_n, f_1..f_n, ξ) with b(e_i,f_j) = δ_ij, ψ = ξ*.
template <class T>
CosymplecticSpace<T> standard_space(std::size_t n, double tol = kTolLin) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "standard_space needs n >= 1");
  const std::size_t d = 2 * n + 1;
  Matrix<T> b(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    b(i, n + i) = T(1);
    b(n + i, i) = T(-1);
  }
  Vec<T> psi(d, T(0));
  psi[d - 1] = T(1);
  return build_space<T>(std::move(b), std::move(psi), tol);
}

/// Constant-coefficient forms of the Weil bundle chart, coordinates
/// ((x_{i,j}), (y_{i,j}), z_1..z_l) with x_{i,j} at index (j·n + i).
/// Only the forms; for l > 1 the pair is degenerate (rank B + ψᵀψ = 2nl + 1).
template <class T>
std::pair<Matrix<T>, Vec<T>> weil_forms(std::size_t n, std::size_t l) {
  if (n < 1 || l < 1) throw Error(ErrorCode::InvalidArgument, "weil forms need n, l >= 1");
  if (l % 2 == 0) throw Error(ErrorCode::EvenDimension, "Weil algebra dimension l must be odd");
  const std::size_t block = n * l;
  const std::size_t d = 2 * block + l;
  Matrix<T> b(d, d);
  for (std::size_t k = 0; k < block; ++k) {
    b(k, block + k) = T(1);
    b(block + k, k) = T(-1);
  }
  Vec<T> psi(d, T(0));
  for (std::size_t j = 0; j < l; ++j) psi[2 * block + j] = T(1);
  return {std::move(b), std::move(psi)};
}

/// The Weil chart forms validated as a space. Succeeds only for l = 1;
/// otherwise Degenerate.
template <class T>
CosymplecticSpace<T> weil_space(std::size_t n, std::size_t l, double tol = kTolLin) {
  auto [b, psi] = weil_forms<T>(n, l);
  return build_space<T>(std::move(b), std::move(psi), tol);
}

/// F^{b,ψ} = {x : Ĩ(x)(g) = 0 for all g in F}, the kernel of (M G)ᵀ.
template <class T>
Subspace<T> orthogonal(const CosymplecticSpace<T>& space, const Subspace<T>& f) {
  if (f.ambient_dim() != space.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension");
  if (f.dim() == 0) return Subspace<T>::full(space.dim(), space.tol());
  const Matrix<T> constraints = (space.musical_matrix() * f.basis_matrix()).transpose();
  return Subspace<T>::span(space.dim(), nullspace(constraints, space.tol()), space.tol());
}

/// Gram matrix Gᵀ M G of Ĩ restricted to F.
template <class T>
Matrix<T> gram(const CosymplecticSpace<T>& space, const Subspace<T>& f) {
  const Matrix<T> g = f.basis_matrix();
  return g.transpose() * space.musical_matrix() * g;
}

struct Classification {
  bool isotropic = false;
  bool coisotropic = false;
  bool cosymplectic_sub = false;
  bool lagrangian_like = false;
  bool contains_reeb = false;

  friend bool operator==(const Classification&, const Classification&) = default;
};

template <class T>
Classification classify(const CosymplecticSpace<T>& space, const Subspace<T>& f) {
  if (f.ambient_dim() != space.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension");
  Classification c;
  const Subspace<T> perp = orthogonal(space, f);
  const Matrix<T> g = gram(space, f);
  const double threshold = space.tol() * std::max(1.0, space.musical_matrix().max_abs());

  c.isotropic = true;
  for (const auto& x : g.data())
    if (!ScalarTraits<T>::negligible(x, threshold)) {
      c.isotropic = false;
      break;
    }
  c.coisotropic = f.contains(perp);
  c.cosymplectic_sub = f.dim() == 0 ? true : invertible(g, space.tol());
  c.contains_reeb = f.contains(std::span<const T>(space.reeb()));
  c.lagrangian_like =
      c.isotropic && !c.contains_reeb && perp == sum(f, space.reeb_line());
  return c;
}

/// No isotropic subspace strictly contains F; for isotropic F this is
/// F^{b,ψ} ∩ ker ψ = F.
template <class T>
bool is_maximal_isotropic(const CosymplecticSpace<T>& space, const Subspace<T>& f) {
  if (!classify(space, f).isotropic) return false;
  return intersect(orthogonal(space, f), space.kernel_psi()) == f;
}

}  // namespace cosymp
