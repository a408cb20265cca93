#pragma once

#include <cstddef>
#include <vector>

#include "cosymp/linalg.hpp"

namespace cosymp {

/// A linear subspace of T^ambient_dim held in reduced column echelon form:
/// basis column j has a leading one in pivot row p_j, zeros in every other
/// pivot row, and p_0 < p_1 < ... . The form is unique per subspace, so
/// equality is a comparison of basis matrices.
template <class T>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient, double tol = kTolLin) { return Subspace(ambient, {}, tol); }

  static Subspace full(std::size_t ambient, double tol = kTolLin) {
    std::vector<Vec<T>> cols;
    for (std::size_t i = 0; i < ambient; ++i) cols.push_back(unit_vector<T>(ambient, i));
    return Subspace(ambient, cols, tol);
  }

  /// Span of arbitrary (possibly dependent) vectors.
  static Subspace span(std::size_t ambient, const std::vector<Vec<T>>& vectors, double tol = kTolLin) {
    return Subspace(ambient, vectors, tol);
  }

  /// Span of the columns of G.
  static Subspace from_columns(const Matrix<T>& g, double tol = kTolLin) {
    return Subspace(g.rows(), g.columns(), tol);
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  double tol() const noexcept { return tol_; }
  const std::vector<Vec<T>>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  Matrix<T> basis_matrix() const { return Matrix<T>::from_columns(ambient_, basis_); }

  /// Residual of v after removing its component along the canonical basis.
  Vec<T> residual(std::span<const T> v) const {
    check_ambient(v.size());
    Vec<T> r(v.begin(), v.end());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      T c = r[pivots_[j]];
      if (c == T(0)) continue;
      for (std::size_t i = 0; i < ambient_; ++i) r[i] -= c * basis_[j][i];
    }
    return r;
  }

  bool contains(std::span<const T> v) const {
    const auto r = residual(v);
    if constexpr (ScalarTraits<T>::exact) {
      for (const auto& x : r)
        if (x != T(0)) return false;
      return true;
    } else {
      return max_abs<T>(r) <= tol_ * std::max(1.0, max_abs<T>(v));
    }
  }

  bool contains(const Subspace& g) const {
    check_ambient(g.ambient_);
    for (const auto& b : g.basis_)
      if (!contains(b)) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_ || a.dim() != b.dim() || a.pivots_ != b.pivots_) return false;
    if constexpr (ScalarTraits<T>::exact) {
      return a.basis_ == b.basis_;
    } else {
      const double tol = std::max(a.tol_, b.tol_);
      for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t i = 0; i < a.ambient_; ++i)
          if (std::fabs(a.basis_[j][i] - b.basis_[j][i]) > tol) return false;
      return true;
    }
  }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    a.check_ambient(b.ambient_);
    std::vector<Vec<T>> all = a.basis_;
    all.insert(all.end(), b.basis_.begin(), b.basis_.end());
    return Subspace(a.ambient_, all, a.tol_);
  }

  /// Intersection through the kernel of [A | -B].
  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_ambient(b.ambient_);
    if (a.dim() == 0 || b.dim() == 0) return zero(a.ambient_, a.tol_);
    Matrix<T> stacked(a.ambient_, a.dim() + b.dim());
    for (std::size_t i = 0; i < a.ambient_; ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j) stacked(i, j) = a.basis_[j][i];
      for (std::size_t j = 0; j < b.dim(); ++j) stacked(i, a.dim() + j) = -b.basis_[j][i];
    }
    std::vector<Vec<T>> vectors;
    for (const auto& k : nullspace(stacked, a.tol_)) {
      Vec<T> v(a.ambient_, T(0));
      for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t i = 0; i < a.ambient_; ++i) v[i] += k[j] * a.basis_[j][i];
      vectors.push_back(std::move(v));
    }
    return Subspace(a.ambient_, vectors, a.tol_);
  }

 private:
  Subspace(std::size_t ambient, const std::vector<Vec<T>>& vectors, double tol) : ambient_(ambient), tol_(tol) {
    if (vectors.empty()) return;
    auto ech = rref(Matrix<T>::from_rows(ambient, vectors), tol);
    for (std::size_t r = 0; r < ech.rank(); ++r) basis_.push_back(ech.reduced.row(r));
    pivots_ = std::move(ech.pivots);
  }

  void check_ambient(std::size_t n) const {
    if (n != ambient_) throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension");
  }

  std::size_t ambient_ = 0;
  double tol_ = kTolLin;
  std::vector<Vec<T>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace cosymp
