#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cosymp/matrix.hpp"

namespace cosymp {

template <class T>
struct RowEchelon {
  Matrix<T> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. Exact scalars use the first nonzero pivot;
/// floats use partial pivoting and treat entries below tol * max|A| as zero.
template <class T>
RowEchelon<T> rref(Matrix<T> a, double tol = kTolLin) {
  using Tr = ScalarTraits<T>;
  const double threshold = tol * a.max_abs();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::optional<std::size_t> best;
    if constexpr (Tr::exact) {
      for (std::size_t i = r; i < rows; ++i)
        if (!Tr::negligible(a(i, c), threshold)) {
          best = i;
          break;
        }
    } else {
      double best_abs = threshold;
      for (std::size_t i = r; i < rows; ++i) {
        double v = Tr::to_double(Tr::abs(a(i, c)));
        if (v > best_abs) {
          best_abs = v;
          best = i;
        }
      }
    }
    if (!best) {
      if constexpr (!Tr::exact)
        for (std::size_t i = r; i < rows; ++i) a(i, c) = T(0);
      continue;
    }
    if (*best != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(*best, j));
    T inv = T(1) / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    a(r, c) = T(1);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      T factor = a(i, c);
      if (factor == T(0)) continue;
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= factor * a(r, j);
      a(i, c) = T(0);
    }
    pivots.push_back(c);
    ++r;
  }
  if constexpr (!Tr::exact) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (Tr::negligible(a(i, j), threshold)) a(i, j) = T(0);
  }
  return {std::move(a), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& a, double tol = kTolLin) {
  return rref(a, tol).rank();
}

/// Basis of {x : A x = 0}, one vector per free column, in column order.
template <class T>
std::vector<Vec<T>> nullspace(const Matrix<T>& a, double tol = kTolLin) {
  const auto ech = rref(a, tol);
  const std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<T> v(cols, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse of a square matrix, or nullopt when it is singular.
template <class T>
std::optional<Matrix<T>> try_inverse(const Matrix<T>& a, double tol = kTolLin) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  if (rank(a, tol) < n) return std::nullopt;
  auto ech = rref(a.hcat(Matrix<T>::identity(n)), tol);
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a, double tol = kTolLin) {
  auto inv = try_inverse(a, tol);
  if (!inv) throw Error(ErrorCode::Degenerate, "matrix is singular");
  return *inv;
}

template <class T>
bool invertible(const Matrix<T>& a, double tol = kTolLin) {
  return a.square() && rank(a, tol) == a.rows();
}

/// Solves A x = b for square invertible A.
template <class T>
Vec<T> solve(const Matrix<T>& a, std::span<const T> b, double tol = kTolLin) {
  if (!a.square() || b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "solve shapes");
  const std::size_t n = a.rows();
  if (rank(a, tol) < n) throw Error(ErrorCode::Degenerate, "singular system");
  Matrix<T> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto ech = rref(aug, tol);
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) throw Error(ErrorCode::Degenerate, "singular system");
  Vec<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ech.reduced(i, n);
  return x;
}

}  // namespace cosymp
