#pragma once

#include <random>
#include <vector>

#include "cosymp/constructions.hpp"

namespace testing_support {

using cosymp::Matrix;
using cosymp::Rational;
using cosymp::Subspace;
using cosymp::Vec;

inline Rational small_int(std::mt19937_64& rng, int lo = -3, int hi = 3) {
  return Rational(std::uniform_int_distribution<int>(lo, hi)(rng));
}

/// Random integer antisymmetric B and covector psi, redrawn until B + psiᵀpsi
/// is invertible.
inline cosymp::CosymplecticSpace<Rational> random_space(std::mt19937_64& rng, std::size_t dim, int range = 3) {
  for (;;) {
    Matrix<Rational> b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        b(i, j) = small_int(rng, -range, range);
        b(j, i) = -b(i, j);
      }
    Vec<Rational> psi(dim);
    for (auto& x : psi) x = small_int(rng, -range, range);
    try {
      return cosymp::build_space<Rational>(b, psi);
    } catch (const cosymp::Error&) {
    }
  }
}

inline Vec<Rational> random_vector(std::mt19937_64& rng, std::size_t dim, int range = 3) {
  Vec<Rational> v(dim);
  for (auto& x : v) x = small_int(rng, -range, range);
  return v;
}

/// Span of k random vectors (its dimension may come out below k).
inline Subspace<Rational> random_subspace(std::mt19937_64& rng, std::size_t dim, std::size_t k) {
  std::vector<Vec<Rational>> vs;
  for (std::size_t i = 0; i < k; ++i) vs.push_back(random_vector(rng, dim));
  return Subspace<Rational>::span(dim, vs);
}

inline Subspace<Rational> random_subspace(std::mt19937_64& rng, std::size_t dim) {
  return random_subspace(rng, dim, std::uniform_int_distribution<std::size_t>(0, dim)(rng));
}

/// Independent orthogonal oracle: the constraint rows Ĩ(x)(g_k) = 0 are
/// assembled entry by entry from b and psi, then the kernel is read off a
/// fresh Gauss-Jordan pass written here.
inline Subspace<Rational> brute_force_orthogonal(const cosymp::CosymplecticSpace<Rational>& s,
                                                 const Subspace<Rational>& f) {
  const std::size_t d = s.dim();
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : f.basis()) {
    std::vector<Rational> row(d, Rational(0));
    Rational psi_g = 0;
    for (std::size_t j = 0; j < d; ++j) psi_g += s.psi()[j] * g[j];
    for (std::size_t i = 0; i < d; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < d; ++j) acc += s.b()(i, j) * g[j];
      row[i] = acc + s.psi()[i] * psi_g;
    }
    rows.push_back(row);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c] != 0) {
        Rational fct = rows[i][c];
        for (std::size_t j = 0; j < d; ++j) rows[i][j] -= fct * rows[r][j];
      }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<Vec<Rational>> kernel;
  for (std::size_t c = 0; c < d; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end()) continue;
    Vec<Rational> v(d, Rational(0));
    v[c] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -rows[k][c];
    kernel.push_back(v);
  }
  return Subspace<Rational>::span(d, kernel);
}

inline Vec<Rational> ints(std::initializer_list<int> xs) {
  Vec<Rational> v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

inline Vec<Rational> e(std::size_t dim, std::size_t i) { return cosymp::unit_vector<Rational>(dim, i); }

/// ω = dx₁∧dx₂ + dx₄∧dx₅, ψ = dx₃ on ℝ⁵ (indices 0-based).
inline cosymp::CosymplecticSpace<Rational> ex1_space() {
  Matrix<Rational> b(5, 5);
  b(0, 1) = 1;
  b(1, 0) = -1;
  b(3, 4) = 1;
  b(4, 3) = -1;
  return cosymp::build_space<Rational>(b, ints({0, 0, 1, 0, 0}));
}

}  // namespace testing_support

namespace testing_support {

/// Random structure on ℝ^dim whose B and ψ vanish on span{e_1..e_n}, pushed
/// through the change of coordinates `t` (B ↦ tᵀBt, ψ ↦ ψt).
inline cosymp::CosymplecticSpace<Rational> random_space_with_lagrangian(std::mt19937_64& rng, std::size_t dim,
                                                                        const Matrix<Rational>& t) {
  const std::size_t n = (dim - 1) / 2;
  for (;;) {
    Matrix<Rational> b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        if (j < n) continue;
        b(i, j) = small_int(rng);
        b(j, i) = -b(i, j);
      }
    Vec<Rational> psi(dim, Rational(0));
    for (std::size_t i = n; i < dim; ++i) psi[i] = small_int(rng);
    try {
      return cosymp::build_space<Rational>(t.transpose() * b * t, t.apply_left(psi));
    } catch (const cosymp::Error&) {
    }
  }
}

inline Matrix<Rational> random_invertible(std::mt19937_64& rng, std::size_t dim) {
  for (;;) {
    Matrix<Rational> t(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) t(i, j) = small_int(rng, -2, 2);
    if (cosymp::invertible(t)) return t;
  }
}

/// A Lagrangian-like subspace grown from one random kernel vector.
inline Subspace<Rational> random_lagrangian(std::mt19937_64& rng, const cosymp::CosymplecticSpace<Rational>& s) {
  for (;;) {
    auto v = s.project_kernel(random_vector(rng, s.dim()));
    if (cosymp::max_abs<Rational>(v) == 0.0) continue;
    return cosymp::extend_to_lagrangian(s, Subspace<Rational>::span(s.dim(), {v}));
  }
}

}  // namespace testing_support
