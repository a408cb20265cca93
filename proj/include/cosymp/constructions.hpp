#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "cosymp/space.hpp"

namespace cosymp {

/// Grows an isotropic F to a Lagrangian-like L with F ⊆ L ⊆ F^{b,ψ}.
/// Each step scans the echelon basis of L^{b,ψ}, projects onto ker ψ along ξ
/// and adds the first vector not already in L.
template <class T>
Subspace<T> extend_to_lagrangian(const CosymplecticSpace<T>& space, const Subspace<T>& f) {
  if (!classify(space, f).isotropic) throw Error(ErrorCode::NotIsotropic, "extend_to_lagrangian needs isotropic F");
  Subspace<T> l = f;
  while (l.dim() < space.n()) {
    bool grown = false;
    const Subspace<T> perp = orthogonal(space, l);
    for (const auto& v : perp.basis()) {
      Vec<T> w = space.project_kernel(v);
      if (l.contains(std::span<const T>(w))) continue;
      l = sum(l, Subspace<T>::span(space.dim(), {w}, space.tol()));
      grown = true;
      break;
    }
    if (!grown) throw Error(ErrorCode::Degenerate, "no admissible extension vector");
  }
  return l;
}

namespace detail {

/// Walks candidate combinations of `basis` in a fixed order: single vectors,
/// sums of two, of three, ..., then integer coefficient vectors of growing
/// height with first nonzero entry positive. Stops when `accept` returns true.
template <class T>
bool candidate_ladder(const std::vector<Vec<T>>& basis, std::size_t max_height,
                      const std::function<bool(const Vec<T>&)>& accept) {
  const std::size_t m = basis.size();
  if (m == 0) return false;
  const std::size_t d = basis.front().size();
  auto combine = [&](const std::vector<int>& c) {
    Vec<T> v(d, T(0));
    for (std::size_t k = 0; k < m; ++k)
      if (c[k] != 0) v = axpy<T>(T(c[k]), basis[k], std::move(v));
    return v;
  };

  for (std::size_t size = 1; size <= m; ++size) {
    std::vector<int> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), 1);
    do {
      if (accept(combine(pick))) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  for (std::size_t h = 2; h <= max_height; ++h) {
    const int hh = static_cast<int>(h);
    std::vector<int> c(m, -hh);
    for (;;) {
      int top = 0;
      int first = 0;
      for (int x : c) {
        top = std::max(top, std::abs(x));
        if (first == 0) first = x;
      }
      if (top == hh && first > 0 && accept(combine(c))) return true;
      std::size_t k = m;
      while (k > 0 && c[k - 1] == hh) c[--k] = -hh;
      if (k == 0) break;
      ++c[k - 1];
    }
  }
  return false;
}

}  // namespace detail

/// A Lagrangian-like L with L ∩ L_j = {0} for every input L_j.
template <class T>
Subspace<T> transverse_lagrangian(const CosymplecticSpace<T>& space, const std::vector<Subspace<T>>& lags,
                                  std::size_t max_height = 12) {
  for (const auto& lj : lags) {
    if (lj.ambient_dim() != space.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension");
    if (!classify(space, lj).lagrangian_like) {
      throw Error(ErrorCode::NotLagrangian, "transverse_lagrangian input is not Lagrangian-like");
    }
  }
  const Subspace<T> kernel = space.kernel_psi();
  Subspace<T> l = Subspace<T>::zero(space.dim(), space.tol());
  while (l.dim() < space.n()) {
    const Subspace<T> q = intersect(orthogonal(space, l), kernel);
    Subspace<T> next;
    const bool found = detail::candidate_ladder<T>(q.basis(), max_height, [&](const Vec<T>& v) {
      if (l.contains(std::span<const T>(v))) return false;
      Subspace<T> grown = sum(l, Subspace<T>::span(space.dim(), {v}, space.tol()));
      for (const auto& lj : lags)
        if (intersect(grown, lj).dim() != 0) return false;
      next = std::move(grown);
      return true;
    });
    if (!found) throw Error(ErrorCode::NoConvergence, "candidate ladder exhausted without a transversal line");
    l = std::move(next);
  }
  return l;
}

template <class T>
struct DarbouxBasis {
  std::vector<Vec<T>> tau;
  std::vector<Vec<T>> f;
  Vec<T> xi;
  Matrix<T> change_of_basis;  // columns (τ_1..τ_n, f_1..f_n, ξ)
};

/// (τ, f, ξ) with b(τ_i, f_j) = δ_ij and all other pairings zero, built from
/// two transverse Lagrangian-like subspaces.
template <class T>
DarbouxBasis<T> darboux_basis(const CosymplecticSpace<T>& space) {
  const std::size_t n = space.n();
  const Subspace<T> l = transverse_lagrangian<T>(space, {});
  const Subspace<T> m = transverse_lagrangian<T>(space, {l});

  DarbouxBasis<T> out;
  out.tau = l.basis();
  Matrix<T> pairing(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) pairing(i, k) = space.form(out.tau[i], m.basis()[k]);
  const Matrix<T> coeff = inverse(pairing, space.tol());
  for (std::size_t j = 0; j < n; ++j) {
    Vec<T> fj(space.dim(), T(0));
    for (std::size_t k = 0; k < n; ++k) fj = axpy<T>(coeff(k, j), m.basis()[k], std::move(fj));
    out.f.push_back(std::move(fj));
  }
  out.xi = space.reeb();
  std::vector<Vec<T>> cols = out.tau;
  cols.insert(cols.end(), out.f.begin(), out.f.end());
  cols.push_back(out.xi);
  out.change_of_basis = Matrix<T>::from_columns(space.dim(), cols);
  return out;
}

/// L with L|_U = Id, ψ₂∘L = ψ₁ and b₂(L·, L·) = b₁. The complement W is
/// corrected over each structure to O_i ⊕ span ξ_i, where O_i is the graph
/// over W ∩ ker ψ_i of the map A_i into U with b_i(A_i w, w') = -½ b_i(w, w').
template <class T>
Matrix<T> canonical_isomorphism(const CosymplecticSpace<T>& s1, const CosymplecticSpace<T>& s2,
                                const Subspace<T>& u, const Subspace<T>& w) {
  const std::size_t d = s1.dim();
  if (s2.dim() != d || u.ambient_dim() != d || w.ambient_dim() != d) {
    throw Error(ErrorCode::DimensionMismatch, "canonical_isomorphism dimensions");
  }
  if (!classify(s1, u).lagrangian_like || !classify(s2, u).lagrangian_like) {
    throw Error(ErrorCode::NotLagrangianForBoth, "U must be Lagrangian-like for both structures");
  }
  if (u.dim() + w.dim() != d || intersect(u, w).dim() != 0) {
    throw Error(ErrorCode::NotComplement, "W is not a complement of U");
  }
  const std::size_t n = s1.n();
  const double tol = s1.tol();

  auto corrected = [&](const CosymplecticSpace<T>& s) {
    const auto nb = intersect(w, s.kernel_psi()).basis();
    Matrix<T> g(n, n);  // g(l, m) = b(u_l, n_m)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = 0; m < n; ++m) g(l, m) = s.form(u.basis()[l], nb[m]);
    const Matrix<T> gt = g.transpose();
    std::vector<Vec<T>> o;
    for (std::size_t k = 0; k < n; ++k) {
      Vec<T> rhs(n);
      for (std::size_t m = 0; m < n; ++m) rhs[m] = T(-s.form(nb[k], nb[m]) / T(2));
      const Vec<T> a = solve<T>(gt, rhs, tol);
      Vec<T> v = nb[k];
      for (std::size_t l = 0; l < n; ++l) v = axpy<T>(a[l], u.basis()[l], std::move(v));
      o.push_back(std::move(v));
    }
    if (!classify(s, Subspace<T>::span(d, o, tol)).lagrangian_like) {
      throw Error(ErrorCode::NotLagrangian, "corrected complement is not Lagrangian-like");
    }
    return o;
  };
  const auto o1 = corrected(s1);
  const auto o2 = corrected(s2);

  Matrix<T> p1(n, n), p2(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      p1(k, l) = s1.form(o1[k], u.basis()[l]);
      p2(k, l) = s2.form(o2[k], u.basis()[l]);
    }
  const Matrix<T> dmat = (p1 * inverse(p2, tol)).transpose();

  std::vector<Vec<T>> source = u.basis();
  std::vector<Vec<T>> target = u.basis();
  for (std::size_t k = 0; k < n; ++k) {
    source.push_back(o1[k]);
    Vec<T> image(d, T(0));
    for (std::size_t m = 0; m < n; ++m) image = axpy<T>(dmat(m, k), o2[m], std::move(image));
    target.push_back(std::move(image));
  }
  source.push_back(s1.reeb());
  target.push_back(s2.reeb());
  return Matrix<T>::from_columns(d, target) * inverse(Matrix<T>::from_columns(d, source), tol);
}

inline constexpr double kTolPolar = 1e-9;

struct CoComplexStructure {
  Matrix<double> j;
  Matrix<double> g;  // g(u, v) = Ĩ(u)(J v), i.e. M J
};

namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

/// Smallest eigenvalue of the symmetric part, or -inf if not symmetric within tol.
inline double min_symmetric_eigenvalue(const Matrix<double>& a, double tol) {
  const Eigen::MatrixXd e = to_eigen(a);
  if ((e - e.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, e.cwiseAbs().maxCoeff())) {
    return -std::numeric_limits<double>::infinity();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (e + e.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace detail

/// Compatible co-complex structure from a metric R by polar decomposition of
/// Ã = P₁ M⁻¹ R on ker ψ, worked out in an R-orthonormal basis of ker ψ.
inline CoComplexStructure cocomplex_from_metric(const CosymplecticSpace<double>& space, const Matrix<double>& r,
                                                double tol_polar = kTolPolar) {
  const std::size_t d = space.dim();
  if (r.rows() != d || r.cols() != d) throw Error(ErrorCode::DimensionMismatch, "metric size");
  if (!(detail::min_symmetric_eigenvalue(r, tol_polar) > 0.0)) {
    throw Error(ErrorCode::NotSPD, "metric is not symmetric positive definite");
  }
  const auto& xi = space.reeb();
  if (!(dot<double>(xi, r.apply(xi)) > 0.0)) throw Error(ErrorCode::NotPositive, "R(ξ, ξ) <= 0");

  // Gram-Schmidt of the echelon basis of ker ψ with respect to R.
  std::vector<Vec<double>> e;
  const Subspace<double> kernel = space.kernel_psi();
  for (auto v : kernel.basis()) {
    for (const auto& q : e) {
      const double c = dot<double>(q, r.apply(v));
      v = axpy<double>(-c, q, std::move(v));
    }
    const double nrm = std::sqrt(dot<double>(v, r.apply(v)));
    for (auto& x : v) x /= nrm;
    e.push_back(std::move(v));
  }
  const std::size_t m = e.size();
  const Matrix<double> em = Matrix<double>::from_columns(d, e);
  const Matrix<double> a = inverse(space.musical_matrix(), space.tol()) * r;
  Matrix<double> p1 = Matrix<double>::identity(d) - outer<double>(xi, space.psi());
  // coordinates of w ∈ ker ψ are Eᵀ R w
  const Eigen::MatrixXd at = detail::to_eigen(em.transpose() * r * p1 * a * em);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(at.transpose() * at);
  const Eigen::VectorXd lam = es.eigenvalues();
  if (lam.minCoeff() <= tol_polar) throw Error(ErrorCode::Degenerate, "ÃᵀÃ is singular");
  const Eigen::MatrixXd inv_sqrt = es.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal() *
                                   es.eigenvectors().transpose();
  const Matrix<double> jk = detail::from_eigen(at * inv_sqrt);

  std::vector<Vec<double>> image;
  for (std::size_t k = 0; k < m; ++k) image.push_back(em.apply(jk.column(k)));
  std::vector<Vec<double>> source = e;
  image.push_back(xi);
  source.push_back(xi);
  CoComplexStructure out;
  out.j = Matrix<double>::from_columns(d, image) * inverse(Matrix<double>::from_columns(d, source), space.tol());
  out.g = space.musical_matrix() * out.j;
  return out;
}

/// ‖P₁(J² + Id)P₁‖ in the max-entry norm.
template <class T>
double cocomplex_defect(const CosymplecticSpace<T>& space, const Matrix<T>& j) {
  const std::size_t d = space.dim();
  const Matrix<T> p1 = Matrix<T>::identity(d) - outer<T>(space.reeb(), space.psi());
  return (p1 * (j * j + Matrix<T>::identity(d)) * p1).max_abs();
}

/// P₁J²i₀ = -Id on ker ψ, Jξ = ξ and J(ker ψ) ⊆ ker ψ.
template <class T>
bool is_cocomplex(const CosymplecticSpace<T>& space, const Matrix<T>& j, double tol = kTolPolar) {
  const std::size_t d = space.dim();
  if (j.rows() != d || j.cols() != d) throw Error(ErrorCode::DimensionMismatch, "J size");
  const double scale = std::max(1.0, j.max_abs());
  auto small = [&](double x) { return ScalarTraits<T>::exact ? x == 0.0 : x <= tol * scale * scale; };
  const Subspace<T> kernel = space.kernel_psi();
  for (const auto& k : kernel.basis()) {
    const Vec<T> jk = j.apply(k);
    if (!small(ScalarTraits<T>::to_double(ScalarTraits<T>::abs(space.psi_of(jk))))) return false;
    Vec<T> jjk = space.project_kernel(j.apply(jk));
    if (!small(max_abs<T>(axpy<T>(T(1), k, std::move(jjk))))) return false;
  }
  const Vec<T> jxi = j.apply(space.reeb());
  return small(max_abs<T>(axpy<T>(T(-1), space.reeb(), jxi)));
}

/// Co-complex and g̃ = M J symmetric positive definite.
template <class T>
bool is_compatible(const CosymplecticSpace<T>& space, const Matrix<T>& j, double tol = kTolPolar) {
  if (!is_cocomplex(space, j, tol)) return false;
  const Matrix<double> g = convert<double>(space.musical_matrix() * j);
  return detail::min_symmetric_eigenvalue(g, tol) > tol;
}

/// Dimension of the Lagrangian-like Grassmannian, n(n+1)/2.
inline std::size_t grassmannian_dim(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "grassmannian_dim needs n >= 1");
  return n * (n + 1) / 2;
}

}  // namespace cosymp
