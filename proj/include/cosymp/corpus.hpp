#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "cosymp/chart.hpp"
#include "cosymp/constructions.hpp"

namespace cosymp {

/// One worked example. `asserted` lines restate a claim as printed with the
/// example; `derived` lines are values recomputed from the definitions.
/// A claim that holds is PASS, one that fails is FLAG.
struct CorpusLine {
  std::string id;
  std::string kind;  // "asserted" | "derived"
  bool holds = false;
  std::string detail;

  std::string status() const { return holds ? "PASS" : "FLAG"; }
};

namespace corpus_detail {

inline Vec<Rational> e(std::size_t dim, std::size_t i) { return unit_vector<Rational>(dim, i - 1); }

inline Subspace<Rational> span_of(std::size_t dim, std::initializer_list<std::size_t> idx) {
  std::vector<Vec<Rational>> vs;
  for (auto i : idx) vs.push_back(e(dim, i));
  return Subspace<Rational>::span(dim, vs);
}

inline std::string show(const Vec<Rational>& v) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i].get_str();
  s << ")";
  return s.str();
}

// span{e_i,...} when the echelon basis is made of unit vectors, else the raw basis
inline std::string show(const Subspace<Rational>& f) {
  std::ostringstream s;
  s << "span{";
  for (std::size_t k = 0; k < f.dim(); ++k) {
    const auto& c = f.basis()[k];
    std::size_t ones = 0, at = 0;
    bool unit = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 1) ++ones, at = i;
      else if (c[i] != 0) unit = false;
    }
    s << (k ? "," : "");
    if (unit && ones == 1)
      s << "e" << at + 1;
    else
      s << show(c);
  }
  s << "}";
  return s.str();
}

inline std::string num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// ψ = dx₃, b = dx₁∧dx₂ + dx₄∧dx₅ on ℝ⁵
inline CosymplecticSpace<Rational> ex1() {
  Matrix<Rational> b(5, 5);
  b(0, 1) = 1, b(1, 0) = -1, b(3, 4) = 1, b(4, 3) = -1;
  return build_space<Rational>(b, e(5, 3));
}

}  // namespace corpus_detail

inline std::vector<CorpusLine> run_corpus() {
  using namespace corpus_detail;
  std::vector<CorpusLine> out;
  auto add = [&](std::string id, std::string kind, bool holds, std::string detail) {
    out.push_back({std::move(id), std::move(kind), holds, std::move(detail)});
  };

  const auto v = ex1();
  const auto& xi = v.reeb();
  {
    const auto e1 = e(5, 1);
    const bool reeb = v.psi_of(e1) == 1 && v.b().apply(e1) == Vec<Rational>(5, Rational(0));
    add("ex1.reeb", "asserted", reeb,
        "xi = e1 claimed; psi(e1) = " + v.psi_of(e1).get_str() + ", derived xi = " + show(xi));
    add("ex1.reeb", "derived", xi == e(5, 3) && v.psi_of(xi) == 1 && v.b().apply(xi) == Vec<Rational>(5, Rational(0)),
        "xi = " + show(xi) + " with psi(xi) = 1 and b(xi, .) = 0");
    add("ex1.musical", "derived", v.musical(e(5, 3)) == e(5, 3), "I(e3) = " + show(v.musical(e(5, 3))));
  }
  {
    const auto f = span_of(5, {2, 3, 4});
    const auto fp = span_of(5, {1, 2, 3, 4});
    const auto of = orthogonal(v, f), ofp = orthogonal(v, fp);
    const bool claim = of == span_of(5, {1, 5}) && ofp == span_of(5, {5});
    add("ex1.orthogonal-bases", "asserted", claim,
        "span{e1,e5} and span{e5} claimed; derived " + show(of) + " and " + show(ofp));
    add("ex1.orthogonal", "derived", of == span_of(5, {2, 4}) && of.dim() + f.dim() == 5,
        "span{e2,e3,e4}^perp = " + show(of));
    add("ex1.orthogonal-coisotropic", "derived", ofp == span_of(5, {4}) && classify(v, fp).coisotropic,
        "span{e1,e2,e3,e4}^perp = " + show(ofp) + ", coisotropic");
  }
  {
    const auto f = span_of(5, {2, 3});
    const auto c = classify(v, f);
    const auto g = gram(v, f);
    add("ex1.e2e3-lagrangian", "asserted", c.isotropic && c.lagrangian_like,
        "isotropic and Lagrangian-like claimed; I(e3)(e3) = " + g(1, 1).get_str() + ", perp = " +
            show(orthogonal(v, f)));
    add("ex1.e2e3", "derived", !c.isotropic && !c.lagrangian_like && orthogonal(v, f) == span_of(5, {2, 4, 5}),
        "not isotropic, perp = " + show(orthogonal(v, f)));
    const auto l = span_of(5, {1, 4});
    add("ex1.lagrangian", "derived", classify(v, l).lagrangian_like,
        "span{e1,e4} is Lagrangian-like, perp = " + show(orthogonal(v, l)));
  }
  {
    bool ok = true, lag = true, cx = true;
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto s = standard_space<Rational>(n);
      const std::size_t d = 2 * n + 1;
      ok = ok && s.reeb() == e(d, d);
      std::vector<Vec<Rational>> es;
      for (std::size_t i = 1; i <= n; ++i) es.push_back(e(d, i));
      lag = lag && classify(s, Subspace<Rational>::span(d, es)).lagrangian_like;
      const auto sf = standard_space<double>(n);
      Matrix<double> j(d, d);
      for (std::size_t i = 0; i < n; ++i) {
        j(n + i, i) = 1.0;   // J e_i = f_i
        j(i, n + i) = -1.0;  // J f_i = −e_i
      }
      j(d - 1, d - 1) = 1.0;
      cx = cx && is_cocomplex(sf, j) && is_compatible(sf, j);
    }
    add("standard.space", "asserted", ok, "standard structure valid with xi = e_{2n+1}, n = 1..3");
    add("standard.lagrangian", "asserted", lag, "span{e1..en} Lagrangian-like, n = 1..3");
    add("standard.cocomplex", "asserted", cx, "J e = f, J f = -e, J xi = xi is a compatible co-complex structure");
  }
  {
    bool reeb = true;
    std::string rank_detail;
    bool nondeg = true;
    for (auto [n, l] : {std::pair<std::size_t, std::size_t>{1, 3}, {2, 3}}) {
      auto [b, psi] = weil_forms<Rational>(n, l);
      const std::size_t d = b.rows();
      Vec<Rational> x(d, Rational(0));
      for (std::size_t j = 0; j < l; ++j) x[2 * n * l + j] = Rational(1, static_cast<long>(l));
      reeb = reeb && dot<Rational>(psi, x) == 1 && b.apply(x) == Vec<Rational>(d, Rational(0));
      const auto m = b + outer<Rational>(psi, psi);
      const std::size_t r = rank(m);
      nondeg = nondeg && r == d;
      rank_detail += (rank_detail.empty() ? "" : ", ") + std::string("rank(B + psi^T psi) = ") + std::to_string(r) +
                     " of " + std::to_string(d);
    }
    add("weil.reeb", "asserted", reeb, "(1/l) sum d/dz_j has eta(xi) = 1 and i_xi omega = 0, (n,l) = (1,3), (2,3)");
    add("weil.cosymplectic", "asserted", nondeg, "cosymplectic for l = 3 claimed; " + rank_detail);
    const auto m = weil_forms_model(1, 3);
    const auto rep = check_lagrangian_submanifold(m, weil_l2(1, 3, 1.0, 3));
    add("weil.l2-dimension", "asserted", rep.dim_ok && rep.max_omega_pullback == 0.0 && rep.max_eta_pullback == 0.0,
        "L2 pullbacks vanish with dim nl + (l-1)/2 = 4 (ambient forms degenerate)");
  }
  {
    const auto model = flat_standard(2);
    ParamSubmanifold sub;
    sub.k = 2;
    sub.samples = sample_box({-1.0, -1.0}, {1.0, 1.0}, 9);
    auto graph_of = [](std::function<double(double, double)> f) {
      return [f](std::span<const double> u) { return Point{u[0], u[1], 0.0, 0.0, f(u[0], u[1])}; };
    };
    sub.param = graph_of([](double x1, double) { return x1 * x1; });
    const auto sq = check_lagrangian_submanifold(model, sub);
    double max_df = 0.0;
    for (const auto& u : sub.samples) max_df = std::max(max_df, std::fabs(2.0 * u[0]));
    add("graph.general-f", "asserted", sq.verdict,
        "{(x1,x2,0,0,f)} Lagrangian-like for every f claimed; f = x1^2 gives eta pullback " + num(sq.max_eta_pullback));
    add("graph.eta-pullback", "derived", std::fabs(sq.max_eta_pullback - max_df) <= 0.02 * max_df,
        "eta pullback is df: " + num(sq.max_eta_pullback) + " vs max|df| = " + num(max_df));
    sub.param = graph_of([](double, double) { return 0.5; });
    add("graph.constant-f", "derived", check_lagrangian_submanifold(model, sub).verdict,
        "f constant gives a Lagrangian-like graph");
  }
  {
    bool ok = true;
    for (std::size_t n = 1; n <= 4; ++n) ok = ok && grassmannian_dim(n) == n * n - n * (n - 1) / 2;
    add("grassmannian.dimension", "derived", ok, "dim U(n)/O(n) = n(n+1)/2, n = 1..4");
  }
  return out;
}

/// The asserted lines known to contradict the definitions.
inline const std::vector<std::string>& documented_inconsistencies() {
  static const std::vector<std::string> ids{"ex1.reeb", "ex1.orthogonal-bases", "ex1.e2e3-lagrangian",
                                            "graph.general-f"};
  return ids;
}

}  // namespace cosymp
