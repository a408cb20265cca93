#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "cosymp/chart.hpp"
#include "cosymp/space.hpp"
#include "cosymp/torus.hpp"

namespace cosymp::io {

using Json = nlohmann::ordered_json;

inline Error parse_error(const std::string& what) { return Error(ErrorCode::ParseError, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t count(const Json& j, const char* key, std::size_t fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw parse_error(std::string("'") + key + "' must be a count");
  return v.get<std::size_t>();
}

inline double real(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw parse_error("expected a number");
}

/// Exact scalars come from integers, decimal text or "p/q" strings.
template <class T>
T scalar(const Json& j) {
  if constexpr (ScalarTraits<T>::exact) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return parse_rational(std::to_string(j.get<unsigned long long>()));
    if (j.is_number_float()) return parse_rational(j.dump());
    throw parse_error("expected a number or rational string");
  } else {
    return real(j);
  }
}

template <class T>
Vec<T> vec(const Json& j) {
  if (!j.is_array()) throw parse_error("expected an array");
  Vec<T> v;
  for (const auto& x : j) v.push_back(scalar<T>(x));
  return v;
}

template <class T>
Matrix<T> matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw parse_error("expected a non-empty array of rows");
  std::vector<Vec<T>> rows;
  for (const auto& r : j) rows.push_back(vec<T>(r));
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw parse_error("ragged matrix");
  return Matrix<T>::from_rows(rows[0].size(), rows);
}

template <class T>
CosymplecticSpace<T> space(const Json& j, double tol) {
  Matrix<T> b = matrix<T>(field(j, "b"));
  Vec<T> psi = vec<T>(field(j, "psi"));
  if (j.contains("dim") && count(j, "dim", 0) != b.rows()) throw parse_error("'dim' disagrees with b");
  return build_space<T>(std::move(b), std::move(psi), tol);
}

/// {"basis": [[...], ...]} with columns as inner arrays, or the bare array.
template <class T>
Subspace<T> subspace(const Json& j, std::size_t dim, double tol) {
  const Json& cols = j.is_object() ? field(j, "basis") : j;
  if (!cols.is_array()) throw parse_error("subspace basis must be an array");
  std::vector<Vec<T>> vs;
  for (const auto& c : cols) {
    vs.push_back(vec<T>(c));
    if (vs.back().size() != dim) throw Error(ErrorCode::DimensionMismatch, "basis vector length");
  }
  return Subspace<T>::span(dim, vs, tol);
}

inline Json to_json(double x) { return x; }

inline Json to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return r.get_str();
}

template <class T>
Json to_json(const Vec<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

template <class T>
Json to_json(const Matrix<T>& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

template <class T>
Json to_json(const Subspace<T>& s) {
  Json a = Json::array();
  for (const auto& c : s.basis()) a.push_back(to_json(c));
  return Json{{"dim", s.dim()}, {"basis", a}};
}

/// [{"exp": [..], "c": x}, ...]
inline Polynomial polynomial(const Json& j, std::size_t vars) {
  if (!j.is_array()) throw parse_error("polynomial must be an array of terms");
  Polynomial p(vars);
  for (const auto& t : j) {
    const auto e = field(t, "exp").get<std::vector<unsigned>>();
    if (e.size() != vars) throw Error(ErrorCode::DimensionMismatch, "exponent length");
    p.add(e, real(field(t, "c")));
  }
  return p;
}

inline std::vector<Polynomial> polynomials(const Json& j, std::size_t vars) {
  if (!j.is_array()) throw parse_error("expected an array of polynomials");
  std::vector<Polynomial> out;
  for (const auto& p : j) out.push_back(polynomial(p, vars));
  return out;
}

inline MapField poly_map(std::vector<Polynomial> comps) {
  return [comps](std::span<const double> u) {
    Point x(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) x[i] = comps[i](u);
    return x;
  };
}

inline JacobianField poly_jacobian(const std::vector<Polynomial>& comps, std::size_t vars) {
  std::vector<std::vector<Polynomial>> d(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = 0; j < vars; ++j) d[i].push_back(comps[i].derivative(j));
  return [d, vars](std::span<const double> u) {
    Matrix<double> m(d.size(), vars);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < vars; ++j) m(i, j) = d[i][j](u);
    return m;
  };
}

/// {"kind": "flat_standard"|"torus_standard"|"weil_chart"|"polynomial", ...}
inline ChartModel model(const Json& j, std::size_t grid = 8) {
  const std::string kind = field(j, "kind").get<std::string>();
  const double radius = j.contains("radius") ? real(j.at("radius")) : 1.0;
  if (kind == "flat_standard") return flat_standard(count(j, "n", 1), radius, grid);
  if (kind == "torus_standard") return torus_standard(count(j, "n", 1), grid);
  if (kind == "weil_chart") return weil_chart(count(j, "n", 1), count(j, "l", 1), radius, grid);
  if (kind == "polynomial") {
    const std::size_t d = count(j, "dim", 0);
    if (d == 0) throw parse_error("polynomial model needs 'dim'");
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> upper;
    for (const auto& t : field(j, "omega")) {
      const std::size_t a = count(t, "i", 0), b = count(t, "j", 0);
      if (a >= b || b >= d) throw parse_error("omega entries need i < j < dim");
      upper[{a, b}] = polynomial(field(t, "poly"), d);
    }
    const auto eta = polynomials(field(j, "eta"), d);
    if (eta.size() != d) throw Error(ErrorCode::DimensionMismatch, "eta length");
    return custom_model(d, as_field(d, upper), as_field(eta), {Domain::Kind::Flat, Point(d, -radius), Point(d, radius)},
                        grid);
  }
  throw parse_error("unknown model kind '" + kind + "'");
}

/// {"lo": [...], "hi": [...], "res": r}
inline std::vector<Point> domain_samples(const Json& j, std::size_t k) {
  const auto lo = field(j, "lo").get<std::vector<double>>();
  const auto hi = field(j, "hi").get<std::vector<double>>();
  if (lo.size() != k || hi.size() != k) throw Error(ErrorCode::DimensionMismatch, "domain bounds length");
  return sample_box(lo, hi, count(j, "res", 5));
}

/// [{"k": [..], "c": a, "s": b}, ...]
inline TrigPolynomial trig(const Json& j, std::size_t vars) {
  if (!j.is_array()) throw parse_error("trig polynomial must be an array of terms");
  TrigPolynomial p(vars);
  for (const auto& t : j) {
    auto k = field(t, "k").get<std::vector<int>>();
    if (k.size() != vars) throw Error(ErrorCode::DimensionMismatch, "frequency length");
    p.add(std::move(k), t.contains("c") ? real(t.at("c")) : 0.0, t.contains("s") ? real(t.at("s")) : 0.0);
  }
  return p;
}

/// {"n": int, "displacement": [trig polynomial per output coordinate]}
inline TorusMap torus_map(const Json& j, const TorusOptions& o) {
  const std::size_t n = count(j, "n", 0);
  if (n == 0) throw parse_error("torus map needs n >= 1");
  const std::size_t d = torus_dim(n);
  const Json& disp = field(j, "displacement");
  if (!disp.is_array() || disp.size() != d) throw Error(ErrorCode::DimensionMismatch, "one displacement per coordinate");
  std::vector<TrigPolynomial> comps;
  for (const auto& c : disp) comps.push_back(trig(c, d));
  MapField f = [comps](std::span<const double> x) {
    Point v(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) v[i] = comps[i](x);
    return v;
  };
  JacobianField jac = [comps, d](std::span<const double> x) {
    Matrix<double> m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const Covector g = comps[i].gradient(x);
      for (std::size_t c = 0; c < d; ++c) m(i, c) = g[c];
    }
    return m;
  };
  return make_torus_map(n, std::move(f), std::move(jac), o);
}

}  // namespace cosymp::io
