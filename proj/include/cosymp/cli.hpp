#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cosymp/corpus.hpp"
#include "cosymp/json_io.hpp"
#include "cosymp/moser.hpp"
#include "cosymp/torus.hpp"

namespace cosymp::cli {

using io::Json;

enum Exit : int { kOk = 0, kFalse = 1, kInput = 2 };

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string mode;  // empty: from the input file, else exact
  double tol_lin = kTolLin;
  double tol_pde = kTolPde;
  double tol_polar = kTolPolar;
  std::size_t grid = 0;        // 0: per-command default
  std::size_t time_steps = 0;  // 0: per-command default
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string builtin;
};

struct Outcome {
  Json report;
  bool verdict = true;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{
      "validate",    "orthogonal",        "classify",    "darboux", "extend",    "transverse",
      "canoniso",    "cocomplex",         "check-submanifold", "check-graph", "oneform-graph",
      "moser",       "weinstein",         "flux",        "fixed-points", "ortho1-search", "corpus"};
  return s;
}

namespace detail {

inline Json read_input(const RunConfig& c) {
  if (c.input.empty()) throw Error(ErrorCode::InvalidArgument, "--input is required for " + c.subcommand);
  std::ifstream in(c.input);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + c.input);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

inline bool exact_mode(const RunConfig& c, const Json& in) {
  std::string m = c.mode;
  if (m.empty() && in.is_object() && in.contains("mode")) m = in.at("mode").get<std::string>();
  if (m.empty() || m == "exact") return true;
  if (m == "float") return false;
  throw Error(ErrorCode::ParseError, "mode must be exact or float");
}

inline std::size_t or_default(std::size_t v, std::size_t d) { return v == 0 ? d : v; }

template <class T>
bool is_zero_matrix(const Matrix<T>& m, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) return false;
    return true;
  } else {
    return m.max_abs() <= tol;
  }
}

template <class T>
Json classification_json(const Classification& c) {
  return Json{{"isotropic", c.isotropic},
              {"coisotropic", c.coisotropic},
              {"cosymplectic_sub", c.cosymplectic_sub},
              {"lagrangian_like", c.lagrangian_like},
              {"contains_reeb", c.contains_reeb}};
}

template <class T>
Outcome linear(const RunConfig& c, const Json& in) {
  const double tol = c.tol_lin;
  const std::string& cmd = c.subcommand;
  Outcome o;
  Json& r = o.report;
  r["mode"] = ScalarTraits<T>::exact ? "exact" : "float";
  if (cmd == "canoniso") {
    const auto s1 = io::space<T>(io::field(in, "first"), tol);
    const auto s2 = io::space<T>(io::field(in, "second"), tol);
    const auto u = io::subspace<T>(io::field(in, "u"), s1.dim(), tol);
    const auto w = io::subspace<T>(io::field(in, "w"), s1.dim(), tol);
    const Matrix<T> l = canonical_isomorphism(s1, s2, u, w);
    bool on_u = true;
    for (const auto& x : u.basis()) on_u = on_u && is_zero_matrix<T>(Matrix<T>::from_columns(x.size(), {axpy<T>(T(-1), x, l.apply(x))}), tol);
    const Matrix<T> psi1 = Matrix<T>::from_rows(s1.dim(), {s1.psi()});
    const Matrix<T> psi2 = Matrix<T>::from_rows(s1.dim(), {s2.psi()});
    const bool psi_ok = is_zero_matrix<T>(psi2 * l - psi1, tol);
    const bool b_ok = is_zero_matrix<T>(l.transpose() * s2.b() * l - s1.b(), tol);
    r["map"] = io::to_json(l);
    r["identity_on_u"] = on_u;
    r["psi_pullback"] = psi_ok;
    r["b_pullback"] = b_ok;
    o.verdict = on_u && psi_ok && b_ok;
    return o;
  }
  const auto s = io::space<T>(in, tol);
  const std::size_t d = s.dim();
  r["dim"] = d;
  if (cmd == "validate") {
    r["n"] = s.n();
    r["reeb"] = io::to_json(s.reeb());
    r["musical"] = io::to_json(s.musical_matrix());
  } else if (cmd == "orthogonal" || cmd == "classify") {
    const auto f = io::subspace<T>(io::field(in, "subspace"), d, tol);
    const auto of = orthogonal(s, f);
    r["subspace"] = io::to_json(f);
    r["orthogonal"] = io::to_json(of);
    if (cmd == "classify") r["classification"] = classification_json<T>(classify(s, f));
    else r["dimension_identity"] = f.dim() + of.dim() == d;
  } else if (cmd == "darboux") {
    const auto db = darboux_basis(s);
    const Matrix<T>& ch = db.change_of_basis;
    const auto std_space = standard_space<T>(s.n(), tol);
    const bool b_ok = is_zero_matrix<T>(ch.transpose() * s.b() * ch - std_space.b(), tol);
    const Matrix<T> psi = Matrix<T>::from_rows(d, {s.psi()});
    const Matrix<T> psi0 = Matrix<T>::from_rows(d, {std_space.psi()});
    const bool psi_ok = is_zero_matrix<T>(psi * ch - psi0, tol);
    Json taus = Json::array(), fs = Json::array();
    for (const auto& t : db.tau) taus.push_back(io::to_json(t));
    for (const auto& f : db.f) fs.push_back(io::to_json(f));
    r["tau"] = taus;
    r["f"] = fs;
    r["xi"] = io::to_json(db.xi);
    r["change_of_basis"] = io::to_json(ch);
    r["b_pullback"] = b_ok;
    r["psi_pullback"] = psi_ok;
    o.verdict = b_ok && psi_ok;
  } else if (cmd == "extend") {
    const auto f = io::subspace<T>(io::field(in, "subspace"), d, tol);
    const auto l = extend_to_lagrangian(s, f);
    const bool lag = classify(s, l).lagrangian_like;
    const bool sandwich = l.contains(f) && orthogonal(s, f).contains(l);
    r["subspace"] = io::to_json(f);
    r["lagrangian"] = io::to_json(l);
    r["lagrangian_like"] = lag;
    r["sandwiched"] = sandwich;
    o.verdict = lag && sandwich;
  } else if (cmd == "transverse") {
    std::vector<Subspace<T>> lags;
    for (const auto& l : io::field(in, "lagrangians")) lags.push_back(io::subspace<T>(l, d, tol));
    const auto m = transverse_lagrangian(s, lags);
    bool transverse = true;
    for (const auto& l : lags) transverse = transverse && intersect(l, m).dim() == 0;
    r["lagrangian"] = io::to_json(m);
    r["lagrangian_like"] = classify(s, m).lagrangian_like;
    r["transverse_to_all"] = transverse;
    o.verdict = transverse && classify(s, m).lagrangian_like;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unhandled linear subcommand " + cmd);
  }
  return o;
}

inline Outcome cocomplex(const RunConfig& c, const Json& in) {
  const auto s = io::space<double>(in, c.tol_lin);
  const auto r = io::matrix<double>(io::field(in, "metric"));
  const auto cx = cocomplex_from_metric(s, r, c.tol_polar);
  Outcome o;
  const double defect = cocomplex_defect(s, cx.j);
  const bool comp = is_compatible(s, cx.j, c.tol_polar);
  o.report["j"] = io::to_json(cx.j);
  o.report["g"] = io::to_json(cx.g);
  o.report["defect"] = defect;
  o.report["compatible"] = comp;
  o.verdict = defect <= c.tol_polar && comp;
  return o;
}

inline Json lagrangian_json(const LagrangianReport& r) {
  return Json{{"max_omega_pullback", r.max_omega_pullback},
              {"max_eta_pullback", r.max_eta_pullback},
              {"dim_ok", r.dim_ok},
              {"verdict", r.verdict}};
}

inline Outcome check_submanifold(const RunConfig& c) {
  Outcome o;
  const std::string b = c.builtin;
  if (b == "weil-l2") {
    // ambient forms are validated first; on rejection report the raw pullbacks
    o.report["builtin"] = b;
    const auto sub = weil_l2(1, 3, 1.0, 3);
    o.report["k"] = sub.k;
    try {
      o.report["result"] = lagrangian_json(check_lagrangian_submanifold(weil_chart(1, 3), sub, c.tol_pde));
    } catch (const Error& e) {
      o.report["ambient_error"] = std::string(to_string(e.code()));
      o.report["diagnostic"] = lagrangian_json(check_lagrangian_submanifold(weil_forms_model(1, 3), sub, c.tol_pde));
      o.verdict = false;
      return o;
    }
    o.verdict = o.report["result"]["verdict"].get<bool>();
    return o;
  }
  ChartModel model;
  ParamSubmanifold sub;
  if (b == "square-graph" || b == "constant-height") {
    model = flat_standard(2);
    sub.k = 2;
    sub.samples = sample_box({-1.0, -1.0}, {1.0, 1.0}, or_default(c.grid, 9));
    if (b == "square-graph")
      sub.param = [](std::span<const double> u) { return Point{u[0], u[1], 0.0, 0.0, u[0] * u[0]}; };
    else
      sub.param = [](std::span<const double> u) { return Point{u[0], u[1], 0.0, 0.0, 0.5}; };
    o.report["builtin"] = b;
  } else if (b.empty()) {
    const Json in = read_input(c);
    model = io::model(io::field(in, "model"));
    sub.k = io::count(in, "k", 0);
    const auto comps = io::polynomials(io::field(in, "param"), sub.k);
    sub.param = io::poly_map(comps);
    sub.jacobian = io::poly_jacobian(comps, sub.k);
    sub.samples = io::domain_samples(io::field(in, "domain"), sub.k);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown builtin " + b);
  }
  const auto rep = check_lagrangian_submanifold(model, sub, c.tol_pde);
  o.report["k"] = sub.k;
  o.report["result"] = lagrangian_json(rep);
  o.verdict = rep.verdict;
  return o;
}

inline Outcome check_graph(const RunConfig& c) {
  Outcome o;
  ChartModel m1, m2;
  MapField phi;
  std::optional<JacobianField> dphi;
  std::vector<Point> samples;
  const std::string b = c.builtin;
  if (!b.empty()) {
    m1 = m2 = flat_standard(1);
    samples = sample_box(Point(3, -1.0), Point(3, 1.0), or_default(c.grid, 8));
    if (b == "identity")
      phi = [](std::span<const double> x) { return Point(x.begin(), x.end()); };
    else if (b == "translation")
      phi = [](std::span<const double> x) { return Point{x[0] + 0.3, x[1] - 0.2, x[2] + 0.1}; };
    else if (b == "scaling")
      phi = [](std::span<const double> x) { return Point{2.0 * x[0], 2.0 * x[1], x[2]}; };
    else
      throw Error(ErrorCode::InvalidArgument, "unknown builtin " + b);
    o.report["builtin"] = b;
  } else {
    const Json in = read_input(c);
    m1 = io::model(io::field(in, "model1"));
    m2 = io::model(io::field(in, "model2"));
    const auto comps = io::polynomials(io::field(in, "phi"), m1.dim);
    phi = io::poly_map(comps);
    dphi = io::poly_jacobian(comps, m1.dim);
    samples = io::domain_samples(io::field(in, "domain"), m1.dim);
  }
  const auto g = check_graph_cosymplectomorphism(m1, m2, phi, dphi, samples, c.tol_pde);
  o.report["graph_omega_residual"] = g.max_omega_residual;
  o.report["graph_eta_residual"] = g.max_eta_residual;
  o.report["direct_omega_residual"] = g.direct_omega_residual;
  o.report["direct_eta_residual"] = g.direct_eta_residual;
  o.report["verdict"] = g.verdict;
  o.report["direct_verdict"] = g.direct_verdict;
  o.verdict = g.verdict;
  return o;
}

inline Outcome oneform_graph(const RunConfig& c) {
  Outcome o;
  std::size_t n = 2;
  std::vector<Polynomial> beta;
  double t0 = 0.0;
  std::vector<Point> samples;
  const std::string b = c.builtin;
  if (!b.empty()) {
    beta.assign(2, Polynomial(2));
    if (b == "exact") {  // d(x₁² x₂)
      beta[0].add({1, 1}, 2.0);
      beta[1].add({2, 0}, 1.0);
    } else if (b == "non-closed") {  // x₂ dx₁
      beta[0].add({0, 1}, 1.0);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown builtin " + b);
    }
    samples = sample_box({-1.0, -1.0}, {1.0, 1.0}, or_default(c.grid, 8));
    o.report["builtin"] = b;
  } else {
    const Json in = read_input(c);
    n = io::count(in, "n", 0);
    beta = io::polynomials(io::field(in, "beta"), n);
    if (beta.size() != n) throw Error(ErrorCode::DimensionMismatch, "beta needs n components");
    if (in.contains("t0")) t0 = io::real(in.at("t0"));
    samples = io::domain_samples(io::field(in, "domain"), n);
  }
  const auto r = check_oneform_graph(n, as_field(beta), io::poly_jacobian(beta, n), samples, t0, c.tol_pde);
  o.report["max_closedness_defect"] = r.max_closedness_defect;
  o.report["max_omega_pullback"] = r.max_omega_pullback;
  o.report["max_eta_pullback"] = r.max_eta_pullback;
  o.report["t0"] = r.t0;
  o.report["verdict"] = r.verdict;
  o.verdict = r.verdict;
  return o;
}

inline Json moser_json(const MoserReport& r) {
  return Json{{"omega_residual", r.omega_residual},      {"eta_residual", r.eta_residual},
              {"origin_drift", r.origin_drift},          {"origin_speed", r.origin_speed},
              {"reeb_contraction", r.reeb_contraction},  {"reeb_beta_gradient", r.reeb_beta_gradient},
              {"reeb_normalization", r.reeb_normalization}, {"steps", r.steps},
              {"seeds", r.seeds}};
}

inline Json convergence_json(const ConvergenceStudy& s) {
  return Json{{"steps", s.steps},           {"residuals", s.residuals}, {"ratios", s.ratios},
              {"floor", s.floor},           {"measurable", s.measurable}, {"min_ratio", s.min_ratio}};
}

inline Outcome moser(const RunConfig& c) {
  MoserConfig cfg;
  cfg.steps = or_default(c.time_steps, 64);
  cfg.seeds_per_axis = or_default(c.grid, 9);
  cfg.tol_lin = c.tol_lin;
  cfg.tol_pde = c.tol_pde;
  std::vector<std::pair<std::string, std::pair<ChartModel, ChartModel>>> pairs;
  const std::string b = c.builtin.empty() && c.input.empty() ? "both" : c.builtin;
  if (b == "omega-pair" || b == "both") pairs.push_back({"omega-pair", {flat_standard(1, 0.3), perturbed_omega_model()}});
  if (b == "eta-pair" || b == "both") pairs.push_back({"eta-pair", {flat_standard(1, 0.3), perturbed_eta_model()}});
  if (b.empty()) {
    const Json in = read_input(c);
    pairs.push_back({"input", {io::model(io::field(in, "model0")), io::model(io::field(in, "model1"))}});
    if (in.contains("box_radius")) cfg.box_radius = io::real(in.at("box_radius"));
  }
  if (pairs.empty()) throw Error(ErrorCode::InvalidArgument, "unknown builtin " + b);
  Outcome o;
  Json runs = Json::array();
  for (auto& [name, models] : pairs) {
    const MoserFlow flow(models.first, models.second, cfg);
    const auto rep = flow.run(cfg.steps);
    const auto conv = moser_convergence(flow, {1, 2, 4, 8});
    Json j{{"pair", name}, {"report", moser_json(rep)}, {"convergence", convergence_json(conv)}};
    const bool ok = rep.omega_residual <= 1e-4 && rep.eta_residual <= 1e-4 && rep.origin_drift <= 1e-12 &&
                    rep.origin_speed <= 1e-12;
    j["verdict"] = ok;
    o.verdict = o.verdict && ok;
    runs.push_back(std::move(j));
  }
  o.report["box_radius"] = cfg.box_radius;
  o.report["runs"] = std::move(runs);
  return o;
}

inline TorusOptions torus_options(const RunConfig& c, std::size_t default_grid) {
  TorusOptions o;
  o.grid = or_default(c.grid, default_grid);
  o.tol_pde = c.tol_pde;
  return o;
}

inline TorusMap torus_target(const RunConfig& c, const TorusOptions& o, const std::string& fallback) {
  const std::string b = c.builtin.empty() && c.input.empty() ? fallback : c.builtin;
  if (b.empty()) return io::torus_map(read_input(c), o);
  if (b == "identity") return identity_map(1);
  if (b == "translation") return translation(1, {0.05, 0.0, 0.0});
  if (b == "translation-z") return translation(1, {0.03, -0.02, 0.04});
  if (b == "eps-flow") return eps_flow(1, 0.01);
  if (b == "ham-flow") return ham_flow(1, 0.01, 16, o);
  if (b == "exact-form") return exact_form_map(1, 0.01, o);
  throw Error(ErrorCode::InvalidArgument, "unknown builtin " + b);
}

inline Outcome weinstein(const RunConfig& c) {
  const auto o = torus_options(c, 64);
  const auto h = torus_target(c, o, "eps-flow");
  const auto w = weinstein_oneform(h, o);
  Outcome out;
  out.report["periods"] = w.form.periods;
  out.report["reeb_shift"] = w.reeb_shift;
  out.report["c0_bound"] = h.c0_bound;
  out.report["graph_omega_residual"] = w.graph.max_omega_residual;
  out.report["graph_eta_residual"] = w.graph.max_eta_residual;
  out.report["closedness_defect"] = closedness_defect(w.form, o.check_res);
  return out;
}

inline Outcome flux(const RunConfig& c) {
  const auto o = torus_options(c, 64);
  const auto h = torus_target(c, o, "eps-flow");
  const std::size_t k = or_default(c.time_steps, 32);
  const auto r = flux_vs_weinstein(h, k, o);
  Outcome out;
  out.report["time_steps"] = k;
  out.report["grid"] = o.grid;
  out.report["periods_weinstein"] = r.periods_weinstein;
  out.report["periods_flux"] = r.periods_flux;
  out.report["reeb_shift"] = r.reeb_shift;
  out.report["max_diff"] = r.max_diff;
  out.report["reeb_pairing_max"] = r.reeb_pairing_max;
  out.report["can1_scalar"] = r.can1_scalar;
  out.report["endpoint_c0"] = r.endpoint_c0;
  out.verdict = r.max_diff <= 1e-3 && r.reeb_pairing_max <= 1e-12 && r.can1_vs_shift <= 1e-6;
  return out;
}

inline Outcome fixed_points(const RunConfig& c) {
  const auto o = torus_options(c, 64);
  const auto f = torus_target(c, o, "exact-form");
  const auto z = zeros_of_weinstein_form(f, o);
  Outcome out;
  out.report["identically_zero"] = z.identically_zero;
  out.report["count"] = z.points.size();
  out.report["rejected"] = z.rejected;
  out.report["max_fixed_distance"] = z.max_fixed_distance;
  if (!z.identically_zero) out.report["fixed_points"] = z.points;
  out.verdict = z.max_fixed_distance <= 10.0 * o.tol_pde;
  return out;
}

/// All coordinate subspaces F of the dimension-3 and -5 examples with
/// V = F ⊕ F^⊥, F proper and F ≠ span ξ.
inline Outcome ortho1_search() {
  std::vector<std::pair<std::string, CosymplecticSpace<Rational>>> spaces{
      {"standard3", standard_space<Rational>(1)},
      {"standard5", standard_space<Rational>(2)},
      {"ex1", corpus_detail::ex1()}};
  Outcome o;
  Json hits = Json::array();
  std::size_t tested = 0;
  for (const auto& [name, s] : spaces) {
    const std::size_t d = s.dim();
    const auto reeb_line = Subspace<Rational>::span(d, {s.reeb()});
    for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
      std::vector<Vec<Rational>> vs;
      Json idx = Json::array();
      for (std::size_t i = 0; i < d; ++i)
        if (mask & (1u << i)) {
          vs.push_back(unit_vector<Rational>(d, i));
          idx.push_back(i + 1);
        }
      const auto f = Subspace<Rational>::span(d, vs);
      if (f == reeb_line) continue;
      ++tested;
      const auto of = orthogonal(s, f);
      if (intersect(f, of).dim() == 0 && f.dim() + of.dim() == d)
        hits.push_back(Json{{"space", name}, {"coordinates", idx}, {"orthogonal", io::to_json(of)}});
    }
  }
  o.report["tested"] = tested;
  o.report["counterexamples"] = hits.size();
  o.report["hits"] = hits;
  o.report["proposition_holds"] = hits.empty();
  o.verdict = hits.empty();
  return o;
}

inline Outcome corpus() {
  const auto lines = run_corpus();
  Outcome o;
  Json arr = Json::array();
  std::size_t flags = 0, passes = 0;
  for (const auto& l : lines) {
    arr.push_back(Json{{"status", l.status()}, {"kind", l.kind}, {"id", l.id}, {"detail", l.detail}});
    (l.holds ? passes : flags) += 1;
    if (l.kind == "derived" && !l.holds) o.verdict = false;
  }
  o.report["lines"] = arr;
  o.report["flags"] = flags;
  o.report["passes"] = passes;
  return o;
}

inline Outcome dispatch(const RunConfig& c) {
  const std::string& s = c.subcommand;
  if (s == "validate" || s == "orthogonal" || s == "classify" || s == "darboux" || s == "extend" ||
      s == "transverse" || s == "canoniso") {
    const Json in = read_input(c);
    return exact_mode(c, in) ? linear<Rational>(c, in) : linear<double>(c, in);
  }
  if (s == "cocomplex") return cocomplex(c, read_input(c));
  if (s == "check-submanifold") return check_submanifold(c);
  if (s == "check-graph") return check_graph(c);
  if (s == "oneform-graph") return oneform_graph(c);
  if (s == "moser") return moser(c);
  if (s == "weinstein") return weinstein(c);
  if (s == "flux") return flux(c);
  if (s == "fixed-points") return fixed_points(c);
  if (s == "ortho1-search") return ortho1_search();
  if (s == "corpus") return corpus();
  throw Error(ErrorCode::InvalidArgument, "unknown subcommand " + s);
}

inline bool input_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::InvalidArgument ||
         code == ErrorCode::DimensionMismatch || code == ErrorCode::DomainMismatch;
}

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// key-value lines, nested keys dotted, arrays of arrays one row per line
inline void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      render_text(v, key, out);
    } else if (v.is_array() && !v.empty() && (v.front().is_array() || v.front().is_object())) {
      out << key << "\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_object())
          render_text(v[i], key + "[" + std::to_string(i) + "]", out);
        else
          out << "  " << v[i].dump() << "\n";
      }
    } else {
      out << std::left << std::setw(34) << key << " " << scalar_text(v) << "\n";
    }
  }
}

inline void render_corpus_text(const Json& r, std::ostream& out) {
  out << std::left << std::setw(7) << "STATUS" << std::setw(10) << "KIND" << std::setw(28) << "ID" << "DETAIL\n";
  for (const auto& l : r.at("lines"))
    out << std::left << std::setw(7) << l.at("status").get<std::string>() << std::setw(10)
        << l.at("kind").get<std::string>() << std::setw(28) << l.at("id").get<std::string>()
        << l.at("detail").get<std::string>() << "\n";
  out << "flags " << r.at("flags").dump() << ", passes " << r.at("passes").dump() << "\n";
}

inline void emit(const RunConfig& c, const Json& report, std::ostream& out) {
  if (c.format == "text") {
    if (c.subcommand == "corpus" && report.contains("lines"))
      render_corpus_text(report, out);
    else
      render_text(report, "", out);
  } else {
    out << report.dump(2) << "\n";
  }
}

}  // namespace detail

/// Parses argv (without the program name), runs one subcommand, writes the
/// report to `out` and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Cosymplectic linear algebra and geometry kernel"};
  app.add_option("subcommand", c.subcommand, "one of: validate orthogonal classify darboux extend transverse "
                                             "canoniso cocomplex check-submanifold check-graph oneform-graph moser "
                                             "weinstein flux fixed-points ortho1-search corpus")
      ->required()
      ->check(CLI::IsMember(subcommands()));
  app.add_option("--input", c.input, "input JSON file");
  app.add_option("--mode", c.mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol-lin", c.tol_lin)->check(CLI::PositiveNumber);
  app.add_option("--tol-pde", c.tol_pde)->check(CLI::PositiveNumber);
  app.add_option("--tol-polar", c.tol_polar)->check(CLI::PositiveNumber);
  app.add_option("--grid", c.grid)->check(CLI::Range(std::size_t(8), std::size_t(1) << 12));
  app.add_option("--time-steps", c.time_steps)->check(CLI::Range(std::size_t(8), std::size_t(1) << 16));
  app.add_option("--seed", c.seed);
  app.add_option("--format", c.format)->check(CLI::IsMember({"json", "text"}));
  app.add_option("--builtin", c.builtin, "named built-in example");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ParseError: " << e.what() << "\n";
    return kInput;
  }

  Json report;
  report["command"] = c.subcommand;
  int code = kOk;
  try {
    Outcome o = detail::dispatch(c);
    for (auto it = o.report.begin(); it != o.report.end(); ++it) report[it.key()] = it.value();
    report["verdict"] = o.verdict;
    code = o.verdict ? kOk : kFalse;
  } catch (const Error& e) {
    report["error"] = std::string(to_string(e.code()));
    report["message"] = e.what();
    err << e.what() << "\n";
    code = detail::input_error(e.code()) ? kInput : kFalse;
  } catch (const nlohmann::json::exception& e) {
    report["error"] = "ParseError";
    report["message"] = e.what();
    err << "ParseError: " << e.what() << "\n";
    code = kInput;
  }
  detail::emit(c, report, out);
  return code;
}

}  // namespace cosymp::cli
