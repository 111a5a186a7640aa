#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "glab/bethe.hpp"
#include "glab/classical.hpp"
#include "glab/hamiltonians.hpp"
#include "glab/opers.hpp"
#include "glab/repr.hpp"
#include "glab/uea.hpp"

namespace glab::cli {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const std::string& ptr) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::exception& e) {
    throw ConfigError(ptr, e.what());
  }
  throw ConfigError(ptr, "expected a rational (integer, \"p/q\" or decimal)");
}

double real_field(const json& j, const std::string& ptr) {
  if (j.is_number()) return j.get<double>();
  return rational_field(j, ptr).get_d();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json complex_json(Complex z) { return {z.real(), z.imag()}; }

json weight_json(const Weight& w) {
  json j = json::array();
  for (const auto& x : w) j.push_back(to_string(x));
  return j;
}

Weight negated(Weight w) {
  for (auto& x : w) x = -x;
  return w;
}

Check make_check(std::string name, std::string op, std::string anchor, bool pass, json detail = json::object()) {
  return {std::move(name), std::move(op), std::move(anchor), pass, std::move(detail)};
}

struct Context {
  const ExperimentConfig& c;
  AlgebraPtr g;
  InvariantForm form;
  std::vector<ModulePtr> modules;
  std::unique_ptr<TensorSpace> space;
  Tolerances tol;

  explicit Context(const ExperimentConfig& cfg)
      : c(cfg), g(SimpleLieAlgebra::from_type(cfg.algebra)), form(standard_form(*g)), tol(cfg.tol) {
    for (const auto& w : cfg.weights) modules.push_back(build_irrep(g, w));
    space = std::make_unique<TensorSpace>(modules);
  }

  const Weight& chi(const char* pipeline) const {
    if (!c.chi) throw ConfigError("/chi", std::string("required by pipeline ") + pipeline);
    return *c.chi;
  }

  BetheProblem problem() const {
    BetheProblem p;
    p.g = g;
    p.z = c.points;
    p.lambda = c.weights;
    p.chi = *c.chi;
    return p;
  }
};

// ---------------------------------------------------------------- commute

void pipeline_commute(Context& ctx, Report& r) {
  const auto z = ctx.c.rational_points();
  const auto& space = *ctx.space;
  std::vector<std::pair<std::string, SparseRat>> ops;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (ctx.c.chi)
      ops.emplace_back("Xi_" + std::to_string(i + 1) + ",chi", gaudin_shifted<Rational>(space, z, *ctx.c.chi, i, ctx.form));
    else
      ops.emplace_back("Xi_" + std::to_string(i + 1), gaudin<Rational>(space, z, i, ctx.form));
  }
  for (std::size_t k = 0; k < ctx.g->rank(); ++k)
    ops.emplace_back("h_" + std::to_string(k + 1), space.diagonal_action(ctx.g->basis_vector(ctx.g->h_index(k))));

  std::ostringstream csv;
  csv << "a,b,zero,max_abs\n";
  json pairs = json::array();
  bool all = true;
  for (std::size_t a = 0; a < ops.size(); ++a)
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      auto res = commutator_residual(ops[a].second, ops[b].second);
      all = all && res.zero;
      pairs.push_back({{"a", ops[a].first}, {"b", ops[b].first}, {"zero", res.zero}, {"max_abs", res.norm}});
      csv << ops[a].first << ',' << ops[b].first << ',' << (res.zero ? 1 : 0) << ',' << fmt(res.norm) << '\n';
    }
  r.data["commutators"] = pairs;
  r.data["dimension"] = space.dim();
  r.files["commutators.csv"] = csv.str();
  r.checks.push_back(make_check("exact commutators", "hamiltonians.gaudin_shifted",
                                "shifted Gaudin Hamiltonians commute with each other and with the diagonal Cartan",
                                all, {{"pairs", pairs.size()}}));
}

// ---------------------------------------------------------------- dmt

std::vector<Weight> dmt_directions(const Context& ctx) {
  if (!ctx.c.gammas.empty()) return ctx.c.gammas;
  std::vector<Weight> out;
  for (std::size_t i = 0; i < ctx.g->rank(); ++i) {
    Weight w(ctx.g->rank(), Rational(0));
    w[i] = 1;
    out.push_back(w);
  }
  return out;
}

void pipeline_dmt(Context& ctx, Report& r) {
  const Weight& chi = ctx.chi("dmt");
  const auto& space = *ctx.space;
  std::vector<std::pair<std::string, SparseRat>> ops;
  for (const auto& gamma : dmt_directions(ctx))
    ops.emplace_back("T_" + weight_json(gamma).dump(), dmt_diagonal(space, gamma, chi, ctx.form));
  for (std::size_t k = 0; k < ctx.g->rank(); ++k)
    ops.emplace_back("h_" + std::to_string(k + 1), space.diagonal_action(ctx.g->basis_vector(ctx.g->h_index(k))));
  json pairs = json::array();
  bool all = true;
  for (std::size_t a = 0; a < ops.size(); ++a)
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      auto res = commutator_residual(ops[a].second, ops[b].second);
      all = all && res.zero;
      pairs.push_back({{"a", ops[a].first}, {"b", ops[b].first}, {"zero", res.zero}, {"max_abs", res.norm}});
    }
  r.data["dmt_commutators"] = pairs;
  r.checks.push_back(make_check("DMT commutators", "hamiltonians.dmt",
                                "T_gamma(chi) for regular chi pairwise commute and commute with h", all));

  json gen = json::array();
  bool ok = true;
  for (const auto& p : invariant_polynomials(*ctx.g)) {
    if (p.degree() < 3) continue;
    auto t = generation_terms(*ctx.g, ctx.form, p, chi);
    bool eq = t.p2 == t.q2 + t.tbar * Rational(1, 2);
    ok = ok && eq;
    gen.push_back({{"degree", p.degree()}, {"gamma_q", weight_json(t.gamma_q)}, {"identity_holds", eq}});
  }
  r.data["generation"] = gen;
  r.checks.push_back(make_check("generation identity", "classical.generation_terms",
                                "quadratic part of a shifted invariant = Cartan part + half a Vinberg quadratic", ok,
                                {{"invariants", gen.size()}}));
}

// ---------------------------------------------------------------- classical

void pipeline_classical(Context& ctx, Report& r) {
  const Weight& chi = ctx.chi("classical");
  const auto& g = *ctx.g;
  const std::size_t dimb = g.rank() + g.num_positive_roots();
  Vec coords = weight_coordinates(g, chi);
  auto gens = polynomials_of(shift_arg_generators(g, coords));
  std::mt19937_64 rng(ctx.c.seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  Vec point;
  for (std::size_t a = 0; a < g.dim(); ++a) point.push_back(make_rational(num(rng), den(rng)));
  const bool commute = pairwise_poisson_commute(g, 1, gens);
  const std::size_t rank = independence_rank(gens, point);
  r.data["shift_of_argument"] = {{"generators", gens.size()}, {"rank", rank}, {"dim_b", dimb}};
  r.checks.push_back(make_check("shift-of-argument commutativity", "classical.shift_arg_generators",
                                "derivatives of invariants along chi Poisson-commute", commute));
  r.checks.push_back(make_check("shift-of-argument rank", "classical.independence_rank",
                                "for regular chi the generators are algebraically independent, dim b of them",
                                gens.size() == dimb && rank == dimb, {{"rank", rank}, {"expected", dimb}}));

  const auto z = ctx.c.rational_points();
  Vec sc = coords;
  for (auto& x : sc) x *= gaudin_sign_convention();
  auto cg = classical_gaudin_generators({ctx.g, z, sc});
  std::vector<Polynomial> cp;
  for (const auto& [k, p] : cg) cp.push_back(p);
  r.checks.push_back(make_check("classical Gaudin commutativity", "classical.classical_gaudin_generators",
                                "coefficients of invariants of the classical L-operator Poisson-commute",
                                pairwise_poisson_commute(g, z.size(), cp), {{"generators", cp.size()}}));

  Enveloping u1(ctx.g, 1);
  bool dmt_ok = true;
  for (const auto& gamma : dmt_directions(ctx))
    dmt_ok = dmt_ok && symbol_check(u1, dmt_element(u1, gamma, chi, ctx.form), vinberg_quadratic(g, ctx.form, gamma, chi)).equal;
  r.checks.push_back(make_check("DMT symbols", "classical.symbol_check",
                                "the symbol of T_gamma(chi) is the Vinberg quadratic", dmt_ok));
  if (z.size() <= 3 && g.dim() * z.size() <= 24) {
    Enveloping uN(ctx.g, z.size());
    bool xi_ok = true;
    for (std::size_t i = 0; i < z.size(); ++i)
      xi_ok = xi_ok && symbol_check(uN, gaudin_shifted_element(uN, z, chi, i, ctx.form), cg.at({i, 0, 1}),
                                    SymbolMode::Graded)
                           .equal;
    r.checks.push_back(make_check("Gaudin symbols", "classical.symbol_check",
                                  "the symbol of Xi_{i,chi} is the residue of the classical quadratic Gaudin generator",
                                  xi_ok));
  }
}

// ---------------------------------------------------------------- bethe

struct CensusRun {
  BetheProblem base;
  std::vector<std::pair<std::size_t, CensusEntry>> entries;  // (m, entry), sorted by m
};

CensusRun run_census(Context& ctx) {
  CensusRun out;
  out.base = ctx.problem();
  SolveStrategy st;
  st.seed = ctx.c.seed;
  st.tol = ctx.tol.newton;
  for (const auto& [block, idx] : ctx.space->weight_blocks()) {
    auto colors = coloring_for_weight(*ctx.g, ctx.c.weights, block);
    if (!colors) continue;
    out.entries.emplace_back(colors->size(), census(out.base, *ctx.space, block, ctx.form, st));
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void pipeline_bethe(Context& ctx, Report& r, const CensusRun& run) {
  std::map<std::size_t, std::size_t> counts;
  std::size_t total = 0, dim = 0;
  bool complete = true, eigen = true, residuals = true;
  std::ostringstream sol_csv, spec_csv;
  sol_csv << "m,block,class,color,w_re,w_im,residual\n";
  spec_csv << "block,solution,operator,eigenvalue_re,eigenvalue_im\n";
  json blocks = json::array();
  for (const auto& [m, e] : run.entries) {
    counts[m] += e.solution_classes;
    total += e.solution_classes;
    dim += e.block_dimension;
    if (e.solver_incomplete || e.matched_eigenvectors != e.block_dimension) complete = false;
    std::string block;
    for (std::size_t k = 0; k < e.block.size(); ++k) block += (k ? ";" : "") + to_string(e.block[k]);
    BetheProblem p = run.base;
    p.colors = e.colors;
    for (std::size_t s = 0; s < e.report.solutions.size(); ++s) {
      const auto& sol = e.report.solutions[s];
      for (double x : sol.residual) residuals = residuals && x <= ctx.tol.bethe_residual;
      for (std::size_t j = 0; j < sol.w.size(); ++j)
        sol_csv << m << ',' << block << ',' << sol.class_id << ',' << p.colors[j] << ',' << fmt(sol.w[j].real())
                << ',' << fmt(sol.w[j].imag()) << ',' << fmt(sol.residual[j]) << '\n';
      const auto& chk = e.checks.at(s);
      eigen = eigen && chk.pass && chk.max_residual <= ctx.tol.eigen;
      for (std::size_t i = 0; i < chk.eigenvalues.size(); ++i)
        spec_csv << block << ',' << s << ",Xi_" << i + 1 << "_-chi," << fmt(chk.eigenvalues[i].real()) << ','
                 << fmt(chk.eigenvalues[i].imag()) << '\n';
    }
    json ej = e.to_json();
    ej["m"] = m;
    ej["problem"] = p.to_json();
    blocks.push_back(ej);
  }
  json cj = json::object();
  for (const auto& [m, n] : counts) cj[std::to_string(m)] = n;
  r.data["census"] = {{"counts_by_m", cj}, {"total", total}, {"dimension", dim}, {"blocks", blocks}};
  r.files["solutions.csv"] = sol_csv.str();
  r.files["spectra.csv"] = spec_csv.str();
  r.checks.push_back(make_check("Bethe residuals", "bethe.solve", "solutions satisfy the Bethe equations", residuals,
                                {{"tolerance", ctx.tol.bethe_residual}}));
  r.checks.push_back(make_check("Bethe vectors are eigenvectors", "bethe.eigen_check",
                                "Bethe vectors at solutions are joint eigenvectors of the shifted Gaudin Hamiltonians",
                                eigen, {{"tolerance", ctx.tol.eigen}}));
  r.checks.push_back(make_check("completeness", "bethe.census",
                                "solution classes give an eigenbasis of every weight block", complete && total == dim,
                                {{"total", total}, {"dimension", dim}}));
}

// ---------------------------------------------------------------- opers

void pipeline_opers(Context& ctx, Report& r, const CensusRun& run) {
  const auto& g = *ctx.g;
  std::vector<std::vector<Rational>> expected;
  for (const auto& l : ctx.c.weights) expected.push_back(expected_residue(g, ctx.form, l));
  auto at_inf = slice_coordinates(g, ctx.form, negated(*ctx.c.chi));

  std::optional<Complex> normalization;
  double worst_res = 0.0, worst_inf = 0.0, worst_fn = 0.0, worst_local = 0.0, worst_global = 0.0, worst_root = 0.0;
  bool mono_ok = true;
  std::ostringstream mcsv;
  mcsv << "solution,loop,center_re,center_im,projective_distance,det_error,closest_approach,steps\n";
  json opers = json::array();
  std::size_t index = 0;
  for (const auto& [m, e] : run.entries) {
    BetheProblem p = run.base;
    p.colors = e.colors;
    for (std::size_t s = 0; s < e.report.solutions.size(); ++s, ++index) {
      const auto& sol = e.report.solutions[s];
      auto o = oper_from_bethe(p, sol, ctx.tol.bethe_residual);
      for (auto w : sol.w)
        for (const auto& f : o.v) worst_root = std::max(worst_root, principal_magnitude(f, w));
      for (std::size_t i = 0; i < p.z.size(); ++i) {
        auto res = residue_m(o, p.z[i], 1);
        for (std::size_t j = 0; j < res.size(); ++j)
          worst_res = std::max(worst_res, std::abs(res[j] - expected[i][j].get_d()));
      }
      auto inf = residue_m(oper_at_infinity(o), Complex(0.0), 2);
      for (std::size_t j = 0; j < inf.size(); ++j) worst_inf = std::max(worst_inf, std::abs(inf[j] - at_inf[j].get_d()));

      const auto& chk = e.checks.at(s);
      if (chk.pass) {
        auto f = quadratic_eigenvalue_function(p, chk.eigenvalues, ctx.form);
        const auto& v = o.v[0];
        Complex vc = v.polynomial().empty() ? Complex(0.0) : v.polynomial()[0];
        Complex fc = f.polynomial().empty() ? Complex(0.0) : f.polynomial()[0];
        if (!normalization) normalization = vc / fc;
        double d = std::abs(vc - *normalization * fc);
        for (std::size_t i = 0; i < p.z.size(); ++i)
          for (int k = 1; k <= 2; ++k)
            d = std::max(d, std::abs(v.principal_coefficient(p.z[i], k) - *normalization * f.principal_coefficient(p.z[i], k)));
        worst_fn = std::max(worst_fn, d);
      }

      std::vector<Complex> sing = p.z;
      sing.insert(sing.end(), sol.w.begin(), sol.w.end());
      auto gm = global_monodromy(o, sing);
      for (std::size_t k = 0; k < gm.local.size(); ++k) {
        const auto& l = gm.local[k];
        mono_ok = mono_ok && l.ok;
        worst_local = std::max(worst_local, l.projective_distance);
      }
      mono_ok = mono_ok && gm.outer.ok;
      worst_global = std::max(worst_global, gm.composite_distance);
      for (const auto& l : gm.local) {
        const Complex c = l.center;
        mcsv << index << ',' << l.loop << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << ',' << fmt(l.projective_distance)
             << ',' << fmt(l.det_error) << ',' << fmt(l.closest_approach) << ',' << l.steps << '\n';
      }
      mcsv << index << ",outer,,," << fmt(gm.outer.projective_distance) << ',' << fmt(gm.outer.det_error) << ','
           << fmt(gm.outer.closest_approach) << ',' << gm.outer.steps << '\n';
      opers.push_back({{"block", weight_json(e.block)}, {"class", sol.class_id}, {"oper", o.to_json()},
                       {"monodromy", gm.to_json()}});
    }
  }
  auto control = a1_control_oper(ctx.c.control_kappa);
  auto cm = monodromy_around(control, Complex(0.0), 0.5, {Complex(0.0)});
  r.data["opers"] = opers;
  r.data["control"] = {{"kappa", ctx.c.control_kappa}, {"monodromy", cm.to_json()}};
  if (normalization) r.data["normalization"] = complex_json(*normalization);
  r.files["monodromy.csv"] = mcsv.str();

  r.checks.push_back(make_check("Miura poles cancel at Bethe roots", "opers.oper_from_bethe",
                                "the Miura oper of a Bethe connection is regular at the roots", worst_root <= ctx.tol.residue,
                                {{"max_principal_part", worst_root}}));
  r.checks.push_back(make_check("residues at marked points", "opers.residue_m",
                                "the residue at z_i is the class of -lambda_i - rho", worst_res <= ctx.tol.residue,
                                {{"max_error", worst_res}}));
  r.checks.push_back(make_check("2-residue at infinity", "opers.oper_at_infinity",
                                "the oper has an order-2 singularity at infinity with 2-residue the class of -chi",
                                worst_inf <= ctx.tol.residue, {{"max_error", worst_inf}}));
  r.checks.push_back(make_check("eigenvalue function", "opers.quadratic_eigenvalue_function",
                                "v_1 equals the generating function of the shifted Gaudin eigenvalues",
                                normalization.has_value() && worst_fn <= ctx.tol.eigenvalue_function,
                                {{"max_error", worst_fn}}));
  r.checks.push_back(make_check("local monodromy", "opers.global_monodromy",
                                "Bethe opers have projectively trivial monodromy around every finite point",
                                mono_ok && worst_local <= ctx.tol.monodromy_local, {{"max_distance", worst_local}}));
  r.checks.push_back(make_check("global monodromy", "opers.global_monodromy",
                                "the composite of the local loops agrees with the loop around all points",
                                mono_ok && worst_global <= ctx.tol.monodromy_global, {{"max_distance", worst_global}}));
  r.checks.push_back(make_check("control oper", "opers.monodromy_around",
                                "non-integral local exponents give non-trivial monodromy",
                                cm.ok && cm.projective_distance >= ctx.tol.control_min,
                                {{"distance", cm.projective_distance}}));
}

// ---------------------------------------------------------------- svg

struct Svg {
  std::ostringstream os;
  double w, h;
  Svg(double width, double height) : w(width), h(height) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  void dot(double x, double y, double r, const std::string& fill) {
    os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << r << "\" fill=\"" << fill << "\"/>\n";
  }
  void text(double x, double y, const std::string& t) {
    os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\"11\" font-family=\"monospace\">" << t
       << "</text>\n";
  }
  std::string str() { return os.str() + "</svg>\n"; }
};

const char* palette(std::size_t k) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  return colors[k % 5];
}

}  // namespace

// ---------------------------------------------------------------- public

Tolerances Tolerances::scaled(double s) const {
  Tolerances t = *this;
  for (double* x : {&t.newton, &t.bethe_residual, &t.eigen, &t.spectrum, &t.residue, &t.eigenvalue_function,
                    &t.monodromy_local, &t.monodromy_global})
    *x *= s;
  t.control_min /= s;
  return t;
}

json Tolerances::to_json() const {
  return {{"newton", newton},       {"bethe_residual", bethe_residual}, {"eigen", eigen},
          {"spectrum", spectrum},   {"residue", residue},               {"eigenvalue_function", eigenvalue_function},
          {"monodromy_local", monodromy_local}, {"monodromy_global", monodromy_global}, {"control_min", control_min}};
}

const std::vector<std::string>& pipelines() {
  static const std::vector<std::string> names = {"commute", "dmt", "classical", "bethe-census", "opers", "full"};
  return names;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  static const std::vector<std::string> known = {"pipeline", "algebra", "weights", "points", "chi", "gammas",
                                                  "tolerances", "seed", "control_kappa", "output"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("/" + k, "unknown field");
  for (const char* req : {"pipeline", "algebra", "weights", "points"})
    if (!j.contains(req)) throw ConfigError(std::string("/") + req, "missing required field");

  ExperimentConfig c;
  if (!j["pipeline"].is_string()) throw ConfigError("/pipeline", "expected a string");
  c.pipeline = j["pipeline"].get<std::string>();
  if (std::find(pipelines().begin(), pipelines().end(), c.pipeline) == pipelines().end())
    throw ConfigError("/pipeline", "unknown pipeline '" + c.pipeline + "'");

  if (!j["algebra"].is_string()) throw ConfigError("/algebra", "expected a type label such as \"A2\"");
  c.algebra = j["algebra"].get<std::string>();
  AlgebraPtr g;
  try {
    g = SimpleLieAlgebra::from_type(c.algebra);
  } catch (const std::exception& e) {
    throw ConfigError("/algebra", e.what());
  }
  const std::size_t rank = g->rank();

  auto weight_list = [&](const json& arr, const std::string& ptr, bool integral) {
    if (!arr.is_array()) throw ConfigError(ptr, "expected an array");
    std::vector<Weight> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = ptr + "/" + std::to_string(i);
      if (!arr[i].is_array() || arr[i].size() != rank)
        throw ConfigError(p, "expected " + std::to_string(rank) + " Dynkin labels");
      Weight w;
      for (std::size_t k = 0; k < rank; ++k) {
        const std::string pk = p + "/" + std::to_string(k);
        if (integral) {
          if (!arr[i][k].is_number_integer() || arr[i][k].get<long>() < 0)
            throw ConfigError(pk, "highest weights need non-negative integer labels");
          w.push_back(Rational(arr[i][k].get<long>()));
        } else {
          w.push_back(rational_field(arr[i][k], pk));
        }
      }
      out.push_back(w);
    }
    return out;
  };
  c.weights = weight_list(j["weights"], "/weights", true);
  if (c.weights.empty()) throw ConfigError("/weights", "at least one marked point is required");

  const auto& pts = j["points"];
  if (!pts.is_array()) throw ConfigError("/points", "expected an array");
  if (pts.size() != c.weights.size())
    throw ConfigError("/points", "expected one point per weight (" + std::to_string(c.weights.size()) + ")");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string p = "/points/" + std::to_string(i);
    if (pts[i].is_array()) {
      if (pts[i].size() != 2) throw ConfigError(p, "complex points are [re, im]");
      c.points.emplace_back(real_field(pts[i][0], p + "/0"), real_field(pts[i][1], p + "/1"));
      c.exact_points.emplace_back();
    } else {
      Rational q = rational_field(pts[i], p);
      c.points.emplace_back(q.get_d(), 0.0);
      c.exact_points.emplace_back(q);
    }
  }
  for (std::size_t a = 0; a < c.points.size(); ++a)
    for (std::size_t b = a + 1; b < c.points.size(); ++b) {
      bool same = c.exact_points[a] && c.exact_points[b] ? *c.exact_points[a] == *c.exact_points[b]
                                                          : c.points[a] == c.points[b];
      if (same) throw ConfigError("/points/" + std::to_string(b), "coincides with point " + std::to_string(a));
    }

  if (j.contains("chi")) {
    const auto& cj = j["chi"];
    if (!cj.is_array() || cj.size() != rank)
      throw ConfigError("/chi", "expected " + std::to_string(rank) + " rational labels");
    Weight chi;
    for (std::size_t k = 0; k < rank; ++k) chi.push_back(rational_field(cj[k], "/chi/" + std::to_string(k)));
    c.chi = chi;
  }
  const bool needs_regular = c.pipeline != "commute";
  if (needs_regular) {
    if (!c.chi) throw ConfigError("/chi", "required by pipeline " + c.pipeline);
    if (auto root = singular_root(*g, standard_form(*g), *c.chi))
      throw ConfigError("/chi", "not regular: vanishes on positive root " + std::to_string(*root));
  }
  if (j.contains("gammas")) c.gammas = weight_list(j["gammas"], "/gammas", false);

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("/tolerances", "expected an object");
    std::map<std::string, double*> slots = {{"newton", &c.tol.newton},
                                            {"bethe_residual", &c.tol.bethe_residual},
                                            {"eigen", &c.tol.eigen},
                                            {"spectrum", &c.tol.spectrum},
                                            {"residue", &c.tol.residue},
                                            {"eigenvalue_function", &c.tol.eigenvalue_function},
                                            {"monodromy_local", &c.tol.monodromy_local},
                                            {"monodromy_global", &c.tol.monodromy_global},
                                            {"control_min", &c.tol.control_min}};
    for (const auto& [k, v] : t.items()) {
      auto it = slots.find(k);
      if (it == slots.end()) throw ConfigError("/tolerances/" + k, "unknown tolerance");
      if (!v.is_number() || v.get<double>() <= 0) throw ConfigError("/tolerances/" + k, "expected a positive number");
      *it->second = v.get<double>();
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("/seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("control_kappa")) {
    if (!j["control_kappa"].is_number()) throw ConfigError("/control_kappa", "expected a number");
    c.control_kappa = j["control_kappa"].get<double>();
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("/output", "expected a path");
    c.output = j["output"].get<std::string>();
  }
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["pipeline"] = pipeline;
  j["algebra"] = algebra;
  j["weights"] = json::array();
  for (const auto& w : weights) j["weights"].push_back(weight_json(w));
  j["points"] = json::array();
  for (std::size_t i = 0; i < points.size(); ++i)
    j["points"].push_back(exact_points[i] ? json(to_string(*exact_points[i])) : complex_json(points[i]));
  if (chi) j["chi"] = weight_json(*chi);
  if (!gammas.empty()) {
    j["gammas"] = json::array();
    for (const auto& w : gammas) j["gammas"].push_back(weight_json(w));
  }
  j["tolerances"] = tol.to_json();
  j["seed"] = seed;
  j["control_kappa"] = control_kappa;
  return j;
}

std::vector<Rational> ExperimentConfig::rational_points() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < exact_points.size(); ++i) {
    if (!exact_points[i]) throw ConfigError("/points/" + std::to_string(i), "pipeline " + pipeline + " needs rational points");
    out.push_back(*exact_points[i]);
  }
  return out;
}

json Check::to_json() const {
  return {{"name", name}, {"operation", operation}, {"anchor", anchor}, {"pass", pass}, {"detail", detail}};
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json Report::to_json() const {
  json j;
  j["pipeline"] = pipeline;
  j["config"] = config;
  j["pass"] = pass();
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back(c.to_json());
  j["data"] = data;
  return j;
}

Report run_pipeline(const ExperimentConfig& c) {
  Context ctx(c);
  Report r;
  r.pipeline = c.pipeline;
  r.config = c.to_json();
  const auto& p = c.pipeline;
  if (p == "commute" || p == "full") pipeline_commute(ctx, r);
  if (p == "dmt" || p == "full") pipeline_dmt(ctx, r);
  if (p == "classical" || p == "full") pipeline_classical(ctx, r);
  if (p == "bethe-census" || p == "opers" || p == "full") {
    auto run = run_census(ctx);
    if (p != "opers") pipeline_bethe(ctx, r, run);
    if (p != "bethe-census") pipeline_opers(ctx, r, run);
  }
  return r;
}

int write_report(const Report& r, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  json j = r.to_json();
  {
    std::ofstream f(out / "report.json");
    f << j.dump(2) << '\n';
  }
  for (const auto& [name, content] : r.files) {
    std::ofstream f(out / name);
    f << content;
  }
  std::ostringstream sink;
  report_plot(j, out, sink);
  return r.pass() ? 0 : 1;
}

std::vector<std::string> report_plot(const json& report, const std::filesystem::path& out, std::ostream& warn) {
  std::vector<std::string> written;
  const json data = report.value("data", json::object());

  if (data.contains("census")) try {
    // constellation: marked points in black, Bethe roots coloured by simple root
    std::vector<std::pair<Complex, int>> pts;
    for (const auto& b : data["census"]["blocks"]) {
      for (const auto& z : b["problem"]["z"]) pts.emplace_back(Complex(z[0].get<double>(), z[1].get<double>()), -1);
      for (const auto& s : b["solver"]["solutions"]) {
        const auto& w = s["w"];
        for (std::size_t k = 0; k < w.size(); ++k)
          pts.emplace_back(Complex(w[k][0].get<double>(), w[k][1].get<double>()),
                           static_cast<int>(b["colors"][k].get<std::size_t>()));
      }
    }
    if (!pts.empty()) {
      double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
      for (const auto& [p, c] : pts) {
        lo_x = std::min(lo_x, p.real()), hi_x = std::max(hi_x, p.real());
        lo_y = std::min(lo_y, p.imag()), hi_y = std::max(hi_y, p.imag());
      }
      double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
      Svg svg(480, 480);
      auto px = [&](Complex p) {
        return std::pair{40 + 400 * (p.real() - lo_x) / span, 440 - 400 * (p.imag() - lo_y) / span};
      };
      for (const auto& [p, c] : pts) {
        auto [x, y] = px(p);
        svg.dot(x, y, c < 0 ? 5 : 3, c < 0 ? "black" : palette(static_cast<std::size_t>(c)));
      }
      svg.text(10, 16, "Bethe roots (coloured by simple root) and marked points (black)");
      std::ofstream(out / "constellation.svg") << svg.str();
      written.push_back("constellation.svg");
    }

    // eigenvalue strip: one row per Hamiltonian, real parts
    std::vector<std::vector<double>> rows;
    for (const auto& b : data["census"]["blocks"])
      for (const auto& ch : b["checks"]) {
        const auto& ev = ch["eigenvalues"];
        if (rows.size() < ev.size()) rows.resize(ev.size());
        for (std::size_t i = 0; i < ev.size(); ++i) rows[i].push_back(ev[i][0].get<double>());
      }
    if (!rows.empty()) {
      double lo = 1e300, hi = -1e300;
      for (const auto& r : rows)
        for (double x : r) lo = std::min(lo, x), hi = std::max(hi, x);
      double span = std::max(hi - lo, 1e-9);
      Svg svg(520, 40 + 40 * static_cast<double>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        double y = 40 + 40 * static_cast<double>(i);
        svg.text(4, y + 4, "Xi_" + std::to_string(i + 1));
        for (double x : rows[i]) svg.dot(60 + 440 * (x - lo) / span, y, 3, palette(i));
      }
      std::ofstream(out / "spectrum.svg") << svg.str();
      written.push_back("spectrum.svg");
    }
  } catch (const json::exception& ex) {
    warn << "report_plot: malformed census section (" << ex.what() << "), plots skipped\n";
  }
  else {
    warn << "report_plot: no census section, skipping constellation and spectrum plots\n";
  }

  if (data.contains("opers")) try {
    std::ostringstream csv;
    csv << "solution,max_local_distance,composite_distance\n";
    std::size_t k = 0;
    for (const auto& o : data["opers"]) {
      double worst = 0.0;
      for (const auto& l : o["monodromy"]["local"]) worst = std::max(worst, l["projective_distance"].get<double>());
      csv << k++ << ',' << fmt(worst) << ',' << fmt(o["monodromy"]["composite_distance"].get<double>()) << '\n';
    }
    std::ofstream(out / "monodromy_distances.csv") << csv.str();
    written.push_back("monodromy_distances.csv");
  } catch (const json::exception& ex) {
    warn << "report_plot: malformed oper section (" << ex.what() << "), distances skipped\n";
  }
  else {
    warn << "report_plot: no oper section, skipping monodromy distances\n";
  }
  return written;
}

}  // namespace glab::cli
