#include "acl/cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "acl/cli/checks.hpp"
#include "acl/cli/manifest.hpp"
#include "acl/error.hpp"
#include "acl/expansion.hpp"
#include "acl/field.hpp"
#include "acl/ground_state.hpp"
#include "acl/solver.hpp"

namespace acl::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double x) { return format_double(x); }

std::string csv_row(std::initializer_list<double> xs) {
  std::string s;
  for (double x : xs) {
    if (!s.empty()) s += ',';
    s += fmt(x);
  }
  return s + '\n';
}

struct Problem {
  int N = 1;
  double a = 1.0, b = 2.0, alpha = 0.0, p = 2.0, eps = 0.05;

  // eps is the reduced-equation eps; the annulus value is derived.
  ProblemParams params() const {
    ProblemParams pp;
    pp.N = N;
    pp.a = a;
    pp.b = b;
    pp.alpha = alpha;
    pp.p = p;
    pp.eps = 1.0;
    pp.validate();
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    pp.eps = annulus_eps(N, alpha, eps);
    return pp;
  }
};

void add_problem(CLI::App* sub, Problem& pr, bool with_eps) {
  sub->add_option("--N", pr.N, "CP^N dimension")->check(CLI::PositiveNumber);
  sub->add_option("--a", pr.a, "inner radius");
  sub->add_option("--b", pr.b, "outer radius");
  sub->add_option("--alpha", pr.alpha, "weight exponent");
  sub->add_option("--p", pr.p, "nonlinearity exponent");
  if (with_eps) sub->add_option("--eps", pr.eps, "reduced-equation eps");
}

struct SolveArgs {
  Problem pr;
  GridSpec grid;
  double tol = 1e-8;
  int max_iter = 50000;
  std::vector<std::string> seeds;
  double bump_t = 0.0;
  std::vector<double> alphas;
};

void add_solver(CLI::App* sub, SolveArgs& sa) {
  sub->add_option("--refine", sa.grid.refine, "scale all cell sizes");
  sub->add_option("--first-cell", sa.grid.first_cell, "first s cell in units of eps");
  sub->add_option("--max-cell", sa.grid.max_cell, "largest s cell in units of eps");
  sub->add_option("--growth", sa.grid.growth, "geometric cell growth");
  sub->add_option("--tol", sa.tol, "gradient tolerance relative to the initial gradient");
  sub->add_option("--max-iter", sa.max_iter, "iteration budget");
  sub->add_option("--seeds", sa.seeds, "seed list, e.g. bump:inner,bump:outer:0.3,test_function:inner")
      ->delimiter(',');
  sub->add_option("--bump-t", sa.bump_t, "latitude of the default boundary bumps");
}

SeedSpec parse_seed(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 3) throw ConfigError("bad seed '" + text + "'");
  SeedSpec s;
  if (parts[0] == "bump") s.kind = SeedSpec::Kind::bump;
  else if (parts[0] == "test_function" || parts[0] == "test-function") s.kind = SeedSpec::Kind::test_function;
  else throw ConfigError("unknown seed kind '" + parts[0] + "'");
  s.side = side_from_string(parts[1]);
  if (s.side == Side::interior) throw ConfigError("seeds sit on a boundary component");
  if (parts.size() == 3) s.t_hat = std::stod(parts[2]);
  return s;
}

SolverOptions solver_options(const SolveArgs& sa) {
  SolverOptions o;
  o.grid = sa.grid;
  o.tol = sa.tol;
  o.max_iter = sa.max_iter;
  if (!sa.seeds.empty()) {
    o.seeds.clear();
    for (const auto& s : sa.seeds) o.seeds.push_back(parse_seed(s));
  } else {
    for (auto& s : o.seeds)
      if (s.kind == SeedSpec::Kind::bump) s.t_hat = sa.bump_t;
  }
  return o;
}

json solver_settings(const SolverOptions& o) {
  json seeds = json::array();
  for (const auto& s : o.seeds) seeds.push_back(s.label());
  return {{"grid",
           {{"first_cell", o.grid.first_cell},
            {"max_cell", o.grid.max_cell},
            {"growth", o.grid.growth},
            {"refine", o.grid.refine}}},
          {"seeds", seeds},
          {"tol", o.tol},
          {"max_iter", o.max_iter},
          {"tie_break", "lexicographically smallest (i, j) node among equal maxima"},
          {"cutoff", cutoff_description},
          {"eps_meaning", "reduced-equation eps; annulus eps = eps * sqrt(C_alpha)"}};
}

json peak_json(const PeakInfo& pk) {
  return {{"s", pk.s},
          {"t", pk.t},
          {"i", pk.i},
          {"j", pk.j},
          {"value", pk.value},
          {"side", to_string(pk.side)},
          {"local_maxima", pk.local_maxima},
          {"distance_eps", pk.distance_eps},
          {"degenerate", pk.degenerate}};
}

json result_json(const MPResult& r) {
  const auto geom = ReducedGeometry::from(r.params);
  const int N = r.params.N;
  json j;
  j["N"] = N;
  j["a"] = r.params.a;
  j["b"] = r.params.b;
  j["alpha"] = r.params.alpha;
  j["p"] = r.params.p;
  j["eta"] = geom.eta;
  j["alpha_star"] = geom.alpha_star;
  j["eps_reduced"] = r.eps;
  j["eps_annulus"] = r.params.eps;
  j["grid"] = {{"ns", r.field.ns()}, {"nt", r.field.nt()}};
  j["level"] = r.level;
  j["scaled_level"] = r.level / std::pow(r.eps, 2 * N + 1);
  j["constant_level"] = r.constant_level;
  j["peak"] = peak_json(r.peak);
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["gradient_ratio"] = r.gradient_ratio;
  j["seed"] = r.seed;
  json seeds = json::array();
  for (const auto& s : r.seeds)
    seeds.push_back({{"label", s.label},
                     {"converged", s.converged},
                     {"level", s.level},
                     {"iterations", s.iterations},
                     {"note", s.note}});
  j["seeds"] = seeds;
  if (r.peak.side != Side::interior) {
    const auto gs = GroundState::compute(2 * N + 1, r.params.p, geom.kappa(r.peak.side));
    j["kappa"] = gs.kappa;
    j["ground_energy"] = gs.energy;
    j["relative_gap"] = (j["scaled_level"].get<double>() - gs.energy) / gs.energy;
    try {
      const auto d = decay_profile(r, geom);
      j["decay"] = {{"C", d.C}, {"c", d.c}, {"ground_c", gs.decay.c}};
    } catch (const FitError& e) {
      j["decay"] = {{"error", e.what()}};
    }
    j["profile_error"] = peak_profile_error(r, gs);
  }
  return j;
}

// ---- commands -------------------------------------------------------------

int cmd_ground_state(RunContext& ctx, int dim, double p, double kappa) {
  const auto gs = GroundState::compute(dim, p, kappa);
  const auto rep = verify_identities(gs);
  std::string csv = "r,V,dV\n";
  const auto& U = gs.profile;
  for (std::size_t k = 0; k < U.size(); ++k) csv += csv_row({U.grid()[k], U.values()[k], U.derivs()[k]});
  ctx.write_text("profile.csv", csv);

  json ids = json::array();
  for (const auto& e : rep.entries)
    ids.push_back({{"name", e.name}, {"m", e.m}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"residual", e.residual}});
  json j;
  j["dim"] = dim;
  j["p"] = p;
  j["kappa"] = kappa;
  j["V0"] = U.value(0.0);
  j["V0_unit_kappa"] = gs.shoot.v0;
  j["energy"] = gs.energy;
  j["decay"] = {{"C", gs.decay.C}, {"c", gs.decay.c}};
  j["shoot"] = {{"r_match", gs.shoot.r_match},
                {"match_residual", gs.shoot.match_residual},
                {"bisections", gs.shoot.bisections}};
  j["identities"] = ids;
  j["pohozaev_residual"] = rep.pohozaev_residual;
  j["printed_pohozaev_residual"] = rep.printed_pohozaev_residual;
  j["nehari_residual"] = rep.nehari_residual;
  j["max_residual"] = rep.max_residual();
  const bool pass = rep.max_residual() < 1e-6;
  j["pass"] = pass;
  ctx.write_json("identities.json", j);

  std::cout << "V(0) = " << fmt(U.value(0.0)) << "\nenergy = " << fmt(gs.energy)
            << "\nmax identity residual = " << fmt(rep.max_residual())
            << "\nprinted Pohozaev residual = " << fmt(rep.printed_pohozaev_residual) << '\n';
  return pass ? exit_ok : exit_check_failed;
}

int cmd_reduce_check(RunContext& ctx, const Problem& pr, int profiles, std::uint64_t seed, double tol) {
  const auto pp = pr.params();
  const auto rep = reduce_check(pp, profiles, seed);
  std::string csv = "index,direct,reduced,rel\n";
  for (const auto& r : rep.rows) csv += std::to_string(r.index) + ',' + fmt(r.direct) + ',' + fmt(r.reduced) + ',' + fmt(r.rel) + '\n';
  ctx.write_text("reduce_check.csv", csv);
  const bool pass = rep.max_rel < tol;
  ctx.write_json("reduce_check.json", {{"N", pp.N},
                                       {"a", pp.a},
                                       {"b", pp.b},
                                       {"alpha", pp.alpha},
                                       {"eps_annulus", pp.eps},
                                       {"p", pp.p},
                                       {"profiles", profiles},
                                       {"seed", seed},
                                       {"potential_constant", potential_constant(pp.N, pp.alpha)},
                                       {"max_rel", rep.max_rel},
                                       {"tol", tol},
                                       {"pass", pass}});
  std::cout << "max relative discrepancy = " << fmt(rep.max_rel) << (pass ? "  pass\n" : "  FAIL\n");
  return pass ? exit_ok : exit_check_failed;
}

int cmd_expansion(RunContext& ctx, const Problem& pr, const std::string& side_name,
                  const std::vector<double>& eps_list, double gamma) {
  const auto pp = pr.params();
  const auto geom = ReducedGeometry::from(pp);
  const Side side = side_from_string(side_name);
  if (side == Side::interior) throw DomainError("expansion needs a boundary side");
  TestFunctionParams tf;
  tf.side = side;
  tf.gamma = gamma;
  tf.ground = GroundState::compute(2 * pp.N + 1, pp.p, geom.kappa(side));
  auto rep = expansion_terms(tf, geom);
  measure_order(rep, tf, geom, eps_list);

  std::string tcsv = "t,I1,I2,I3,I2_printed,I3_printed\n";
  for (std::size_t k = 0; k < rep.t.size(); ++k)
    tcsv += csv_row({rep.t[k], rep.I1[k], rep.I2[k], rep.I3[k], rep.I2_printed[k], rep.I3_printed[k]});
  ctx.write_text("expansion_t.csv", tcsv);
  std::string ocsv = "eps,measured,predicted,residual,predicted_printed,residual_printed\n";
  for (const auto& o : rep.order)
    ocsv += csv_row({o.eps, o.measured, o.predicted, o.residual, o.predicted_printed, o.residual_printed});
  ctx.write_text("expansion_order.csv", ocsv);

  bool ratios_ok = !rep.ratios.empty();
  for (double r : rep.ratios) ratios_ok = ratios_ok && r >= 3.2 && r <= 4.8;
  const bool argmax_ok = std::abs(rep.argmax_t - 1.0) <= rep.t_step;
  const bool identity_ok = rep.curvature_identity_residual < 1e-6;
  const auto& m = rep.terms.mom;
  json j;
  j["N"] = pp.N;
  j["alpha"] = pp.alpha;
  j["p"] = pp.p;
  j["side"] = to_string(side);
  j["s0"] = rep.terms.s0;
  j["kappa"] = rep.terms.weight_kappa;
  j["eta"] = rep.terms.eta;
  j["H"] = rep.terms.H;
  j["gamma"] = tf.gamma_for(geom);
  j["moments"] = {{"K0", m.K0}, {"P0", m.P0}, {"K1", m.K1}, {"T1", m.T1}, {"P1", m.P1}};
  j["ground_energy"] = tf.ground.energy;
  j["argmax_t"] = rep.argmax_t;
  j["t_step"] = rep.t_step;
  j["dI1_at_1"] = rep.dI1_at_1;
  j["curvature_functional"] = rep.curvature_functional;
  j["curvature_identity_rhs"] = rep.curvature_identity_rhs;
  j["curvature_identity_residual"] = rep.curvature_identity_residual;
  j["ratios"] = rep.ratios;
  j["printed_ratios"] = rep.printed_ratios;
  j["checks"] = {{"ratios_in_range", ratios_ok}, {"argmax_at_one", argmax_ok}, {"curvature_identity", identity_ok}};
  const bool pass = ratios_ok && argmax_ok && identity_ok;
  j["pass"] = pass;
  ctx.write_json("expansion.json", j);

  std::cout << "argmax_t I1 = " << fmt(rep.argmax_t) << "\ncurvature identity residual = "
            << fmt(rep.curvature_identity_residual) << '\n';
  for (std::size_t k = 0; k < rep.ratios.size(); ++k)
    std::cout << "ratio R(" << fmt(rep.order[k].eps) << ")/R(" << fmt(rep.order[k + 1].eps)
              << ") = " << fmt(rep.ratios[k]) << '\n';
  std::cout << (pass ? "pass\n" : "FAIL\n");
  return pass ? exit_ok : exit_check_failed;
}

bool sane(const MPResult& r) { return r.level > 0.0 && r.peak.value >= 1.0; }

int cmd_solve(RunContext& ctx, const SolveArgs& sa) {
  const auto pp = sa.pr.params();
  const auto opt = solver_options(sa);
  ctx.settings = solver_settings(opt);
  const auto r = solve_mountain_pass(pp, opt);
  write_field_csv(r.field, ctx.path("field.csv").string());
  ctx.record("field.csv");
  write_field_acl1(r.field, ctx.path("field.bin").string());
  ctx.record("field.bin");
  std::string hist = "step,energy\n";
  for (std::size_t k = 0; k < r.history.size(); ++k) hist += std::to_string(k) + ',' + fmt(r.history[k]) + '\n';
  ctx.write_text("history.csv", hist);
  json j = result_json(r);
  const bool pass = sane(r);
  j["pass"] = pass;
  ctx.write_json("result.json", j);
  std::cout << "side " << to_string(r.peak.side) << "  level " << fmt(r.level) << "  scaled level "
            << fmt(j["scaled_level"].get<double>()) << "  local maxima " << r.peak.local_maxima << "  residual "
            << fmt(r.residual) << '\n';
  return pass ? exit_ok : exit_check_failed;
}

int cmd_scan(RunContext& ctx, const SolveArgs& sa) {
  if (sa.alphas.empty()) throw ConfigError("empty alpha list");
  const auto opt = solver_options(sa);
  ctx.settings = solver_settings(opt);
  std::string csv = "alpha,eta,expected,side,s,t,level,scaled_level,local_maxima,distance_eps\n";
  json runs = json::array();
  bool pass = true;
  for (std::size_t k = 0; k < sa.alphas.size(); ++k) {
    Problem pr = sa.pr;
    pr.alpha = sa.alphas[k];
    const auto pp = pr.params();
    const auto geom = ReducedGeometry::from(pp);
    const auto r = solve_mountain_pass(pp, opt);
    const Side expected = pp.alpha < geom.alpha_star ? Side::inner : Side::outer;
    const bool ok = sane(r) && r.peak.side == expected && r.peak.local_maxima == 1 && !r.peak.degenerate;
    pass = pass && ok;
    const std::string name = "field_" + std::to_string(k) + ".bin";
    write_field_acl1(r.field, ctx.path(name).string());
    ctx.record(name);
    const double scaled = r.level / std::pow(r.eps, 2 * pp.N + 1);
    csv += fmt(pp.alpha) + ',' + fmt(geom.eta) + ',' + to_string(expected) + ',' + to_string(r.peak.side) + ',' +
           fmt(r.peak.s) + ',' + fmt(r.peak.t) + ',' + fmt(r.level) + ',' + fmt(scaled) + ',' +
           std::to_string(r.peak.local_maxima) + ',' + fmt(r.peak.distance_eps) + '\n';
    json jr = result_json(r);
    jr["expected_side"] = to_string(expected);
    jr["field"] = name;
    jr["pass"] = ok;
    runs.push_back(jr);
    std::cout << "alpha " << fmt(pp.alpha) << "  side " << to_string(r.peak.side) << "  expected "
              << to_string(expected) << "  local maxima " << r.peak.local_maxima << (ok ? "" : "  FAIL") << '\n';
  }
  ctx.write_text("sides.csv", csv);
  ctx.write_json("scan.json", {{"runs", runs}, {"pass", pass}});
  return pass ? exit_ok : exit_check_failed;
}

int cmd_lift(RunContext& ctx, const Problem& pr, const std::string& field_path, int samples, int fixed,
             std::uint64_t seed) {
  const auto pp = pr.params();
  ctx.add_input(field_path);
  const auto field = read_field_acl1(field_path, pp.N);
  const auto geom = ReducedGeometry::from(pp);
  const double tol = 1e-9 * geom.s_max;
  if (std::abs(field.s.front() - geom.s_min) > tol || std::abs(field.s.back() - geom.s_max) > tol)
    throw ConfigError("field s-range does not match the annulus (a, b, N)");
  const auto rep = lift_check(field, pp, samples, fixed, seed);
  const bool orbit_ok = rep.orbit_spread == 0.0;
  const bool residual_ok = rep.max_annulus_residual <= 10.0 * rep.max_reduced_residual;
  const bool free_ok = rep.min_displacement > 0.0;
  const bool conc_ok = rep.concentration_ratio > 1e3;
  const bool pass = orbit_ok && residual_ok && free_ok && conc_ok;
  ctx.write_json("lift.json", {{"samples", rep.samples},
                               {"seed", seed},
                               {"orbit_spread", rep.orbit_spread},
                               {"max_annulus_residual", rep.max_annulus_residual},
                               {"max_reduced_residual", rep.max_reduced_residual},
                               {"max_pointwise_ratio", rep.max_pointwise_ratio},
                               {"fixed_point_samples", rep.fixed_point_samples},
                               {"min_displacement", rep.min_displacement},
                               {"peak_r", rep.peak_r},
                               {"peak_t", rep.peak_t},
                               {"concentration_value", rep.concentration_value},
                               {"antipodal_value", rep.antipodal_value},
                               {"concentration_ratio", rep.concentration_ratio},
                               {"checks",
                                {{"orbit_constant", orbit_ok},
                                 {"residual_bound", residual_ok},
                                 {"fixed_point_free", free_ok},
                                 {"concentration", conc_ok}}},
                               {"pass", pass}});
  std::cout << "orbit spread " << fmt(rep.orbit_spread) << "\nannulus residual " << fmt(rep.max_annulus_residual)
            << "  reduced residual " << fmt(rep.max_reduced_residual) << "\nmin displacement "
            << fmt(rep.min_displacement) << "\nconcentration ratio " << fmt(rep.concentration_ratio) << '\n'
            << (pass ? "pass\n" : "FAIL\n");
  return pass ? exit_ok : exit_check_failed;
}

// Appends `--key value` for every entry of the --config file whose flag is
// not given on the command line.
std::vector<std::string> with_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    else if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty() || !fs::exists(path)) return args;
  auto given = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> out = args;
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    if (!item.parents.empty() || item.name.empty() || item.name == "++" || item.name == "--") continue;
    std::string flag = "--" + item.name;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    if (given(flag)) continue;
    std::string value;
    for (const auto& in : item.inputs) value += (value.empty() ? "" : ",") + in;
    out.push_back(flag);
    out.push_back(value);
  }
  return out;
}

json collect_parameters(const CLI::App* sub) {
  json j = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names[0] == "help" || names[0] == "config" || names[0] == "out") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.size() == 1) j[names[0]] = res[0];
      else j[names[0]] = res;
    } else {
      j[names[0]] = opt->get_default_str();
    }
  }
  return j;
}

} // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"acl: boundary concentration for weighted Neumann problems on annuli"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", ACL_VERSION);

  std::string out_flag, config_path;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_flag, "output directory (default $ACL_OUT_DIR or ./acl-out)");
    sub->add_option("--config", config_path, "key=value configuration file; flags take precedence")
        ->check(CLI::ExistingFile);
  };

  int dim = 3;
  double gp = 2.0, kappa = 1.0;
  auto* gs = app.add_subcommand("ground-state", "radial ground state and its integral identities");
  gs->add_option("--dim", dim, "space dimension")->required();
  gs->add_option("--p", gp, "exponent")->required();
  gs->add_option("--kappa", kappa, "potential weight");
  common(gs);

  Problem rc_pr;
  rc_pr.eps = 0.1;
  rc_pr.p = 1.5;
  int profiles = 20;
  std::uint64_t seed = 20240601;
  double rc_tol = 1e-6;
  auto* rc = app.add_subcommand("reduce-check", "direct vs reduced energy of random radial profiles");
  add_problem(rc, rc_pr, false);
  rc->add_option("--eps", rc_pr.eps, "annulus eps");
  rc->add_option("--profiles", profiles, "number of random profiles");
  rc->add_option("--seed", seed, "random seed");
  rc->add_option("--tol", rc_tol, "pass threshold on the relative discrepancy");
  common(rc);

  Problem ex_pr;
  std::string ex_side = "inner";
  std::vector<double> eps_list{0.08, 0.04, 0.02};
  double gamma = 0.0;
  auto* ex = app.add_subcommand("expansion", "energy expansion of the test function and its order test");
  add_problem(ex, ex_pr, false);
  ex->add_option("--side", ex_side, "inner or outer");
  ex->add_option("--eps-list", eps_list, "reduced eps values, decreasing")->delimiter(',');
  ex->add_option("--gamma", gamma, "cutoff radius (0 selects 1/8 of the interval)");
  common(ex);

  SolveArgs sv_args;
  auto* sv = app.add_subcommand("solve", "mountain-pass solution of the reduced problem");
  add_problem(sv, sv_args.pr, false);
  sv->get_option("--alpha")->required();
  sv->add_option("--eps", sv_args.pr.eps, "reduced-equation eps")->required();
  add_solver(sv, sv_args);
  common(sv);

  SolveArgs sc_args;
  auto* sc = app.add_subcommand("concentration-scan", "side of the concentration point across alpha");
  add_problem(sc, sc_args.pr, false);
  sc->add_option("--eps", sc_args.pr.eps, "reduced-equation eps")->required();
  sc->add_option("--alpha-list", sc_args.alphas, "alpha values")->delimiter(',')->required();
  add_solver(sc, sc_args);
  common(sc);

  Problem lf_pr;
  std::string field_path;
  int samples = 1000, fixed = 10000;
  std::uint64_t lf_seed = 7;
  auto* lf = app.add_subcommand("lift", "lift a reduced field to the annulus and check it");
  add_problem(lf, lf_pr, false);
  lf->add_option("--eps", lf_pr.eps, "reduced-equation eps")->required();
  lf->add_option("--field", field_path, "ACL1 field file")->required()->check(CLI::ExistingFile);
  lf->add_option("--samples", samples, "random interior points");
  lf->add_option("--fixed-point-samples", fixed, "samples for the fixed-point scan");
  lf->add_option("--seed", lf_seed, "random seed");
  common(lf);

  std::string manifest_path;
  auto* rp = app.add_subcommand("replay", "rerun a manifest and compare outputs");
  rp->add_option("--manifest", manifest_path, "manifest.json to replay")->required()->check(CLI::ExistingFile);
  rp->add_option("--out", out_flag, "fresh output directory");

  try {
    const auto full = with_config(args);
    std::vector<std::string> rev(full.rbegin(), full.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub == rp) {
      const auto rep = replay(manifest_path, out_flag);
      std::cout << "replayed into " << rep.out.string() << "\ncompared " << rep.compared << " files\n";
      for (const auto& n : rep.mismatched) std::cout << "MISMATCH " << n << '\n';
      for (const auto& n : rep.missing) std::cout << "MISSING " << n << '\n';
      std::cout << (rep.identical() ? "identical\n" : "differs\n");
      return rep.identical() ? exit_ok : exit_check_failed;
    }

    const auto t0 = std::chrono::steady_clock::now();
    RunContext ctx(sub->get_name(), resolve_out_dir(out_flag), strip_out_flag(args));
    ctx.parameters = collect_parameters(sub);
    if (!config_path.empty()) ctx.add_input(config_path);
    int code = exit_ok;
    if (sub == gs) code = cmd_ground_state(ctx, dim, gp, kappa);
    else if (sub == rc) code = cmd_reduce_check(ctx, rc_pr, profiles, seed, rc_tol);
    else if (sub == ex) code = cmd_expansion(ctx, ex_pr, ex_side, eps_list, gamma);
    else if (sub == sv) code = cmd_solve(ctx, sv_args);
    else if (sub == sc) code = cmd_scan(ctx, sc_args);
    else if (sub == lf) code = cmd_lift(ctx, lf_pr, field_path, samples, fixed, lf_seed);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ctx.write_manifest(wall, code);
    return code;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return exit_domain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_check_failed;
  }
}

} // namespace acl::cli
