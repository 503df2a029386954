// Acceptance gate: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>

#include "acl/cli/app.hpp"
#include "acl/cli/checks.hpp"
#include "acl/cli/manifest.hpp"
#include "acl/expansion.hpp"
#include "acl/ground_state.hpp"
#include "acl/solver.hpp"

using namespace acl;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const char* id, bool pass, double seconds, const std::string& detail) {
  std::printf("[%s] %s  %s  (%.1f s)\n", pass ? "PASS" : "FAIL", id, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void criterion(const char* id, const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  report(id, pass, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), detail);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ProblemParams problem(double alpha, double eps) {
  ProblemParams pp;
  pp.alpha = alpha;
  pp.eps = annulus_eps(1, alpha, eps);
  return pp;
}

std::map<std::pair<double, double>, MPResult> solves;

const MPResult& solved(double alpha, double eps) {
  const auto key = std::make_pair(alpha, eps);
  auto it = solves.find(key);
  if (it == solves.end()) it = solves.emplace(key, solve_mountain_pass(problem(alpha, eps))).first;
  return it->second;
}

} // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / ("acl_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(out);
  fs::create_directories(out);

  criterion("AC1 reduction equivalence", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int N : {1, 2}) {
      ProblemParams pp;
      pp.N = N;
      pp.p = 1.5;
      pp.eps = 0.1;
      worst = std::max(worst, cli::reduce_check(pp, 20, 20240601).max_rel);
    }
    const double t = elapsed(t0);
    d = "max rel discrepancy " + num(worst) + " over 2x20 profiles, runtime " + num(t) + " s";
    return worst < 1e-6 && t < 10.0;
  });

  criterion("AC2 ground-state identities", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0, printed = 1e300;
    for (auto [dim, p] : {std::pair{3, 2.0}, {3, 3.0}, {5, 2.0}})
      for (double kappa : {1.0, 2.0}) {
        const auto rep = verify_identities(GroundState::compute(dim, p, kappa));
        double m = rep.pohozaev_residual;
        for (const auto& e : rep.entries) m = std::max(m, e.residual);
        worst = std::max(worst, m);
        printed = std::min(printed, rep.printed_pohozaev_residual);
      }
    const double t = elapsed(t0);
    d = "max residual " + num(worst) + ", printed Pohozaev form residual >= " + num(printed) + ", runtime " +
        num(t) + " s";
    return worst < 1e-6 && printed > 0.0 && t < 30.0;
  });

  criterion("AC3 1D soliton", [](std::string& d) {
    const auto V = shoot_ground_state(1, 3.0);
    double err = 0.0;
    for (double x = 0.0; x <= V.back(); x += 0.001) err = std::max(err, std::abs(V.value(x) - std::sqrt(2.0) / std::cosh(x)));
    d = "sup |V - sqrt2 sech| = " + num(err);
    return err < 1e-8;
  });

  criterion("AC4 curvature identity", [](std::string& d) {
    const auto geom = ReducedGeometry::from(problem(0.0, 0.05));
    double worst = 0.0;
    for (Side side : {Side::inner, Side::outer}) {
      TestFunctionParams tf;
      tf.side = side;
      tf.ground = GroundState::compute(3, 2.0, geom.kappa(side));
      worst = std::max(worst, expansion_terms(tf, geom).curvature_identity_residual);
    }
    d = "max residual " + num(worst) + " at kappa_inner and kappa_outer";
    return worst < 1e-6;
  });

  criterion("AC5 expansion order", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto geom = ReducedGeometry::from(problem(0.0, 0.05));
    TestFunctionParams tf;
    tf.side = Side::inner;
    tf.ground = GroundState::compute(3, 2.0, geom.kappa_inner);
    auto rep = expansion_terms(tf, geom);
    const std::vector<double> eps{0.08, 0.04, 0.02};
    measure_order(rep, tf, geom, eps);
    bool ok = rep.ratios.size() == 2 && std::abs(rep.argmax_t - 1.0) <= rep.t_step;
    for (double r : rep.ratios) ok = ok && r >= 3.2 && r <= 4.8;
    const double t = elapsed(t0);
    d = "R(0.08)/R(0.04) = " + num(rep.ratios.at(0)) + ", R(0.04)/R(0.02) = " + num(rep.ratios.at(1)) +
        ", argmax_t I1 = " + num(rep.argmax_t) + ", runtime " + num(t) + " s";
    return ok && t < 60.0;
  });

  criterion("AC6 concentration threshold", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const Side expected[] = {Side::inner, Side::inner, Side::outer, Side::outer};
    bool ok = true;
    int k = 0;
    for (double alpha : {0.0, 1.0, 2.0, 3.0}) {
      const auto& r = solved(alpha, 0.05);
      const bool good = r.peak.side == expected[k] && r.peak.local_maxima == 1 && r.peak.distance_eps == 0.0;
      ok = ok && good;
      d += "a=" + num(alpha) + ":" + to_string(r.peak.side) + "/" + std::to_string(r.peak.local_maxima) + " ";
      ++k;
    }
    const double t = elapsed(t0);
    d += "runtime " + num(t) + " s";
    return ok && t < 600.0;
  });

  criterion("AC7 level asymptotics", [](std::string& d) {
    const auto geom = ReducedGeometry::from(problem(0.0, 0.05));
    const double gamma = GroundState::compute(3, 2.0, geom.kappa_inner).energy;
    bool ok = true;
    double last = 1e300, last_gap = 1e300;
    for (double eps : {0.2, 0.1, 0.05}) {
      const auto& r = solved(0.0, eps);
      const double scaled = r.level / std::pow(eps, 3);
      const double gap = (scaled - gamma) / gamma;
      ok = ok && scaled < last && std::abs(gap) < last_gap && r.peak.side == Side::inner;
      d += "eps=" + num(eps) + ": " + num(scaled) + " (gap " + num(gap) + ") ";
      last = scaled;
      last_gap = std::abs(gap);
    }
    d += "Gamma(V;kappa_inner) = " + num(gamma);
    return ok && last_gap < 0.10;
  });

  criterion("AC8 peak profile", [](std::string& d) {
    bool ok = true;
    for (double alpha : {0.0, 3.0}) {
      const auto& r = solved(alpha, 0.05);
      const auto geom = ReducedGeometry::from(r.params);
      const double e = peak_profile_error(r, GroundState::compute(3, 2.0, geom.kappa(r.peak.side)));
      ok = ok && e < 0.10;
      d += "a=" + num(alpha) + ": " + num(e) + " ";
    }
    return ok;
  });

  criterion("AC9 lift", [](std::string& d) {
    const auto& r = solved(0.0, 0.05);
    const auto rep = cli::lift_check(r.field, r.params, 1000, 10000, 7);
    d = "orbit spread " + num(rep.orbit_spread) + ", annulus/reduced residual " + num(rep.max_annulus_residual) +
        "/" + num(rep.max_reduced_residual) + ", min |Tx - x| " + num(rep.min_displacement);
    return rep.orbit_spread == 0.0 && rep.max_annulus_residual <= 10.0 * rep.max_reduced_residual &&
           rep.min_displacement > 0.0;
  });

  criterion("AC10 reproducibility", [&](std::string& d) {
    const std::vector<std::vector<std::string>> runs{
        {"ground-state", "--dim", "3", "--p", "2", "--kappa", "2"},
        {"reduce-check", "--N", "2"},
        {"expansion", "--eps-list", "0.08,0.04"},
        {"solve", "--alpha", "1", "--eps", "0.1"},
        {"concentration-scan", "--alpha-list", "0,3", "--eps", "0.2"},
    };
    // The subcommands print their own summaries; keep the gate to one line per criterion.
    std::ostringstream sink;
    struct Restore {
      std::streambuf* buf;
      ~Restore() { std::cout.rdbuf(buf); }
    } restore{std::cout.rdbuf(sink.rdbuf())};
    bool ok = true;
    std::size_t files = 0;
    int k = 0;
    std::vector<fs::path> dirs;
    for (auto args : runs) {
      const fs::path dir = out / ("run" + std::to_string(k++));
      args.insert(args.end(), {"--out", dir.string()});
      ok = ok && cli::run(args) == cli::exit_ok;
      dirs.push_back(dir);
    }
    const fs::path lift_dir = out / "run_lift";
    ok = ok && cli::run({"lift", "--field", (dirs[3] / "field.bin").string(), "--alpha", "1", "--eps", "0.1", "--out",
                         lift_dir.string()}) == cli::exit_ok;
    dirs.push_back(lift_dir);
    for (const auto& dir : dirs) {
      const auto rep = cli::replay(dir / "manifest.json", (dir.string() + "_replay"));
      ok = ok && rep.identical() && rep.compared > 0;
      files += rep.compared;
    }
    d = std::to_string(dirs.size()) + " manifests, " + std::to_string(files) + " files compared";
    return ok;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
