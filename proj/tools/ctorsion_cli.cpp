// Command-line front end over the ctorsion library.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctorsion/analysis.hpp"
#include "ctorsion/closure_solver.hpp"
#include "ctorsion/darboux_rep.hpp"
#include "ctorsion/epicycle.hpp"
#include "ctorsion/error.hpp"
#include "ctorsion/io.hpp"
#include "ctorsion/spherical_ct.hpp"

namespace {

using namespace ctorsion;
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << '\n';
  else
    write_file_atomic(path, j.dump(2) + '\n');
}

void merge(json& into, const json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

AreaPath parse_path(const std::string& s) {
  if (s == "auto") return AreaPath::automatic;
  if (s == "closed-form") return AreaPath::closed_form;
  if (s == "quadrature") return AreaPath::quadrature;
  throw ValidationError("unknown area path '" + s + "' (auto, closed-form, quadrature)");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(name) + " must be positive");
}

bool on_unit_sphere(const Polyline& c, double tol = 1e-6) {
  for (const auto& p : c.points)
    if (!(std::abs(norm(p) - 1.0) <= tol)) return false;
  return true;
}

SphericalCurve as_spherical(const Polyline& c) {
  SphericalCurve s;
  s.t = c.params;
  s.points = c.points;
  return s;
}

// Turns a key=value config file into "--key value" tokens.
std::vector<std::string> config_tokens(const std::string& path) {
  std::vector<std::string> out;
  for (const auto& [k, v] : parse_config(read_file(path))) {
    if (v == "false") continue;
    out.push_back("--" + k);
    if (v != "true") out.push_back(v);
  }
  return out;
}

struct EpicycleArgs {
  int m = 1;
  int n = -3;
  double alpha = kNaN;
  double beta = kNaN;
};

void add_epicycle_args(CLI::App* c, EpicycleArgs& a, bool withBeta) {
  c->add_option("--m", a.m, "windings of the carrier circle")->capture_default_str();
  c->add_option("--n", a.n, "windings of the epicycle")->capture_default_str();
  c->add_option("--alpha", a.alpha, "carrier geodesic radius (radians)")->required();
  if (withBeta) c->add_option("--beta", a.beta, "epicycle geodesic radius (radians)")->required();
}

int run(int argc, char** argv) {
  CLI::App app{"Constant-torsion curve toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string configPath;
  app.add_option("--config", configPath, "key=value file; command-line flags take precedence");

  // epicycle
  EpicycleArgs ep;
  int epSamples = 4096;
  std::string epOut;
  auto* cEp = app.add_subcommand("epicycle", "sample a spherical (m,n)-epicycle B(t) to CSV");
  add_epicycle_args(cEp, ep, true);
  cEp->add_option("--samples", epSamples)->capture_default_str();
  cEp->add_option("--out", epOut)->required();

  // solve-beta
  EpicycleArgs sb;
  double sbTol = kNaN;
  std::string sbPath = "auto", sbJson;
  double sbLo = 0.0, sbHi = std::numbers::pi / 2;
  auto* cSb = app.add_subcommand("solve-beta", "find the closing beta for given (m, n, alpha)");
  add_epicycle_args(cSb, sb, false);
  cSb->add_option("--tol", sbTol, "residual tolerance");
  cSb->add_option("--path", sbPath, "auto, closed-form or quadrature")->capture_default_str();
  cSb->add_option("--beta-lo", sbLo)->capture_default_str();
  cSb->add_option("--beta-hi", sbHi)->capture_default_str();
  cSb->add_option("--json", sbJson, "also write the solution record here");

  // construct
  EpicycleArgs co;
  double coTau = 1.0;
  int coSamples = 16384;
  std::string coOut, coReport, coBinormal, coPath = "auto";
  auto* cCo = app.add_subcommand("construct", "build a closed constant-torsion curve from an epicycle");
  add_epicycle_args(cCo, co, false);
  cCo->add_option("--tau", coTau)->capture_default_str();
  cCo->add_option("--samples", coSamples)->capture_default_str();
  cCo->add_option("--path", coPath, "auto, closed-form or quadrature")->capture_default_str();
  cCo->add_option("--out", coOut, "curve CSV")->required();
  cCo->add_option("--report", coReport, "report JSON (default: stdout)");
  cCo->add_option("--binormal-out", coBinormal, "binormal curve CSV");

  // analyze
  std::string anIn, anReport;
  auto* cAn = app.add_subcommand("analyze", "estimate curvature, torsion and identities of a curve CSV");
  cAn->add_option("--in", anIn)->required();
  cAn->add_option("--report", anReport, "report JSON (default: stdout)");

  // sphere-ct
  SphericalCTParams sc;
  sc.tau = kNaN;
  std::string scOut;
  auto* cSc = app.add_subcommand("sphere-ct", "maximal constant-torsion curve on the unit sphere");
  cSc->add_option("--tau", sc.tau)->required();
  cSc->add_option("--epsilon", sc.epsilon)->capture_default_str();
  cSc->add_option("--steps", sc.steps)->capture_default_str();
  cSc->add_option("--out", scOut)->required();

  // zeta-sweep
  double zMin = kNaN, zMax = kNaN;
  int zPoints = 0;
  bool zLog = false;
  std::vector<double> zTaus;
  std::string zOut, zLocus;
  auto* cZ = app.add_subcommand("zeta-sweep", "central angle between the limit points over a tau grid");
  cZ->add_option("--tau-min", zMin);
  cZ->add_option("--tau-max", zMax);
  cZ->add_option("--points", zPoints);
  cZ->add_flag("--log", zLog, "logarithmic grid");
  cZ->add_option("--tau", zTaus, "explicit grid values")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->delimiter(',');
  cZ->add_option("--out", zOut)->required();
  cZ->add_option("--locus", zLocus, "limit-point locus CSV");

  // export-obj
  std::string obIn, obOut;
  auto* cOb = app.add_subcommand("export-obj", "convert a curve CSV to an OBJ polyline");
  cOb->add_option("--in", obIn)->required();
  cOb->add_option("--out", obOut)->required();

  // Config values go first so that explicit flags, parsed later, win.
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
    if (path.empty()) continue;
    auto tokens = config_tokens(path);
    // Insert right after the subcommand name so the options bind to it.
    std::size_t at = 0;
    for (std::size_t j = 0; j < args.size(); ++j)
      if (!args[j].empty() && args[j][0] != '-' && (j == 0 || args[j - 1] != "--config")) {
        at = j + 1;
        break;
      }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), tokens.begin(), tokens.end());
    break;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::validation);
  }

  if (cEp->parsed()) {
    EpicycleParams p{ep.m, ep.n, ep.alpha, ep.beta};
    validate(p);
    write_csv(epOut, to_polyline(sample_epicycle(p, epSamples)));
  } else if (cSb->parsed()) {
    SolveOptions o;
    o.path = parse_path(sbPath);
    o.tol = sbTol;
    o.beta_lo = sbLo;
    o.beta_hi = sbHi;
    if (!std::isnan(sbTol)) require_positive(sbTol, "--tol");
    const ClosureSolution s = solve_beta(sb.m, sb.n, sb.alpha, o);
    std::printf("beta = %s\nresidual = %s\n", format_double(s.params.beta).c_str(), format_double(s.residual).c_str());
    for (const auto& [lo, hi] : s.other_brackets)
      std::fprintf(stderr, "warning: further closure root in [%s, %s]\n", format_double(lo).c_str(),
                   format_double(hi).c_str());
    if (!sbJson.empty()) write_json(sbJson, to_json(s));
  } else if (cCo->parsed()) {
    SolveOptions o;
    o.path = parse_path(coPath);
    const ClosedCurve cc = build_closed_ct_curve(co.m, co.n, co.alpha, coTau, coSamples, o);
    Polyline gamma = cc.gamma;
    const DiscreteFrenet df = discrete_frenet(gamma);
    CurveInvariants inv;
    inv.kappa = df.kappa;
    inv.tau = df.tau;
    inv.kappa_g.assign(gamma.size(), kNaN);
    gamma.invariants = std::move(inv);
    write_csv(coOut, gamma);
    if (!coBinormal.empty()) write_csv(coBinormal, to_polyline(cc.binormal));

    json report = to_json(cc.report);
    merge(report, to_json(estimate_curvature_torsion(cc.gamma)));
    merge(report, to_json(cc.solution));
    report["tau"] = coTau;
    report["binormal_inflection_count"] = count_sign_changes(geodesic_curvature_sphere(cc.binormal), true);
    write_json(coReport, report);
  } else if (cAn->parsed()) {
    const Polyline c = read_csv(anIn);
    c.validate();
    json report = to_json(estimate_curvature_torsion(c));
    if (on_unit_sphere(c)) {
      const SphericalCurve s = as_spherical(c);
      const bool closed = c.is_closed();
      report["geodesic_inflection_count"] = count_sign_changes(geodesic_curvature_sphere(s), closed);
      if (closed) {
        for (const auto& [n, v] : integral_identities(c, {-2, -1, 0, 1, 2}))
          report["identity_residuals.I" + std::to_string(n)] = v;
        const WongFit w = check_wong(c);
        report["wong_radius"] = w.radius;
        report["wong_residual"] = w.residual;
      }
    }
    write_json(anReport, report);
  } else if (cSc->parsed()) {
    const SphericalCTCurve curve = integrate_spherical_ct(sc);
    write_csv(scOut, curve.curve.curve);
  } else if (cZ->parsed()) {
    std::vector<double> grid = zTaus;
    const bool ranged = !std::isnan(zMin) || !std::isnan(zMax) || zPoints != 0;
    if (ranged) {
      if (!grid.empty()) throw ValidationError("give either --tau or --tau-min/--tau-max/--points");
      if (std::isnan(zMin) || std::isnan(zMax) || zPoints < 1)
        throw ValidationError("--tau-min, --tau-max and --points are required together");
      if (!(zMax >= zMin)) throw ValidationError("--tau-max must not be below --tau-min");
      if (zLog && !(zMin > 0.0)) throw ValidationError("--log needs a positive range");
      for (int i = 0; i < zPoints; ++i) {
        const double f = zPoints == 1 ? 0.0 : static_cast<double>(i) / (zPoints - 1);
        grid.push_back(zLog ? std::exp(std::log(zMin) + f * (std::log(zMax) - std::log(zMin))) : zMin + f * (zMax - zMin));
      }
    }
    const ZetaSweep sweep = zeta_sweep(grid);
    for (const auto& w : sweep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::string csv = "tau,zeta,extrapolation_error\n";
    for (const auto& z : sweep.samples)
      csv += format_double(z.tau) + ',' + format_double(z.zeta) + ',' + format_double(z.extrapolation_error) + '\n';
    write_file_atomic(zOut, csv);
    if (!zLocus.empty()) {
      std::vector<double> taus;
      for (const auto& z : sweep.samples) taus.push_back(z.tau);
      std::sort(taus.begin(), taus.end());
      write_csv(zLocus, limit_point_locus(taus));
    }
  } else if (cOb->parsed()) {
    write_file_atomic(obOut, to_obj(read_csv(obIn)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ctorsion::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
