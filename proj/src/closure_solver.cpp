#include "ctorsion/closure_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ctorsion/error.hpp"

namespace ctorsion {

namespace {

AreaPath resolve(AreaPath path, int m, int n) {
  if (path == AreaPath::automatic) return has_closed_form_area(m, n) ? AreaPath::closed_form : AreaPath::quadrature;
  return path;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

const char* to_string(AreaPath path) {
  switch (path) {
    case AreaPath::automatic:
      return "automatic";
    case AreaPath::closed_form:
      return "closed_form";
    case AreaPath::quadrature:
      return "quadrature";
  }
  return "unknown";
}

double closure_function(int m, int n, double alpha, double beta, AreaPath path, int quadratureSamples) {
  path = resolve(path, m, n);
  if (path == AreaPath::closed_form) return closed_form_area(m, n, alpha, beta);
  const EpicycleParams p{m, n, alpha, beta};
  return area_normalization(m) * area_integrals(sample_epicycle(p, quadratureSamples)).Ixy;
}

ClosureSolution solve_beta(int m, int n, double alpha, double tol) {
  SolveOptions o;
  o.tol = tol;
  return solve_beta(m, n, alpha, o);
}

ClosureSolution solve_beta(int m, int n, double alpha, const SolveOptions& options) {
  if (n % 3 != 0) throw ValidationError("solve_beta: n must be a multiple of 3 for the symmetric closure condition");
  if (m == 0) throw ValidationError("solve_beta: m must be nonzero");
  if (!(alpha > 0.0 && alpha < std::numbers::pi)) throw ValidationError("solve_beta: alpha must lie in (0, pi)");
  if (!(options.beta_hi > options.beta_lo) || options.beta_lo < 0.0 || options.beta_hi > std::numbers::pi)
    throw ValidationError("solve_beta: invalid beta range");
  if (options.scan_points < 2) throw ValidationError("solve_beta: scan_points must be at least 2");

  const AreaPath path = resolve(options.path, m, n);
  const double tol = std::isnan(options.tol) ? (path == AreaPath::closed_form ? 1e-10 : 1e-8) : options.tol;
  if (!(tol > 0.0)) throw ValidationError("solve_beta: tol must be positive");
  const auto f = [&](double beta) { return closure_function(m, n, alpha, beta, path, options.quadrature_samples); };

  // Scan for sign changes.
  const int k = options.scan_points;
  std::vector<double> grid(static_cast<std::size_t>(k) + 1);
  std::vector<double> values(grid.size());
  for (int i = 0; i <= k; ++i) {
    grid[i] = options.beta_lo + (options.beta_hi - options.beta_lo) * i / k;
    values[i] = f(grid[i]);
  }
  std::vector<std::pair<double, double>> brackets;
  std::vector<std::pair<double, double>> bracketValues;
  for (int i = 0; i < k; ++i) {
    const int s0 = sign(values[i]);
    const int s1 = sign(values[i + 1]);
    if (s1 == 0 || (s0 != 0 && s0 != s1)) {
      brackets.emplace_back(grid[i], grid[i + 1]);
      bracketValues.emplace_back(values[i], values[i + 1]);
    }
  }
  if (brackets.empty()) {
    std::ostringstream msg;
    msg << "no closure in range: closure integral keeps one sign on [" << options.beta_lo << ", " << options.beta_hi
        << "] for (m, n, alpha) = (" << m << ", " << n << ", " << alpha << ")";
    throw NoRootError(msg.str());
  }

  ClosureSolution sol;
  sol.params = {m, n, alpha, 0.0};
  sol.path = path;
  sol.bracket_lo = brackets.front().first;
  sol.bracket_hi = brackets.front().second;
  sol.other_brackets.assign(brackets.begin() + 1, brackets.end());

  double lo = brackets.front().first;
  double hi = brackets.front().second;
  double flo = bracketValues.front().first;
  double fhi = bracketValues.front().second;
  int iterations = 0;

  if (fhi == 0.0) {
    sol.params.beta = hi;
    sol.residual = 0.0;
    return sol;
  }

  // Bisection down to a 1e-3 bracket.
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    ++iterations;
    if (fm == 0.0) {
      lo = hi = mid;
      flo = fhi = 0.0;
      break;
    }
    if (sign(fm) == sign(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }

  // Safeguarded secant polish inside the bracket.
  double x0 = lo, f0 = flo;
  double x1 = hi, f1 = fhi;
  double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
  double fbest = std::min(std::abs(flo), std::abs(fhi));
  constexpr int kMaxIterations = 200;
  while (lo < hi && iterations < kMaxIterations) {
    double x = (f1 != f0) ? x1 - f1 * (x1 - x0) / (f1 - f0) : 0.5 * (lo + hi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    ++iterations;
    if (std::abs(fx) < fbest) {
      best = x;
      fbest = std::abs(fx);
    }
    const double step = std::abs(x - x1);
    x0 = x1;
    f0 = f1;
    x1 = x;
    f1 = fx;
    if (fx == 0.0) break;
    if (sign(fx) == sign(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (fbest <= tol && (step <= 1e-14 * std::max(1.0, std::abs(x)) || hi - lo <= 4e-16 * std::max(1.0, hi)))
      break;
    if (hi - lo <= 4e-16 * std::max(1.0, hi)) break;
  }
  if (!(fbest <= tol)) {
    std::ostringstream msg;
    msg << "solve_beta: residual " << fbest << " above tolerance " << tol << " after " << iterations
        << " iterations";
    throw ConvergenceError(msg.str());
  }
  sol.params.beta = best;
  sol.residual = fbest;
  sol.iterations = iterations;
  return sol;
}

ClosureLocus closure_locus(int m, int n, const std::vector<double>& alphas, const SolveOptions& options) {
  ClosureLocus locus;
  const ClosureSolution* prev = nullptr;
  for (double alpha : alphas) {
    LocusPoint point;
    point.alpha = alpha;
    try {
      point.solution = solve_beta(m, n, alpha, options);
    } catch (const Error& e) {
      point.message = e.what();
    }
    locus.points.push_back(std::move(point));
  }
  for (const auto& point : locus.points) {
    if (!point.solution) {
      prev = nullptr;
      continue;
    }
    if (prev) locus.max_neighbor_jump = std::max(locus.max_neighbor_jump,
                                                 std::abs(point.solution->params.beta - prev->params.beta));
    prev = &*point.solution;
  }
  return locus;
}

ClosedCurve build_closed_ct_curve(int m, int n, double alpha, double tau, int samples, const SolveOptions& options) {
  if (!std::isfinite(tau) || tau == 0.0) throw ValidationError("torsion must be a nonzero finite number");
  ClosedCurve out;
  out.solution = solve_beta(m, n, alpha, options);
  out.binormal = sample_epicycle(out.solution.params, samples);
  out.gamma = gamma_from_binormal(out.binormal, tau);
  out.gamma.provenance = "epicycle";
  out.report = closure_report(out.binormal, tau);
  return out;
}

}  // namespace ctorsion
