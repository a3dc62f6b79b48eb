#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ctorsion/curve.hpp"
#include "ctorsion/darboux_rep.hpp"
#include "ctorsion/epicycle.hpp"

namespace ctorsion {

/// Which evaluation of the closure integral the root finder drives.
enum class AreaPath {
  automatic,    // closed form when one exists, quadrature otherwise
  closed_form,  // closed_form_area; only (1,-3) and (2,-3)
  quadrature,   // normalized Ixy from area_integrals
};

struct SolveOptions {
  AreaPath path = AreaPath::automatic;
  /// |closure integral| accepted at the root. NaN selects 1e-10 for the closed
  /// form and 1e-8 for quadrature.
  double tol = std::numeric_limits<double>::quiet_NaN();
  double beta_lo = 0.0;
  double beta_hi = 1.5707963267948966;  // pi/2
  int scan_points = 64;
  int quadrature_samples = 1024;
};

struct ClosureSolution {
  EpicycleParams params;
  double residual = 0.0;  // |closure integral| at params.beta
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  AreaPath path = AreaPath::closed_form;
  /// Brackets of every further sign change met on the scan grid.
  std::vector<std::pair<double, double>> other_brackets;
};

/// Normalized closure integral f(beta) on the chosen path.
double closure_function(int m, int n, double alpha, double beta, AreaPath path, int quadratureSamples = 1024);

/// Smallest beta in (beta_lo, beta_hi] with vanishing closure integral: scan
/// for the first sign change, bisect to width 1e-3, then polish by
/// safeguarded secant. Throws ValidationError when 3 does not divide n or
/// alpha is outside (0, pi), NoRootError when no sign change is found.
ClosureSolution solve_beta(int m, int n, double alpha, const SolveOptions& options = {});
ClosureSolution solve_beta(int m, int n, double alpha, double tol);

struct LocusPoint {
  double alpha = 0.0;
  std::optional<ClosureSolution> solution;
  std::string message;  // reason when solution is empty
};

struct ClosureLocus {
  std::vector<LocusPoint> points;
  /// Largest |beta_i - beta_{i-1}| between consecutive solved points.
  double max_neighbor_jump = 0.0;
};

ClosureLocus closure_locus(int m, int n, const std::vector<double>& alphas, const SolveOptions& options = {});

struct ClosedCurve {
  SphericalCurve binormal;
  Polyline gamma;
  ClosureReport report;
  ClosureSolution solution;
};

/// Solves for beta, then integrates gamma with torsion tau over the sampled epicycle.
ClosedCurve build_closed_ct_curve(int m, int n, double alpha, double tau, int samples,
                                  const SolveOptions& options = {});

const char* to_string(AreaPath path);

}  // namespace ctorsion
