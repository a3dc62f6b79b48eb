#include "ctorsion/spherical_ct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include "ctorsion/error.hpp"

namespace ctorsion {

namespace {

constexpr double kMaxGeodesicCurvature = 1e12;

Mat3 darboux_generator(double kg) { return Mat3({0, -kg, -1, kg, 0, 0, 1, 0, 0}); }

void check_tau(double tau) {
  if (!std::isfinite(tau) || tau == 0.0) throw ValidationError("spherical constant torsion: tau must be finite and nonzero");
}

void check_resolution(int steps, double maxTurn) {
  if (steps < 16) throw ValidationError("spherical constant torsion: steps must be at least 16");
  if (!(maxTurn > 0.0) || maxTurn > 0.1)
    throw ValidationError("spherical constant torsion: max_turn must lie in (0, 0.1]");
}

// Marches the Darboux frame from s = 0 in direction dir (+1 or -1). The
// march stops exactly at each distance in `stops` (increasing) and reports
// the frame there. Every accepted step is passed to `record` when given.
template <typename Record>
std::vector<Mat3> march(double tau, const Mat3& start, int dir, const std::vector<double>& stops, double hBase,
                        Record&& record) {
  std::vector<Mat3> out;
  out.reserve(stops.size());
  Mat3 F = start;
  double sigma = 0.0;
  auto rhs = [&](double sg, const Mat3& f) { return static_cast<double>(dir) * (f * darboux_generator(std::tan(tau * dir * sg))); };
  for (double stop : stops) {
    while (sigma < stop) {
      double h = hBase / (1.0 + std::abs(std::tan(tau * sigma)));
      bool last = false;
      if (sigma + h >= stop) {
        h = stop - sigma;
        last = true;
      }
      const Mat3 k1 = rhs(sigma, F);
      const Mat3 k2 = rhs(sigma + 0.5 * h, F + (0.5 * h) * k1);
      const Mat3 k3 = rhs(sigma + 0.5 * h, F + (0.5 * h) * k2);
      const Mat3 k4 = rhs(sigma + h, F + h * k3);
      F = project_to_rotation(F + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
      sigma = last ? stop : sigma + h;
      record(dir * sigma, F);
    }
    out.push_back(F);
  }
  return out;
}

struct NoRecord {
  void operator()(double, const Mat3&) const {}
};

double base_step(double halfLength, int steps, double maxTurn) { return std::min(2.0 * halfLength / steps, maxTurn); }

// Log-spiral estimate of the limit point from the frame at distance d before
// a singular end. dir is +1 for the forward end.
Vec3 corrected_limit(const Mat3& F, double tau, double d, int dir) {
  const Vec3 t = F.column(0);
  const Vec3 u = F.column(1);
  const Vec3 nu = F.column(2);
  const double scale = -dir * d / (1.0 + tau * tau);
  return normalized(nu + scale * (tau * tau * t + tau * u));
}

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

}  // namespace

double spherical_ct_half_length(double tau) {
  check_tau(tau);
  return std::numbers::pi / (2.0 * std::abs(tau));
}

SphericalCTCurve integrate_spherical_ct(const SphericalCTParams& p) {
  const double half = spherical_ct_half_length(p.tau);
  check_resolution(p.steps, p.max_turn);
  if (!(p.epsilon > 0.0) || !(p.epsilon < half)) {
    std::ostringstream msg;
    msg << "spherical constant torsion: epsilon must lie in (0, " << half << ")";
    throw ValidationError(msg.str());
  }
  const double reach = half - p.epsilon;
  const double kgMax = std::abs(std::tan(p.tau * reach));
  if (!(kgMax <= kMaxGeodesicCurvature)) {
    std::ostringstream msg;
    msg << "spherical constant torsion: epsilon too small, max |kappa_g| would be " << kgMax;
    throw ValidationError(msg.str());
  }
  if (!p.initial_frame.is_valid(1e-9)) throw ValidationError("spherical constant torsion: initial frame is not a rotation");

  const double hBase = base_step(half, p.steps, p.max_turn);
  const Mat3 F0 = p.initial_frame.matrix();

  std::vector<std::pair<double, Mat3>> back, fwd;
  auto recBack = [&](double s, const Mat3& F) { back.emplace_back(s, F); };
  auto recFwd = [&](double s, const Mat3& F) { fwd.emplace_back(s, F); };
  march(p.tau, F0, -1, {reach}, hBase, recBack);
  march(p.tau, F0, +1, {reach}, hBase, recFwd);

  SphericalCTCurve out;
  out.s_min = -reach;
  out.s_max = reach;
  Polyline& c = out.curve.curve;
  const std::size_t n = back.size() + 1 + fwd.size();
  c.params.reserve(n);
  c.points.reserve(n);
  out.curve.frames.reserve(n);
  out.kappa_g.reserve(n);
  auto push = [&](double s, const Mat3& F) {
    c.params.push_back(s);
    c.points.push_back(F.column(2));
    out.curve.frames.push_back(Frame::from_matrix(F));
    const double kg = std::tan(p.tau * s);
    out.kappa_g.push_back(kg);
    out.max_abs_kappa_g = std::max(out.max_abs_kappa_g, std::abs(kg));
  };
  for (auto it = back.rbegin(); it != back.rend(); ++it) push(it->first, it->second);
  out.origin_index = c.params.size();
  push(0.0, F0);
  for (const auto& [s, F] : fwd) push(s, F);

  c.torsion_target = p.tau;
  c.provenance = "spherical_ct";
  CurveInvariants inv;
  inv.kappa_g = out.kappa_g;
  inv.tau.assign(c.params.size(), p.tau);
  for (double s : c.params) inv.kappa.push_back(1.0 / std::cos(p.tau * s));
  c.invariants = std::move(inv);
  return out;
}

namespace {

struct LimitEstimate {
  Vec3 forward;
  Vec3 backward;
};

// Corrected limit points at each requested endpoint distance, coarse to fine.
std::vector<LimitEstimate> limit_sequence(double tau, const CentralAngleOptions& o) {
  const double half = spherical_ct_half_length(tau);
  check_resolution(o.steps, o.max_turn);
  if (o.epsilon_fractions.size() < 2) throw ValidationError("central angle: need at least two epsilon fractions");
  for (std::size_t i = 0; i < o.epsilon_fractions.size(); ++i) {
    const double f = o.epsilon_fractions[i];
    if (!(f > 0.0 && f < 1.0)) throw ValidationError("central angle: epsilon fractions must lie in (0, 1)");
    if (i > 0 && !(f < o.epsilon_fractions[i - 1]))
      throw ValidationError("central angle: epsilon fractions must be decreasing");
  }
  if (!o.initial_frame.is_valid(1e-9)) throw ValidationError("central angle: initial frame is not a rotation");

  std::vector<double> stops;
  for (double f : o.epsilon_fractions) stops.push_back(half * (1.0 - f));
  const double kgMax = std::abs(std::tan(tau * stops.back()));
  if (!(kgMax <= kMaxGeodesicCurvature)) {
    std::ostringstream msg;
    msg << "central angle: smallest epsilon too small, max |kappa_g| would be " << kgMax;
    throw ValidationError(msg.str());
  }

  const double hBase = base_step(half, o.steps, o.max_turn);
  const Mat3 F0 = o.initial_frame.matrix();
  const auto fwd = march(tau, F0, +1, stops, hBase, NoRecord{});
  const auto back = march(tau, F0, -1, stops, hBase, NoRecord{});

  std::vector<LimitEstimate> out;
  for (std::size_t k = 0; k < stops.size(); ++k) {
    const double d = half - stops[k];
    out.push_back({corrected_limit(fwd[k], tau, d, +1), corrected_limit(back[k], tau, d, -1)});
  }
  return out;
}

}  // namespace

LimitPoints limit_points(double tau, const CentralAngleOptions& o) {
  const auto seq = limit_sequence(tau, o);
  const LimitEstimate& last = seq.back();
  const LimitEstimate& prev = seq[seq.size() - 2];
  LimitPoints lp;
  lp.forward = last.forward;
  lp.backward = last.backward;
  lp.error = std::max(norm(last.forward - prev.forward), norm(last.backward - prev.backward));
  return lp;
}

ZetaSample central_angle(double tau, const CentralAngleOptions& o) {
  const auto seq = limit_sequence(tau, o);
  const LimitEstimate& last = seq.back();
  const LimitEstimate& prev = seq[seq.size() - 2];
  ZetaSample z;
  z.tau = tau;
  z.zeta = angle_between(last.backward, last.forward);
  z.extrapolation_error = std::abs(z.zeta - angle_between(prev.backward, prev.forward));
  if (!std::isfinite(z.zeta) || !(z.extrapolation_error <= o.max_error)) {
    std::ostringstream msg;
    msg << "central angle did not converge for tau = " << tau << " (last change " << z.extrapolation_error << ")";
    throw ConvergenceError(msg.str());
  }
  return z;
}

ZetaSweep zeta_sweep(const std::vector<double>& taus, const CentralAngleOptions& o) {
  ZetaSweep out;
  std::unordered_set<double> seen;
  for (double tau : taus) {
    if (!seen.insert(tau).second) {
      std::ostringstream msg;
      msg << "duplicate tau " << tau << " skipped";
      out.warnings.push_back(msg.str());
      continue;
    }
    out.samples.push_back(central_angle(tau, o));
  }
  return out;
}

Polyline limit_point_locus(const std::vector<double>& taus, const CentralAngleOptions& o) {
  Polyline out;
  out.provenance = "limit_point_locus";
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (i > 0 && !(taus[i] > taus[i - 1])) throw ValidationError("limit point locus: tau grid must be strictly increasing");
    const LimitPoints lp = limit_points(taus[i], o);
    out.params.push_back(taus[i]);
    out.points.push_back(lp.forward);
  }
  return out;
}

}  // namespace ctorsion
