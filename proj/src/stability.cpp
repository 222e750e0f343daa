// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "phasekit/errors.hpp"
#include "phasekit/kernels.hpp"

namespace phasekit {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double deg(double rad) { return rad * 180.0 / kPi; }

void add_angle_margin(StabilityVerdict& v, const std::string& name, double rad) {
  v.margins.push_back({name + "_rad", rad});
  v.margins.push_back({name + "_deg", deg(rad)});
}

bool one_sectorial(SectorKind a, SectorKind b) {
  return (a == SectorKind::Sectorial && b != SectorKind::Indefinite) ||
         (b == SectorKind::Sectorial && a != SectorKind::Indefinite);
}

}  // namespace

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    default: return "hypothesis-unmet";
  }
}

double StabilityVerdict::margin(const std::string& name) const {
  for (const auto& m : margins)
    if (m.name == name) return m.value;
  throw std::out_of_range("no margin named " + name);
}

StabilityVerdict small_gain_check(double gain_p, double gain_c) {
  if (!(gain_p >= 0.0) || !(gain_c >= 0.0)) throw InputError("gains must be nonnegative");
  StabilityVerdict v;
  v.criterion = "small-gain";
  const double m = 1.0 - gain_p * gain_c;
  v.margins.push_back({"margin", m});
  v.outcome = m > 0.0 ? Outcome::Pass : Outcome::Fail;
  return v;
}

StabilityVerdict small_phase_check(const PhaseInput& p, const PhaseInput& c) {
  StabilityVerdict v;
  v.criterion = "small-phase";
  v.provenance = {p.provenance, c.provenance};
  v.indicative = p.provenance == "empirical" || c.provenance == "empirical";
  const double upper = kPi - (p.interval.hi() + c.interval.hi());
  const double lower = p.interval.lo() + c.interval.lo() + kPi;
  add_angle_margin(v, "upper", upper);
  add_angle_margin(v, "lower", lower);
  if (!one_sectorial(p.kind, c.kind)) {
    v.outcome = Outcome::HypothesisUnmet;
    v.note = "needs one sectorial and one semi-sectorial system";
    return v;
  }
  v.outcome = upper > kBoundaryBand && lower > kBoundaryBand ? Outcome::Pass : Outcome::Fail;
  return v;
}

StabilityVerdict passivity_index_check(const PassivityIndices& p, const PassivityIndices& c) {
  StabilityVerdict v;
  v.criterion = "passivity-index";
  const double m1 = p.delta + c.epsilon;
  const double m2 = c.delta + p.epsilon;
  v.margins.push_back({"delta_p_plus_epsilon_c", m1});
  v.margins.push_back({"delta_c_plus_epsilon_p", m2});
  v.outcome = m1 > 0.0 && m2 > 0.0 ? Outcome::Pass : Outcome::Fail;
  return v;
}

StabilityVerdict generalized_small_phase_check(const LtiSystem& p, const LtiSystem& c, const MultiplierSpec& pi,
                                               const FrequencyGrid& grid, double tol) {
  if (p.size() != c.size()) throw InputError("P and C must have the same size");
  const SystemPhaseReport rp = lti_multiplier_phase(p, pi, grid, false, tol);
  const SystemPhaseReport rc = lti_multiplier_phase(c, pi, grid, true, tol);
  if (!rp.interval || !rc.interval) {
    StabilityVerdict v;
    v.criterion = "generalized-small-phase";
    v.provenance = {"lti-certified", "lti-certified"};
    v.outcome = Outcome::HypothesisUnmet;
    v.note = !rp.interval ? "P is not semi-sectorial under the multiplier" : "C is not semi-sectorial under the multiplier";
    return v;
  }
  StabilityVerdict v = small_phase_check({*rp.interval, rp.verdict, "lti-certified"}, {*rc.interval, rc.verdict, "lti-certified"});
  v.criterion = "generalized-small-phase";
  return v;
}

StabilityVerdict freqwise_small_phase_check(const LtiSystem& p, const LtiSystem& c, const FrequencyGrid& grid,
                                            double tol) {
  if (p.size() != c.size()) throw InputError("P and C must have the same size");
  require_hurwitz(p);
  require_hurwitz(c);
  const auto rp = sweep_response(p, grid);
  const auto rc = sweep_response(c, grid);
  const std::size_t n = grid.size();

  struct Node {
    bool skip = false;
    bool hypothesis = false;
    double upper = kInf;
    double lower = kInf;
  };
  std::vector<Node> nodes(n);
  kernels::for_each_index(n, [&](std::size_t k) {
    Node& node = nodes[k];
    if (!(rp[k].norm() > 0.0) || !(rc[k].norm() > 0.0)) {
      node.skip = true;  // a zero response has no angle and adds nothing to the loop
      return;
    }
    const auto kp = matrix_sector_certify(rp[k], tol).kind;
    const auto kc = matrix_sector_certify(rc[k], tol).kind;
    node.hypothesis = one_sectorial(kp, kc);
    if (!node.hypothesis) return;
    const PhaseInterval ip = *matrix_phase_interval(rp[k], tol);
    const PhaseInterval ic = *matrix_phase_interval(rc[k], tol);
    node.upper = kPi - (ip.hi() + ic.hi());
    node.lower = ip.lo() + ic.lo() + kPi;
  });

  StabilityVerdict v;
  v.criterion = "freqwise-small-phase";
  v.provenance = {"lti-certified", "lti-certified"};
  double upper = kInf, lower = kInf, w_upper = 0.0, w_lower = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (nodes[k].skip) continue;
    if (!nodes[k].hypothesis) {
      v.outcome = Outcome::HypothesisUnmet;
      v.note = "no sectorial/semi-sectorial pair at omega = " + std::to_string(grid.omegas[k]);
      return v;
    }
    if (nodes[k].upper < upper) {
      upper = nodes[k].upper;
      w_upper = grid.omegas[k];
    }
    if (nodes[k].lower < lower) {
      lower = nodes[k].lower;
      w_lower = grid.omegas[k];
    }
  }
  add_angle_margin(v, "upper", upper);
  add_angle_margin(v, "lower", lower);
  v.margins.push_back({"upper_omega", w_upper});
  v.margins.push_back({"lower_omega", w_lower});
  v.outcome = upper > kBoundaryBand && lower > kBoundaryBand ? Outcome::Pass : Outcome::Fail;
  return v;
}

ForbiddenRegion ForbiddenRegion::of(const SectorBound& bound) {
  return {bound.forbidden_disk(), std::asin((bound.b() - bound.a()) / (bound.b() + bound.a()))};
}

bool ForbiddenRegion::cone_contains_disk() const {
  const double c = -disk.center.real();
  if (!(c > 0.0) || disk.center.imag() != 0.0 || disk.radius > c) return false;
  if (std::asin(disk.radius / c) > theta + 1e-12) return false;
  for (int k = 0; k < 256; ++k) {
    const cd z = disk.center + std::polar(disk.radius, 2.0 * kPi * k / 256);
    if (std::abs(std::remainder(std::arg(z) - kPi, 2.0 * kPi)) > theta + 1e-12) return false;
  }
  return true;
}

StabilityVerdict circle_criterion_check(const Rational& p, const SectorBound& bound, const FrequencyGrid& grid,
                                        double min_distance) {
  const auto curve = nyquist_curve(p, grid);
  const Disk disk = bound.forbidden_disk();
  double best = kInf;
  double where = 0.0;
  for (const auto& pt : curve) {
    const double d = std::abs(pt.value - disk.center) - disk.radius;
    if (d < best) {
      best = d;
      where = pt.omega;
    }
  }
  StabilityVerdict v;
  v.criterion = "circle";
  v.provenance = {"lti-certified", "sector-closed-form"};
  v.margins.push_back({"min_distance", best});
  v.margins.push_back({"omega", where});
  v.outcome = best > min_distance ? Outcome::Pass : Outcome::Fail;
  return v;
}

StabilityVerdict phase_cone_check(const Rational& p, const SectorBound& bound, const FrequencyGrid& grid, double tol) {
  StabilityVerdict v;
  v.criterion = "phase-cone";
  v.provenance = {"lti-certified", "sector-closed-form"};
  const TransferMatrix tf(p);
  const SystemPhaseReport report = lti_phase(tf, grid, tol);
  if (!report.interval) {
    v.outcome = Outcome::HypothesisUnmet;
    v.note = "P is not semi-sectorial";
    return v;
  }
  const ForbiddenRegion region = ForbiddenRegion::of(bound);
  double best = kInf;
  double where = 0.0;
  for (const auto& pt : nyquist_curve(p, grid)) {
    if (!(std::abs(pt.value) > 1e-12)) continue;
    const double m = (kPi - region.theta) - std::abs(std::arg(pt.value));
    if (m < best) {
      best = m;
      where = pt.omega;
    }
  }
  add_angle_margin(v, "cone", best);
  v.margins.push_back({"omega", where});
  v.outcome = best > 0.0 ? Outcome::Pass : Outcome::Fail;
  if (!region.cone_contains_disk()) v.note = "cone does not contain the forbidden disk";
  return v;
}

PhaseInterval parallel_phase(const PhaseInterval& a, const PhaseInterval& b, const PhaseInterval& target) {
  if (!(target.spread() > 0.0 && target.spread() < kPi)) throw InputError("target cone spread must lie in (0, pi)");
  if (!target.contains(a, 1e-12) || !target.contains(b, 1e-12)) throw InputError("phase interval leaves the target cone");
  const double c = target.center();
  const double sa = unwrap_near(a.center(), c) - a.center();
  const double sb = unwrap_near(b.center(), c) - b.center();
  return {std::min(a.lo() + sa, b.lo() + sb), std::max(a.hi() + sa, b.hi() + sb)};
}

std::pair<PhaseInterval, PhaseInterval> closed_loop_phase_bound(const PhaseInterval& p, const PhaseInterval& c) {
  if (p.hi() + c.hi() > kPi + kBoundaryBand || p.lo() + c.lo() < -kPi - kBoundaryBand)
    throw InputError("closed-loop phase bound needs hi_P + hi_C <= pi and lo_P + lo_C >= -pi");
  const PhaseInterval g1(std::min(p.lo(), -c.hi()), std::max(p.hi(), -c.lo()));
  const PhaseInterval g2(std::min(c.lo(), -p.hi()), std::max(c.hi(), -p.lo()));
  return {g1, g2};
}

}  // namespace phasekit
