// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "phasekit/errors.hpp"
#include "phasekit/kernels.hpp"

namespace phasekit {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Rotates every interval onto the branch around `center` and takes the hull.
std::optional<PhaseInterval> envelope(const std::vector<FrequencyPhase>& parts, double center) {
  double lo = kInf;
  double hi = -kInf;
  for (const auto& p : parts) {
    if (!p.interval) return std::nullopt;
    const double shift = unwrap_near(p.interval->center(), center) - p.interval->center();
    lo = std::min(lo, p.interval->lo() + shift);
    hi = std::max(hi, p.interval->hi() + shift);
  }
  if (lo > hi) return std::nullopt;
  return PhaseInterval(lo, hi);
}

std::string omega_label(double w) { return std::isinf(w) ? std::string("infinity") : std::to_string(w); }

}  // namespace

SectorBound::SectorBound(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a > 0.0) || !(b > a))
    throw InputError("sector bound needs b > a > 0");
}

Disk SectorBound::disk() const { return {cd(0.5 * (a_ + b_), 0.0), 0.5 * (b_ - a_)}; }

Disk SectorBound::forbidden_disk() const {
  return {cd(-(a_ + b_) / (2.0 * a_ * b_), 0.0), (b_ - a_) / (2.0 * a_ * b_)};
}

MultiplierSpec MultiplierSpec::identity(const FrequencyGrid& grid) {
  MultiplierSpec m;
  m.omegas = grid.omegas;
  m.values.assign(grid.omegas.size(), cd(1.0, 0.0));
  m.at_infinity = cd(1.0, 0.0);
  return m;
}

void MultiplierSpec::validate() const {
  if (omegas.empty() || omegas.size() != values.size()) throw InputError("multiplier needs one value per frequency");
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    if (!(omegas[k] >= 0.0) || !std::isfinite(omegas[k])) throw InputError("multiplier frequencies must be finite and >= 0");
    if (k > 0 && !(omegas[k] > omegas[k - 1])) throw InputError("multiplier frequencies must ascend");
    if (std::abs(std::abs(values[k]) - 1.0) > 1e-12) throw InputError("multiplier must have unit modulus");
  }
  if (at_infinity && std::abs(std::abs(*at_infinity) - 1.0) > 1e-12)
    throw InputError("multiplier must have unit modulus");
}

cd MultiplierSpec::at(double omega) const {
  if (omega < 0.0) return std::conj(at(-omega));
  if (std::isinf(omega)) return at_infinity.value_or(values.back());
  const auto it = std::lower_bound(omegas.begin(), omegas.end(), omega);
  if (it == omegas.end()) return values.back();
  const auto k = static_cast<std::size_t>(it - omegas.begin());
  if (*it == omega || k == 0) return values[k];
  const double t = (omega - omegas[k - 1]) / (omegas[k] - omegas[k - 1]);
  const double a0 = std::arg(values[k - 1]);
  const double a1 = unwrap_near(std::arg(values[k]), a0);
  return std::polar(1.0, a0 + t * (a1 - a0));
}

std::vector<PhaseNode> phase_nodes(const LtiSystem& sys, const FrequencyGrid& grid) {
  const auto responses = sweep_response(sys, grid);
  std::vector<PhaseNode> nodes;
  nodes.reserve(responses.size() + 1);
  for (std::size_t k = 0; k < responses.size(); ++k) nodes.push_back({grid.omegas[k], responses[k], false});
  const Eigen::MatrixXd d = sys.feedthrough();
  if (!d.isZero(0.0)) {
    nodes.push_back({kInf, d.cast<cd>(), false});
  } else {
    CMatrix dir = sys.limit_direction();
    if (dir.norm() > 0.0) nodes.push_back({kInf, std::move(dir), true});
  }
  return nodes;
}

SystemPhaseReport phase_of_nodes(std::span<const PhaseNode> nodes, double tol) {
  std::vector<const PhaseNode*> used;
  std::vector<CMatrix> unit;
  for (const auto& n : nodes) {
    const double scale = n.value.norm();
    if (!std::isfinite(scale)) throw InputError("non-finite frequency response");
    if (!(scale > 0.0)) continue;  // the angle of 0 is undefined
    used.push_back(&n);
    unit.push_back(n.value / scale);
  }
  if (used.empty()) throw InputError("the zero system has no phase");

  SystemPhaseReport report;
  const FeasibleArc arc = find_feasible_arc(
      [&](double alpha) { return kernels::min_lambda_rotated(unit, alpha); }, tol);
  report.alpha = arc.best;
  report.min_eig = arc.best_value;

  std::optional<double> hint;
  if (arc.feasible) hint = arc.best;
  report.per_frequency.resize(used.size());
  kernels::for_each_index(used.size(), [&](std::size_t k) {
    report.per_frequency[k] = {used[k]->omega, matrix_phase_interval(used[k]->value, tol, hint)};
  });
  if (!arc.feasible) return report;

  const double center = wrap_to_pi(-arc.best);
  report.arc_interval = arc.rays();
  report.interval = envelope(report.per_frequency, center);
  report.verdict = SectorKind::SemiSectorial;
  if (arc.best_value > tol) {
    std::vector<const CMatrix*> finite;
    double sigma = 0.0;
    for (const PhaseNode* n : used) {
      if (n->direction) continue;
      finite.push_back(&n->value);
      sigma = std::max(sigma, max_singular_value(n->value));
    }
    if (!finite.empty()) {
      const double eps = max_sectorial_epsilon(finite, arc.best, tol);
      if (eps > 1e-8 / (2.0 * sigma)) {
        report.verdict = SectorKind::Sectorial;
        report.epsilon = eps;
      }
    }
  }
  return report;
}

SystemPhaseReport lti_phase(const LtiSystem& sys, const FrequencyGrid& grid, double tol) {
  require_hurwitz(sys);
  const auto nodes = phase_nodes(sys, grid);
  return phase_of_nodes(nodes, tol);
}

SystemPhaseReport lti_multiplier_phase(const LtiSystem& sys, const MultiplierSpec& pi, const FrequencyGrid& grid,
                                       bool conjugate, double tol) {
  require_hurwitz(sys);
  pi.validate();
  auto nodes = phase_nodes(sys, grid);
  for (auto& n : nodes) {
    const cd m = pi.at(n.omega);
    n.value *= conjugate ? m : std::conj(m);
  }
  return phase_of_nodes(nodes, tol);
}

FrequencywiseReport lti_phase_frequencywise(const LtiSystem& sys, const FrequencyGrid& grid, double tol) {
  require_hurwitz(sys);
  const auto nodes = phase_nodes(sys, grid);
  std::vector<FrequencyPhase> phases(nodes.size());
  kernels::for_each_index(nodes.size(), [&](std::size_t k) {
    phases[k].omega = nodes[k].omega;
    if (nodes[k].value.norm() > 0.0) {
      phases[k].interval = matrix_phase_interval(nodes[k].value, tol);
    } else {
      phases[k].interval = PhaseInterval(0.0, 0.0);  // any rotation works at a zero response
    }
  });
  for (const auto& p : phases)
    if (!p.interval) throw IndefiniteError("response is indefinite at omega = " + omega_label(p.omega));

  FrequencywiseReport out;
  out.multiplier.omegas = grid.omegas;
  out.delta = kInf;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const cd pi = std::polar(1.0, phases[k].interval->center());
    if (std::isinf(nodes[k].omega)) {
      out.multiplier.at_infinity = pi;
      continue;
    }
    out.multiplier.values.push_back(pi);
    out.per_frequency.push_back(phases[k]);
    const CMatrix rotated = std::conj(pi) * nodes[k].value;
    out.delta = std::min(out.delta, kernels::lambda_min(0.5 * (rotated + rotated.adjoint())));
  }
  return out;
}

SectorPhase sector_phase(const SectorBound& bound) {
  const double half = std::asin((bound.b() - bound.a()) / (bound.b() + bound.a()));
  return {PhaseInterval::symmetric(half), bound.disk()};
}

SectorBound quantizer_sector(const QuantizerParams& q) {
  if (!(q.rho > 0.0 && q.rho < 1.0)) throw InputError("quantization density must lie in (0, 1)");
  return {2.0 * q.rho / (1.0 + q.rho), 2.0 / (1.0 + q.rho)};
}

PhaseInterval vsp_phase(const PassivityIndices& idx) {
  const double p = idx.delta * idx.epsilon;
  if (!(idx.delta > 0.0) || !(idx.epsilon > 0.0) || !(p <= 0.25))
    throw InputError("very strict passivity needs delta, epsilon > 0 and delta * epsilon <= 1/4");
  return PhaseInterval::symmetric(std::asin(std::sqrt(1.0 - 4.0 * p)));
}

PassivityIndices sector_indices(const SectorBound& bound) {
  return {bound.a() * bound.b() / (bound.a() + bound.b()), 1.0 / (bound.a() + bound.b())};
}

double lti_passivity_index(const LtiSystem& sys, const FrequencyGrid& grid) {
  require_hurwitz(sys);
  auto nodes = sweep_response(sys, grid);
  nodes.push_back(sys.feedthrough().cast<cd>());
  std::vector<CMatrix> herm;
  std::vector<CMatrix> gram;
  double sigma = 0.0;
  for (const auto& p : nodes) {
    herm.push_back(0.5 * (p + p.adjoint()));
    gram.push_back(CMatrix::Identity(p.rows(), p.cols()) + p.adjoint() * p);
    sigma = std::max(sigma, max_singular_value(p));
  }
  const auto feasible = [&](double nu) {
    for (std::size_t k = 0; k < herm.size(); ++k)
      if (kernels::lambda_min(herm[k] - nu * gram[k]) < 0.0) return false;
    return true;
  };
  double lo = -sigma - 1.0;
  double hi = 0.5;
  if (!feasible(lo)) throw Error("passivity index bracket is infeasible");
  if (feasible(hi)) return hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double supply_rate_check(const RealSignal& u, const RealSignal& y, double alpha) {
  const RealSignal hy = hilbert(y);
  RealSignal rotated(std::cos(alpha) * y.samples() - std::sin(alpha) * hy.samples(), y.dt());
  return inner(u, rotated);
}

std::optional<double> reactive_ratio(const RealSignal& u, const RealSignal& y) {
  const double real = inner(u, y);
  const double scale = norm(u) * norm(y);
  if (!(std::abs(real) > 1e-12 * scale)) return std::nullopt;
  return inner(u, hilbert(y)) / real;
}

}  // namespace phasekit
