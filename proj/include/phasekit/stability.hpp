// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "phasekit/lti.hpp"
#include "phasekit/nrange.hpp"
#include "phasekit/phase.hpp"

namespace phasekit {

enum class Outcome { Pass, Fail, HypothesisUnmet };

const char* to_string(Outcome outcome);

struct Margin {
  std::string name;
  double value = 0.0;
};

struct StabilityVerdict {
  std::string criterion;
  Outcome outcome = Outcome::Fail;
  std::vector<Margin> margins;
  std::vector<std::string> provenance;
  /// True when some input is a sampled estimate rather than a certificate.
  bool indicative = false;
  std::string note;

  bool pass() const noexcept { return outcome == Outcome::Pass; }
  /// Value of the named margin; throws std::out_of_range when absent.
  double margin(const std::string& name) const;
};

/// Sums of phases within this distance of +-pi count as equality (a fail for
/// the strict small phase inequalities).
inline constexpr double kBoundaryBand = 1e-12;

/// A phase interval together with its hypothesis class and where it came from
/// ("lti-certified", "sector-closed-form", "vsp-closed-form", "empirical", ...).
struct PhaseInput {
  PhaseInterval interval;
  SectorKind kind = SectorKind::SemiSectorial;
  std::string provenance;
};

StabilityVerdict small_gain_check(double gain_p, double gain_c);

StabilityVerdict small_phase_check(const PhaseInput& p, const PhaseInput& c);

/// Index passivity: delta_p + epsilon_c > 0 and delta_c + epsilon_p > 0.
StabilityVerdict passivity_index_check(const PassivityIndices& p, const PassivityIndices& c);

/// Small phase test on the Pi-phase of P (from Pi^* P) and the Pi^*-phase of C (from Pi C).
StabilityVerdict generalized_small_phase_check(const LtiSystem& p, const LtiSystem& c, const MultiplierSpec& pi,
                                               const FrequencyGrid& grid, double tol = kDefaultTol);

/// Per-frequency small phase test over the finite grid nodes.
StabilityVerdict freqwise_small_phase_check(const LtiSystem& p, const LtiSystem& c, const FrequencyGrid& grid,
                                            double tol = kDefaultTol);

/// Forbidden disk D(-1/a, -1/b) and the cone it spans from the origin.
struct ForbiddenRegion {
  Disk disk;
  double theta = 0.0;  // arcsin((b-a)/(b+a)); allowed angles (theta - pi, pi - theta)

  static ForbiddenRegion of(const SectorBound& bound);
  // The allowed cone is wider than pi, so it is not a PhaseInterval.
  double allowed_lo() const { return theta - std::numbers::pi; }
  double allowed_hi() const { return std::numbers::pi - theta; }
  /// Whether the closed cone {|angle - pi| <= theta} contains the disk.
  bool cone_contains_disk() const;
};

StabilityVerdict circle_criterion_check(const Rational& p, const SectorBound& bound, const FrequencyGrid& grid,
                                        double min_distance = 1e-6);

StabilityVerdict phase_cone_check(const Rational& p, const SectorBound& bound, const FrequencyGrid& grid,
                                  double tol = kDefaultTol);

/// Phase bound of the sum of two systems whose phases lie in `target`:
/// the hull of both intervals. Throws InputError when the target spread is not
/// in (0, pi) or an interval leaves the target.
PhaseInterval parallel_phase(const PhaseInterval& a, const PhaseInterval& b, const PhaseInterval& target);

/// Bounds on the phases of the closed-loop maps e1 -> y1 and e2 -> y2.
/// Throws InputError when hi_P + hi_C > pi or lo_P + lo_C < -pi.
std::pair<PhaseInterval, PhaseInterval> closed_loop_phase_bound(const PhaseInterval& p, const PhaseInterval& c);

}  // namespace phasekit
