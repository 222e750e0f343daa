// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "phasekit/lti.hpp"
#include "phasekit/nrange.hpp"
#include "phasekit/signal.hpp"

namespace phasekit {

struct Disk {
  std::complex<double> center;
  double radius = 0.0;
};

/// Static nonlinearity sector (h(x) - a x)(h(x) - b x) <= 0 with b > a > 0.
class SectorBound {
 public:
  SectorBound(double a, double b);
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  /// Graph disk: center (a+b)/2, radius (b-a)/2.
  Disk disk() const;
  /// Circle-criterion disk D(-1/a, -1/b).
  Disk forbidden_disk() const;

 private:
  double a_;
  double b_;
};

struct QuantizerParams {
  double rho = 0.5;
};

struct PassivityIndices {
  double delta = 0.0;
  double epsilon = 0.0;
};

/// Sampled scalar multiplier Pi(j omega) on omega >= 0, unit modulus, extended to
/// negative frequencies by conjugation.
struct MultiplierSpec {
  std::vector<double> omegas;  // ascending, >= 0
  std::vector<std::complex<double>> values;
  std::optional<std::complex<double>> at_infinity;

  static MultiplierSpec identity(const FrequencyGrid& grid);
  /// Throws InputError unless sizes match, frequencies ascend and |Pi| = 1 within 1e-12.
  void validate() const;
  /// Pi(j omega); the phase is interpolated linearly between samples.
  std::complex<double> at(double omega) const;
};

struct FrequencyPhase {
  double omega = 0.0;  // +infinity for the high-frequency limit node
  std::optional<PhaseInterval> interval;  // nullopt when the node is indefinite
};

struct SystemPhaseReport {
  SectorKind verdict = SectorKind::Indefinite;
  std::optional<PhaseInterval> interval;  // envelope of the per-frequency intervals
  std::optional<PhaseInterval> arc_interval;  // supporting rays of the global alpha arc
  double alpha = 0.0;
  double epsilon = 0.0;
  double min_eig = 0.0;  // max over alpha of the normalized min eigenvalue
  std::vector<FrequencyPhase> per_frequency;
};

/// One frequency sample. A `direction` node carries only the direction of
/// P(j omega) as omega -> infinity (strictly proper systems); it constrains the
/// phase but not the quadratic sectoriality margin.
struct PhaseNode {
  double omega = 0.0;
  CMatrix value;
  bool direction = false;
};

/// Grid nodes plus the omega -> infinity node of `sys`.
std::vector<PhaseNode> phase_nodes(const LtiSystem& sys, const FrequencyGrid& grid);

/// Phase of the closed set of sampled responses.
SystemPhaseReport phase_of_nodes(std::span<const PhaseNode> nodes, double tol = kDefaultTol);

/// Phi(P) for a stable LTI system. Throws UnstableError.
SystemPhaseReport lti_phase(const LtiSystem& sys, const FrequencyGrid& grid, double tol = kDefaultTol);

/// Phase of Pi^* P (conjugate = false) or Pi P (conjugate = true).
SystemPhaseReport lti_multiplier_phase(const LtiSystem& sys, const MultiplierSpec& pi, const FrequencyGrid& grid,
                                       bool conjugate, double tol = kDefaultTol);

struct FrequencywiseReport {
  std::vector<FrequencyPhase> per_frequency;  // grid nodes only
  MultiplierSpec multiplier;                  // Pi = e^{j phi_c(omega)}
  double delta = 0.0;                         // min over the grid of lambda_min(He(Pi^* P))
};

/// Per-frequency phases and the centering multiplier. Throws IndefiniteError
/// when some node has no phase.
FrequencywiseReport lti_phase_frequencywise(const LtiSystem& sys, const FrequencyGrid& grid,
                                            double tol = kDefaultTol);

struct SectorPhase {
  PhaseInterval interval;
  Disk disk;
};

SectorPhase sector_phase(const SectorBound& bound);
SectorBound quantizer_sector(const QuantizerParams& q);
/// +-arcsin(sqrt(1 - 4 delta epsilon)); needs delta, epsilon > 0 and delta epsilon <= 1/4.
PhaseInterval vsp_phase(const PassivityIndices& idx);
/// Indices of a sector nonlinearity: delta = ab/(a+b), epsilon = 1/(a+b).
PassivityIndices sector_indices(const SectorBound& bound);

/// Largest nu with He(P) - nu (I + P^*P) >= 0 at every grid node and at the
/// high-frequency limit.
double lti_passivity_index(const LtiSystem& sys, const FrequencyGrid& grid);

/// <u, cos(alpha) y - sin(alpha) H y>.
double supply_rate_check(const RealSignal& u, const RealSignal& y, double alpha);

/// <u, H y> / <u, y>; nullopt when |<u, y>| <= 1e-12 ||u|| ||y||.
std::optional<double> reactive_ratio(const RealSignal& u, const RealSignal& y);

}  // namespace phasekit
