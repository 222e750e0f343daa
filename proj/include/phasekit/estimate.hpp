// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "phasekit/nrange.hpp"
#include "phasekit/signal.hpp"

namespace phasekit {

class DynamicSystem;

/// Black-box operator u -> y. Callbacks that are not thread_safe are
/// evaluated sequentially.
struct SystemCallback {
  std::function<RealSignal(const RealSignal&)> fn;
  bool thread_safe = true;

  static SystemCallback of(const DynamicSystem& sys);
};

struct PhaseSample {
  std::size_t id = 0;
  std::complex<double> z;  // <u_a, y>
  double norm_u = 0.0;
  double norm_y = 0.0;
  bool excluded = false;  // |z| <= 1e-12 ||u|| ||y||

  double angle() const { return std::arg(z); }
};

/// Samples z_i = <analytic(u_i), y_i> for given input/output pairs.
std::vector<PhaseSample> phase_samples(std::span<const RealSignal> inputs, std::span<const RealSignal> outputs);

/// Runs `sys` on every corpus member and samples its angular numerical range.
std::vector<PhaseSample> empirical_nrange(const SystemCallback& sys, std::span<const RealSignal> corpus);

/// Sample-based inner estimate of the phase; never a certificate.
struct EmpiricalPhase {
  std::optional<PhaseInterval> interval;  // nullopt when the angles spread over more than pi
  double lo = 0.0;                        // angular extent on the minimal-spread branch
  double hi = 0.0;
  std::size_t n_used = 0;
  std::size_t n_excluded = 0;
  /// Convex hull of the normalized points z / (||u|| ||y||), counterclockwise.
  std::vector<std::complex<double>> hull;
  bool origin_in_hull = false;  // origin inside or on the hull
};

/// Throws InputError when every sample is excluded.
EmpiricalPhase empirical_phase(std::span<const PhaseSample> samples);

struct PassivityMargin {
  double margin = 0.0;    // min_i <u,y> - delta ||u||^2 - epsilon ||y||^2
  double relative = 0.0;  // min_i of the same divided by ||u||^2 + ||y||^2
  std::size_t argmin = 0;  // index attaining `relative`
};

PassivityMargin empirical_passivity(std::span<const RealSignal> inputs, std::span<const RealSignal> outputs,
                                    double delta, double epsilon);

/// Empirical lower bound on the L2 gain: max_i ||y_i|| / ||u_i||.
double empirical_gain(std::span<const RealSignal> inputs, std::span<const RealSignal> outputs);

/// CSV `id,re_z,im_z,angle_rad,norm_u,norm_y,excluded`.
void write_samples_csv(std::span<const PhaseSample> samples, const std::filesystem::path& path);

}  // namespace phasekit
