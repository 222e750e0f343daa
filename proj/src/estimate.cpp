// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "phasekit/errors.hpp"
#include "phasekit/io.hpp"
#include "phasekit/kernels.hpp"
#include "phasekit/sim.hpp"

namespace phasekit {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double cross(cd o, cd a, cd b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

// Andrew's monotone chain.
std::vector<cd> convex_hull(std::vector<cd> pts) {
  std::sort(pts.begin(), pts.end(), [](cd a, cd b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<cd> hull(2 * pts.size());
  std::size_t k = 0;
  for (const cd& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool origin_in(const std::vector<cd>& hull) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (cross(hull[i], hull[(i + 1) % hull.size()], cd(0.0, 0.0)) < 0.0) return false;
  return true;
}

}  // namespace

SystemCallback SystemCallback::of(const DynamicSystem& sys) {
  return {[&sys](const RealSignal& u) { return simulate(sys, u); }, sys.thread_safe()};
}

std::vector<PhaseSample> phase_samples(std::span<const RealSignal> inputs, std::span<const RealSignal> outputs) {
  if (inputs.size() != outputs.size()) throw InputError("need one output per input");
  std::vector<PhaseSample> out(inputs.size());
  kernels::for_each_index(inputs.size(), [&](std::size_t i) {
    const RealSignal& u = inputs[i];
    const RealSignal& y = outputs[i];
    if (u.length() != y.length() || u.channels() != y.channels() || u.dt() != y.dt())
      throw InputError("output " + std::to_string(i) + " does not match its input shape");
    if (!y.samples().allFinite()) throw InputError("output " + std::to_string(i) + " is not finite");
    PhaseSample s;
    s.id = i;
    s.z = inner(analytic(u), y);
    s.norm_u = norm(u);
    s.norm_y = norm(y);
    s.excluded = !(std::abs(s.z) > 1e-12 * s.norm_u * s.norm_y);
    out[i] = s;
  });
  return out;
}

std::vector<PhaseSample> empirical_nrange(const SystemCallback& sys, std::span<const RealSignal> corpus) {
  if (!sys.fn) throw InputError("empty system callback");
  const auto outputs = sys.thread_safe ? kernels::map_signals(sys.fn, corpus) : kernels::map_signals_serial(sys.fn, corpus);
  return phase_samples(corpus, outputs);
}

EmpiricalPhase empirical_phase(std::span<const PhaseSample> samples) {
  EmpiricalPhase out;
  std::vector<double> angles;
  std::vector<cd> points;
  for (const auto& s : samples) {
    if (s.excluded) {
      ++out.n_excluded;
      continue;
    }
    angles.push_back(s.angle());
    points.push_back(s.z / (s.norm_u * s.norm_y));
  }
  out.n_used = angles.size();
  if (angles.empty()) throw InputError("every phase sample is excluded");

  // The complement of the largest circular gap is the tightest arc holding all angles.
  std::sort(angles.begin(), angles.end());
  std::size_t start = 0;
  double gap = angles.front() + 2.0 * kPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) {
    if (angles[i] - angles[i - 1] > gap) {
      gap = angles[i] - angles[i - 1];
      start = i;
    }
  }
  const double spread = 2.0 * kPi - gap;
  out.lo = angles[start];
  out.hi = out.lo + spread;
  if (spread <= kPi) out.interval = PhaseInterval(out.lo, out.hi);

  out.hull = convex_hull(points);
  out.origin_in_hull = origin_in(out.hull);
  return out;
}

PassivityMargin empirical_passivity(std::span<const RealSignal> inputs, std::span<const RealSignal> outputs,
                                    double delta, double epsilon) {
  if (inputs.size() != outputs.size() || inputs.empty()) throw InputError("need matching, nonempty input/output sets");
  PassivityMargin best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double uu = inner(inputs[i], inputs[i]);
    const double yy = inner(outputs[i], outputs[i]);
    const double m = inner(inputs[i], outputs[i]) - delta * uu - epsilon * yy;
    const double scale = uu + yy;
    const double rel = scale > 0.0 ? m / scale : 0.0;
    best.margin = std::min(best.margin, m);
    if (rel < best.relative) {
      best.relative = rel;
      best.argmin = i;
    }
  }
  return best;
}

double empirical_gain(std::span<const RealSignal> inputs, std::span<const RealSignal> outputs) {
  if (inputs.size() != outputs.size()) throw InputError("need one output per input");
  double gain = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double nu = norm(inputs[i]);
    if (nu > 0.0) gain = std::max(gain, norm(outputs[i]) / nu);
  }
  return gain;
}

void write_samples_csv(std::span<const PhaseSample> samples, const std::filesystem::path& path) {
  std::string text = "id,re_z,im_z,angle_rad,norm_u,norm_y,excluded\n";
  char line[256];
  for (const auto& s : samples) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", s.id, s.z.real(), s.z.imag(),
                  s.angle(), s.norm_u, s.norm_y, s.excluded ? 1 : 0);
    text += line;
  }
  write_text_atomic(path, text);
}

}  // namespace phasekit
