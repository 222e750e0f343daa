// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "phasekit/lti.hpp"
#include "phasekit/phase.hpp"
#include "phasekit/signal.hpp"

namespace phasekit {

/// x' = f(x, u), y = g(x, u), square (as many outputs as inputs).
/// Implementations hold no mutable state, so one instance may be simulated
/// from several threads unless thread_safe() says otherwise.
class DynamicSystem {
 public:
  virtual ~DynamicSystem() = default;

  virtual int channels() const = 0;
  virtual int states() const = 0;
  virtual void f(const Eigen::VectorXd& x, const Eigen::VectorXd& u, Eigen::VectorXd& dx) const = 0;
  virtual void g(const Eigen::VectorXd& x, const Eigen::VectorXd& u, Eigen::VectorXd& y) const = 0;
  /// Whether y depends on u directly.
  virtual bool has_feedthrough() const = 0;
  virtual bool thread_safe() const { return true; }
  virtual std::string name() const = 0;
};

using SystemPtr = std::shared_ptr<const DynamicSystem>;

SystemPtr make_lti_system(const StateSpace& ss);

/// x1' = -x1 - x2 - x1^3 + u1, x2' = -x2 + x1 - x2^3 + u2, y = x + u.
/// Very strictly passive with delta = 2/3, epsilon = 1/3.
SystemPtr make_cubic_vsp_system();

/// Scalar static map applied to every channel.
class SectorMap {
 public:
  enum class Kind { Linear, PiecewiseLinear, Saturation, Quantizer, Oscillating };

  /// h(x) = k x.
  static SectorMap linear(double k);
  /// Slope b on |x| <= knee, slope a beyond.
  static SectorMap piecewise_linear(double a, double b, double knee);
  /// a x + (b - a) clip(x, -level, level).
  static SectorMap saturation(double a, double b, double level);
  /// Logarithmic quantizer with levels rho^i.
  static SectorMap quantizer(double rho);
  /// x ((a+b)/2 + (b-a)/2 sin(freq x)).
  static SectorMap oscillating(double a, double b, double freq);

  double operator()(double x) const;
  Kind kind() const noexcept { return kind_; }
  /// Tightest sector the map is guaranteed to lie in. Throws InputError for
  /// linear maps (a degenerate sector).
  SectorBound sector() const;
  std::string name() const;

 private:
  SectorMap(Kind kind, double a, double b, double p) : kind_(kind), a_(a), b_(b), p_(p) {}
  Kind kind_;
  double a_;
  double b_;
  double p_;
};

SystemPtr make_static_map(const SectorMap& map, int channels);
SystemPtr make_static_gain(const Eigen::MatrixXd& k);

/// System from user callbacks.
struct UserSystemSpec {
  std::string name = "user";
  int channels = 1;
  int states = 0;
  std::function<void(const Eigen::VectorXd&, const Eigen::VectorXd&, Eigen::VectorXd&)> f;
  std::function<void(const Eigen::VectorXd&, const Eigen::VectorXd&, Eigen::VectorXd&)> g;
  bool feedthrough = true;
  bool thread_safe = false;
};
SystemPtr make_user_system(UserSystemSpec spec);

/// Fixed-step RK4 from the zero state; the input is interpolated linearly at
/// half steps. Throws DivergenceError on a non-finite or exploding state.
RealSignal simulate(const DynamicSystem& sys, const RealSignal& u);

struct LoopSolveOptions {
  double damping = 0.5;
  double tol = 1e-10;
  int max_iter = 50;
};

struct FeedbackTrace {
  RealSignal u1, u2, y1, y2;
  /// Largest loop-equation residual over all steps (0 for direct ordering).
  double max_residual = 0.0;
  std::string loop_solve;  // "direct-p", "direct-c", "iterative"
};

/// u1 = e1 - y2, u2 = e2 + y1, y1 = P u1, y2 = C u2, from zero initial states.
/// Direct ordering when P (else C) has no feedthrough; otherwise a damped
/// fixed-point iteration with a Newton fallback. Throws WellPosednessError when
/// the loop equations cannot be solved and DivergenceError on blow-up.
FeedbackTrace simulate_feedback(const DynamicSystem& p, const DynamicSystem& c, const RealSignal& e1,
                                const RealSignal& e2, const LoopSolveOptions& opts = {});

/// max_{t >= t_after} |x(t)| / max_t |x(t)| over all channels; 0 for a zero signal.
double convergence_metric(const RealSignal& x, double t_after);

/// Two-channel unit rectangular pulses: e1 = [1,0] on [0,1] + [0,1] on [2,3],
/// e2 likewise on [4,5] and [6,7].
std::pair<RealSignal, RealSignal> bundled_pulses(double dt, double duration);

}  // namespace phasekit
