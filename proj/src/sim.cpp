// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phasekit/errors.hpp"

namespace phasekit {
namespace {

using Eigen::VectorXd;

constexpr double kBlowUp = 1e12;

class LtiDynamics final : public DynamicSystem {
 public:
  explicit LtiDynamics(StateSpace ss) : ss_(std::move(ss)) { ss_.validate(); }
  int channels() const override { return static_cast<int>(ss_.size()); }
  int states() const override { return static_cast<int>(ss_.states()); }
  void f(const VectorXd& x, const VectorXd& u, VectorXd& dx) const override { dx.noalias() = ss_.A * x + ss_.B * u; }
  void g(const VectorXd& x, const VectorXd& u, VectorXd& y) const override { y.noalias() = ss_.C * x + ss_.D * u; }
  bool has_feedthrough() const override { return !ss_.D.isZero(0.0); }
  std::string name() const override { return "lti"; }

 private:
  StateSpace ss_;
};

class CubicVsp final : public DynamicSystem {
 public:
  int channels() const override { return 2; }
  int states() const override { return 2; }
  void f(const VectorXd& x, const VectorXd& u, VectorXd& dx) const override {
    dx.resize(2);
    dx(0) = -x(0) - x(1) - x(0) * x(0) * x(0) + u(0);
    dx(1) = -x(1) + x(0) - x(1) * x(1) * x(1) + u(1);
  }
  void g(const VectorXd& x, const VectorXd& u, VectorXd& y) const override { y = x + u; }
  bool has_feedthrough() const override { return true; }
  std::string name() const override { return "vsp-cubic"; }
};

class StaticMap final : public DynamicSystem {
 public:
  StaticMap(SectorMap map, int channels) : map_(map), channels_(channels) {
    if (channels < 1) throw InputError("static map needs at least one channel");
  }
  int channels() const override { return channels_; }
  int states() const override { return 0; }
  void f(const VectorXd&, const VectorXd&, VectorXd& dx) const override { dx.resize(0); }
  void g(const VectorXd&, const VectorXd& u, VectorXd& y) const override { y = u.unaryExpr(map_); }
  bool has_feedthrough() const override { return true; }
  std::string name() const override { return map_.name(); }

 private:
  SectorMap map_;
  int channels_;
};

class StaticGain final : public DynamicSystem {
 public:
  explicit StaticGain(Eigen::MatrixXd k) : k_(std::move(k)) {
    if (k_.rows() < 1 || k_.rows() != k_.cols()) throw InputError("static gain must be square");
  }
  int channels() const override { return static_cast<int>(k_.rows()); }
  int states() const override { return 0; }
  void f(const VectorXd&, const VectorXd&, VectorXd& dx) const override { dx.resize(0); }
  void g(const VectorXd&, const VectorXd& u, VectorXd& y) const override { y.noalias() = k_ * u; }
  bool has_feedthrough() const override { return !k_.isZero(0.0); }
  std::string name() const override { return "static-gain"; }

 private:
  Eigen::MatrixXd k_;
};

class UserDynamics final : public DynamicSystem {
 public:
  explicit UserDynamics(UserSystemSpec spec) : spec_(std::move(spec)) {
    if (spec_.channels < 1 || spec_.states < 0) throw InputError("invalid user system dimensions");
    if (!spec_.g || (spec_.states > 0 && !spec_.f)) throw InputError("user system needs f and g callbacks");
  }
  int channels() const override { return spec_.channels; }
  int states() const override { return spec_.states; }
  void f(const VectorXd& x, const VectorXd& u, VectorXd& dx) const override {
    if (spec_.states == 0) {
      dx.resize(0);
      return;
    }
    spec_.f(x, u, dx);
  }
  void g(const VectorXd& x, const VectorXd& u, VectorXd& y) const override { spec_.g(x, u, y); }
  bool has_feedthrough() const override { return spec_.feedthrough; }
  bool thread_safe() const override { return spec_.thread_safe; }
  std::string name() const override { return spec_.name; }

 private:
  UserSystemSpec spec_;
};

void check_state(const VectorXd& x, double t) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!std::isfinite(x(i)) || std::abs(x(i)) > kBlowUp) {
      std::ostringstream msg;
      msg << "state diverged at t = " << t;
      throw DivergenceError(msg.str(), t);
    }
}

void check_input(const DynamicSystem& sys, const RealSignal& u) {
  if (u.channels() != sys.channels()) throw InputError("input has the wrong number of channels for " + sys.name());
}

// Solves the per-step loop equations for given states and external inputs.
class LoopSolver {
 public:
  LoopSolver(const DynamicSystem& p, const DynamicSystem& c, const LoopSolveOptions& opts)
      : p_(p), c_(c), opts_(opts) {
    if (!p.has_feedthrough()) {
      mode_ = "direct-p";
    } else if (!c.has_feedthrough()) {
      mode_ = "direct-c";
    } else {
      mode_ = "iterative";
    }
  }

  const std::string& mode() const { return mode_; }

  // Fills u1, u2, y1, y2; `warm` seeds the iteration and is updated. Returns the residual.
  double solve(const VectorXd& xp, const VectorXd& xc, const VectorXd& e1, const VectorXd& e2, VectorXd& warm,
               VectorXd& u1, VectorXd& u2, VectorXd& y1, VectorXd& y2, double t) const {
    if (mode_ == "direct-p") {
      p_.g(xp, e1, y1);  // u-independent
      u2 = e2 + y1;
      c_.g(xc, u2, y2);
      u1 = e1 - y2;
      return 0.0;
    }
    if (mode_ == "direct-c") {
      c_.g(xc, e2, y2);
      u1 = e1 - y2;
      p_.g(xp, u1, y1);
      u2 = e2 + y1;
      return 0.0;
    }
    const auto map = [&](const VectorXd& v) {
      VectorXd yp, yc;
      p_.g(xp, v, yp);
      c_.g(xc, e2 + yp, yc);
      return VectorXd(e1 - yc);
    };
    const auto tolerance = [&](const VectorXd& v) { return opts_.tol * std::max(1.0, v.lpNorm<Eigen::Infinity>()); };

    VectorXd v = warm;
    bool done = false;
    for (int it = 0; it < opts_.max_iter; ++it) {
      const VectorXd tv = map(v);
      if (!tv.allFinite()) break;
      if ((tv - v).lpNorm<Eigen::Infinity>() <= tolerance(v)) {
        v = tv;
        done = true;
        break;
      }
      v = (1.0 - opts_.damping) * v + opts_.damping * tv;
    }
    if (!done) {
      // Newton on F(v) = v - T(v) with a forward-difference Jacobian.
      v = warm;
      const Eigen::Index n = v.size();
      for (int it = 0; it < opts_.max_iter && !done; ++it) {
        const VectorXd fv = v - map(v);
        if (!fv.allFinite()) break;
        if (fv.lpNorm<Eigen::Infinity>() <= tolerance(v)) {
          done = true;
          break;
        }
        Eigen::MatrixXd jac(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
          const double h = 1e-7 * std::max(1.0, std::abs(v(j)));
          VectorXd vh = v;
          vh(j) += h;
          jac.col(j) = ((vh - map(vh)) - fv) / h;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        lu.setThreshold(1e-10);
        if (lu.rank() < n) break;
        v -= lu.solve(fv);
      }
    }
    if (!done) {
      std::ostringstream msg;
      msg << "feedback loop equations have no solution at t = " << t;
      throw WellPosednessError(msg.str(), t);
    }
    warm = v;
    u1 = v;
    p_.g(xp, u1, y1);
    u2 = e2 + y1;
    c_.g(xc, u2, y2);
    return (e1 - y2 - u1).lpNorm<Eigen::Infinity>();
  }

 private:
  const DynamicSystem& p_;
  const DynamicSystem& c_;
  LoopSolveOptions opts_;
  std::string mode_;
};

}  // namespace

SystemPtr make_lti_system(const StateSpace& ss) { return std::make_shared<LtiDynamics>(ss); }
SystemPtr make_cubic_vsp_system() { return std::make_shared<CubicVsp>(); }
SystemPtr make_static_map(const SectorMap& map, int channels) { return std::make_shared<StaticMap>(map, channels); }
SystemPtr make_static_gain(const Eigen::MatrixXd& k) { return std::make_shared<StaticGain>(k); }
SystemPtr make_user_system(UserSystemSpec spec) { return std::make_shared<UserDynamics>(std::move(spec)); }

SectorMap SectorMap::linear(double k) {
  if (!std::isfinite(k)) throw InputError("gain must be finite");
  return {Kind::Linear, k, k, 0.0};
}

SectorMap SectorMap::piecewise_linear(double a, double b, double knee) {
  SectorBound check(a, b);
  if (!(knee > 0.0)) throw InputError("knee must be positive");
  return {Kind::PiecewiseLinear, a, b, knee};
}

SectorMap SectorMap::saturation(double a, double b, double level) {
  SectorBound check(a, b);
  if (!(level > 0.0)) throw InputError("saturation level must be positive");
  return {Kind::Saturation, a, b, level};
}

SectorMap SectorMap::quantizer(double rho) {
  const SectorBound s = quantizer_sector({rho});
  return {Kind::Quantizer, s.a(), s.b(), rho};
}

SectorMap SectorMap::oscillating(double a, double b, double freq) {
  SectorBound check(a, b);
  if (!(freq > 0.0)) throw InputError("frequency must be positive");
  return {Kind::Oscillating, a, b, freq};
}

double SectorMap::operator()(double x) const {
  switch (kind_) {
    case Kind::Linear:
      return a_ * x;
    case Kind::PiecewiseLinear: {
      const double m = std::abs(x);
      if (m <= p_) return b_ * x;
      return std::copysign(b_ * p_ + a_ * (m - p_), x);
    }
    case Kind::Saturation:
      return a_ * x + (b_ - a_) * std::clamp(x, -p_, p_);
    case Kind::Quantizer: {
      if (x == 0.0) return 0.0;
      const double m = std::abs(x);
      const double c = 0.5 * (1.0 + p_);
      // h = rho^i on (c rho^i, c rho^(i-1)]
      const double i = std::floor(std::log(m / c) / std::log(p_)) + 1.0;
      return std::copysign(std::pow(p_, i), x);
    }
    case Kind::Oscillating:
      return x * (0.5 * (a_ + b_) + 0.5 * (b_ - a_) * std::sin(p_ * x));
  }
  return 0.0;
}

SectorBound SectorMap::sector() const {
  if (kind_ == Kind::Linear) throw InputError("a linear map has a degenerate sector");
  return {a_, b_};
}

std::string SectorMap::name() const {
  switch (kind_) {
    case Kind::Linear: return "linear";
    case Kind::PiecewiseLinear: return "piecewise-linear";
    case Kind::Saturation: return "saturation";
    case Kind::Quantizer: return "quantizer";
    case Kind::Oscillating: return "oscillating";
  }
  return "map";
}

RealSignal simulate(const DynamicSystem& sys, const RealSignal& u) {
  check_input(sys, u);
  const Eigen::Index steps = u.length();
  const double dt = u.dt();
  const auto& us = u.samples();
  Eigen::MatrixXd out(steps, sys.channels());
  VectorXd x = VectorXd::Zero(sys.states());
  VectorXd y, k1, k2, k3, k4;
  for (Eigen::Index k = 0; k < steps; ++k) {
    const VectorXd uk = us.row(k).transpose();
    sys.g(x, uk, y);
    out.row(k) = y.transpose();
    if (k + 1 == steps || sys.states() == 0) continue;
    const VectorXd un = us.row(k + 1).transpose();
    const VectorXd uh = 0.5 * (uk + un);
    sys.f(x, uk, k1);
    sys.f(x + 0.5 * dt * k1, uh, k2);
    sys.f(x + 0.5 * dt * k2, uh, k3);
    sys.f(x + dt * k3, un, k4);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_state(x, u.time(k + 1));
  }
  if (!out.allFinite()) throw DivergenceError("output is not finite", u.duration());
  return {std::move(out), dt};
}

FeedbackTrace simulate_feedback(const DynamicSystem& p, const DynamicSystem& c, const RealSignal& e1,
                                const RealSignal& e2, const LoopSolveOptions& opts) {
  if (p.channels() != c.channels()) throw InputError("P and C must have the same number of channels");
  check_input(p, e1);
  check_input(c, e2);
  if (e1.length() != e2.length() || e1.dt() != e2.dt()) throw InputError("e1 and e2 must share length and dt");

  const LoopSolver loop(p, c, opts);
  const Eigen::Index steps = e1.length();
  const Eigen::Index n = p.channels();
  const double dt = e1.dt();
  const int np = p.states();
  const int nc = c.states();

  Eigen::MatrixXd u1s(steps, n), u2s(steps, n), y1s(steps, n), y2s(steps, n);
  VectorXd xp = VectorXd::Zero(np), xc = VectorXd::Zero(nc);
  VectorXd warm = VectorXd::Zero(n);
  VectorXd u1, u2, y1, y2;
  double max_residual = 0.0;

  // Derivative of the joint state z = [xp; xc] at external inputs (a, b).
  VectorXd dp, dc;
  const auto deriv = [&](const VectorXd& z, const VectorXd& a, const VectorXd& b, double t) {
    const VectorXd zp = z.head(np), zc = z.tail(nc);
    VectorXd w1, w2, v1, v2;
    loop.solve(zp, zc, a, b, warm, w1, w2, v1, v2, t);
    p.f(zp, w1, dp);
    c.f(zc, w2, dc);
    VectorXd dz(np + nc);
    dz << dp, dc;
    return dz;
  };

  VectorXd z = VectorXd::Zero(np + nc);
  for (Eigen::Index k = 0; k < steps; ++k) {
    const double t = e1.time(k);
    const VectorXd a = e1.samples().row(k).transpose();
    const VectorXd b = e2.samples().row(k).transpose();
    xp = z.head(np);
    xc = z.tail(nc);
    max_residual = std::max(max_residual, loop.solve(xp, xc, a, b, warm, u1, u2, y1, y2, t));
    u1s.row(k) = u1.transpose();
    u2s.row(k) = u2.transpose();
    y1s.row(k) = y1.transpose();
    y2s.row(k) = y2.transpose();
    if (k + 1 == steps || np + nc == 0) continue;

    const VectorXd an = e1.samples().row(k + 1).transpose();
    const VectorXd bn = e2.samples().row(k + 1).transpose();
    const VectorXd ah = 0.5 * (a + an), bh = 0.5 * (b + bn);
    const VectorXd k1 = deriv(z, a, b, t);
    const VectorXd k2 = deriv(z + 0.5 * dt * k1, ah, bh, t + 0.5 * dt);
    const VectorXd k3 = deriv(z + 0.5 * dt * k2, ah, bh, t + 0.5 * dt);
    const VectorXd k4 = deriv(z + dt * k3, an, bn, t + dt);
    z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_state(z, t + dt);
  }

  FeedbackTrace trace{RealSignal(std::move(u1s), dt), RealSignal(std::move(u2s), dt), RealSignal(std::move(y1s), dt),
                      RealSignal(std::move(y2s), dt), max_residual, loop.mode()};
  return trace;
}

double convergence_metric(const RealSignal& x, double t_after) {
  if (!(t_after >= 0.0) || !(t_after < x.duration())) throw InputError("t_after must lie inside the signal");
  const auto abs = x.samples().cwiseAbs();
  const double peak = abs.maxCoeff();
  if (peak == 0.0) return 0.0;
  const auto first = static_cast<Eigen::Index>(std::ceil(t_after / x.dt() - 1e-9));
  return abs.bottomRows(x.length() - first).maxCoeff() / peak;
}

std::pair<RealSignal, RealSignal> bundled_pulses(double dt, double duration) {
  if (!(dt > 0.0) || !(duration > 8.0)) throw InputError("pulses need dt > 0 and duration > 8 s");
  const auto steps = static_cast<Eigen::Index>(std::llround(duration / dt));
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(steps, 2), e2 = Eigen::MatrixXd::Zero(steps, 2);
  for (Eigen::Index k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const auto on = [t](double from) { return t >= from && t <= from + 1.0; };
    if (on(0.0)) e1(k, 0) = 1.0;
    if (on(2.0)) e1(k, 1) = 1.0;
    if (on(4.0)) e2(k, 0) = 1.0;
    if (on(6.0)) e2(k, 1) = 1.0;
  }
  return {RealSignal(std::move(e1), dt), RealSignal(std::move(e2), dt)};
}

}  // namespace phasekit
