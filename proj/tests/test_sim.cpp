// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "phasekit/errors.hpp"
#include "phasekit/sim.hpp"
#include "phasekit/sysfile.hpp"

using namespace phasekit;

namespace {

SystemPtr scalar(std::vector<double> num, std::vector<double> den) {
  return make_lti_system(LtiSystem(TransferMatrix(Rational(std::move(num), std::move(den)))).realization());
}

RealSignal step(Eigen::Index n, double dt, double amp = 1.0) {
  return RealSignal(Eigen::MatrixXd::Constant(n, 1, amp), dt);
}

RealSignal zeros(Eigen::Index n, double dt) { return RealSignal::zeros(n, 1, dt); }

}  // namespace

TEST_CASE("first-order step response") {
  const double dt = 1e-3;
  const RealSignal y = simulate(*scalar({1.0}, {1.0, 1.0}), step(10000, dt));
  double err = 0.0;
  for (Eigen::Index k = 0; k < y.length(); ++k) err = std::max(err, std::abs(y.samples()(k, 0) - (1.0 - std::exp(-y.time(k)))));
  CHECK(err <= 1e-8);
}

TEST_CASE("static and zero-input responses") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(500, 2);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = g(rng);
  const RealSignal u(m, 0.01);
  CHECK(simulate(*make_static_map(SectorMap::linear(1.0), 2), u).samples() == u.samples());
  CHECK(simulate(*make_cubic_vsp_system(), RealSignal::zeros(500, 2, 0.01)).samples().isZero(0.0));
}

TEST_CASE("sector maps respect their sectors") {
  const std::vector<SectorMap> maps{SectorMap::piecewise_linear(0.3, 2.0, 0.7), SectorMap::saturation(0.5, 1.5, 1.0),
                                    SectorMap::quantizer(1.0 / 3.0), SectorMap::quantizer(0.8),
                                    SectorMap::oscillating(0.4, 1.1, 3.0)};
  for (const auto& map : maps) {
    const SectorBound s = map.sector();
    for (double x = -20.0; x <= 20.0; x += 0.0137) {
      const double h = map(x);
      CHECK((h - s.a() * x) * (h - s.b() * x) <= 1e-12 * (1.0 + x * x));
    }
    CHECK(map(0.0) == 0.0);
  }
  const SectorMap q = SectorMap::quantizer(1.0 / 3.0);
  CHECK(q(1.0) == doctest::Approx(1.0));
  CHECK(q(0.4) == doctest::Approx(1.0 / 3.0));
  CHECK(q(-0.1) == doctest::Approx(-1.0 / 9.0));
  CHECK_THROWS_AS(SectorMap::linear(1.0).sector(), InputError);
}

TEST_CASE("open loop through a zero controller") {
  const double dt = 1e-3;
  const SystemPtr p = scalar({1.0}, {1.0, 1.0});
  const RealSignal e1 = step(5000, dt);
  const FeedbackTrace tr = simulate_feedback(*p, *make_static_gain(Eigen::MatrixXd::Zero(1, 1)), e1, zeros(5000, dt));
  CHECK((tr.y1.samples() - simulate(*p, e1).samples()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(tr.u2.samples() == tr.y1.samples());
  CHECK(tr.loop_solve == "direct-p");
}

TEST_CASE("unit feedback around a first-order lag") {
  const double dt = 1e-3;
  const FeedbackTrace tr = simulate_feedback(*scalar({1.0}, {1.0, 1.0}), *make_static_gain(Eigen::MatrixXd::Ones(1, 1)),
                                             step(8000, dt), zeros(8000, dt));
  double err = 0.0;
  for (Eigen::Index k = 0; k < tr.y1.length(); ++k)
    err = std::max(err, std::abs(tr.y1.samples()(k, 0) - 0.5 * (1.0 - std::exp(-2.0 * tr.y1.time(k)))));
  CHECK(err <= 1e-6);
}

TEST_CASE("algebraic loops") {
  const double dt = 0.01;
  const SystemPtr ten = make_static_gain(Eigen::MatrixXd::Constant(1, 1, 10.0));
  const RealSignal e1 = step(100, dt, 1.0);
  const RealSignal e2 = step(100, dt, 0.5);
  const FeedbackTrace tr = simulate_feedback(*ten, *ten, e1, e2);
  CHECK(tr.loop_solve == "iterative");
  CHECK(tr.max_residual <= 1e-9);
  CHECK(tr.u1.samples()(50, 0) == doctest::Approx((1.0 - 10.0 * 0.5) / 101.0).epsilon(1e-9));

  const SystemPtr one = make_static_gain(Eigen::MatrixXd::Ones(1, 1));
  const SystemPtr minus = make_static_gain(-Eigen::MatrixXd::Ones(1, 1));
  CHECK_THROWS_AS(simulate_feedback(*one, *minus, e1, e2), WellPosednessError);
}

TEST_CASE("divergence is reported") {
  CHECK_THROWS_AS(simulate(*scalar({1.0}, {1.0, -1.0}), step(40000, 1e-3)), DivergenceError);
}

TEST_CASE("convergence metric") {
  const double dt = 1e-3;
  Eigen::MatrixXd m(20001, 1);
  for (Eigen::Index k = 0; k < m.rows(); ++k) m(k, 0) = std::exp(-static_cast<double>(k) * dt);
  CHECK(convergence_metric(RealSignal(m, dt), 10.0) == doctest::Approx(std::exp(-10.0)).epsilon(1e-9));
  CHECK(convergence_metric(step(100, dt, 3.0), 0.05) == 1.0);
  CHECK(convergence_metric(zeros(100, dt), 0.05) == 0.0);
}

TEST_CASE("bundled pulses") {
  const auto [e1, e2] = bundled_pulses(1e-3, 10.0);
  CHECK(e1.channels() == 2);
  CHECK(e1.samples()(500, 0) == 1.0);
  CHECK(e1.samples()(2500, 1) == 1.0);
  CHECK(e1.samples()(4500, 0) == 0.0);
  CHECK(e2.samples()(4500, 0) == 1.0);
  CHECK(e2.samples()(6500, 1) == 1.0);
  CHECK(e2.samples()(500, 0) == 0.0);
}

TEST_CASE("step halving changes the two-channel loop by little") {
  const LtiSystem p = *load_system(PHASEKIT_DATA_DIR "/plant2x2.json").lti;
  const SystemPtr ps = make_lti_system(p.realization());
  const SystemPtr c = make_cubic_vsp_system();
  // Smooth inputs, so both runs see the same signal and only the integrator differs.
  const auto bumps = [](double dt) {
    const auto n = static_cast<Eigen::Index>(std::llround(30.0 / dt));
    Eigen::MatrixXd m(n, 2);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) * dt;
      m(k, 0) = std::exp(-std::pow(t - 2.0, 2));
      m(k, 1) = -0.5 * std::exp(-std::pow(t - 5.0, 2));
    }
    return RealSignal(m, dt);
  };
  const auto zero = [](double dt) { return RealSignal::zeros(std::llround(30.0 / dt), 2, dt); };
  const FeedbackTrace coarse = simulate_feedback(*ps, *c, bumps(2e-3), zero(2e-3));
  const FeedbackTrace fine = simulate_feedback(*ps, *c, bumps(1e-3), zero(1e-3));
  double diff = 0.0;
  for (Eigen::Index k = 0; k < coarse.y1.length(); ++k)
    diff = std::max(diff, (coarse.y1.samples().row(k) - fine.y1.samples().row(2 * k)).cwiseAbs().maxCoeff());
  CHECK(diff <= 1e-6 * fine.y1.samples().cwiseAbs().maxCoeff());
}

TEST_CASE("user systems") {
  UserSystemSpec spec;
  spec.channels = 1;
  spec.states = 1;
  spec.feedthrough = false;
  spec.f = [](const Eigen::VectorXd&, const Eigen::VectorXd& u, Eigen::VectorXd& dx) { dx = u; };
  spec.g = [](const Eigen::VectorXd& x, const Eigen::VectorXd&, Eigen::VectorXd& y) { y = x; };
  const SystemPtr integ = make_user_system(spec);
  CHECK_FALSE(integ->thread_safe());
  const RealSignal y = simulate(*integ, step(1001, 1e-3));
  CHECK(y.samples()(1000, 0) == doctest::Approx(1.0).epsilon(1e-12));
}
