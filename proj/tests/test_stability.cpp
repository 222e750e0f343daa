// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phasekit/errors.hpp"
#include "phasekit/stability.hpp"
#include "phasekit/sysfile.hpp"

using namespace phasekit;
constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

namespace {

const FrequencyGrid& grid() {
  static const FrequencyGrid g = FrequencyGrid::logarithmic();
  return g;
}

LtiSystem scalar(std::vector<double> num, std::vector<double> den) {
  return TransferMatrix(Rational(std::move(num), std::move(den)));
}

PhaseInput deg(double lo, double hi, SectorKind kind) { return {PhaseInterval(lo * kDeg, hi * kDeg), kind, "test"}; }

const PhaseInterval kVsp = PhaseInterval::symmetric(19.4712 * kDeg);

}  // namespace

TEST_CASE("small gain") {
  const auto ok = small_gain_check(0.5, 1.9);
  CHECK(ok.pass());
  CHECK(ok.margin("margin") == doctest::Approx(0.05));
  CHECK_FALSE(small_gain_check(60.8331, 1.1).pass());
  CHECK_FALSE(small_gain_check(1.0, 1.0).pass());
  CHECK_THROWS_AS(small_gain_check(-1.0, 1.0), InputError);
}

TEST_CASE("small phase") {
  const auto ref = small_phase_check(deg(-159.925, 19.1142, SectorKind::SemiSectorial),
                                       {kVsp, SectorKind::Sectorial, "vsp-closed-form"});
  CHECK(ref.outcome == Outcome::Pass);
  CHECK(ref.margin("lower_deg") == doctest::Approx(0.6038).epsilon(1e-3));
  CHECK(ref.margin("upper_deg") == doctest::Approx(141.4146).epsilon(1e-4));

  CHECK(small_phase_check(deg(0, 170, SectorKind::Sectorial), deg(0, 20, SectorKind::Sectorial)).outcome ==
        Outcome::Fail);
  const auto edge = small_phase_check(deg(-90, 0, SectorKind::Sectorial), deg(-90, 90, SectorKind::SemiSectorial));
  CHECK(edge.outcome == Outcome::Fail);  // the sum reaches -pi
  CHECK(std::abs(edge.margin("lower_rad")) <= 1e-12);

  CHECK(small_phase_check(deg(-10, 10, SectorKind::SemiSectorial), deg(-10, 10, SectorKind::SemiSectorial)).outcome ==
        Outcome::HypothesisUnmet);
  CHECK(small_phase_check(deg(-10, 10, SectorKind::Sectorial), deg(-10, 10, SectorKind::Indefinite)).outcome ==
        Outcome::HypothesisUnmet);
}

TEST_CASE("index passivity") {
  const auto ref = passivity_index_check({-0.4526, -0.4526}, {2.0 / 3.0, 1.0 / 3.0});
  CHECK(ref.outcome == Outcome::Fail);
  CHECK(ref.margin("delta_p_plus_epsilon_c") < 0.0);
  CHECK(passivity_index_check({0.5, 0.5}, {0.0, 0.0}).pass());
}

TEST_CASE("generalized small phase") {
  const LtiSystem lag = scalar({1.0}, {1.0, 1.0});
  const LtiSystem half = scalar({0.5}, {1.0});
  const auto plain = small_phase_check(
      {lti_phase(lag, grid()).interval.value(), lti_phase(lag, grid()).verdict, "lti"},
      {lti_phase(half, grid()).interval.value(), lti_phase(half, grid()).verdict, "lti"});
  const auto gen = generalized_small_phase_check(lag, half, MultiplierSpec::identity(grid()), grid());
  CHECK(gen.outcome == plain.outcome);
  CHECK(gen.outcome == Outcome::Pass);
  CHECK(gen.margin("lower_rad") == doctest::Approx(plain.margin("lower_rad")).epsilon(1e-9));

  const LtiSystem lag2 = scalar({1.0}, {1.0, 2.0, 1.0});
  CHECK(generalized_small_phase_check(lag2, lag2, MultiplierSpec::identity(grid()), grid()).outcome ==
        Outcome::HypothesisUnmet);

  // Centering P moves its whole phase lag onto Pi C: the sum touches -pi.
  const auto fw = lti_phase_frequencywise(lag2, grid());
  const auto moved = generalized_small_phase_check(lag2, scalar({0.1}, {1.0}), fw.multiplier, grid());
  CHECK(moved.outcome == Outcome::Fail);
  CHECK(std::abs(moved.margin("lower_rad")) <= 1e-3);
}

TEST_CASE("frequency-wise small phase") {
  const LtiSystem lag = scalar({1.0}, {1.0, 1.0});
  CHECK(freqwise_small_phase_check(lag, lag, grid()).pass());
  const LtiSystem lag2 = scalar({1.0}, {1.0, 2.0, 1.0});
  const auto f = freqwise_small_phase_check(lag2, lag2, grid());
  CHECK(f.outcome == Outcome::Fail);
  CHECK(f.margin("lower_omega") == doctest::Approx(grid().omegas.back()));
  const LtiSystem p = *load_system(PHASEKIT_DATA_DIR "/plant2x2.json").lti;
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
  CHECK(freqwise_small_phase_check(p, TransferMatrix::constant(eye), grid()).pass());
}

TEST_CASE("circle and cone criteria") {
  const Rational lag({1.0}, {1.0, 1.0});
  const SectorBound s(0.5, 1.5);
  const auto circle = circle_criterion_check(lag, s, grid());
  CHECK(circle.pass());
  CHECK(circle.margin("min_distance") == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK_FALSE(circle_criterion_check(Rational::constant(-2.0), s, grid()).pass());
  CHECK(phase_cone_check(lag, s, grid()).pass());
  CHECK(phase_cone_check(Rational({1.0}, {1.0, 2.0, 1.0}), s, grid()).outcome == Outcome::Fail);
}

TEST_CASE("cone spans the forbidden disk") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (!(a > 0.0) || !(b > a)) continue;
    const ForbiddenRegion r = ForbiddenRegion::of(SectorBound(a, b));
    CHECK(r.cone_contains_disk());
    CHECK(r.allowed_hi() - r.allowed_lo() == doctest::Approx(2.0 * kPi - 2.0 * r.theta));
  }
}

TEST_CASE("parallel and closed-loop phase bounds") {
  const PhaseInterval s6 = PhaseInterval::symmetric(kPi / 6.0);
  const PhaseInterval sum = parallel_phase(s6, s6, s6);
  CHECK(s6.contains(sum, 1e-15));
  CHECK_THROWS_AS(parallel_phase(PhaseInterval(0.0, kPi / 2.0), s6, s6), InputError);

  const auto [g1, g2] = closed_loop_phase_bound(PhaseInterval(-159.925 * kDeg, 19.1142 * kDeg), kVsp);
  CHECK(PhaseInterval(-159.925 * kDeg, 19.4712 * kDeg).contains(g1, 1e-12));
  CHECK(PhaseInterval(-19.4712 * kDeg, 159.925 * kDeg).contains(g2, 1e-12));
  const auto [z1, z2] = closed_loop_phase_bound(PhaseInterval(0.0, 0.0), PhaseInterval(0.0, 0.0));
  CHECK(z1.spread() == 0.0);
  CHECK(z2.spread() == 0.0);
  CHECK_THROWS_AS(closed_loop_phase_bound(PhaseInterval(0.0, 2.0), PhaseInterval(0.0, 2.0)), InputError);
}
