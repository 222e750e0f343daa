// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phasekit/errors.hpp"
#include "phasekit/nrange.hpp"

using namespace phasekit;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

CMatrix jordan() {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  return a;
}

CMatrix diag(cd a, cd b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("angle helpers") {
  CHECK(wrap_to_pi(kPi) == doctest::Approx(kPi));
  CHECK(wrap_to_pi(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_to_pi(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
  CHECK(unwrap_near(0.1, 4.0 * kPi) == doctest::Approx(4.0 * kPi + 0.1));
}

TEST_CASE("phase interval validation and branch") {
  CHECK_THROWS_AS(PhaseInterval(0.2, 0.1), InputError);
  CHECK_THROWS_AS(PhaseInterval(0.0, kPi + 1e-3), InputError);
  CHECK_THROWS_AS(PhaseInterval(0.0, std::nan("")), InputError);
  const PhaseInterval p(3.0 * kPi / 2.0, 2.0 * kPi);  // shifted onto (-pi, pi]
  CHECK(p.lo() == doctest::Approx(-kPi / 2.0));
  CHECK(p.hi() == doctest::Approx(0.0));
  CHECK(p.contains(-0.3));
  CHECK(p.contains(2.0 * kPi - 0.3));
  CHECK_FALSE(p.contains(0.3));
  CHECK(p.contains(PhaseInterval(-1.0, -0.5)));
  CHECK_FALSE(p.contains(PhaseInterval(-1.0, 0.5)));
  CHECK(p.contains(PhaseInterval(-1.0, 0.5), 0.6));
}

TEST_CASE("boundary of the numerical range") {
  for (const cd& z : nrange_boundary(CMatrix::Identity(3, 3), 16)) CHECK(std::abs(z - 1.0) <= 1e-12);
  for (const cd& z : nrange_boundary(diag(1.0, cd(0, 1)), 32)) {
    CHECK(std::abs(z.real() + z.imag() - 1.0) <= 1e-9);  // on the segment [1, j]
    CHECK(z.real() >= -1e-9);
    CHECK(z.imag() >= -1e-9);
  }
  for (const cd& z : nrange_boundary(jordan(), 64)) CHECK(std::abs(std::abs(z) - 0.5) <= 1e-9);
  CHECK_THROWS_AS(nrange_boundary(CMatrix::Identity(2, 3), 16), InputError);
  CHECK_THROWS_AS(nrange_boundary(CMatrix::Identity(2, 2), 4), InputError);
}

TEST_CASE("matrix phase interval oracles") {
  const auto eye = matrix_phase_interval(CMatrix::Identity(2, 2));
  REQUIRE(eye);
  CHECK(std::abs(eye->lo()) <= 1e-9);
  CHECK(std::abs(eye->hi()) <= 1e-9);

  const auto d = matrix_phase_interval(diag(1.0, cd(0, 1)));
  REQUIRE(d);
  CHECK(std::abs(d->lo()) <= 1e-6);
  CHECK(std::abs(d->hi() - kPi / 2.0) <= 1e-6);

  CHECK_FALSE(matrix_phase_interval(jordan()));
  CHECK_THROWS_AS(matrix_phase_interval(CMatrix::Zero(2, 2)), InputError);

  // A Hermitian indefinite matrix has a range on the real line through 0:
  // phase spread pi.
  const auto h = matrix_phase_interval(diag(1.0, -1.0));
  REQUIRE(h);
  CHECK(h->spread() == doctest::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("phase interval contains sampled x*Ax angles") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = {g(rng), g(rng)};
    a += 2.5 * CMatrix::Identity(3, 3);
    const auto iv = matrix_phase_interval(a);
    if (!iv) continue;
    for (int s = 0; s < 2000; ++s) {
      Eigen::VectorXcd x(3);
      for (int i = 0; i < 3; ++i) x(i) = {g(rng), g(rng)};
      CHECK(iv->contains(std::arg(x.dot(a * x)), 1e-9));
    }
  }
}

TEST_CASE("sector certificates") {
  const auto eye = matrix_sector_certify(CMatrix::Identity(2, 2));
  CHECK(eye.kind == SectorKind::Sectorial);
  CHECK(std::abs(eye.alpha) <= 1e-6);
  CHECK(eye.epsilon == doctest::Approx(0.5).epsilon(1e-6));

  const auto rot = matrix_sector_certify(cd(0, 1) * CMatrix::Identity(2, 2));
  CHECK(rot.kind == SectorKind::Sectorial);
  CHECK(std::abs(rot.alpha + kPi / 2.0) <= 1e-6);
  CHECK(rot.epsilon == doctest::Approx(0.5).epsilon(1e-6));

  CHECK(matrix_sector_certify(jordan()).kind == SectorKind::Indefinite);
  CHECK(matrix_sector_certify(diag(1.0, -1.0)).kind == SectorKind::SemiSectorial);
  CHECK(matrix_sector_certify(CMatrix::Identity(2, 2)).min_eig_profile.size() == 720);
}

TEST_CASE("feasible arc of a scalar rotation") {
  // g(alpha) = cos(alpha + 0.3): feasible on [-pi/2 - 0.3, pi/2 - 0.3].
  const FeasibleArc arc = find_feasible_arc([](double a) { return std::cos(a + 0.3); }, 0.0);
  REQUIRE(arc.feasible);
  CHECK(arc.best == doctest::Approx(-0.3).epsilon(1e-6));
  CHECK(arc.lo == doctest::Approx(-kPi / 2 - 0.3).epsilon(1e-9));
  CHECK(arc.hi == doctest::Approx(kPi / 2 - 0.3).epsilon(1e-9));
  const PhaseInterval rays = arc.rays();
  CHECK(rays.lo() == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(rays.hi() == doctest::Approx(0.3).epsilon(1e-6));

  const FeasibleArc none = find_feasible_arc([](double) { return -1.0; }, 1e-9);
  CHECK_FALSE(none.feasible);
}

TEST_CASE("sectorial epsilon") {
  const CMatrix eye = CMatrix::Identity(2, 2);
  CHECK(max_sectorial_epsilon({&eye}, 0.0, 1e-12) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(max_sectorial_epsilon({&eye}, kPi, 1e-12) == 0.0);
  const CMatrix two = 2.0 * eye;
  CHECK(max_sectorial_epsilon({&eye, &two}, 0.0, 1e-12) == doctest::Approx(0.25).epsilon(1e-9));
}
