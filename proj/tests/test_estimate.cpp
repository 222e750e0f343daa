// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "phasekit/errors.hpp"
#include "phasekit/estimate.hpp"
#include "phasekit/phase.hpp"
#include "phasekit/sim.hpp"
#include "phasekit/sysfile.hpp"

using namespace phasekit;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<RealSignal> corpus(int count, Eigen::Index channels, std::uint64_t seed, Eigen::Index length = 20000) {
  CorpusSpec spec = CorpusSpec::defaults(channels, seed);
  spec.count = count;
  spec.length = length;
  return gen_corpus(spec);
}

// Appends `extra` zero samples so slow responses decay inside the window.
std::vector<RealSignal> padded(const std::vector<RealSignal>& in, Eigen::Index extra) {
  std::vector<RealSignal> out;
  for (const auto& u : in) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(u.length() + extra, u.channels());
    m.topRows(u.length()) = u.samples();
    out.emplace_back(std::move(m), u.dt());
  }
  return out;
}

SystemCallback gain(double k) {
  return {[k](const RealSignal& u) { return RealSignal(k * u.samples(), u.dt()); }, true};
}

}  // namespace

TEST_CASE("samples of static gains") {
  const auto c = corpus(20, 1, 4);
  for (const auto& s : empirical_nrange(gain(1.0), c)) {
    const double n2 = s.norm_u * s.norm_u;
    CHECK(std::abs(s.z - 0.5 * n2) <= 1e-9 * n2);
    CHECK_FALSE(s.excluded);
  }
  for (const auto& s : empirical_nrange(gain(2.0), c)) {
    CHECK(std::abs(s.angle()) <= 1e-9);
    CHECK(std::abs(std::abs(s.z) - s.norm_u * s.norm_u) <= 1e-9 * s.norm_u * s.norm_u);
  }
  const auto ph = empirical_phase(empirical_nrange(gain(1.0), c));
  REQUIRE(ph.interval);
  CHECK(std::abs(ph.lo) <= 1e-9);
  CHECK(std::abs(ph.hi) <= 1e-9);
  CHECK_FALSE(ph.origin_in_hull);
}

TEST_CASE("cubic system stays inside its closed-form phase") {
  const SystemPtr c = make_cubic_vsp_system();
  const auto samples = empirical_nrange(SystemCallback::of(*c), corpus(60, 2, 8));
  const PhaseInterval bound = vsp_phase({2.0 / 3.0, 1.0 / 3.0});
  for (const auto& s : samples)
    if (!s.excluded) CHECK(bound.contains(s.angle(), 1e-3));
}

TEST_CASE("quantizer stays inside its sector phase") {
  const SystemPtr q = make_static_map(SectorMap::quantizer(1.0 / 3.0), 1);
  const auto ph = empirical_phase(empirical_nrange(SystemCallback::of(*q), corpus(60, 1, 9)));
  REQUIRE(ph.interval);
  CHECK(PhaseInterval::symmetric(kPi / 6.0).contains(*ph.interval, 1e-6));
}

TEST_CASE("first-order lag spans its tone phases") {
  CorpusSpec spec;
  spec.count = 8;
  spec.dt = 0.01;
  spec.length = 100000;
  ToneFamily tones;
  tones.omega_min = 0.05;
  tones.omega_max = 20.0;
  tones.frequencies = 2;
  spec.families = {{tones, 1.0}};
  const SystemPtr lag = make_lti_system(LtiSystem(TransferMatrix(Rational({1.0}, {1.0, 1.0}))).realization());
  const auto ph = empirical_phase(empirical_nrange(SystemCallback::of(*lag), gen_corpus(spec)));
  REQUIRE(ph.interval);
  CHECK(PhaseInterval(-kPi / 2.0, 0.0).contains(*ph.interval, 1e-6));
  CHECK(ph.hi >= -0.1);
  CHECK(ph.lo <= -1.0);
}

TEST_CASE("empirical passivity margins") {
  const auto c1 = corpus(20, 1, 10);
  const auto m_id = empirical_passivity(c1, c1, 0.5, 0.5);
  CHECK(std::abs(m_id.relative) <= 1e-12);

  const SystemPtr cubic = make_cubic_vsp_system();
  const auto c2 = corpus(60, 2, 11);
  std::vector<RealSignal> y;
  for (const auto& u : c2) y.push_back(simulate(*cubic, u));
  CHECK(empirical_passivity(c2, y, 2.0 / 3.0, 1.0 / 3.0).relative >= -1e-6);
  const double g = empirical_gain(c2, y);
  CHECK(g >= 1.0);
  CHECK(g <= 3.0);

  const SystemPtr p = make_lti_system(load_system(PHASEKIT_DATA_DIR "/plant2x2.json").lti->realization());
  const auto c3 = padded(corpus(60, 2, 12), 160000);
  std::vector<RealSignal> yp;
  for (const auto& u : c3) yp.push_back(simulate(*p, u));
  CHECK(empirical_passivity(c3, yp, -0.4526, -0.4526).relative >= -5e-3);
  CHECK(empirical_passivity(c3, yp, 0.0, 0.0).margin < 0.0);  // not passive
}

TEST_CASE("spread beyond pi yields no interval") {
  std::vector<PhaseSample> s;
  for (int k = 0; k < 3; ++k) s.push_back({static_cast<std::size_t>(k), std::polar(1.0, 2.0 * kPi * k / 3.0), 1.0, 1.0, false});
  const auto ph = empirical_phase(s);
  CHECK_FALSE(ph.interval);
  CHECK(ph.origin_in_hull);
  CHECK(ph.n_used == 3);

  // Wrap-around: angles near +-pi form one short arc.
  std::vector<PhaseSample> w{{0, std::polar(1.0, 3.0), 1.0, 1.0, false}, {1, std::polar(1.0, -3.0), 1.0, 1.0, false}};
  const auto pw = empirical_phase(w);
  REQUIRE(pw.interval);
  CHECK(pw.interval->spread() == doctest::Approx(2.0 * kPi - 6.0));

  std::vector<PhaseSample> none{{0, 0.0, 1.0, 1.0, true}};
  CHECK_THROWS_AS(empirical_phase(none), InputError);
}

TEST_CASE("samples csv") {
  const auto c = corpus(3, 1, 13, 2000);
  const auto samples = empirical_nrange(gain(1.0), c);
  const auto path = std::filesystem::temp_directory_path() / "phasekit_samples.csv";
  write_samples_csv(samples, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "id,re_z,im_z,angle_rad,norm_u,norm_y,excluded");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 3);
  std::filesystem::remove(path);
}
