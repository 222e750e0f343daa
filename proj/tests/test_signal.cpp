// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>

#include "phasekit/errors.hpp"
#include "phasekit/signal.hpp"

using namespace phasekit;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

RealSignal tone(double hz, Eigen::Index n, double dt, bool sine = false) {
  Eigen::MatrixXd m(n, 1);
  for (Eigen::Index t = 0; t < n; ++t) {
    const double x = 2.0 * kPi * hz * static_cast<double>(t) * dt;
    m(t, 0) = sine ? std::sin(x) : std::cos(x);
  }
  return {m, dt};
}

std::vector<RealSignal> small_corpus(int count, std::uint64_t seed, Eigen::Index channels = 1) {
  CorpusSpec spec = CorpusSpec::defaults(channels, seed);
  spec.count = count;
  spec.length = 4096;
  spec.dt = 1e-2;
  return gen_corpus(spec);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("hilbert maps an integer-period cosine to the sine") {
  const double dt = 1.0 / 512.0;
  const RealSignal h = hilbert(tone(5.0, 4096, dt));
  const RealSignal s = tone(5.0, 4096, dt, true);
  const double rms = std::sqrt((h.samples() - s.samples()).squaredNorm() / 4096.0);
  CHECK(rms <= 1e-8);
}

TEST_CASE("analytic cosine is half the complex exponential") {
  const double dt = 1.0 / 512.0;
  const ComplexSignal ua = analytic(tone(5.0, 4096, dt));
  double err = 0.0;
  for (Eigen::Index t = 0; t < 4096; ++t) {
    const cd want = 0.5 * std::polar(1.0, 2.0 * kPi * 5.0 * static_cast<double>(t) * dt);
    err = std::max(err, std::abs(ua.samples()(t, 0) - want));
  }
  CHECK(err <= 1e-8);
}

TEST_CASE("zero maps to zero") {
  const RealSignal z = RealSignal::zeros(128, 2, 0.1);
  CHECK(hilbert(z).samples().isZero(0.0));
  CHECK(analytic(z).samples().isZero(0.0));
}

TEST_CASE("operator identities on a seeded corpus") {
  const auto corpus = small_corpus(24, 7);
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    const RealSignal& u = corpus[i];
    const RealSignal& v = corpus[i + 1];
    const double nu = norm(u);
    const RealSignal hu = hilbert(u);
    const RealSignal hv = hilbert(v);
    CHECK(rel(norm(hu), nu) <= 1e-9);
    CHECK((hilbert(hu).samples() + u.samples()).norm() * std::sqrt(u.dt()) <= 1e-9 * nu);
    CHECK(std::abs(inner(u, hu)) <= 1e-9 * nu * nu);
    CHECK(std::abs(inner(hu, v) + inner(u, hv)) <= 1e-9 * nu * norm(v));

    const ComplexSignal ua = analytic(u);
    const ComplexSignal va = analytic(v);
    const double scale = nu * norm(v);
    CHECK(rel(norm(ua) * norm(ua), 0.5 * nu * nu) <= 1e-9);
    CHECK(std::abs(inner(ua, v) - inner(ua, va)) <= 1e-9 * scale);
    CHECK(std::abs(inner(ua, v) - std::conj(inner(va, u))) <= 1e-9 * scale);
  }
}

TEST_CASE("Parseval") {
  for (const auto& u : small_corpus(8, 3, 2)) CHECK(rel(spectral_energy(u), norm(u) * norm(u)) <= 1e-9);
}

TEST_CASE("odd lengths are zero-padded and keep their length") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(101, 1);
  const RealSignal h = hilbert(RealSignal(m, 0.1));
  CHECK(h.length() == 101);
  CHECK(h.samples().allFinite());
}

TEST_CASE("inner product conventions") {
  const auto corpus = small_corpus(2, 11);
  const ComplexSignal u(corpus[0]);
  const double n2 = norm(corpus[0]) * norm(corpus[0]);
  CHECK(std::abs(inner(u, u) - n2) <= 1e-12 * n2);
  const cd j(0.0, 1.0);
  ComplexSignal ju(u.samples() * j, u.dt());
  CHECK(std::abs(inner(ju, u) + j * n2) <= 1e-12 * n2);  // conjugate-linear in the first slot
  CHECK_THROWS_AS(inner(corpus[0], RealSignal::zeros(10, 1, corpus[0].dt())), InputError);
  CHECK_THROWS_AS(inner(corpus[0], RealSignal(corpus[1].samples(), 2.0 * corpus[1].dt())), InputError);
}

TEST_CASE("non-finite samples are rejected") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(8, 1);
  m(3, 0) = std::nan("");
  CHECK_THROWS_AS(RealSignal(m, 0.1), InputError);
  CHECK_THROWS_AS(RealSignal(Eigen::MatrixXd::Ones(8, 1), 0.0), InputError);
}

TEST_CASE("truncation") {
  const auto corpus = small_corpus(4, 5);
  const RealSignal& u = corpus[2];
  CHECK(truncate(u, u.duration()).samples() == u.samples());
  CHECK(truncate(u, 0.0).samples().bottomRows(u.length() - 1).isZero(0.0));
  double prev = 0.0;
  for (double t = 0.0; t <= u.duration(); t += u.duration() / 17.0) {
    const double n = norm(truncate(u, t));
    CHECK(n >= prev);
    prev = n;
  }
  CHECK_THROWS_AS(truncate(u, -1.0), InputError);
}

TEST_CASE("corpus is deterministic, zero-mean and DC/Nyquist-free") {
  CorpusSpec spec = CorpusSpec::defaults(2, 42);
  spec.length = 2048;
  const auto a = gen_corpus(spec);
  const auto b = gen_corpus(spec);
  REQUIRE(a.size() == 200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].samples() == b[i].samples());
    CHECK(a[i].channels() == 2);
    const double scale = a[i].samples().cwiseAbs().maxCoeff();
    CHECK(scale > 0.0);
    for (Eigen::Index c = 0; c < 2; ++c) CHECK(std::abs(a[i].samples().col(c).mean()) <= 1e-12 * scale);
    CHECK((project_dc_nyquist(a[i]).samples() - a[i].samples()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
  CorpusSpec other = spec;
  other.seed = 43;
  CHECK(gen_corpus(other)[0].samples() != a[0].samples());
}

TEST_CASE("band-limited noise has no energy above its cutoff") {
  CorpusSpec spec;
  spec.count = 3;
  spec.length = 2048;
  spec.dt = 1e-2;
  const double cutoff = 3.0;  // rad/s
  spec.families = {{NoiseFamily{cutoff, cutoff}, 1.0}};
  for (const auto& u : gen_corpus(spec)) {
    const std::size_t n = static_cast<std::size_t>(u.length());
    // Direct DFT as the oracle.
    double total = 0.0;
    double above = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
      cd acc(0.0);
      for (std::size_t t = 0; t < n; ++t)
        acc += u.samples()(static_cast<Eigen::Index>(t), 0) *
               std::polar(1.0, -2.0 * kPi * static_cast<double>(k * t % n) / static_cast<double>(n));
      const double w = 2.0 * kPi * static_cast<double>(k) / (static_cast<double>(n) * u.dt());
      total += std::norm(acc);
      if (w > cutoff) above += std::norm(acc);
    }
    CHECK(above <= 1e-10 * total);
  }
}

TEST_CASE("csv round trip") {
  const auto corpus = small_corpus(1, 9, 3);
  const auto path = std::filesystem::temp_directory_path() / "phasekit_signal_roundtrip.csv";
  write_csv(corpus[0], path);
  const RealSignal back = read_csv(path);
  CHECK(back.channels() == 3);
  CHECK(std::abs(back.dt() - corpus[0].dt()) <= 1e-12);
  CHECK((back.samples() - corpus[0].samples()).cwiseAbs().maxCoeff() <= 1e-14 * corpus[0].samples().cwiseAbs().maxCoeff());
  std::filesystem::remove(path);
}
