// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

// The OpenMP kernels must agree with their serial references bit for bit:
// every parallel loop writes disjoint slots and reductions are order-free.

#include <doctest.h>

#include <atomic>
#include <random>

#include <omp.h>

#include "phasekit/kernels.hpp"
#include "phasekit/lti.hpp"
#include "phasekit/signal.hpp"
#include "phasekit/sim.hpp"
#include "phasekit/sysfile.hpp"

using namespace phasekit;

namespace {

std::vector<CMatrix> random_nodes(int count, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<CMatrix> out;
  for (int k = 0; k < count; ++k) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("for_each_index visits every index once") {
  for (std::size_t n : {0u, 1u, 7u, 1000u}) {
    std::vector<std::atomic<int>> hits(n);
    kernels::for_each_index(n, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("frequency sweep parity") {
  const LtiSystem p = *load_system(PHASEKIT_DATA_DIR "/plant2x2.json").lti;
  const FrequencyGrid grid = FrequencyGrid::logarithmic(1e-3, 1e4, 500);
  const auto a = kernels::sweep_response(p, grid.omegas);
  const auto b = kernels::sweep_response_serial(p, grid.omegas);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("rotated minimum eigenvalue parity") {
  const auto nodes = random_nodes(300, 3, 1);
  for (double alpha : {-3.0, -1.0, 0.0, 0.4, 2.9}) {
    CHECK(kernels::min_lambda_rotated(nodes, alpha) == kernels::min_lambda_rotated_serial(nodes, alpha));
  }
  // The minimum over nodes is the minimum of the per-node values.
  double want = 1e300;
  for (const auto& m : nodes) want = std::min(want, kernels::lambda_min_rotated(m, 0.4));
  CHECK(kernels::min_lambda_rotated(nodes, 0.4) == want);
}

TEST_CASE("max singular value parity") {
  const auto nodes = random_nodes(300, 4, 2);
  const auto a = kernels::max_singular(nodes);
  const auto b = kernels::max_singular_serial(nodes);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  CHECK(a.first == doctest::Approx(max_singular_value(nodes[a.second])));
}

TEST_CASE("signal map parity") {
  CorpusSpec spec = CorpusSpec::defaults(2, 5);
  spec.count = 12;
  spec.length = 3000;
  const auto corpus = gen_corpus(spec);
  const SystemPtr c = make_cubic_vsp_system();
  const kernels::SignalMap fn = [&](const RealSignal& u) { return simulate(*c, u); };
  const auto a = kernels::map_signals(fn, corpus);
  const auto b = kernels::map_signals_serial(fn, corpus);
  REQUIRE(a.size() == corpus.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].samples() == b[k].samples());
}

TEST_CASE("corpus generation is independent of the thread count") {
  CorpusSpec spec = CorpusSpec::defaults(1, 77);
  spec.count = 40;
  spec.length = 1024;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto a = gen_corpus(spec);
  omp_set_num_threads(4);
  const auto b = gen_corpus(spec);
  omp_set_num_threads(saved);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].samples() == b[k].samples());
}
