// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference vs OpenMP kernel timings. PHASEKIT_THREADS caps the team size.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include <omp.h>

#include "phasekit/kernels.hpp"
#include "phasekit/lti.hpp"
#include "phasekit/signal.hpp"
#include "phasekit/sim.hpp"
#include "phasekit/sysfile.hpp"

using namespace phasekit;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4f %10.4f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  if (const char* env = std::getenv("PHASEKIT_THREADS")) omp_set_num_threads(std::atoi(env));
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  const LtiSystem p = *load_system(PHASEKIT_DATA_DIR "/plant2x2.json").lti;
  const FrequencyGrid grid = FrequencyGrid::logarithmic(1e-3, 1e4, 20000);
  std::vector<CMatrix> nodes;
  row("sweep_response (20k)", best_of(3, [&] { nodes = kernels::sweep_response_serial(p, grid.omegas); }),
      best_of(3, [&] { nodes = kernels::sweep_response(p, grid.omegas); }));

  volatile double sink = 0.0;
  row("min_lambda_rotated (20k)", best_of(5, [&] { sink = kernels::min_lambda_rotated_serial(nodes, 0.3); }),
      best_of(5, [&] { sink = kernels::min_lambda_rotated(nodes, 0.3); }));
  row("max_singular (20k)", best_of(5, [&] { sink = kernels::max_singular_serial(nodes).first; }),
      best_of(5, [&] { sink = kernels::max_singular(nodes).first; }));

  CorpusSpec spec = CorpusSpec::defaults(2, 1);
  spec.count = 32;
  const auto corpus = gen_corpus(spec);
  const SystemPtr c = make_cubic_vsp_system();
  const kernels::SignalMap sim = [&](const RealSignal& u) { return simulate(*c, u); };
  row("map_signals cubic (32x40s)", best_of(2, [&] { kernels::map_signals_serial(sim, corpus); }),
      best_of(2, [&] { kernels::map_signals(sim, corpus); }));
  (void)sink;
  return 0;
}
