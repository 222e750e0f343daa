// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/kernels.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <limits>

#include <Eigen/Eigenvalues>

#include "phasekit/lti.hpp"
#include "phasekit/signal.hpp"

namespace phasekit::kernels {
namespace {

// Runs body(i) for i in [0, n) in parallel; rethrows the lowest-index exception.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) { parallel_for(n, body); }

void for_each_index_serial(std::size_t n, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

double lambda_min(const CMatrix& h) {
  if (h.rows() == 1) return h(0, 0).real();
  if (h.rows() == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double half = 0.5 * (a - d);
    return 0.5 * (a + d) - std::sqrt(half * half + std::norm(h(0, 1)));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double lambda_min_rotated(const CMatrix& a, double alpha) {
  const std::complex<double> rot = std::polar(1.0, alpha);
  const CMatrix r = rot * a;
  return lambda_min(0.5 * (r + r.adjoint()));
}

std::vector<CMatrix> sweep_response(const LtiSystem& sys, std::span<const double> omegas) {
  std::vector<CMatrix> out(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t k) { out[k] = sys.response(omegas[k]); });
  return out;
}

std::vector<CMatrix> sweep_response_serial(const LtiSystem& sys, std::span<const double> omegas) {
  std::vector<CMatrix> out;
  out.reserve(omegas.size());
  for (double w : omegas) out.push_back(sys.response(w));
  return out;
}

double min_lambda_rotated(std::span<const CMatrix> nodes, double alpha) {
  double best = std::numeric_limits<double>::infinity();
  const auto count = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for reduction(min : best) schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    best = std::min(best, lambda_min_rotated(nodes[static_cast<std::size_t>(k)], alpha));
  }
  return best;
}

double min_lambda_rotated_serial(std::span<const CMatrix> nodes, double alpha) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : nodes) best = std::min(best, lambda_min_rotated(m, alpha));
  return best;
}

std::pair<double, std::size_t> max_singular(std::span<const CMatrix> nodes) {
  std::vector<double> values(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t k) { values[k] = max_singular_value(nodes[k]); });
  std::pair<double, std::size_t> best{-1.0, 0};
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] > best.first) best = {values[k], k};
  return best;
}

std::pair<double, std::size_t> max_singular_serial(std::span<const CMatrix> nodes) {
  std::pair<double, std::size_t> best{-1.0, 0};
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double v = max_singular_value(nodes[k]);
    if (v > best.first) best = {v, k};
  }
  return best;
}

std::vector<RealSignal> map_signals(const SignalMap& fn, std::span<const RealSignal> inputs) {
  std::vector<RealSignal> out(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) { out[i] = fn(inputs[i]); });
  return out;
}

std::vector<RealSignal> map_signals_serial(const SignalMap& fn, std::span<const RealSignal> inputs) {
  std::vector<RealSignal> out;
  out.reserve(inputs.size());
  for (const auto& u : inputs) out.push_back(fn(u));
  return out;
}

}  // namespace phasekit::kernels
