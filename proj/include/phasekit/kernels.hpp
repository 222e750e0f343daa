// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a `_serial` twin that is
// the reference implementation for tests and the benchmark; both produce
// bitwise-identical results (reductions are min/max or index-ordered).

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace phasekit {

class LtiSystem;
class RealSignal;
using CMatrix = Eigen::MatrixXcd;

namespace kernels {

/// Runs body(i) for i in [0, n) across threads; the lowest-index exception is
/// rethrown after the loop.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);
void for_each_index_serial(std::size_t n, const std::function<void(std::size_t)>& body);

/// Smallest eigenvalue of a Hermitian matrix (closed form up to 2x2).
double lambda_min(const CMatrix& hermitian);

/// lambda_min(He(e^{j alpha} A)).
double lambda_min_rotated(const CMatrix& a, double alpha);

std::vector<CMatrix> sweep_response(const LtiSystem& sys, std::span<const double> omegas);
std::vector<CMatrix> sweep_response_serial(const LtiSystem& sys, std::span<const double> omegas);

/// min over nodes of lambda_min_rotated(node, alpha).
double min_lambda_rotated(std::span<const CMatrix> nodes, double alpha);
double min_lambda_rotated_serial(std::span<const CMatrix> nodes, double alpha);

/// Largest singular value over nodes and the first index attaining it.
std::pair<double, std::size_t> max_singular(std::span<const CMatrix> nodes);
std::pair<double, std::size_t> max_singular_serial(std::span<const CMatrix> nodes);

using SignalMap = std::function<RealSignal(const RealSignal&)>;

/// Applies `fn` to every input, results in input order. The first exception
/// (lowest index) is rethrown after the loop.
std::vector<RealSignal> map_signals(const SignalMap& fn, std::span<const RealSignal> inputs);
std::vector<RealSignal> map_signals_serial(const SignalMap& fn, std::span<const RealSignal> inputs);

}  // namespace kernels
}  // namespace phasekit
