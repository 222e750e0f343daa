// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>

namespace phasekit::detail {

enum class FftDirection { Forward, Inverse };

/// Unnormalized in-place DFT backed by FFTW. Plans are cached per (size, direction);
/// execution is thread-safe.
void fft_inplace(std::span<std::complex<double>> data, FftDirection direction);

}  // namespace phasekit::detail
