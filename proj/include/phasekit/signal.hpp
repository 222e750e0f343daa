// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace phasekit {

/// Uniformly sampled real vector signal. Row t holds the value at time t*dt,
/// column c holds channel c.
class RealSignal {
 public:
  RealSignal() = default;
  RealSignal(Eigen::MatrixXd samples, double dt);

  static RealSignal zeros(Eigen::Index length, Eigen::Index channels, double dt);

  const Eigen::MatrixXd& samples() const noexcept { return samples_; }
  Eigen::MatrixXd& samples() noexcept { return samples_; }
  double dt() const noexcept { return dt_; }
  Eigen::Index length() const noexcept { return samples_.rows(); }
  Eigen::Index channels() const noexcept { return samples_.cols(); }
  double duration() const noexcept { return static_cast<double>(length()) * dt_; }
  double time(Eigen::Index t) const noexcept { return static_cast<double>(t) * dt_; }

 private:
  Eigen::MatrixXd samples_;
  double dt_ = 1.0;
};

/// Complex counterpart of RealSignal, same shape rules.
class ComplexSignal {
 public:
  ComplexSignal() = default;
  ComplexSignal(Eigen::MatrixXcd samples, double dt);
  explicit ComplexSignal(const RealSignal& real);

  const Eigen::MatrixXcd& samples() const noexcept { return samples_; }
  Eigen::MatrixXcd& samples() noexcept { return samples_; }
  double dt() const noexcept { return dt_; }
  Eigen::Index length() const noexcept { return samples_.rows(); }
  Eigen::Index channels() const noexcept { return samples_.cols(); }

  RealSignal real() const;
  RealSignal imag() const;

 private:
  Eigen::MatrixXcd samples_;
  double dt_ = 1.0;
};

/// Discrete Hilbert transform: per-channel DFT multiplier -j*sgn(omega), with the
/// DC and Nyquist bins sent to zero. Odd lengths are zero-padded by one sample
/// and cropped back.
ComplexSignal hilbert(const ComplexSignal& u);
RealSignal hilbert(const RealSignal& u);

/// Analytic signal with the half convention u_a = (u + j Hu) / 2, so that
/// ||u_a||^2 = ||u||^2 / 2 for DC/Nyquist-free u.
ComplexSignal analytic(const RealSignal& u);

/// Riemann-sum inner product sum_t conj(u_t) v_t dt, conjugate-linear in u.
std::complex<double> inner(const ComplexSignal& u, const ComplexSignal& v);
std::complex<double> inner(const ComplexSignal& u, const RealSignal& v);
double inner(const RealSignal& u, const RealSignal& v);

double norm(const RealSignal& u);
double norm(const ComplexSignal& u);

/// Zeroes every sample with t*dt > cutoff.
RealSignal truncate(const RealSignal& u, double cutoff);

/// Energy computed from the DFT, (dt / T) * sum_k |U_k|^2. Equals norm(u)^2.
double spectral_energy(const RealSignal& u);

/// Removes the DC bin and (for even length) the Nyquist bin of every channel.
RealSignal project_dc_nyquist(const RealSignal& u);

// ---------------------------------------------------------------------------
// Test-input corpora

/// Cosine carrier under a Gaussian envelope; the carrier frequency cycles
/// through `frequencies` log-spaced values in [omega_min, omega_max] rad/s.
struct ToneFamily {
  double omega_min = 0.05;
  double omega_max = 20.0;
  int frequencies = 24;
  double cycles = 6.0;          // envelope sigma spans this many carrier periods
  double sigma_min = 1.0;       // seconds
  double sigma_max_fraction = 1.0 / 6.0;  // sigma <= duration * fraction
};

/// White Gaussian spectrum restricted to (0, cutoff] rad/s, exactly band-limited.
struct NoiseFamily {
  double cutoff_min = 0.5;
  double cutoff_max = 20.0;
};

/// Rectangular pulses of random sign and amplitude.
struct PulseFamily {
  double width_min = 0.5;
  double width_max = 3.0;
  double period_min = 5.0;
  double period_max = 15.0;
};

using SignalFamily = std::variant<ToneFamily, NoiseFamily, PulseFamily>;

struct WeightedFamily {
  SignalFamily family;
  double weight = 1.0;
};

struct CorpusSpec {
  int count = 200;
  std::uint64_t seed = 1;
  Eigen::Index length = 40000;
  double dt = 1e-3;
  Eigen::Index channels = 1;
  std::vector<WeightedFamily> families;

  /// 200 signals over 40 s at dt = 1e-3: 72 tones, 100 noises, 28 pulse trains.
  static CorpusSpec defaults(Eigen::Index channels = 1, std::uint64_t seed = 1);
};

/// Deterministic corpus. Signal i depends only on (seed, i), so generation is
/// order-independent and runs in parallel. Every member is DC/Nyquist-free.
std::vector<RealSignal> gen_corpus(const CorpusSpec& spec);

/// Index of the family that generates corpus member `index`.
std::size_t corpus_family_index(const CorpusSpec& spec, int index);

// ---------------------------------------------------------------------------
// CSV: header `t,ch0,ch1,...`, one row per sample, 17 significant digits.

void write_csv(const RealSignal& u, const std::filesystem::path& path);
RealSignal read_csv(const std::filesystem::path& path);

}  // namespace phasekit
