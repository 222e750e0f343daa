// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace phasekit {

using CMatrix = Eigen::MatrixXcd;

/// Real polynomial, coefficients highest degree first. Leading zeros are stripped.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  double leading() const { return coeffs_.front(); }

  std::complex<double> operator()(std::complex<double> s) const;

  /// Roots via eigenvalues of the companion matrix.
  std::vector<std::complex<double>> roots() const;

 private:
  std::vector<double> coeffs_;
};

/// Proper scalar rational function num/den.
struct Rational {
  Polynomial num;
  Polynomial den;

  Rational() = default;
  Rational(std::vector<double> numerator, std::vector<double> denominator);
  Rational(Polynomial numerator, Polynomial denominator);

  static Rational constant(double k) { return Rational({k}, {1.0}); }

  int relative_degree() const;  // deg(den) - deg(num); large for a zero numerator
  std::complex<double> operator()(std::complex<double> s) const;
};

/// Square matrix of proper rational entries, row-major storage.
class TransferMatrix {
 public:
  TransferMatrix() = default;
  TransferMatrix(int size, std::vector<Rational> entries);
  /// Scalar system.
  explicit TransferMatrix(Rational entry);
  static TransferMatrix constant(const Eigen::MatrixXd& k);

  int size() const noexcept { return size_; }
  const Rational& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * size_ + j)]; }
  const std::vector<Rational>& entries() const noexcept { return entries_; }

 private:
  int size_ = 0;
  std::vector<Rational> entries_;
};

struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;

  /// Throws InputError on inconsistent dimensions or a non-square D.
  void validate() const;
  Eigen::Index states() const noexcept { return A.rows(); }
  Eigen::Index size() const noexcept { return D.rows(); }
};

/// Either representation behind one frequency-domain interface.
class LtiSystem {
 public:
  LtiSystem(TransferMatrix tf);  // NOLINT(google-explicit-constructor)
  LtiSystem(StateSpace ss);      // NOLINT(google-explicit-constructor)

  int size() const;
  bool is_transfer_matrix() const noexcept { return std::holds_alternative<TransferMatrix>(rep_); }
  const TransferMatrix* transfer_matrix() const { return std::get_if<TransferMatrix>(&rep_); }
  const StateSpace* state_space() const { return std::get_if<StateSpace>(&rep_); }

  /// P(j*omega). Throws InputError when evaluating on a pole.
  CMatrix response(double omega) const;

  /// lim P(j*omega) as omega -> infinity (the D matrix).
  Eigen::MatrixXd feedthrough() const;

  /// Direction of P(j*omega) as omega -> infinity, up to a positive scale:
  /// the feedthrough when nonzero, else the leading Markov term times j^{-r}.
  /// Zero only for the zero system.
  CMatrix limit_direction() const;

  /// All poles (denominator roots per entry, or eigenvalues of A).
  std::vector<std::complex<double>> poles() const;

  StateSpace realization() const;

 private:
  std::variant<TransferMatrix, StateSpace> rep_;
};

/// Sampled frequencies omega >= 0 (omega = 0 first). The closure point at
/// infinity is handled separately by the callers through limit_direction().
struct FrequencyGrid {
  std::vector<double> omegas;

  /// {0} plus `points` log-spaced values in [wmin, wmax].
  static FrequencyGrid logarithmic(double wmin = 1e-3, double wmax = 1e4, int points = 2000);
  std::size_t size() const noexcept { return omegas.size(); }
};

struct HurwitzResult {
  bool stable = false;
  std::optional<std::complex<double>> witness;  // offending pole when unstable
};

/// Stable iff every pole has real part < -1e-9.
HurwitzResult is_hurwitz(const LtiSystem& sys);

/// Throws UnstableError carrying the witness pole.
void require_hurwitz(const LtiSystem& sys);

CMatrix freq_response(const LtiSystem& sys, double omega);

/// P(j*omega) at every grid node, evaluated in parallel.
std::vector<CMatrix> sweep_response(const LtiSystem& sys, const FrequencyGrid& grid);

struct HinfResult {
  double norm = 0.0;
  double omega = 0.0;  // frequency of the peak
};

/// Largest singular value over the grid, refined by golden-section search
/// around the grid argmax.
HinfResult hinf_norm(const LtiSystem& sys, const FrequencyGrid& grid);

double max_singular_value(const CMatrix& m);

struct NyquistPoint {
  double omega;  // +-infinity for the high-frequency limit
  std::complex<double> value;
};

/// P(j*omega) over the signed grid -wmax..wmax, including omega = 0 and the
/// high-frequency limit value at both ends.
std::vector<NyquistPoint> nyquist_curve(const Rational& p, const FrequencyGrid& grid);

/// Per-entry controllable canonical realization, aggregated block-diagonally.
StateSpace realize(const TransferMatrix& tf);

}  // namespace phasekit
