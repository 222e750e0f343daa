// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace phasekit {

using CMatrix = Eigen::MatrixXcd;

/// Relative tolerance for positive-semidefiniteness tests on normalized matrices.
inline constexpr double kDefaultTol = 1e-9;

/// Maps an angle into (-pi, pi].
double wrap_to_pi(double angle);

/// angle + 2*pi*k for the integer k that lands closest to `reference`.
double unwrap_near(double angle, double reference);

/// Phase sector [lo, hi] with lo <= hi, hi - lo <= pi and center in (-pi, pi].
class PhaseInterval {
 public:
  PhaseInterval() = default;
  /// Validates the bounds and shifts both by a multiple of 2*pi so the center
  /// lies in (-pi, pi]. A spread up to pi + 1e-6 is accepted as roundoff.
  PhaseInterval(double lo, double hi);

  static PhaseInterval symmetric(double half_width) { return {-half_width, half_width}; }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double center() const noexcept { return 0.5 * (lo_ + hi_); }
  double spread() const noexcept { return hi_ - lo_; }

  /// Whether `angle` (any branch) lies in [lo - slack, hi + slack].
  bool contains(double angle, double slack = 0.0) const;
  /// Whether `other` lies inside this interval inflated by `slack`.
  bool contains(const PhaseInterval& other, double slack = 0.0) const;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

enum class SectorKind { Sectorial, SemiSectorial, Indefinite };

const char* to_string(SectorKind kind);

struct MatrixSectorCertificate {
  SectorKind kind = SectorKind::Indefinite;
  double alpha = 0.0;    // rotation with He(e^{j alpha} A) >= 0 (meaningless when Indefinite)
  double epsilon = 0.0;  // He(e^{j alpha} A) >= 2 epsilon A^* A; zero unless Sectorial
  /// (alpha, lambda_min(He(e^{j alpha} A)) / ||A||_F) over the coarse scan.
  std::vector<std::pair<double, double>> min_eig_profile;
};

/// Arc of rotations alpha with g(alpha) >= -tol, where g is a minimum eigenvalue
/// of rotated Hermitian parts. The arc [lo, hi] has length <= pi and contains `best`.
struct FeasibleArc {
  bool feasible = false;
  double best = 0.0;        // argmax of g (refined)
  double best_value = 0.0;  // g(best)
  double lo = 0.0;
  double hi = 0.0;

  /// Supporting-ray angles of the arc, [-pi/2 - lo, pi/2 - hi].
  PhaseInterval rays() const;
};

/// Coarse scan over 720 rotations plus golden-section refinement of the
/// maximum, then 60-step bisections for both arc endpoints. A feasible `hint`
/// skips the scan.
FeasibleArc find_feasible_arc(const std::function<double(double)>& g, double tol,
                              std::optional<double> hint = std::nullopt);

/// Points x^*Ax for the top eigenvectors of He(e^{-j theta_k} A),
/// theta_k = 2 pi k / directions. They lie on the boundary of the numerical range.
std::vector<std::complex<double>> nrange_boundary(const CMatrix& a, int directions);

/// Phase interval of the numerical range of A, or nullopt when 0 is interior
/// to it (no closed half-plane contains it). A feasible `alpha_hint` skips the
/// global scan. Throws InputError for the zero matrix.
std::optional<PhaseInterval> matrix_phase_interval(const CMatrix& a, double tol = kDefaultTol,
                                                   std::optional<double> alpha_hint = std::nullopt);

/// Sectorial(alpha, epsilon) / SemiSectorial(alpha) / Indefinite verdict for one matrix.
MatrixSectorCertificate matrix_sector_certify(const CMatrix& a, double tol = kDefaultTol);

/// Largest epsilon in [0, 1/(2 sigma_max)] with
/// lambda_min(He(e^{j alpha} A) - 2 epsilon A^*A) >= -tol ||A||_F for every matrix,
/// found by 60-step bisection. Returns 0 when even epsilon = 0 fails.
double max_sectorial_epsilon(const std::vector<const CMatrix*>& matrices, double alpha, double tol);

}  // namespace phasekit
