// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/nrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "phasekit/errors.hpp"
#include "phasekit/kernels.hpp"
#include "phasekit/lti.hpp"

namespace phasekit {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr int kScanPoints = 720;
constexpr int kBisectionSteps = 60;
constexpr double kZeroPoint = 1e-12;

CMatrix hermitian_part(const CMatrix& a, double alpha) {
  const CMatrix r = std::polar(1.0, alpha) * a;
  return 0.5 * (r + r.adjoint());
}

// Eigenvector for the smallest eigenvalue of He(e^{j alpha} A).
Eigen::VectorXcd min_eigenvector(const CMatrix& a, double alpha) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a, alpha));
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  return solver.eigenvectors().col(0);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double& fbest) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a); fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  fbest = f(x);
  return x;
}

// Largest t in [0, span] with feasible(origin + dir * t), given feasible(origin).
double bisect_extent(const std::function<bool(double)>& feasible, double origin, double dir, double span) {
  double inside = 0.0;
  double outside = span;
  if (feasible(origin + dir * outside)) return outside;
  for (int it = 0; it < kBisectionSteps; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (feasible(origin + dir * mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

}  // namespace

double wrap_to_pi(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double unwrap_near(double angle, double reference) {
  return reference + std::remainder(angle - reference, 2.0 * kPi);
}

PhaseInterval::PhaseInterval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InputError("phase bounds must be finite");
  if (lo > hi) throw InputError("phase interval needs lo <= hi");
  if (hi - lo > kPi + 1e-6) throw InputError("phase spread exceeds pi");
  const double center = 0.5 * (lo + hi);
  const double shift = wrap_to_pi(center) - center;
  lo_ = lo + shift;
  hi_ = hi + shift;
}

bool PhaseInterval::contains(double angle, double slack) const {
  const double a = unwrap_near(angle, center());
  return a >= lo_ - slack && a <= hi_ + slack;
}

bool PhaseInterval::contains(const PhaseInterval& other, double slack) const {
  const double shift = unwrap_near(other.center(), center()) - other.center();
  return other.lo() + shift >= lo_ - slack && other.hi() + shift <= hi_ + slack;
}

const char* to_string(SectorKind kind) {
  switch (kind) {
    case SectorKind::Sectorial: return "sectorial";
    case SectorKind::SemiSectorial: return "semi-sectorial";
    default: return "indefinite";
  }
}

PhaseInterval FeasibleArc::rays() const {
  double a = -kPi / 2 - lo;
  double b = kPi / 2 - hi;
  if (a > b) a = b = 0.5 * (a + b);  // arc wider than pi by the tolerance: a single ray
  return {a, b};
}

FeasibleArc find_feasible_arc(const std::function<double(double)>& g, double tol,
                              std::optional<double> hint) {
  FeasibleArc arc;
  bool have_start = false;
  if (hint) {
    const double v = g(*hint);
    if (v >= -tol) {
      arc.best = *hint;
      arc.best_value = v;
      have_start = true;
    }
  }
  if (!have_start) {
    const double step = 2.0 * kPi / kScanPoints;
    double best_alpha = 0.0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kScanPoints; ++k) {
      const double alpha = -kPi + (k + 1) * step;
      const double v = g(alpha);
      if (v > best_value) {
        best_value = v;
        best_alpha = alpha;
      }
    }
    double refined_value = 0.0;
    const double refined = golden_max(g, best_alpha - step, best_alpha + step, refined_value);
    if (refined_value >= best_value) {
      best_alpha = refined;
      best_value = refined_value;
    }
    arc.best = best_alpha;
    arc.best_value = best_value;
  }
  arc.feasible = arc.best_value >= -tol;
  if (!arc.feasible) return arc;

  const auto feasible = [&](double alpha) { return g(alpha) >= -tol; };
  // Two feasible antipodal rotations mean the range lies on a line through 0:
  // the only supporting half-planes are the two sides of that line.
  if (feasible(arc.best + kPi)) {
    arc.lo = arc.hi = arc.best;
    return arc;
  }
  arc.hi = arc.best + bisect_extent(feasible, arc.best, 1.0, kPi);
  arc.lo = arc.best - bisect_extent(feasible, arc.best, -1.0, kPi);
  return arc;
}

std::vector<std::complex<double>> nrange_boundary(const CMatrix& a, int directions) {
  if (a.rows() < 1 || a.rows() != a.cols()) throw InputError("numerical range needs a square matrix");
  if (directions < 8) throw InputError("need at least 8 directions");
  std::vector<cd> out(static_cast<std::size_t>(directions));
  for (int k = 0; k < directions; ++k) {
    const double theta = 2.0 * kPi * k / directions;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a, -theta));
    if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
    const Eigen::VectorXcd x = solver.eigenvectors().col(a.rows() - 1);
    out[static_cast<std::size_t>(k)] = x.dot(a * x);  // dot conjugates the first argument
  }
  return out;
}

std::optional<PhaseInterval> matrix_phase_interval(const CMatrix& a, double tol,
                                                   std::optional<double> alpha_hint) {
  if (a.rows() < 1 || a.rows() != a.cols()) throw InputError("phase interval needs a square matrix");
  const double scale = a.norm();
  if (!(scale > 0.0)) throw InputError("phase of the zero matrix is undefined");
  const CMatrix unit = a / scale;
  const FeasibleArc arc = find_feasible_arc(
      [&](double alpha) { return kernels::lambda_min_rotated(unit, alpha); }, tol, alpha_hint);
  if (!arc.feasible) return std::nullopt;

  // The eigenvector at each arc end spans the touching boundary point; use its
  // angle unless it sits at the origin, where the angle is undefined.
  double lo = -kPi / 2 - arc.lo;
  double hi = kPi / 2 - arc.hi;
  auto refine = [&](double alpha, double nominal) {
    const Eigen::VectorXcd x = min_eigenvector(unit, alpha);
    const cd z = x.dot(unit * x);
    if (std::abs(z) <= kZeroPoint) return nominal;
    const double angle = unwrap_near(std::arg(z), nominal);
    return std::abs(angle - nominal) < 1e-3 ? angle : nominal;
  };
  if (arc.lo != arc.hi) {
    lo = refine(arc.lo, lo);
    hi = refine(arc.hi, hi);
  }
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  return PhaseInterval(lo, hi);
}

double max_sectorial_epsilon(const std::vector<const CMatrix*>& matrices, double alpha, double tol) {
  double sigma = 0.0;
  for (const CMatrix* m : matrices) sigma = std::max(sigma, max_singular_value(*m));
  if (!(sigma > 0.0)) return 0.0;
  const auto feasible = [&](double eps) {
    for (const CMatrix* m : matrices) {
      const CMatrix h = hermitian_part(*m, alpha) - 2.0 * eps * (m->adjoint() * *m);
      if (kernels::lambda_min(h) < -tol * m->norm()) return false;
    }
    return true;
  };
  if (!feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0 / (2.0 * sigma) * (1.0 + 1e-9);
  if (feasible(hi)) return hi;
  for (int it = 0; it < kBisectionSteps; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

MatrixSectorCertificate matrix_sector_certify(const CMatrix& a, double tol) {
  if (a.rows() < 1 || a.rows() != a.cols()) throw InputError("sector test needs a square matrix");
  const double scale = a.norm();
  if (!(scale > 0.0)) throw InputError("sector test of the zero matrix is undefined");
  const CMatrix unit = a / scale;
  MatrixSectorCertificate cert;
  const auto g = [&](double alpha) {
    const double v = kernels::lambda_min_rotated(unit, alpha);
    return v;
  };
  cert.min_eig_profile.reserve(kScanPoints);
  for (int k = 0; k < kScanPoints; ++k) {
    const double alpha = -kPi + (k + 1) * 2.0 * kPi / kScanPoints;
    cert.min_eig_profile.emplace_back(alpha, g(alpha));
  }
  const FeasibleArc arc = find_feasible_arc(g, tol);
  if (!arc.feasible) return cert;
  cert.alpha = arc.best;
  cert.kind = SectorKind::SemiSectorial;
  if (arc.best_value > tol) {
    const double eps = max_sectorial_epsilon({&a}, arc.best, tol);
    const double eps_cap = 1.0 / (2.0 * max_singular_value(a));
    if (eps > 1e-8 * eps_cap) {
      cert.kind = SectorKind::Sectorial;
      cert.epsilon = eps;
    }
  }
  return cert;
}

}  // namespace phasekit
