// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/lti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "phasekit/errors.hpp"
#include "phasekit/kernels.hpp"

namespace phasekit {
namespace {

using cd = std::complex<double>;

constexpr double kHurwitzMargin = 1e-9;

// j^{-r} = (-j)^r
cd inverse_j_power(int r) {
  switch (((r % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

double horner_magnitude_bound(const std::vector<double>& c, double r) {
  double acc = 0.0;
  for (double x : c) acc = acc * r + std::abs(x);
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<double> coeffs) {
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw InputError("polynomial coefficient is not finite");
  }
  auto first = std::find_if(coeffs.begin(), coeffs.end(), [](double c) { return c != 0.0; });
  coeffs_.assign(first, coeffs.end());
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
  cd acc = 0.0;
  for (double c : coeffs_) acc = acc * s + c;
  return acc;
}

std::vector<std::complex<double>> Polynomial::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) companion(0, k) = -coeffs_[static_cast<std::size_t>(k + 1)] / coeffs_[0];
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error("companion eigenvalue solver failed");
  std::vector<cd> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  return out;
}

Rational::Rational(std::vector<double> numerator, std::vector<double> denominator)
    : Rational(Polynomial(std::move(numerator)), Polynomial(std::move(denominator))) {}

Rational::Rational(Polynomial numerator, Polynomial denominator)
    : num(std::move(numerator)), den(std::move(denominator)) {
  if (den.is_zero()) throw InputError("denominator is identically zero");
  if (num.degree() > den.degree()) throw InputError("improper rational entry (deg num > deg den)");
}

int Rational::relative_degree() const {
  if (num.is_zero()) return std::numeric_limits<int>::max();
  return den.degree() - num.degree();
}

std::complex<double> Rational::operator()(std::complex<double> s) const {
  const cd d = den(s);
  const double scale = horner_magnitude_bound(den.coeffs(), std::abs(s));
  if (std::abs(d) <= 1e-14 * scale) throw InputError("frequency response evaluated at a pole");
  return num(s) / d;
}

TransferMatrix::TransferMatrix(int size, std::vector<Rational> entries)
    : size_(size), entries_(std::move(entries)) {
  if (size_ < 1) throw InputError("transfer matrix must be at least 1x1");
  if (entries_.size() != static_cast<std::size_t>(size_ * size_))
    throw InputError("transfer matrix must be square");
}

TransferMatrix::TransferMatrix(Rational entry) : TransferMatrix(1, {std::move(entry)}) {}

TransferMatrix TransferMatrix::constant(const Eigen::MatrixXd& k) {
  if (k.rows() != k.cols()) throw InputError("constant transfer matrix must be square");
  std::vector<Rational> entries;
  for (Eigen::Index i = 0; i < k.rows(); ++i)
    for (Eigen::Index j = 0; j < k.cols(); ++j) entries.push_back(Rational::constant(k(i, j)));
  return TransferMatrix(static_cast<int>(k.rows()), std::move(entries));
}

void StateSpace::validate() const {
  const Eigen::Index m = A.rows();
  if (A.cols() != m) throw InputError("A must be square");
  if (D.rows() != D.cols() || D.rows() < 1) throw InputError("D must be square and nonempty");
  const Eigen::Index n = D.rows();
  if (m > 0 && (B.rows() != m || B.cols() != n)) throw InputError("B has inconsistent dimensions");
  if (m > 0 && (C.rows() != n || C.cols() != m)) throw InputError("C has inconsistent dimensions");
  if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite())
    throw InputError("state-space matrices contain non-finite values");
}

// ---------------------------------------------------------------------------

LtiSystem::LtiSystem(TransferMatrix tf) : rep_(std::move(tf)) {}

LtiSystem::LtiSystem(StateSpace ss) : rep_(std::move(ss)) {
  auto& s = std::get<StateSpace>(rep_);
  if (s.A.size() == 0) {
    s.A.resize(0, 0);
    s.B.resize(0, s.D.cols());
    s.C.resize(s.D.rows(), 0);
  }
  s.validate();
}

int LtiSystem::size() const {
  if (const auto* tf = transfer_matrix()) return tf->size();
  return static_cast<int>(state_space()->size());
}

CMatrix LtiSystem::response(double omega) const {
  if (!std::isfinite(omega)) throw InputError("frequency must be finite");
  const cd s(0.0, omega);
  if (const auto* tf = transfer_matrix()) {
    const int n = tf->size();
    CMatrix out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) = (*tf)(i, j)(s);
    return out;
  }
  const auto& ss = *state_space();
  CMatrix out = ss.D.cast<cd>();
  if (ss.states() == 0) return out;
  CMatrix resolvent = s * CMatrix::Identity(ss.states(), ss.states()) - ss.A.cast<cd>();
  Eigen::PartialPivLU<CMatrix> lu(resolvent);
  if (!(lu.rcond() > 1e-14)) throw InputError("frequency response evaluated at a pole");
  out += ss.C.cast<cd>() * lu.solve(ss.B.cast<cd>());
  return out;
}

Eigen::MatrixXd LtiSystem::feedthrough() const {
  if (const auto* ss = state_space()) return ss->D;
  const auto* tf = transfer_matrix();
  const int n = tf->size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& r = (*tf)(i, j);
      if (r.relative_degree() == 0) d(i, j) = r.num.leading() / r.den.leading();
    }
  return d;
}

CMatrix LtiSystem::limit_direction() const {
  const Eigen::MatrixXd d = feedthrough();
  if (!d.isZero(0.0)) return d.cast<cd>();
  if (const auto* tf = transfer_matrix()) {
    const int n = tf->size();
    int rmin = std::numeric_limits<int>::max();
    for (const auto& r : tf->entries()) rmin = std::min(rmin, r.relative_degree());
    CMatrix out = CMatrix::Zero(n, n);
    if (rmin == std::numeric_limits<int>::max()) return out;
    const cd rot = inverse_j_power(rmin);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Rational& r = (*tf)(i, j);
        if (r.relative_degree() == rmin) out(i, j) = rot * (r.num.leading() / r.den.leading());
      }
    return out;
  }
  const auto& ss = *state_space();
  Eigen::MatrixXd power = ss.B;
  const double scale = std::max({ss.A.norm(), ss.B.norm(), ss.C.norm(), 1.0});
  for (Eigen::Index k = 1; k <= ss.states(); ++k) {
    const Eigen::MatrixXd markov = ss.C * power;
    if (markov.norm() > 1e-14 * std::pow(scale, static_cast<double>(k + 1)))
      return inverse_j_power(static_cast<int>(k)) * markov.cast<cd>();
    power = ss.A * power;
  }
  return CMatrix::Zero(ss.size(), ss.size());
}

std::vector<std::complex<double>> LtiSystem::poles() const {
  if (const auto* tf = transfer_matrix()) {
    std::vector<cd> out;
    for (const auto& r : tf->entries()) {
      auto roots = r.den.roots();
      out.insert(out.end(), roots.begin(), roots.end());
    }
    return out;
  }
  const auto& ss = *state_space();
  if (ss.states() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(ss.A, false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue solver failed on A");
  return {solver.eigenvalues().begin(), solver.eigenvalues().end()};
}

StateSpace LtiSystem::realization() const {
  if (const auto* tf = transfer_matrix()) return realize(*tf);
  return *state_space();
}

// ---------------------------------------------------------------------------

FrequencyGrid FrequencyGrid::logarithmic(double wmin, double wmax, int points) {
  if (!(wmin > 0.0) || !(wmax > wmin) || points < 2)
    throw InputError("frequency grid needs 0 < wmin < wmax and at least two points");
  FrequencyGrid grid;
  grid.omegas.reserve(static_cast<std::size_t>(points) + 1);
  grid.omegas.push_back(0.0);
  const double ratio = std::log10(wmax / wmin) / (points - 1);
  for (int k = 0; k < points; ++k) grid.omegas.push_back(wmin * std::pow(10.0, ratio * k));
  return grid;
}

HurwitzResult is_hurwitz(const LtiSystem& sys) {
  HurwitzResult result{true, std::nullopt};
  for (const cd& p : sys.poles()) {
    if (!(p.real() < -kHurwitzMargin)) {
      if (!result.witness || p.real() > result.witness->real()) result.witness = p;
      result.stable = false;
    }
  }
  return result;
}

void require_hurwitz(const LtiSystem& sys) {
  const auto h = is_hurwitz(sys);
  if (!h.stable) {
    const cd w = *h.witness;
    throw UnstableError("system is not stable: pole at " + std::to_string(w.real()) +
                            (w.imag() >= 0 ? "+" : "") + std::to_string(w.imag()) + "j",
                        w);
  }
}

CMatrix freq_response(const LtiSystem& sys, double omega) { return sys.response(omega); }

std::vector<CMatrix> sweep_response(const LtiSystem& sys, const FrequencyGrid& grid) {
  return kernels::sweep_response(sys, grid.omegas);
}

double max_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

HinfResult hinf_norm(const LtiSystem& sys, const FrequencyGrid& grid) {
  require_hurwitz(sys);
  if (grid.omegas.empty()) throw InputError("empty frequency grid");
  const auto responses = sweep_response(sys, grid);
  const auto [peak, index] = kernels::max_singular(responses);
  HinfResult best{peak, grid.omegas[index]};

  // Golden-section refinement on the bracket around the grid argmax.
  const double lo = index == 0 ? grid.omegas[0] : grid.omegas[index - 1];
  const double hi = index + 1 < grid.size() ? grid.omegas[index + 1] : grid.omegas[index];
  if (hi > lo) {
    auto f = [&](double w) { return max_singular_value(sys.response(w)); };
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 100 && (b - a) > 1e-14 * std::max(1.0, b); ++it) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - invphi * (b - a); fc = f(c);
      } else {
        a = c; c = d; fc = fd;
        d = a + invphi * (b - a); fd = f(d);
      }
    }
    const double w = 0.5 * (a + b);
    const double v = f(w);
    if (v > best.norm) best = {v, w};
  }
  const double at_infinity = max_singular_value(sys.feedthrough().cast<cd>());
  if (at_infinity > best.norm) best = {at_infinity, std::numeric_limits<double>::infinity()};
  return best;
}

std::vector<NyquistPoint> nyquist_curve(const Rational& p, const FrequencyGrid& grid) {
  require_hurwitz(LtiSystem(TransferMatrix(p)));
  const double inf = std::numeric_limits<double>::infinity();
  const cd limit = p.relative_degree() == 0 ? cd(p.num.leading() / p.den.leading()) : cd(0.0);
  std::vector<double> positive;
  for (double w : grid.omegas)
    if (w > 0.0) positive.push_back(w);
  std::sort(positive.begin(), positive.end());

  std::vector<NyquistPoint> out;
  out.reserve(2 * positive.size() + 3);
  out.push_back({-inf, limit});
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) out.push_back({-*it, p(cd(0.0, -*it))});
  out.push_back({0.0, p(cd(0.0, 0.0))});
  for (double w : positive) out.push_back({w, p(cd(0.0, w))});
  out.push_back({inf, limit});
  return out;
}

StateSpace realize(const TransferMatrix& tf) {
  const int n = tf.size();
  struct Block {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    int row, col;
  };
  std::vector<Block> blocks;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index total = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& r = tf(i, j);
      const auto& den = r.den.coeffs();
      const int m = r.den.degree();
      const double lead = den[0];
      // Numerator padded to degree m, then normalized by the leading denominator coefficient.
      std::vector<double> b(static_cast<std::size_t>(m + 1), 0.0);
      const auto& num = r.num.coeffs();
      std::copy(num.begin(), num.end(), b.end() - static_cast<std::ptrdiff_t>(num.size()));
      for (double& x : b) x /= lead;
      D(i, j) = b[0];
      if (m == 0 || r.num.is_zero()) continue;
      Block blk{Eigen::MatrixXd::Zero(m, m), Eigen::VectorXd::Zero(m), Eigen::RowVectorXd(m), i, j};
      for (int k = 0; k < m; ++k) {
        const double ak = den[static_cast<std::size_t>(k + 1)] / lead;
        blk.A(0, k) = -ak;
        blk.C(k) = b[static_cast<std::size_t>(k + 1)] - b[0] * ak;
      }
      for (int k = 1; k < m; ++k) blk.A(k, k - 1) = 1.0;
      blk.B(0) = 1.0;
      total += m;
      blocks.push_back(std::move(blk));
    }
  }
  StateSpace ss{Eigen::MatrixXd::Zero(total, total), Eigen::MatrixXd::Zero(total, n),
                Eigen::MatrixXd::Zero(n, total), D};
  Eigen::Index offset = 0;
  for (const auto& blk : blocks) {
    const Eigen::Index m = blk.A.rows();
    ss.A.block(offset, offset, m, m) = blk.A;
    ss.B.block(offset, blk.col, m, 1) = blk.B;
    ss.C.block(blk.row, offset, 1, m) = blk.C;
    offset += m;
  }
  return ss;
}

}  // namespace phasekit
