// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "fft.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/io.hpp"

namespace phasekit {
namespace {

using cd = std::complex<double>;
using detail::FftDirection;
using detail::fft_inplace;

void check_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("signal dt must be positive and finite");
}

template <typename Matrix>
void check_shape(const Matrix& m) {
  if (m.rows() < 2) throw InputError("signal needs at least two samples");
  if (m.cols() < 1) throw InputError("signal needs at least one channel");
  if (!m.allFinite()) throw InputError("signal contains non-finite samples");
}

template <typename A, typename B>
void check_compatible(const A& u, const B& v) {
  if (u.length() != v.length() || u.channels() != v.channels())
    throw InputError("signal shapes differ");
  if (u.dt() != v.dt()) throw InputError("signal sample periods differ");
}

// Applies -j*sgn(k) to the bins of one channel held in `buf` (length even).
void apply_hilbert_multiplier(std::vector<cd>& buf) {
  const std::size_t n = buf.size();
  const std::size_t half = n / 2;
  buf[0] = 0.0;
  for (std::size_t k = 1; k < half; ++k) buf[k] *= cd(0.0, -1.0);
  buf[half] = 0.0;
  for (std::size_t k = half + 1; k < n; ++k) buf[k] *= cd(0.0, 1.0);
}

}  // namespace

RealSignal::RealSignal(Eigen::MatrixXd samples, double dt) : samples_(std::move(samples)), dt_(dt) {
  check_dt(dt_);
  check_shape(samples_);
}

RealSignal RealSignal::zeros(Eigen::Index length, Eigen::Index channels, double dt) {
  return RealSignal(Eigen::MatrixXd::Zero(length, channels), dt);
}

ComplexSignal::ComplexSignal(Eigen::MatrixXcd samples, double dt)
    : samples_(std::move(samples)), dt_(dt) {
  check_dt(dt_);
  check_shape(samples_);
}

ComplexSignal::ComplexSignal(const RealSignal& real)
    : samples_(real.samples().cast<cd>()), dt_(real.dt()) {}

RealSignal ComplexSignal::real() const { return RealSignal(samples_.real(), dt_); }
RealSignal ComplexSignal::imag() const { return RealSignal(samples_.imag(), dt_); }

ComplexSignal hilbert(const ComplexSignal& u) {
  const Eigen::Index len = u.length();
  const std::size_t padded = static_cast<std::size_t>(len + (len % 2));
  Eigen::MatrixXcd out(len, u.channels());
  std::vector<cd> buf(padded);
  for (Eigen::Index c = 0; c < u.channels(); ++c) {
    std::fill(buf.begin(), buf.end(), cd(0.0));
    for (Eigen::Index t = 0; t < len; ++t) buf[static_cast<std::size_t>(t)] = u.samples()(t, c);
    fft_inplace(buf, FftDirection::Forward);
    apply_hilbert_multiplier(buf);
    fft_inplace(buf, FftDirection::Inverse);
    const double scale = 1.0 / static_cast<double>(padded);
    for (Eigen::Index t = 0; t < len; ++t) out(t, c) = buf[static_cast<std::size_t>(t)] * scale;
  }
  // Real input maps to real output; drop the roundoff imaginary part.
  if (u.samples().imag().isZero(0.0)) {
    const double peak = out.cwiseAbs().maxCoeff();
    if (out.imag().cwiseAbs().maxCoeff() <= 1e-12 * peak) out = out.real().cast<cd>();
  }
  return ComplexSignal(std::move(out), u.dt());
}

RealSignal hilbert(const RealSignal& u) { return hilbert(ComplexSignal(u)).real(); }

ComplexSignal analytic(const RealSignal& u) {
  const RealSignal hu = hilbert(u);
  Eigen::MatrixXcd out(u.length(), u.channels());
  out.real() = 0.5 * u.samples();
  out.imag() = 0.5 * hu.samples();
  return ComplexSignal(std::move(out), u.dt());
}

std::complex<double> inner(const ComplexSignal& u, const ComplexSignal& v) {
  check_compatible(u, v);
  return (u.samples().conjugate().cwiseProduct(v.samples())).sum() * u.dt();
}

std::complex<double> inner(const ComplexSignal& u, const RealSignal& v) {
  check_compatible(u, v);
  return (u.samples().conjugate().cwiseProduct(v.samples().cast<cd>())).sum() * u.dt();
}

double inner(const RealSignal& u, const RealSignal& v) {
  check_compatible(u, v);
  return u.samples().cwiseProduct(v.samples()).sum() * u.dt();
}

double norm(const RealSignal& u) { return std::sqrt(u.samples().squaredNorm() * u.dt()); }
double norm(const ComplexSignal& u) { return std::sqrt(u.samples().squaredNorm() * u.dt()); }

RealSignal truncate(const RealSignal& u, double cutoff) {
  if (!(cutoff >= 0.0)) throw InputError("truncation time must be nonnegative");
  Eigen::MatrixXd out = u.samples();
  for (Eigen::Index t = 0; t < u.length(); ++t) {
    if (u.time(t) > cutoff) out.row(t).setZero();
  }
  return RealSignal(std::move(out), u.dt());
}

double spectral_energy(const RealSignal& u) {
  const std::size_t n = static_cast<std::size_t>(u.length());
  std::vector<cd> buf(n);
  double energy = 0.0;
  for (Eigen::Index c = 0; c < u.channels(); ++c) {
    for (std::size_t t = 0; t < n; ++t) buf[t] = u.samples()(static_cast<Eigen::Index>(t), c);
    fft_inplace(buf, FftDirection::Forward);
    for (const cd& x : buf) energy += std::norm(x);
  }
  return energy * u.dt() / static_cast<double>(n);
}

RealSignal project_dc_nyquist(const RealSignal& u) {
  const std::size_t n = static_cast<std::size_t>(u.length());
  Eigen::MatrixXd out(u.length(), u.channels());
  std::vector<cd> buf(n);
  for (Eigen::Index c = 0; c < u.channels(); ++c) {
    for (std::size_t t = 0; t < n; ++t) buf[t] = u.samples()(static_cast<Eigen::Index>(t), c);
    fft_inplace(buf, FftDirection::Forward);
    buf[0] = 0.0;
    if (n % 2 == 0) buf[n / 2] = 0.0;
    fft_inplace(buf, FftDirection::Inverse);
    for (std::size_t t = 0; t < n; ++t)
      out(static_cast<Eigen::Index>(t), c) = buf[t].real() / static_cast<double>(n);
  }
  return RealSignal(std::move(out), u.dt());
}

// ---------------------------------------------------------------------------

CorpusSpec CorpusSpec::defaults(Eigen::Index channels, std::uint64_t seed) {
  CorpusSpec spec;
  spec.seed = seed;
  spec.channels = channels;
  spec.families = {{ToneFamily{}, 72.0}, {NoiseFamily{}, 100.0}, {PulseFamily{}, 28.0}};
  return spec;
}

namespace {

void validate(const CorpusSpec& spec) {
  if (spec.count < 1) throw InputError("corpus count must be >= 1");
  if (spec.length < 2) throw InputError("corpus length must be >= 2");
  if (spec.channels < 1) throw InputError("corpus needs at least one channel");
  check_dt(spec.dt);
  if (spec.families.empty()) throw InputError("corpus needs at least one signal family");
  for (const auto& f : spec.families) {
    if (!(f.weight > 0.0)) throw InputError("family weights must be positive");
  }
}

// Number of corpus members assigned to each family, in family order.
std::vector<int> family_counts(const CorpusSpec& spec) {
  double total = 0.0;
  for (const auto& f : spec.families) total += f.weight;
  std::vector<int> counts;
  int assigned = 0;
  for (std::size_t i = 0; i + 1 < spec.families.size(); ++i) {
    int n = static_cast<int>(std::lround(spec.count * spec.families[i].weight / total));
    n = std::min(n, spec.count - assigned);
    counts.push_back(n);
    assigned += n;
  }
  counts.push_back(spec.count - assigned);
  return counts;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

void fill_tone(const ToneFamily& f, int member, const CorpusSpec& spec, std::mt19937_64& rng,
               Eigen::Ref<Eigen::VectorXd> out) {
  const int nf = std::max(f.frequencies, 1);
  const int slot = member % nf;
  const double omega =
      nf == 1 ? f.omega_min
              : f.omega_min * std::pow(f.omega_max / f.omega_min, static_cast<double>(slot) / (nf - 1));
  const double duration = static_cast<double>(spec.length) * spec.dt;
  const double sigma = std::clamp(f.cycles * 2.0 * std::numbers::pi / omega, f.sigma_min,
                                  std::max(f.sigma_min, duration * f.sigma_max_fraction));
  std::uniform_real_distribution<double> frac(0.3, 0.4);
  const double center = std::max(duration * frac(rng), std::min(3.0 * sigma, 0.5 * duration));
  std::uniform_real_distribution<double> amp(0.5, 2.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  const double a = amp(rng);
  const double phase = ph(rng);
  for (Eigen::Index t = 0; t < spec.length; ++t) {
    const double time = static_cast<double>(t) * spec.dt;
    const double env = std::exp(-0.5 * std::pow((time - center) / sigma, 2));
    out(t) = a * env * std::cos(omega * time + phase);
  }
}

void fill_noise(const NoiseFamily& f, const CorpusSpec& spec, std::mt19937_64& rng,
                Eigen::Ref<Eigen::VectorXd> out) {
  const std::size_t n = static_cast<std::size_t>(spec.length);
  const double cutoff = f.cutoff_min == f.cutoff_max ? f.cutoff_min
                                                     : log_uniform(rng, f.cutoff_min, f.cutoff_max);
  const double bin_width = 2.0 * std::numbers::pi / (static_cast<double>(n) * spec.dt);
  // Highest strictly-positive, sub-Nyquist bin whose frequency stays within the cutoff.
  const std::size_t nyquist = n / 2;
  std::size_t kmax = static_cast<std::size_t>(std::floor(cutoff / bin_width));
  kmax = std::clamp<std::size_t>(kmax, 1, (n % 2 == 0) ? nyquist - 1 : nyquist);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cd> buf(n, cd(0.0));
  for (std::size_t k = 1; k <= kmax; ++k) {
    buf[k] = cd(g(rng), g(rng));
    buf[n - k] = std::conj(buf[k]);
  }
  detail::fft_inplace(buf, FftDirection::Inverse);
  double rms = 0.0;
  for (std::size_t t = 0; t < n; ++t) rms += buf[t].real() * buf[t].real();
  rms = std::sqrt(rms / static_cast<double>(n));
  std::uniform_real_distribution<double> amp(0.3, 1.5);
  const double scale = amp(rng) / rms;
  for (std::size_t t = 0; t < n; ++t) out(static_cast<Eigen::Index>(t)) = buf[t].real() * scale;
}

void fill_pulses(const PulseFamily& f, const CorpusSpec& spec, std::mt19937_64& rng,
                 Eigen::Ref<Eigen::VectorXd> out) {
  std::uniform_real_distribution<double> width_d(f.width_min, f.width_max);
  std::uniform_real_distribution<double> period_d(f.period_min, f.period_max);
  std::uniform_real_distribution<double> amp(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);
  const double duration = static_cast<double>(spec.length) * spec.dt;
  // Short windows get proportionally shorter pulses so that at least one fits.
  const double fit = std::min(1.0, 0.5 * duration / f.period_max);
  const double width = fit * width_d(rng);
  const double period = std::max(fit * period_d(rng), width);
  std::uniform_real_distribution<double> offset_d(0.0, period - width);
  out.setZero();
  for (double start = offset_d(rng); start + width < 0.75 * duration; start += period) {
    const double level = (sign(rng) ? 1.0 : -1.0) * amp(rng);
    const auto first = static_cast<Eigen::Index>(std::ceil(start / spec.dt));
    const auto last = std::min<Eigen::Index>(
        static_cast<Eigen::Index>(std::floor((start + width) / spec.dt)), spec.length - 1);
    for (Eigen::Index t = first; t <= last; ++t) out(t) = level;
  }
}

}  // namespace

std::size_t corpus_family_index(const CorpusSpec& spec, int index) {
  const auto counts = family_counts(spec);
  int acc = 0;
  for (std::size_t f = 0; f < counts.size(); ++f) {
    acc += counts[f];
    if (index < acc) return f;
  }
  return counts.size() - 1;
}

std::vector<RealSignal> gen_corpus(const CorpusSpec& spec) {
  validate(spec);
  const auto counts = family_counts(spec);
  std::vector<int> family_of(static_cast<std::size_t>(spec.count));
  std::vector<int> member_of(static_cast<std::size_t>(spec.count));
  {
    int i = 0;
    for (std::size_t f = 0; f < counts.size(); ++f) {
      for (int m = 0; m < counts[f]; ++m, ++i) {
        family_of[static_cast<std::size_t>(i)] = static_cast<int>(f);
        member_of[static_cast<std::size_t>(i)] = m;
      }
    }
  }

  std::vector<RealSignal> corpus(static_cast<std::size_t>(spec.count));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < spec.count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(i), 0x9e3779b9u};
    std::mt19937_64 rng(seq);
    Eigen::MatrixXd samples(spec.length, spec.channels);
    const SignalFamily& family = spec.families[static_cast<std::size_t>(family_of[idx])].family;
    for (Eigen::Index c = 0; c < spec.channels; ++c) {
      std::visit(
          [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, ToneFamily>) {
              fill_tone(f, member_of[idx], spec, rng, samples.col(c));
            } else if constexpr (std::is_same_v<F, NoiseFamily>) {
              fill_noise(f, spec, rng, samples.col(c));
            } else {
              fill_pulses(f, spec, rng, samples.col(c));
            }
          },
          family);
    }
    corpus[idx] = project_dc_nyquist(RealSignal(std::move(samples), spec.dt));
  }
  return corpus;
}

// ---------------------------------------------------------------------------

void write_csv(const RealSignal& u, const std::filesystem::path& path) {
  std::string text = "t";
  for (Eigen::Index c = 0; c < u.channels(); ++c) text += ",ch" + std::to_string(c);
  text += '\n';
  char buf[64];
  for (Eigen::Index t = 0; t < u.length(); ++t) {
    std::snprintf(buf, sizeof buf, "%.17g", u.time(t));
    text += buf;
    for (Eigen::Index c = 0; c < u.channels(); ++c) {
      std::snprintf(buf, sizeof buf, ",%.17g", u.samples()(t, c));
      text += buf;
    }
    text += '\n';
  }
  write_text_atomic(path, text);
}

RealSignal read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0)
    throw InputError(path.string() + ": expected header starting with 't,'");
  const auto channels = static_cast<Eigen::Index>(std::count(line.begin(), line.end(), ','));
  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    Eigen::Index col = 0;
    while (std::getline(row, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw InputError(path.string() + ": bad number '" + cell + "'");
      if (col == 0) {
        times.push_back(v);
      } else {
        values.push_back(v);
      }
      ++col;
    }
    if (col != channels + 1) throw InputError(path.string() + ": ragged row");
  }
  if (times.size() < 2) throw InputError(path.string() + ": need at least two samples");
  const double dt = times[1] - times[0];
  Eigen::MatrixXd samples(static_cast<Eigen::Index>(times.size()), channels);
  for (Eigen::Index t = 0; t < samples.rows(); ++t)
    for (Eigen::Index c = 0; c < channels; ++c)
      samples(t, c) = values[static_cast<std::size_t>(t * channels + c)];
  return RealSignal(std::move(samples), dt);
}

}  // namespace phasekit
