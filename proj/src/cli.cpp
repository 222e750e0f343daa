// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/cli.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "phasekit/errors.hpp"
#include "phasekit/estimate.hpp"
#include "phasekit/io.hpp"
#include "phasekit/kernels.hpp"
#include "phasekit/phase.hpp"
#include "phasekit/sim.hpp"
#include "phasekit/stability.hpp"
#include "phasekit/sysfile.hpp"

namespace phasekit {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;
constexpr double kPi = std::numbers::pi;

double deg(double rad) { return rad * 180.0 / kPi; }

// Non-finite values become null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

fs::path sibling(const fs::path& out, const std::string& suffix) {
  return out.parent_path() / (out.stem().string() + suffix);
}

void write_json(const fs::path& path, const json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json interval_json(const std::optional<PhaseInterval>& iv) {
  if (!iv) return {{"lo_rad", nullptr}, {"hi_rad", nullptr}, {"lo_deg", nullptr}, {"hi_deg", nullptr}};
  return {{"lo_rad", iv->lo()}, {"hi_rad", iv->hi()}, {"lo_deg", deg(iv->lo())}, {"hi_deg", deg(iv->hi())}};
}

json verdict_json(const StabilityVerdict& v) {
  json margins = json::object();
  for (const auto& m : v.margins) margins[m.name] = num(m.value);
  json j = {{"criterion", v.criterion},
            {"pass", v.pass()},
            {"outcome", to_string(v.outcome)},
            {"provenance", v.provenance},
            {"indicative", v.indicative},
            {"margins", margins}};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

struct GridOptions {
  double wmin = 1e-3;
  double wmax = 1e4;
  int points = 2000;
  double tol = kDefaultTol;

  FrequencyGrid grid() const {
    if (!(wmin > 0.0) || !(wmax > wmin) || points < 2) throw InputError("need 0 < wmin < wmax and points >= 2");
    return FrequencyGrid::logarithmic(wmin, wmax, points);
  }
  json to_json() const { return {{"wmin", wmin}, {"wmax", wmax}, {"points", points}, {"tol", tol}}; }
};

struct CorpusOptions {
  std::uint64_t seed = 1;
  int size = 200;
  double dt = 1e-3;
  double duration = 40.0;

  CorpusSpec spec(int channels) const {
    if (size < 1 || !(dt > 0.0) || !(duration > 2.0 * dt)) throw InputError("invalid corpus options");
    CorpusSpec s = CorpusSpec::defaults(channels, seed);
    s.count = size;
    s.dt = dt;
    s.length = static_cast<Eigen::Index>(std::llround(duration / dt));
    return s;
  }
  json to_json() const { return {{"seed", seed}, {"size", size}, {"dt", dt}, {"duration", duration}}; }
};

// --------------------------------------------------------------------------
// analyze-lti

int cmd_analyze_lti(const fs::path& system, const GridOptions& go, const fs::path& out) {
  const SystemSpec spec = load_system(system);
  if (!spec.lti) throw InputError("analyze-lti needs a tf or ss system");
  const LtiSystem& sys = *spec.lti;
  const FrequencyGrid grid = go.grid();
  const SystemPhaseReport report = lti_phase(sys, grid, go.tol);
  const HinfResult h = hinf_norm(sys, grid);
  const double nu = lti_passivity_index(sys, grid);

  json per = json::array();
  json limit = nullptr;
  std::string csv = "w,lo_rad,hi_rad\n";
  for (const auto& f : report.per_frequency) {
    const double lo = f.interval ? f.interval->lo() : std::nan("");
    const double hi = f.interval ? f.interval->hi() : std::nan("");
    if (std::isinf(f.omega)) {
      limit = {{"lo", num(lo)}, {"hi", num(hi)}};
      continue;
    }
    per.push_back({{"w", f.omega}, {"lo", num(lo)}, {"hi", num(hi)}});
    csv += fmt(f.omega) + "," + fmt(lo) + "," + fmt(hi) + "\n";
  }

  json j = {{"schema_version", kSchemaVersion},
            {"command", "analyze-lti"},
            {"config", {{"system", system.string()}, {"source", spec.source}, {"grid", go.to_json()}}},
            {"verdict", to_string(report.verdict)},
            {"phase_lo_rad", report.interval ? num(report.interval->lo()) : json(nullptr)},
            {"phase_hi_rad", report.interval ? num(report.interval->hi()) : json(nullptr)},
            {"phase_lo_deg", report.interval ? num(deg(report.interval->lo())) : json(nullptr)},
            {"phase_hi_deg", report.interval ? num(deg(report.interval->hi())) : json(nullptr)},
            {"arc", interval_json(report.arc_interval)},
            {"alpha_rad", report.alpha},
            {"epsilon", report.epsilon},
            {"min_eig", report.min_eig},
            {"hinf", h.norm},
            {"hinf_omega", num(h.omega)},
            {"nu_index", nu},
            {"per_frequency", per},
            {"limit", limit}};

  if (sys.size() == 1 && sys.transfer_matrix()) {
    std::string nyq = "w,re,im\n";
    for (const auto& p : nyquist_curve((*sys.transfer_matrix())(0, 0), grid))
      nyq += fmt(p.omega) + "," + fmt(p.value.real()) + "," + fmt(p.value.imag()) + "\n";
    const fs::path nyq_path = sibling(out, "_nyquist.csv");
    write_text_atomic(nyq_path, nyq);
    j["nyquist_csv"] = nyq_path.filename().string();
  }
  const fs::path freq_path = sibling(out, "_freq.csv");
  write_text_atomic(freq_path, csv);
  j["per_frequency_csv"] = freq_path.filename().string();
  write_json(out, j);

  if (!report.interval) {
    std::cerr << "indefinite: no rotation places the numerical range in a half-plane\n";
    return kExitIndefinite;
  }
  std::printf("%s phase [%.4f, %.4f] deg, hinf %.6g, nu %.6g\n", to_string(report.verdict),
              deg(report.interval->lo()), deg(report.interval->hi()), h.norm, nu);
  return kExitOk;
}

// --------------------------------------------------------------------------
// analyze-nl

struct ClosedForm {
  PhaseInterval interval;
  std::string provenance;
};

ClosedForm closed_form(const NonlinearModel& m) {
  if (m.sector) return {sector_phase(*m.sector).interval, "sector-closed-form"};
  return {vsp_phase(*m.indices), "vsp-closed-form"};
}

int cmd_analyze_nl(const fs::path& system, const CorpusOptions& co, const std::optional<fs::path>& samples_out,
                   const fs::path& out) {
  const SystemSpec spec = load_system(system);
  if (!spec.nl) throw InputError("analyze-nl needs an nl system");
  const NonlinearModel& m = *spec.nl;
  const ClosedForm bound = closed_form(m);

  json j = {{"schema_version", kSchemaVersion},
            {"command", "analyze-nl"},
            {"config", {{"system", system.string()}, {"source", spec.source}, {"corpus", co.to_json()}}},
            {"model", m.model},
            {"bound", interval_json(bound.interval)},
            {"bound_provenance", bound.provenance},
            {"gain_bound", m.gain_bound}};
  if (m.sector) j["sector"] = {{"a", m.sector->a()}, {"b", m.sector->b()}};
  if (m.indices) j["indices"] = {{"delta", m.indices->delta}, {"epsilon", m.indices->epsilon}};

  if (m.dynamics) {
    const auto corpus = gen_corpus(co.spec(m.dynamics->channels()));
    const SystemCallback cb = SystemCallback::of(*m.dynamics);
    const auto outputs = cb.thread_safe ? kernels::map_signals(cb.fn, corpus) : kernels::map_signals_serial(cb.fn, corpus);
    const auto samples = phase_samples(corpus, outputs);
    const EmpiricalPhase est = empirical_phase(samples);
    const double excess = std::max({0.0, est.hi - bound.interval.hi(), bound.interval.lo() - est.lo});
    json emp = interval_json(est.interval);
    emp["label"] = "inner estimate";
    emp["n_used"] = est.n_used;
    emp["n_excluded"] = est.n_excluded;
    emp["spread_rad"] = est.hi - est.lo;
    emp["origin_in_hull"] = est.origin_in_hull;
    emp["max_excess_rad"] = excess;
    emp["within_bound"] = excess <= 1e-3;
    if (m.indices) {
      const PassivityMargin pm = empirical_passivity(corpus, outputs, m.indices->delta, m.indices->epsilon);
      emp["passivity_margin"] = pm.margin;
      emp["passivity_margin_relative"] = pm.relative;
      emp["passivity_argmin"] = pm.argmin;
    }
    emp["gain_lower_bound"] = empirical_gain(corpus, outputs);
    j["empirical"] = emp;
    if (samples_out) {
      write_samples_csv(samples, *samples_out);
      j["samples_csv"] = samples_out->string();
    }
  }
  write_json(out, j);
  std::printf("%s bound [%.4f, %.4f] deg\n", bound.provenance.c_str(), deg(bound.interval.lo()),
              deg(bound.interval.hi()));
  return kExitOk;
}

// --------------------------------------------------------------------------
// check-feedback

struct Side {
  std::optional<PhaseInput> phase;
  std::optional<PassivityIndices> indices;
  double gain = 0.0;
  std::string gain_provenance;
};

Side analyze_side(const SystemSpec& s, const FrequencyGrid& grid, double tol) {
  Side side;
  if (s.lti) {
    const SystemPhaseReport r = lti_phase(*s.lti, grid, tol);
    if (r.interval) side.phase = PhaseInput{*r.interval, r.verdict, "lti-certified"};
    const double nu = lti_passivity_index(*s.lti, grid);
    side.indices = PassivityIndices{nu, nu};
    side.gain = hinf_norm(*s.lti, grid).norm;
    side.gain_provenance = "lti-certified";
  } else {
    const ClosedForm cf = closed_form(*s.nl);
    side.phase = PhaseInput{cf.interval, SectorKind::Sectorial, cf.provenance};
    side.indices = s.nl->indices;
    side.gain = s.nl->gain_bound;
    side.gain_provenance = cf.provenance;
  }
  return side;
}

std::optional<Rational> scalar_rational(const SystemSpec& s) {
  if (s.lti && s.lti->size() == 1 && s.lti->transfer_matrix()) return (*s.lti->transfer_matrix())(0, 0);
  return std::nullopt;
}

int cmd_check_feedback(const fs::path& p_path, const fs::path& c_path, const GridOptions& go, const fs::path& out) {
  const SystemSpec p = load_system(p_path);
  const SystemSpec c = load_system(c_path);
  if (p.channels() != c.channels()) throw InputError("P and C have different dimensions");
  const FrequencyGrid grid = go.grid();
  const Side sp = analyze_side(p, grid, go.tol);
  const Side sc = analyze_side(c, grid, go.tol);

  json criteria = json::array();
  StabilityVerdict gain = small_gain_check(sp.gain, sc.gain);
  gain.provenance = {sp.gain_provenance, sc.gain_provenance};
  criteria.push_back(verdict_json(gain));

  if (sp.phase && sc.phase) {
    criteria.push_back(verdict_json(small_phase_check(*sp.phase, *sc.phase)));
  } else {
    StabilityVerdict v;
    v.criterion = "small-phase";
    v.outcome = Outcome::HypothesisUnmet;
    v.note = "a system is not semi-sectorial";
    criteria.push_back(verdict_json(v));
  }
  if (sp.indices && sc.indices) {
    StabilityVerdict v = passivity_index_check(*sp.indices, *sc.indices);
    v.provenance = {sp.gain_provenance, sc.gain_provenance};
    criteria.push_back(verdict_json(v));
  }
  if (p.lti && c.lti) {
    criteria.push_back(verdict_json(freqwise_small_phase_check(*p.lti, *c.lti, grid, go.tol)));
    try {
      const FrequencywiseReport fw = lti_phase_frequencywise(*p.lti, grid, go.tol);
      criteria.push_back(verdict_json(generalized_small_phase_check(*p.lti, *c.lti, fw.multiplier, grid, go.tol)));
    } catch (const IndefiniteError& e) {
      StabilityVerdict v;
      v.criterion = "generalized-small-phase";
      v.outcome = Outcome::HypothesisUnmet;
      v.note = e.what();
      criteria.push_back(verdict_json(v));
    }
  }

  json j = {{"schema_version", kSchemaVersion},
            {"command", "check-feedback"},
            {"config",
             {{"P", p_path.string()}, {"C", c_path.string()}, {"P_source", p.source}, {"C_source", c.source},
              {"grid", go.to_json()}}}};

  const auto rational = scalar_rational(p);
  if (rational && c.nl && c.nl->sector) {
    const SectorBound& bound = *c.nl->sector;
    criteria.push_back(verdict_json(circle_criterion_check(*rational, bound, grid)));
    criteria.push_back(verdict_json(phase_cone_check(*rational, bound, grid, go.tol)));
    const ForbiddenRegion region = ForbiddenRegion::of(bound);
    j["forbidden_region"] = {{"disk", {{"center", region.disk.center.real()}, {"radius", region.disk.radius}}},
                             {"cone", {{"theta_rad", region.theta},
                                       {"allowed_lo_rad", region.allowed_lo()},
                                       {"allowed_hi_rad", region.allowed_hi()},
                                       {"contains_disk", region.cone_contains_disk()}}}};
    std::string nyq = "w,re,im\n";
    for (const auto& pt : nyquist_curve(*rational, grid))
      nyq += fmt(pt.omega) + "," + fmt(pt.value.real()) + "," + fmt(pt.value.imag()) + "\n";
    const fs::path nyq_path = sibling(out, "_nyquist.csv");
    write_text_atomic(nyq_path, nyq);
    j["nyquist_csv"] = nyq_path.filename().string();
  }

  if (sp.phase && sc.phase) {
    const PhaseInterval& a = sp.phase->interval;
    const PhaseInterval& b = sc.phase->interval;
    if (a.hi() + b.hi() <= kPi + kBoundaryBand && a.lo() + b.lo() >= -kPi - kBoundaryBand) {
      const auto [g1, g2] = closed_loop_phase_bound(a, b);
      j["closed_loop_phase"] = {{"e1_to_y1", interval_json(g1)}, {"e2_to_y2", interval_json(g2)}};
    }
  }
  j["phases"] = {{"P", sp.phase ? interval_json(sp.phase->interval) : json(nullptr)},
                 {"C", sc.phase ? interval_json(sc.phase->interval) : json(nullptr)}};
  j["criteria"] = criteria;
  write_json(out, j);
  for (const auto& v : criteria) std::printf("%-24s %s\n", v["criterion"].get<std::string>().c_str(),
                                             v["outcome"].get<std::string>().c_str());
  return kExitOk;
}

// --------------------------------------------------------------------------
// simulate

RealSignal side_by_side(const RealSignal& a, const RealSignal& b) {
  Eigen::MatrixXd m(a.length(), a.channels() + b.channels());
  m << a.samples(), b.samples();
  return {std::move(m), a.dt()};
}

int cmd_simulate(const fs::path& config, std::optional<double> dt, std::optional<double> duration,
                 std::optional<double> t_after_opt, double threshold, const fs::path& out) {
  const json cfg = load_json(config);
  const ExperimentSpec ex = parse_experiment(cfg, config.parent_path(), dt, duration);
  const SystemPtr p = ex.p.dynamics();
  const SystemPtr c = ex.c.dynamics();
  const FeedbackTrace tr = simulate_feedback(*p, *c, ex.e1, ex.e2);
  const double t_after = t_after_opt.value_or(ex.duration > 40.0 ? 40.0 : 2.0 * ex.duration / 3.0);

  const RealSignal e = side_by_side(ex.e1, ex.e2);
  const RealSignal u = side_by_side(tr.u1, tr.u2);
  const RealSignal y = side_by_side(tr.y1, tr.y2);
  const double decay_u = convergence_metric(u, t_after);
  json decay = {{"u", decay_u},
                {"u1", convergence_metric(tr.u1, t_after)},
                {"u2", convergence_metric(tr.u2, t_after)},
                {"y1", convergence_metric(tr.y1, t_after)},
                {"y2", convergence_metric(tr.y2, t_after)}};

  json j = {{"schema_version", kSchemaVersion},
            {"command", "simulate"},
            {"config", {{"experiment", config.string()}, {"source", cfg}, {"dt", ex.dt}, {"duration", ex.duration},
                        {"t_after", t_after}, {"threshold", threshold}}},
            {"loop_solve", tr.loop_solve},
            {"max_residual", tr.max_residual},
            {"decay", decay},
            {"converged", decay_u <= threshold}};
  if (ex.c.nl && ex.c.nl->indices) {
    const std::vector<RealSignal> us{tr.u2};
    const std::vector<RealSignal> ys{tr.y2};
    const PassivityMargin pm = empirical_passivity(us, ys, ex.c.nl->indices->delta, ex.c.nl->indices->epsilon);
    j["c_passivity_margin"] = pm.margin;
    j["c_passivity_margin_relative"] = pm.relative;
  }
  const double nu2 = norm(tr.u2);
  if (nu2 > 0.0) j["c_gain_lower_bound"] = norm(tr.y2) / nu2;

  const fs::path e_path = sibling(out, "_e.csv"), u_path = sibling(out, "_u.csv"), y_path = sibling(out, "_y.csv");
  write_csv(e, e_path);
  write_csv(u, u_path);
  write_csv(y, y_path);
  j["traces"] = {{"e", e_path.filename().string()}, {"u", u_path.filename().string()}, {"y", y_path.filename().string()},
                 {"layout", "first half of the channels belongs to loop 1, second half to loop 2"}};
  write_json(out, j);
  std::printf("decay ratio %.3g (t >= %g s), %s\n", decay_u, t_after, decay_u <= threshold ? "converged" : "not converged");
  return kExitOk;
}

// --------------------------------------------------------------------------
// hilbert-demo

int cmd_hilbert_demo(double freq, int points, double dt, const fs::path& out) {
  if (!(freq > 0.0) || points < 2 || !(dt > 0.0)) throw InputError("need freq > 0, points >= 2, dt > 0");
  Eigen::MatrixXd u(points, 1), expected(points, 1);
  for (int k = 0; k < points; ++k) {
    const double t = k * dt;
    u(k, 0) = std::cos(2.0 * kPi * freq * t);
    expected(k, 0) = std::sin(2.0 * kPi * freq * t);
  }
  const RealSignal us(u, dt);
  const RealSignal hu = hilbert(us);
  const double rms = std::sqrt((hu.samples() - expected).squaredNorm() / points);
  Eigen::MatrixXd all(points, 3);
  all << u, hu.samples(), expected;
  const fs::path csv = sibling(out, ".csv");
  write_csv(RealSignal(all, dt), csv);
  const double cycles = freq * points * dt;
  json j = {{"schema_version", kSchemaVersion},
            {"command", "hilbert-demo"},
            {"config", {{"freq_hz", freq}, {"points", points}, {"dt", dt}}},
            {"integer_periods", std::abs(cycles - std::round(cycles)) < 1e-9},
            {"rms_error", rms},
            {"norm_ratio", norm(hu) / norm(us)},
            {"csv", csv.filename().string()},
            {"columns", {"u", "hilbert_u", "sin"}}};
  write_json(out, j);
  std::printf("rms error vs sine: %.3g\n", rms);
  return kExitOk;
}

void apply_thread_cap() {
  const char* env = std::getenv("PHASEKIT_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw InputError("PHASEKIT_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"phasekit: phases of dynamical systems and small phase stability checks"};
  app.require_subcommand(1);
  fs::path out;
  GridOptions go;
  CorpusOptions co;

  const auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--wmin", go.wmin, "smallest grid frequency (rad/s)")->check(CLI::PositiveNumber);
    sub->add_option("--wmax", go.wmax, "largest grid frequency (rad/s)")->check(CLI::PositiveNumber);
    sub->add_option("--points", go.points, "log-spaced grid points")->check(CLI::PositiveNumber);
    sub->add_option("--tol", go.tol, "relative PSD tolerance")->check(CLI::PositiveNumber);
  };

  fs::path system, p_path, c_path, config;
  std::optional<fs::path> samples;
  std::optional<double> dt, duration, t_after;
  double threshold = 0.01;
  double freq = 5.0, demo_dt = 1.0 / 512.0;
  int points = 4096;

  auto* lti = app.add_subcommand("analyze-lti", "phase, H-infinity norm and passivity index of an LTI system");
  lti->add_option("system", system, "system file")->required()->check(CLI::ExistingFile);
  lti->add_option("--out", out, "report JSON")->required();
  add_grid(lti);

  auto* nl = app.add_subcommand("analyze-nl", "closed-form and sampled phase of a nonlinear system");
  nl->add_option("system", system, "system file")->required()->check(CLI::ExistingFile);
  nl->add_option("--out", out, "report JSON")->required();
  nl->add_option("--samples", samples, "phase sample CSV");
  nl->add_option("--seed", co.seed, "corpus seed");
  nl->add_option("--corpus-size", co.size, "corpus size")->check(CLI::PositiveNumber);
  nl->add_option("--dt", co.dt, "corpus sample time")->check(CLI::PositiveNumber);
  nl->add_option("--duration", co.duration, "corpus window (s)")->check(CLI::PositiveNumber);

  auto* fb = app.add_subcommand("check-feedback", "stability criteria for the loop P # C");
  fb->add_option("P", p_path, "plant file")->required()->check(CLI::ExistingFile);
  fb->add_option("C", c_path, "controller file")->required()->check(CLI::ExistingFile);
  fb->add_option("--out", out, "verdict JSON")->required();
  add_grid(fb);

  auto* sim = app.add_subcommand("simulate", "time-domain feedback experiment");
  sim->add_option("config", config, "experiment file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out, "summary JSON")->required();
  sim->add_option("--dt", dt, "step size")->check(CLI::PositiveNumber);
  sim->add_option("--duration", duration, "horizon (s)")->check(CLI::PositiveNumber);
  sim->add_option("--t-after", t_after, "start of the decay window (s)")->check(CLI::NonNegativeNumber);
  sim->add_option("--threshold", threshold, "decay ratio threshold")->check(CLI::PositiveNumber);

  auto* demo = app.add_subcommand("hilbert-demo", "Hilbert transform of a cosine");
  demo->add_option("--out", out, "summary JSON")->required();
  demo->add_option("--freq", freq, "tone frequency (Hz)")->check(CLI::PositiveNumber);
  demo->add_option("--points", points, "samples")->check(CLI::PositiveNumber);
  demo->add_option("--dt", demo_dt, "sample time")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  apply_thread_cap();

  if (*lti) return cmd_analyze_lti(system, go, out);
  if (*nl) return cmd_analyze_nl(system, co, samples, out);
  if (*fb) return cmd_check_feedback(p_path, c_path, go, out);
  if (*sim) return cmd_simulate(config, dt, duration, t_after, threshold, out);
  return cmd_hilbert_demo(freq, points, demo_dt, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UnstableError& e) {
    std::cerr << "unstable: " << e.what() << " (pole " << e.witness().real() << (e.witness().imag() < 0 ? "" : "+")
              << e.witness().imag() << "j)\n";
    return kExitUnstable;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const IndefiniteError& e) {
    std::cerr << "indefinite: " << e.what() << "\n";
    return kExitIndefinite;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"phasekit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace phasekit
