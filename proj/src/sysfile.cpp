// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasekit/sysfile.hpp"

#include <cmath>

#include "phasekit/errors.hpp"
#include "phasekit/io.hpp"

namespace phasekit {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw InputError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::vector<double> coeffs(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InputError(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Eigen::MatrixXd matrix(const json& j, const char* key, Eigen::Index rows_if_empty, Eigen::Index cols_if_empty) {
  const json& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be a nested array");
  if (v.empty()) return Eigen::MatrixXd::Zero(rows_if_empty, cols_if_empty);
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(v.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = v.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError(std::string("field \"") + key + "\" has ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& x = row.at(static_cast<std::size_t>(c));
      if (!x.is_number()) throw InputError(std::string("field \"") + key + "\" must hold numbers");
      m(r, c) = x.get<double>();
    }
  }
  return m;
}

int channel_count(const json& j) {
  if (!j.contains("channels")) return 1;
  const double c = number(j, "channels");
  if (!(c >= 1.0) || c != std::floor(c)) throw InputError("channels must be a positive integer");
  return static_cast<int>(c);
}

NonlinearModel parse_nl(const json& j) {
  NonlinearModel m;
  const json& model = field(j, "model");
  if (!model.is_string()) throw InputError("field \"model\" must be a string");
  m.model = model.get<std::string>();
  if (m.model == "vsp-cubic") {
    m.indices = PassivityIndices{2.0 / 3.0, 1.0 / 3.0};
    m.gain_bound = 1.0 / m.indices->epsilon;
    m.dynamics = make_cubic_vsp_system();
  } else if (m.model == "vsp") {
    m.indices = PassivityIndices{number(j, "delta"), number(j, "epsilon")};
    vsp_phase(*m.indices);  // validates the domain
    m.gain_bound = 1.0 / m.indices->epsilon;
  } else if (m.model == "quantizer") {
    const SectorMap map = SectorMap::quantizer(number(j, "rho"));
    m.sector = map.sector();
    m.dynamics = make_static_map(map, channel_count(j));
  } else if (m.model == "sector") {
    const json& kind = field(j, "map");
    if (!kind.is_string()) throw InputError("field \"map\" must be a string");
    const auto name = kind.get<std::string>();
    const double a = number(j, "a");
    const double b = number(j, "b");
    SectorMap map = SectorMap::linear(1.0);
    if (name == "saturation") {
      map = SectorMap::saturation(a, b, number(j, "level"));
    } else if (name == "piecewise-linear") {
      map = SectorMap::piecewise_linear(a, b, number(j, "knee"));
    } else if (name == "oscillating") {
      map = SectorMap::oscillating(a, b, number(j, "freq"));
    } else {
      throw InputError("unknown sector map \"" + name + "\"");
    }
    m.sector = map.sector();
    m.dynamics = make_static_map(map, channel_count(j));
  } else {
    throw InputError("unknown nonlinear model \"" + m.model + "\"");
  }
  if (m.sector) {
    m.indices = sector_indices(*m.sector);
    m.gain_bound = m.sector->b();
  }
  return m;
}

RealSignal parse_signal(const json& j, const std::filesystem::path& base, int which, int channels, double dt,
                        double duration) {
  if (j.is_string()) {
    std::filesystem::path path = j.get<std::string>();
    if (path.is_relative()) path = base / path;
    RealSignal s = read_csv(path);
    if (std::abs(s.dt() - dt) > 1e-9 * dt) throw InputError("signal file " + path.string() + " has a different dt");
    return s;
  }
  const std::string type = field(j, "type").get<std::string>();
  const auto steps = static_cast<Eigen::Index>(std::llround(duration / dt));
  if (type == "pulses") {
    if (channels != 2) throw InputError("bundled pulses need a two-channel loop");
    auto [e1, e2] = bundled_pulses(dt, duration);
    return which == 1 ? e1 : e2;
  }
  if (type == "zero") return RealSignal::zeros(steps, channels, dt);
  if (type == "step") {
    const double ch = j.contains("channel") ? number(j, "channel") : 0.0;
    if (!(ch >= 0.0 && ch < channels) || ch != std::floor(ch)) throw InputError("step channel out of range");
    const double amp = j.contains("amplitude") ? number(j, "amplitude") : 1.0;
    RealSignal s = RealSignal::zeros(steps, channels, dt);
    s.samples().col(static_cast<Eigen::Index>(ch)).setConstant(amp);
    return s;
  }
  if (type == "pulse") {
    const double ch = j.contains("channel") ? number(j, "channel") : 0.0;
    if (!(ch >= 0.0 && ch < channels) || ch != std::floor(ch)) throw InputError("pulse channel out of range");
    const double amp = j.contains("amplitude") ? number(j, "amplitude") : 1.0;
    const double start = j.contains("start") ? number(j, "start") : 0.0;
    const double width = j.contains("width") ? number(j, "width") : 1.0;
    if (!(width > 0.0) || !(start >= 0.0)) throw InputError("pulse needs start >= 0 and width > 0");
    RealSignal s = RealSignal::zeros(steps, channels, dt);
    for (Eigen::Index k = 0; k < steps; ++k) {
      const double t = static_cast<double>(k) * dt;
      if (t >= start && t < start + width) s.samples()(k, static_cast<Eigen::Index>(ch)) = amp;
    }
    return s;
  }
  throw InputError("unknown signal type \"" + type + "\"");
}

SystemSpec system_entry(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) {
    std::filesystem::path path = j.get<std::string>();
    if (path.is_relative()) path = base / path;
    return load_system(path);
  }
  return parse_system(j);
}

}  // namespace

int SystemSpec::channels() const {
  if (lti) return lti->size();
  if (nl && nl->dynamics) return nl->dynamics->channels();
  return 1;
}

SystemPtr SystemSpec::dynamics() const {
  if (lti) return make_lti_system(lti->realization());
  if (nl && nl->dynamics) return nl->dynamics;
  throw InputError("model \"" + (nl ? nl->model : kind) + "\" has no dynamics to simulate");
}

SystemSpec parse_system(const json& j) {
  SystemSpec spec;
  spec.source = j;
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw InputError("field \"kind\" must be a string");
  spec.kind = kind.get<std::string>();
  if (spec.kind == "tf") {
    const json& rows = field(j, "entries");
    if (!rows.is_array() || rows.empty()) throw InputError("field \"entries\" must be a nonempty nested array");
    const int n = static_cast<int>(rows.size());
    std::vector<Rational> entries;
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) throw InputError("transfer matrix must be square");
      for (const auto& e : row) entries.emplace_back(coeffs(e, "num"), coeffs(e, "den"));
    }
    spec.lti.emplace(TransferMatrix(n, std::move(entries)));
  } else if (spec.kind == "ss") {
    const Eigen::MatrixXd d = matrix(j, "D", 0, 0);
    const Eigen::MatrixXd a = matrix(j, "A", 0, 0);
    StateSpace ss{a, matrix(j, "B", a.rows(), d.cols()), matrix(j, "C", d.rows(), a.rows()), d};
    ss.validate();
    spec.lti.emplace(std::move(ss));
  } else if (spec.kind == "nl") {
    spec.nl = parse_nl(j);
  } else {
    throw InputError("unknown system kind \"" + spec.kind + "\"");
  }
  return spec;
}

json load_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

SystemSpec load_system(const std::filesystem::path& path) {
  try {
    return parse_system(load_json(path));
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

ExperimentSpec parse_experiment(const json& j, const std::filesystem::path& base, std::optional<double> dt,
                                std::optional<double> duration) {
  try {
    ExperimentSpec ex{system_entry(field(j, "P"), base), system_entry(field(j, "C"), base), {}, {}, 1e-3, 60.0};
    ex.dt = dt.value_or(j.contains("dt") ? number(j, "dt") : 1e-3);
    ex.duration = duration.value_or(j.contains("duration") ? number(j, "duration") : 60.0);
    if (!(ex.dt > 0.0) || !(ex.duration > ex.dt)) throw InputError("need dt > 0 and duration > dt");
    const int n = ex.p.channels();
    ex.e1 = parse_signal(field(j, "e1"), base, 1, n, ex.dt, ex.duration);
    ex.e2 = parse_signal(field(j, "e2"), base, 2, n, ex.dt, ex.duration);
    return ex;
  } catch (const json::exception& e) {
    throw InputError(std::string("experiment file: ") + e.what());
  }
}

}  // namespace phasekit
