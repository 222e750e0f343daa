// Copyright 2026 The phasekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// JSON system and experiment files.
//
//   {"kind":"tf","entries":[[{"num":[1,6],"den":[1,0.1,1]}, ...], ...]}
//   {"kind":"ss","A":[[..]],"B":[[..]],"C":[[..]],"D":[[..]]}
//   {"kind":"nl","model":"vsp-cubic"}
//   {"kind":"nl","model":"sector","map":"saturation","a":0.5,"b":1.5,"level":1,"channels":1}
//   {"kind":"nl","model":"quantizer","rho":0.3333333333333333,"channels":1}
//   {"kind":"nl","model":"vsp","delta":0.6666666666666666,"epsilon":0.3333333333333333}

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "phasekit/lti.hpp"
#include "phasekit/phase.hpp"
#include "phasekit/sim.hpp"

namespace phasekit {

struct NonlinearModel {
  std::string model;
  std::optional<SectorBound> sector;       // static sector maps and quantizers
  std::optional<PassivityIndices> indices;  // very strict passivity indices
  double gain_bound = 0.0;                  // certified L2-gain upper bound
  SystemPtr dynamics;                       // null for closed-form-only models
};

struct SystemSpec {
  std::string kind;  // "tf", "ss" or "nl"
  std::optional<LtiSystem> lti;
  std::optional<NonlinearModel> nl;
  nlohmann::json source;

  int channels() const;
  /// Simulatable form; throws InputError for closed-form-only models.
  SystemPtr dynamics() const;
};

SystemSpec parse_system(const nlohmann::json& j);
SystemSpec load_system(const std::filesystem::path& path);

/// Reads a JSON file; parse errors become InputError.
nlohmann::json load_json(const std::filesystem::path& path);

struct ExperimentSpec {
  SystemSpec p;
  SystemSpec c;
  RealSignal e1;
  RealSignal e2;
  double dt = 1e-3;
  double duration = 60.0;
};

/// {"P":<system file path or object>,"C":...,"e1":<csv path | signal spec>,"e2":...,"dt":..,"duration":..}.
/// Signal specs: {"type":"pulses"} (the bundled pair), {"type":"zero"},
/// {"type":"step","channel":0,"amplitude":1},
/// {"type":"pulse","channel":0,"amplitude":1,"start":0,"width":1}. Relative paths resolve against `base`.
/// `dt`/`duration` override the file values when set.
ExperimentSpec parse_experiment(const nlohmann::json& j, const std::filesystem::path& base,
                                std::optional<double> dt = std::nullopt,
                                std::optional<double> duration = std::nullopt);

}  // namespace phasekit
