// Copyright 2026 The sfqdrive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sfq/params.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sfq/error.hpp"
#include "sfq/types.hpp"

namespace sfq {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kEmptyTrain: return "empty_train";
    case ErrorKind::kEnvelope: return "envelope";
    case ErrorKind::kResolution: return "resolution";
    case ErrorKind::kData: return "data";
    case ErrorKind::kCalibration: return "calibration";
    case ErrorKind::kCompile: return "compile";
    case ErrorKind::kFit: return "fit";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

QubitParams QubitParams::make(double omega01, double alpha, double delta_theta,
                              double clock_omega) {
  QubitParams p;
  p.omega01 = omega01;
  p.alpha = std::abs(alpha);
  p.delta_theta = delta_theta;
  p.clock_omega = clock_omega > 0.0 ? clock_omega : omega01;
  return p;
}

QubitParams QubitParams::from_hz(double f01_hz, double alpha_hz, double delta_theta,
                                 double clock_hz) {
  return make(kTwoPi * f01_hz, kTwoPi * alpha_hz, delta_theta, kTwoPi * clock_hz);
}

double QubitParams::clock_period() const { return kTwoPi / clock_omega; }

QubitParams benchmark_parameter_set(int which) {
  switch (which) {
    case 1: return QubitParams::from_hz(5e9, 400e6, kPi / 30.0);
    case 2: return QubitParams::from_hz(5e9, 450e6, kPi / 60.0);
    default: break;
  }
  throw Error(ErrorKind::kDomain, "unknown benchmark parameter set " + std::to_string(which));
}

double delta_theta_from_circuit(const CouplingSpec& coupling, double omega01,
                                const PhysicalConstants& constants) {
  if (!(coupling.c_coupling >= 0.0)) {
    throw Error(ErrorKind::kDomain, "coupling capacitance must be non-negative");
  }
  if (!(coupling.c_qubit > 0.0) || !(omega01 > 0.0) || !(constants.phi0 > 0.0) ||
      !(constants.hbar > 0.0)) {
    throw Error(ErrorKind::kDomain,
                "qubit capacitance, omega01 and physical constants must be positive");
  }
  return coupling.c_coupling * constants.phi0 *
         std::sqrt(2.0 * omega01 / (constants.hbar * coupling.c_qubit));
}

std::vector<Violation> validate(const QubitParams& p) {
  std::vector<Violation> out;
  if (!(p.omega01 > 0.0)) out.push_back({"omega01", "omega01 > 0 required"});
  if (!(p.alpha > 0.0)) out.push_back({"alpha", "alpha > 0 required"});
  if (!(p.alpha < p.omega01)) out.push_back({"alpha", "alpha < omega01 required"});
  if (!(p.delta_theta > 0.0 && p.delta_theta < kPi / 2.0)) {
    out.push_back({"delta_theta", "delta_theta out of (0, pi/2)"});
  }
  if (!(p.clock_omega > 0.0) || !std::isfinite(p.clock_period())) {
    out.push_back({"clock_omega", "clock period must be positive and finite"});
  }
  return out;
}

std::vector<Violation> validate(const CouplingSpec& c) {
  std::vector<Violation> out;
  if (!(c.c_coupling > 0.0)) out.push_back({"c_coupling", "c_coupling > 0 required"});
  if (!(c.c_qubit > 0.0)) out.push_back({"c_qubit", "c_qubit > 0 required"});
  if (c.c_qubit > 0.0 && c.c_coupling / c.c_qubit > 0.1) {
    std::ostringstream msg;
    msg << "c_coupling/c_qubit = " << c.c_coupling / c.c_qubit
        << " exceeds 0.1; weak-coupling formula is questionable";
    out.push_back({"c_coupling", msg.str(), true});
  }
  return out;
}

bool has_errors(const std::vector<Violation>& violations) {
  for (const auto& v : violations) {
    if (!v.warning) return true;
  }
  return false;
}

namespace {

double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorKind::kConfig, std::string("missing key '") + key + "'");
  }
  if (!j.at(key).is_number()) {
    throw Error(ErrorKind::kConfig, std::string("key '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

QubitParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "parameter file must be a JSON object");
  if (j.contains("preset")) {
    const auto& preset = j.at("preset");
    if (preset == "I" || preset == 1) return benchmark_parameter_set(1);
    if (preset == "II" || preset == 2) return benchmark_parameter_set(2);
    throw Error(ErrorKind::kConfig, "preset must be \"I\" or \"II\"");
  }
  const double f01 = require_number(j, "omega01_hz");
  const double alpha = require_number(j, "alpha_hz");
  double dtheta = 0.0;
  if (j.contains("delta_theta_rad")) {
    dtheta = require_number(j, "delta_theta_rad");
  } else if (j.contains("coupling")) {
    const auto& c = j.at("coupling");
    CouplingSpec spec{require_number(c, "c_coupling_f"), require_number(c, "c_qubit_f")};
    dtheta = delta_theta_from_circuit(spec, kTwoPi * f01);
  } else {
    throw Error(ErrorKind::kConfig, "either 'delta_theta_rad' or 'coupling' is required");
  }
  const double clock = j.contains("clock_hz") ? require_number(j, "clock_hz") : 0.0;
  return QubitParams::from_hz(f01, alpha, dtheta, clock);
}

nlohmann::json params_to_json(const QubitParams& p) {
  return nlohmann::json{{"omega01_hz", p.omega01 / kTwoPi},
                        {"alpha_hz", p.alpha / kTwoPi},
                        {"delta_theta_rad", p.delta_theta},
                        {"clock_hz", p.clock_omega / kTwoPi}};
}

}  // namespace sfq
