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

#ifndef SFQ_PARAMS_HPP
#define SFQ_PARAMS_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sfq {

struct PhysicalConstants {
  double phi0;   // magnetic flux quantum h/2e, Wb
  double hbar;   // reduced Planck constant, J s

  /// CODATA 2018 exact values.
  static constexpr PhysicalConstants codata() {
    return {2.067833848461929e-15, 1.054571817646156e-34};
  }
};

/// Flux quantum, the area of every SFQ voltage pulse.
inline constexpr double kFluxQuantum = PhysicalConstants::codata().phi0;

/// Behavioral qubit model. All frequencies are angular (rad/s).
///
/// The second excited level sits at 2*omega01 - alpha; alpha is always stored
/// as a positive magnitude.
struct QubitParams {
  double omega01 = 0.0;
  double alpha = 0.0;
  double delta_theta = 0.0;   // 0-1 rotation per SFQ pulse, rad
  double clock_omega = 0.0;   // SFQ clock; resonant when equal to omega01

  /// Builds from angular frequencies. A negative alpha is normalized to its
  /// magnitude; clock_omega <= 0 selects the resonant clock.
  static QubitParams make(double omega01, double alpha, double delta_theta,
                          double clock_omega = 0.0);
  static QubitParams from_hz(double f01_hz, double alpha_hz, double delta_theta,
                             double clock_hz = 0.0);

  double omega12() const { return omega01 - alpha; }
  double level2_omega() const { return 2.0 * omega01 - alpha; }
  double clock_period() const;
};

/// Parameter sets used for the randomized-benchmarking study:
/// set 1: delta_theta = pi/30, 5 GHz, |alpha|/2pi = 400 MHz;
/// set 2: delta_theta = pi/60, 5 GHz, |alpha|/2pi = 450 MHz.
QubitParams benchmark_parameter_set(int which);

struct CouplingSpec {
  double c_coupling = 0.0;  // F
  double c_qubit = 0.0;     // F
};

struct Violation {
  std::string field;
  std::string message;
  bool warning = false;  // advisory only; does not make the input invalid
};

/// Per-pulse rotation angle C_C * Phi0 * sqrt(2 omega01 / (hbar C)).
/// Throws Error(kDomain) for negative coupling or non-positive C / omega01.
double delta_theta_from_circuit(const CouplingSpec& coupling, double omega01,
                                const PhysicalConstants& constants = PhysicalConstants::codata());

/// Every violated invariant; empty when valid. Warnings are included with
/// warning = true.
std::vector<Violation> validate(const QubitParams& params);
std::vector<Violation> validate(const CouplingSpec& coupling);

bool has_errors(const std::vector<Violation>& violations);

/// Parameter file keys: omega01_hz, alpha_hz, delta_theta_rad (or
/// coupling: {c_coupling_f, c_qubit_f}), clock_hz (optional), or
/// preset: "I" | "II". Throws Error(kConfig) on missing or malformed keys.
QubitParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const QubitParams& params);

}  // namespace sfq

#endif  // SFQ_PARAMS_HPP
