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

#include "sfq/spectrum.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sfq/error.hpp"

namespace sfq {

Complex phasor_sum(const PulseTrain& train, double omega, const PulseShape& shape) {
  // Goertzel-style single-bin accumulation; pulse times are irregular, so each
  // term gets its own phase.
  Complex acc{0.0, 0.0};
  for (const auto& e : train.events()) {
    acc += (e.polarity * e.area / kFluxQuantum) * std::polar(1.0, -omega * e.time);
  }
  return shape.form_factor(omega) * acc;
}

double spectral_component(const PulseTrain& train, double omega, const PulseShape& shape) {
  if (train.empty()) throw Error(ErrorKind::kDomain, "spectral component of an empty train");
  return std::abs(phasor_sum(train, omega, shape)) / static_cast<double>(train.size());
}

TuningCurve tuning_curve(std::span<const double> phi_grid, const QubitParams& params,
                         std::size_t n_cycles) {
  TuningCurve curve;
  const PulseTrain single = single_sequence(n_cycles, params);
  const double reference = std::abs(phasor_sum(single, params.omega01, PulseShape::delta()));
  for (double phi : phi_grid) {
    const auto dual = dual_sequence(n_cycles, phi, 0.0, params);
    const double a = std::abs(phasor_sum(dual.train, params.omega01, PulseShape::delta()));
    curve.points.push_back({2.0 * phi, a / reference});
  }
  return curve;
}

double leakage_ratio(const PulseTrain& train, const QubitParams& params, const PulseShape& shape) {
  const double a01 = spectral_component(train, params.omega01, shape);
  const double a12 = spectral_component(train, params.omega12(), shape);
  // Relative to the largest possible value (all phasors aligned).
  if (!(a01 > 1e-12 * shape.form_factor(params.omega01))) {
    throw Error(ErrorKind::kDomain,
                "resonant spectral component vanishes; leakage ratio is undefined");
  }
  return a12 / a01;
}

std::vector<LeakageRatioPoint> leakage_ratio_sweep(std::span<const double> phi_grid,
                                                   const QubitParams& params, double target_angle,
                                                   const PulseShape& shape) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  std::vector<LeakageRatioPoint> out;
  for (double phi : phi_grid) {
    check_phi(phi, false);
    const double c = std::abs(std::cos(phi));
    if (c < 1e-12) {
      out.push_back({2.0 * phi, 0, kNaN, "phi = pi/2 delivers no rotation"});
      continue;
    }
    const double n_real = target_angle / (2.0 * c * params.delta_theta);
    // Smallest n that reaches the target at this strength; rounding to nearest
    // would push arg past 1 just below every integer n_real.
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(n_real - 1e-9)));
    double arg = target_angle / (2.0 * static_cast<double>(n) * params.delta_theta);
    if (arg > 1.0 && arg < 1.0 + 1e-9) arg = 1.0;
    if (arg > 1.0) {
      std::ostringstream msg;
      msg << "target infeasible in " << n << " cycles";
      out.push_back({2.0 * phi, n, kNaN, msg.str()});
      continue;
    }
    double phi_cal = std::acos(arg);
    if (phi > kPi / 2) phi_cal = kPi - phi_cal;
    const auto dual = dual_sequence(n, phi_cal, 0.0, params);
    try {
      out.push_back({2.0 * phi_cal, n, leakage_ratio(dual.train, params, shape), ""});
    } catch (const Error& e) {
      out.push_back({2.0 * phi_cal, n, kNaN, e.what()});
    }
  }
  return out;
}

double single_sequence_leakage_ratio(const QubitParams& params, double target_angle,
                                     const PulseShape& shape) {
  const auto n =
      static_cast<std::size_t>(std::max(1.0, std::round(target_angle / params.delta_theta)));
  return leakage_ratio(single_sequence(n, params), params, shape);
}

std::vector<EnvelopeRow> envelope_comparison(std::span<const double> gate_lengths,
                                             const QubitParams& params, double target_angle,
                                             double sigma_factor, const PulseShape& shape,
                                             bool hardware_constrained) {
  std::vector<EnvelopeRow> rows;
  const double period = params.clock_period();
  for (double t_gate : gate_lengths) {
    if (!(t_gate > 0.0)) throw Error(ErrorKind::kDomain, "gate length must be positive");
    const auto n = static_cast<std::size_t>(std::max(1.0, std::round(t_gate / period)));
    const std::vector<double> rect(n, target_angle / static_cast<double>(n));
    const std::vector<double> gauss =
        gaussian_envelope(n, target_angle, sigma_factor, params.delta_theta, hardware_constrained);
    const auto rect_train = shaped_sequence(rect, 0.0, params, hardware_constrained);
    const auto gauss_train = shaped_sequence(gauss, 0.0, params, hardware_constrained);
    rows.push_back({t_gate, n, leakage_ratio(rect_train.train, params, shape),
                    leakage_ratio(gauss_train.train, params, shape)});
  }
  return rows;
}

}  // namespace sfq
