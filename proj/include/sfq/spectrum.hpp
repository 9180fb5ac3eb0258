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

#ifndef SFQ_SPECTRUM_HPP
#define SFQ_SPECTRUM_HPP

#include <span>
#include <string>
#include <vector>

#include "sfq/params.hpp"
#include "sfq/pulsetrain.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// F(w) * sum_k p_k (area_k / Phi0) e^{-i w t_k}: single-bin Fourier sum of a
/// pulse train in units of one flux quantum.
Complex phasor_sum(const PulseTrain& train, double omega, const PulseShape& shape);

/// |phasor_sum| / number of pulses. A resonant single sequence of delta
/// pulses gives exactly 1. Throws Error(kDomain) for an empty train.
double spectral_component(const PulseTrain& train, double omega,
                          const PulseShape& shape = PulseShape::delta());

struct TuningPoint {
  double two_phi = 0.0;
  double ratio = 0.0;
};

struct TuningCurve {
  std::vector<TuningPoint> points;
  /// Amplitudes are compared per clock cycle: a dual and a single sequence with
  /// the same number of cycles, i.e. twice as many pulses in the dual one.
  std::string normalization = "per-cycle: |A_dual(w01)| / |A_single(w01)| at equal cycle count";
};

/// Dual-over-single resonant amplitude for each phi (delta pulses). Equals
/// 2 cos(phi). Throws Error(kRange) for phi outside (0, pi).
TuningCurve tuning_curve(std::span<const double> phi_grid, const QubitParams& params,
                         std::size_t n_cycles);

/// A(omega12) / A(omega01). Throws Error(kDomain) when A(omega01) vanishes.
double leakage_ratio(const PulseTrain& train, const QubitParams& params,
                     const PulseShape& shape = PulseShape::delta());

struct LeakageRatioPoint {
  double two_phi = 0.0;  // after calibration to the target angle
  std::size_t n_cycles = 0;
  double ratio = 0.0;     // NaN when the row could not be calibrated
  std::string warning;
};

/// Leakage ratio of dual-pulse trains calibrated to `target_angle` across a
/// grid of nominal phi values. For each phi, n = ceil(target / (2 |cos phi|
/// dtheta)) cycles and phi is then re-solved so that n cycles deliver exactly
/// the target (phi > pi/2 gives the same rotation about the opposite axis).
std::vector<LeakageRatioPoint> leakage_ratio_sweep(std::span<const double> phi_grid,
                                                   const QubitParams& params, double target_angle,
                                                   const PulseShape& shape = PulseShape::delta());

/// The single-sequence gate for the same target: round(target / dtheta) pulses.
double single_sequence_leakage_ratio(const QubitParams& params, double target_angle,
                                     const PulseShape& shape = PulseShape::delta());

struct EnvelopeRow {
  double t_gate = 0.0;   // s
  std::size_t n_cycles = 0;
  double ratio_rect = 0.0;
  double ratio_gauss = 0.0;
};

/// For each gate length, a constant-strength (rectangle) and a Gaussian
/// envelope train realizing `target_angle`, and both leakage ratios.
/// n = round(t_gate / T). Propagates Error(kEnvelope) when a length is too
/// short for either envelope.
std::vector<EnvelopeRow> envelope_comparison(std::span<const double> gate_lengths,
                                             const QubitParams& params, double target_angle = kPi,
                                             double sigma_factor = 4.0,
                                             const PulseShape& shape = PulseShape::delta(),
                                             bool hardware_constrained = false);

}  // namespace sfq

#endif  // SFQ_SPECTRUM_HPP
