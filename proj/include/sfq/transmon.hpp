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

#ifndef SFQ_TRANSMON_HPP
#define SFQ_TRANSMON_HPP

#include "sfq/params.hpp"
#include "sfq/pulsetrain.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Fraction of the literal drive-term integral applied per pulse. The drive
/// term integrated over one flux-quantum pulse gives exp(dtheta M), whose 0-1
/// block rotates by 2 dtheta; the per-pulse 0-1 rotation is dtheta, so both
/// engines scale the generator by 1/2.
inline constexpr double kKickScale = 0.5;

/// Real antisymmetric drive generator [[0,-1,0],[1,0,-sqrt2],[0,sqrt2,0]].
Eigen::Matrix3d kick_generator();

/// diag(1, e^{-i w01 dt}, e^{-i (2 w01 - alpha) dt}). Throws Error(kDomain)
/// for dt < 0.
Unitary3 free_propagator(double dt, const QubitParams& params);

/// exp(kKickScale * kick_angle * M), evaluated in closed form.
Unitary3 kick_propagator(double kick_angle);

/// Finite-width kick: the 0-1 and 1-2 couplings are weighted by the pulse
/// shape's form factor at omega01 and |omega12|. Reduces to the plain kick for
/// delta pulses.
Unitary3 kick_propagator(double kick_angle, const PulseShape& shape, const QubitParams& params);

struct Evolution {
  State3 state;
  Unitary3 propagator;
};

/// Chronological product of kicks and free propagators over
/// [first event, last event]. An empty train yields (initial, I).
Evolution evolve_kicks(const PulseTrain& train, const QubitParams& params, const State3& initial,
                       const PulseShape& shape = PulseShape::delta());

/// Same, over an explicit window [t_start, t_end] that must contain every
/// event; free evolution fills the margins.
Evolution evolve_kicks_window(const PulseTrain& train, const QubitParams& params,
                              const State3& initial, double t_start, double t_end,
                              const PulseShape& shape = PulseShape::delta());

/// State-only propagation (no propagator accumulation), for benchmarking loops.
State3 evolve_kicks_state(const PulseTrain& train, const QubitParams& params, State3 state,
                          const PulseShape& shape = PulseShape::delta());

/// Time-dependent Schroedinger integration of
///   d psi / dt = -i D psi + kKickScale (dtheta / Phi0) V(t) M psi
/// from the waveform's first to last sample, fixed-step RK4 with step
/// 2 * sample_interval (exact samples at step ends and midpoints; a trailing
/// odd interval uses linear interpolation at its midpoint). Throws
/// Error(kResolution) with fewer than 20 samples per period of the fastest
/// level frequency.
State3 evolve_waveform(const Waveform& waveform, const QubitParams& params, const State3& initial);

/// Maps a lab-frame three-level propagator over [t_start, t_end] into the
/// frame rotating at (0, w01, 2 w01).
Unitary3 to_rotating_frame(const Unitary3& lab, const QubitParams& params, double t_start,
                           double t_end);

State3 basis_state(int level);

/// |a_2|^2.
double leakage(const State3& state);

/// Average gate fidelity with leakage, (Tr(M^+ M) + |Tr M|^2) / 6, where M is
/// target^+ times the 0-1 block of u_sim.
double gate_fidelity(const Unitary3& u_sim, const Unitary2& u_target);

/// |<a|b>|^2.
double state_fidelity(const State3& a, const State3& b);

}  // namespace sfq

#endif  // SFQ_TRANSMON_HPP
