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

#ifndef SFQ_TWOLEVEL_HPP
#define SFQ_TWOLEVEL_HPP

#include <cstddef>
#include <vector>

#include "sfq/params.hpp"
#include "sfq/pulsetrain.hpp"
#include "sfq/types.hpp"

namespace sfq {

// Half-angle rotations: R_z(t) = diag(e^{-it/2}, e^{it/2}),
// R_y(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
Unitary2 rotation_z(double angle);
Unitary2 rotation_y(double angle);
Unitary2 rotation_x(double angle);
/// Rotation by `angle` about the xy-plane axis (cos a, sin a, 0); a = 0 is X,
/// a = pi/2 is Y.
Unitary2 rotation_axis(double axis_angle, double angle);

/// Per-cycle propagator of a resonant dual-pulse train as the five-factor
/// product R_z(phi) R_y(dtheta) R_z(2pi - 2phi) R_y(dtheta) R_z(phi).
Unitary2 cycle_unitary_exact(double delta_theta, double phi);

/// The same propagator from its closed form:
///   [[-cos^2(d/2) - sin^2(d/2) e^{-i(2phi - pi)},  cos(phi) sin(d)],
///    [-cos(phi) sin(d), -cos^2(d/2) - sin^2(d/2) e^{+i(2phi - pi)}]].
Unitary2 cycle_unitary_closed_form(double delta_theta, double phi);

/// Small-angle form R_y(2 cos(phi) dtheta) R_z(2pi) = -R_y(2 cos(phi) dtheta).
Unitary2 cycle_unitary_approx(double delta_theta, double phi);

/// 2 cos(phi) delta_theta: net 0-1 rotation delivered per dual-pulse cycle.
double effective_delta_theta(double delta_theta, double phi);

/// Largest singular value of a - b.
double operator_norm_distance(const Unitary2& a, const Unitary2& b);

/// min over theta of the Frobenius norm |a - e^{i theta} b|.
double projective_distance(const Unitary2& a, const Unitary2& b);
bool equal_up_to_phase(const Unitary2& a, const Unitary2& b, double tol);

struct BlochPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm() const;
};

BlochPoint bloch_from_state(const State2& state);
State2 state_from_bloch(const BlochPoint& point);

struct TrajectoryPoint {
  double t = 0.0;  // s
  BlochPoint r;
};

/// Lab-frame two-level propagator of a pulse train, H = diag(0, omega01):
/// kicks R_y(delta_theta * polarity) separated by free precession. Spans
/// [first event, last event].
Unitary2 propagate_train(const PulseTrain& train, const QubitParams& params);

/// Maps a lab-frame propagator over [t_start, t_end] into the frame rotating
/// at omega01, where a kick at time t rotates about the axis pi/2 + omega01 t.
Unitary2 to_rotating_frame(const Unitary2& lab, double omega01, double t_start, double t_end);

/// Lab-frame Bloch trajectory of a dual-pulse schedule. The window runs from
/// half a clock period before the first cycle center to half a period after
/// the last; every free segment between breakpoints is sampled `substeps`
/// times. An empty schedule returns the single initial point.
std::vector<TrajectoryPoint> evolve_bloch(const DualPulseSchedule& schedule,
                                          const BlochPoint& initial, std::size_t substeps);

}  // namespace sfq

#endif  // SFQ_TWOLEVEL_HPP
