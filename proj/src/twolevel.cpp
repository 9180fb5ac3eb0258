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

#include "sfq/twolevel.hpp"

#include <algorithm>
#include <cmath>

#include "sfq/error.hpp"

namespace sfq {

namespace {

constexpr Complex kI{0.0, 1.0};

Unitary2 free_precession(double phase) {
  Unitary2 u = Unitary2::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = std::exp(-kI * phase);
  return u;
}

}  // namespace

Unitary2 rotation_z(double angle) {
  Unitary2 u = Unitary2::Zero();
  u(0, 0) = std::exp(-kI * (angle / 2));
  u(1, 1) = std::exp(kI * (angle / 2));
  return u;
}

Unitary2 rotation_y(double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  Unitary2 u;
  u << c, -s, s, c;
  return u;
}

Unitary2 rotation_x(double angle) { return rotation_axis(0.0, angle); }

Unitary2 rotation_axis(double axis_angle, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  // cos(t/2) I - i sin(t/2) (cos a X + sin a Y)
  const Complex off = -kI * s * std::exp(-kI * axis_angle);
  Unitary2 u;
  u << c, off, -std::conj(off), c;
  return u;
}

Unitary2 cycle_unitary_exact(double delta_theta, double phi) {
  return rotation_z(phi) * rotation_y(delta_theta) * rotation_z(kTwoPi - 2 * phi) *
         rotation_y(delta_theta) * rotation_z(phi);
}

Unitary2 cycle_unitary_closed_form(double delta_theta, double phi) {
  const double c2 = std::pow(std::cos(delta_theta / 2), 2);
  const double s2 = std::pow(std::sin(delta_theta / 2), 2);
  const double off = std::cos(phi) * std::sin(delta_theta);
  Unitary2 u;
  u << -c2 - s2 * std::exp(-kI * (2 * phi - kPi)), off,
      -off, -c2 - s2 * std::exp(kI * (2 * phi - kPi));
  return u;
}

Unitary2 cycle_unitary_approx(double delta_theta, double phi) {
  return -rotation_y(effective_delta_theta(delta_theta, phi));
}

double effective_delta_theta(double delta_theta, double phi) {
  return 2.0 * std::cos(phi) * delta_theta;
}

double operator_norm_distance(const Unitary2& a, const Unitary2& b) {
  Eigen::JacobiSVD<Unitary2> svd(a - b);
  return svd.singularValues()(0);
}

double projective_distance(const Unitary2& a, const Unitary2& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0};
  return (a - phase * b).norm();
}

bool equal_up_to_phase(const Unitary2& a, const Unitary2& b, double tol) {
  return projective_distance(a, b) <= tol;
}

double BlochPoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochPoint bloch_from_state(const State2& s) {
  const Complex c = std::conj(s(0)) * s(1);
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(s(0)) - std::norm(s(1))};
}

State2 state_from_bloch(const BlochPoint& p) {
  const double r = p.norm();
  if (!(r > 0.0)) throw Error(ErrorKind::kDomain, "Bloch vector must be non-zero");
  const double z = std::clamp(p.z / r, -1.0, 1.0);
  const double theta = std::acos(z);
  const double azimuth = std::atan2(p.y, p.x);
  State2 s;
  s << std::cos(theta / 2), std::exp(kI * azimuth) * std::sin(theta / 2);
  return s;
}

Unitary2 propagate_train(const PulseTrain& train, const QubitParams& params) {
  Unitary2 u = Unitary2::Identity();
  const auto& events = train.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i > 0) u = free_precession(params.omega01 * (events[i].time - events[i - 1].time)) * u;
    u = rotation_y(params.delta_theta * events[i].polarity) * u;
  }
  return u;
}

Unitary2 to_rotating_frame(const Unitary2& lab, double omega01, double t_start, double t_end) {
  return free_precession(-omega01 * t_end) * lab * free_precession(omega01 * t_start);
}

std::vector<TrajectoryPoint> evolve_bloch(const DualPulseSchedule& schedule,
                                          const BlochPoint& initial, std::size_t substeps) {
  if (substeps == 0) throw Error(ErrorKind::kDomain, "substeps must be at least 1");
  State2 state = state_from_bloch(initial);
  std::vector<TrajectoryPoint> out;
  if (schedule.cycles.empty()) {
    out.push_back({0.0, bloch_from_state(state)});
    return out;
  }
  const auto& p = schedule.params;
  const double period = p.clock_period();
  const auto center = [&](const DualCycle& c) {
    return (static_cast<double>(c.index) + c.psi / kTwoPi) * period;
  };
  const double t_begin = center(schedule.cycles.front()) - 0.5 * period;
  const double t_end = center(schedule.cycles.back()) + 0.5 * period;

  std::vector<double> kicks;
  for (const auto& c : schedule.cycles) {
    const auto [a, b] = dual_event_times(c, p);
    kicks.push_back(a);
    kicks.push_back(b);
  }
  std::sort(kicks.begin(), kicks.end());

  const Unitary2 kick = rotation_y(p.delta_theta);
  double t = t_begin;
  out.push_back({t, bloch_from_state(state)});
  auto advance_to = [&](double target) {
    const double start = t;
    const double span = target - start;
    State2 base = state;
    for (std::size_t j = 1; j <= substeps; ++j) {
      const double tj = j == substeps
                            ? target
                            : start + span * static_cast<double>(j) / static_cast<double>(substeps);
      state = free_precession(p.omega01 * (tj - start)) * base;
      out.push_back({tj, bloch_from_state(state)});
    }
    t = target;
  };
  for (double tk : kicks) {
    advance_to(std::max(tk, t));
    state = kick * state;
    out.push_back({t, bloch_from_state(state)});
  }
  advance_to(std::max(t_end, t));
  return out;
}

}  // namespace sfq
