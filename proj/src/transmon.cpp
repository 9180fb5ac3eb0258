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

#include "sfq/transmon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sfq/error.hpp"

namespace sfq {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// exp(theta A) for A = [[0,-a,0],[a,0,-b],[0,b,0]]; A^3 = -(a^2+b^2) A.
Eigen::Matrix3d antisymmetric_exp(double theta, double a, double b) {
  Eigen::Matrix3d gen;
  gen << 0, -a, 0, a, 0, -b, 0, b, 0;
  const double r = std::sqrt(a * a + b * b);
  Eigen::Matrix3d out = Eigen::Matrix3d::Identity();
  if (r == 0.0 || theta == 0.0) return out;
  out += (std::sin(theta * r) / r) * gen + ((1.0 - std::cos(theta * r)) / (r * r)) * (gen * gen);
  return out;
}

struct KickSet {
  Eigen::Matrix3d positive;
  Eigen::Matrix3d negative;
  double coupling_a;
  double coupling_b;

  KickSet(double angle, const PulseShape& shape, const QubitParams& params)
      : coupling_a(shape.form_factor(params.omega01)),
        coupling_b(kSqrt2 * shape.form_factor(std::abs(params.omega12()))) {
    positive = antisymmetric_exp(kKickScale * angle, coupling_a, coupling_b);
    negative = positive.transpose();
  }

  Eigen::Matrix3d for_event(const PulseEvent& e, double delta_theta) const {
    if (e.area == kFluxQuantum) return e.polarity > 0 ? positive : negative;
    return antisymmetric_exp(kKickScale * delta_theta * e.polarity * e.area / kFluxQuantum,
                             coupling_a, coupling_b);
  }
};

void check_window(const PulseTrain& train, double t_start, double t_end) {
  if (!(t_end >= t_start)) throw Error(ErrorKind::kDomain, "window end precedes its start");
  if (!train.empty() && (train.first_time() < t_start || train.last_time() > t_end)) {
    throw Error(ErrorKind::kDomain, "evolution window does not contain every pulse");
  }
}

inline void apply_free(State3& s, double dt, const QubitParams& p) {
  s(1) *= std::polar(1.0, -p.omega01 * dt);
  s(2) *= std::polar(1.0, -p.level2_omega() * dt);
}

inline void apply_free(Unitary3& u, double dt, const QubitParams& p) {
  u.row(1) *= std::polar(1.0, -p.omega01 * dt);
  u.row(2) *= std::polar(1.0, -p.level2_omega() * dt);
}

}  // namespace

Eigen::Matrix3d kick_generator() {
  Eigen::Matrix3d m;
  m << 0, -1, 0, 1, 0, -kSqrt2, 0, kSqrt2, 0;
  return m;
}

Unitary3 free_propagator(double dt, const QubitParams& params) {
  if (!(dt >= 0.0)) throw Error(ErrorKind::kDomain, "free evolution time must be non-negative");
  Unitary3 u = Unitary3::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, -params.omega01 * dt);
  u(2, 2) = std::polar(1.0, -params.level2_omega() * dt);
  return u;
}

Unitary3 kick_propagator(double kick_angle) {
  return antisymmetric_exp(kKickScale * kick_angle, 1.0, kSqrt2).cast<Complex>();
}

Unitary3 kick_propagator(double kick_angle, const PulseShape& shape, const QubitParams& params) {
  return KickSet(kick_angle, shape, params).positive.cast<Complex>();
}

Evolution evolve_kicks_window(const PulseTrain& train, const QubitParams& params,
                              const State3& initial, double t_start, double t_end,
                              const PulseShape& shape) {
  check_window(train, t_start, t_end);
  const KickSet kicks(params.delta_theta, shape, params);
  Unitary3 u = Unitary3::Identity();
  double t = t_start;
  for (const auto& e : train.events()) {
    apply_free(u, e.time - t, params);
    u = kicks.for_event(e, params.delta_theta) * u;
    t = e.time;
  }
  apply_free(u, t_end - t, params);
  return {u * initial, u};
}

Evolution evolve_kicks(const PulseTrain& train, const QubitParams& params, const State3& initial,
                       const PulseShape& shape) {
  if (train.empty()) return {initial, Unitary3::Identity()};
  return evolve_kicks_window(train, params, initial, train.first_time(), train.last_time(), shape);
}

State3 evolve_kicks_state(const PulseTrain& train, const QubitParams& params, State3 state,
                          const PulseShape& shape) {
  const KickSet kicks(params.delta_theta, shape, params);
  const auto& events = train.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i > 0) apply_free(state, events[i].time - events[i - 1].time, params);
    state = kicks.for_event(events[i], params.delta_theta) * state;
  }
  return state;
}

State3 evolve_waveform(const Waveform& waveform, const QubitParams& params,
                       const State3& initial) {
  const auto& v = waveform.samples;
  const double dt = waveform.sample_interval;
  if (!(dt > 0.0)) throw Error(ErrorKind::kDomain, "sample interval must be positive");
  const double fastest = std::max(params.omega01, std::abs(params.level2_omega()));
  if ((kTwoPi / fastest) / dt < 20.0) {
    std::ostringstream msg;
    msg << "waveform has " << (kTwoPi / fastest) / dt
        << " samples per level-2 period; at least 20 required";
    throw Error(ErrorKind::kResolution, msg.str());
  }
  if (v.size() < 2) return initial;

  const Eigen::Matrix3d m = kick_generator();
  const double g = kKickScale * params.delta_theta / kFluxQuantum;
  const Eigen::Vector3cd diag(Complex(0.0), Complex(0.0, -params.omega01),
                              Complex(0.0, -params.level2_omega()));
  auto rhs = [&](double volts, const State3& psi) -> State3 {
    return diag.cwiseProduct(psi) + (g * volts) * (m * psi);
  };
  auto rk4 = [&](State3 psi, double h, double v0, double vmid, double v1) {
    const State3 k1 = rhs(v0, psi);
    const State3 k2 = rhs(vmid, psi + 0.5 * h * k1);
    const State3 k3 = rhs(vmid, psi + 0.5 * h * k2);
    const State3 k4 = rhs(v1, psi + h * k3);
    return State3(psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };

  State3 psi = initial;
  std::size_t i = 0;
  for (; i + 2 < v.size(); i += 2) psi = rk4(psi, 2 * dt, v[i], v[i + 1], v[i + 2]);
  if (i + 1 < v.size()) psi = rk4(psi, dt, v[i], 0.5 * (v[i] + v[i + 1]), v[i + 1]);
  return psi;
}

Unitary3 to_rotating_frame(const Unitary3& lab, const QubitParams& params, double t_start,
                           double t_end) {
  const double w = params.omega01;
  const Eigen::Vector3cd end(1.0, std::polar(1.0, w * t_end), std::polar(1.0, 2 * w * t_end));
  const Eigen::Vector3cd start(1.0, std::polar(1.0, -w * t_start),
                               std::polar(1.0, -2 * w * t_start));
  return end.asDiagonal() * lab * start.asDiagonal();
}

State3 basis_state(int level) {
  if (level < 0 || level > 2) throw Error(ErrorKind::kDomain, "level must be 0, 1 or 2");
  State3 s = State3::Zero();
  s(level) = 1.0;
  return s;
}

double leakage(const State3& state) { return std::norm(state(2)); }

double gate_fidelity(const Unitary3& u_sim, const Unitary2& u_target) {
  const Eigen::Matrix2cd m = u_target.adjoint() * u_sim.topLeftCorner<2, 2>();
  const double tr_mm = (m.adjoint() * m).trace().real();
  return (tr_mm + std::norm(m.trace())) / 6.0;
}

double state_fidelity(const State3& a, const State3& b) { return std::norm(a.dot(b)); }

}  // namespace sfq
