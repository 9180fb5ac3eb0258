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

#include "sfq/gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sfq/error.hpp"
#include "sfq/transmon.hpp"
#include "sfq/twolevel.hpp"

namespace sfq {

namespace {

using P = Primitive;

constexpr std::array<PrimitiveInfo, 9> kPrimitives = {{
    {"I", 0.0, 0.0, false},
    {"X90", 0.0, kPi / 2, false},
    {"Xm90", kPi, kPi / 2, false},
    {"Y90", kPi / 2, kPi / 2, false},
    {"Ym90", -kPi / 2, kPi / 2, false},
    {"X180", 0.0, kPi, false},
    {"Y180", kPi / 2, kPi, false},
    {"Z90", 0.0, kPi / 2, true},
    {"Zm90", 0.0, -kPi / 2, true},
}};

constexpr std::array<Primitive, 6> kPulsed = {P::kX90, P::kXm90, P::kY90,
                                              P::kYm90, P::kX180, P::kY180};

// Time-ordered XY decompositions of the 24 Cliffords: Paulis, 2pi/3
// rotations, pi/2 rotations, Hadamard-like.
const std::vector<std::vector<Primitive>>& decompositions() {
  static const std::vector<std::vector<Primitive>> d = {
      {P::kIdentity},
      {P::kX180},
      {P::kY180},
      {P::kY180, P::kX180},
      {P::kX90, P::kY90},
      {P::kX90, P::kYm90},
      {P::kXm90, P::kY90},
      {P::kXm90, P::kYm90},
      {P::kY90, P::kX90},
      {P::kY90, P::kXm90},
      {P::kYm90, P::kX90},
      {P::kYm90, P::kXm90},
      {P::kX90},
      {P::kXm90},
      {P::kY90},
      {P::kYm90},
      {P::kXm90, P::kY90, P::kX90},
      {P::kXm90, P::kYm90, P::kX90},
      {P::kX180, P::kY90},
      {P::kX180, P::kYm90},
      {P::kY180, P::kX90},
      {P::kY180, P::kXm90},
      {P::kX90, P::kY90, P::kX90},
      {P::kXm90, P::kY90, P::kXm90},
  };
  return d;
}

bool is_pi_rotation(Primitive p) { return p == P::kX180 || p == P::kY180; }

double coarse_argument(double target_angle, std::size_t n, const QubitParams& params) {
  return target_angle / (2.0 * static_cast<double>(n) * params.delta_theta);
}

double max_cos(bool hardware_constrained) {
  return hardware_constrained ? std::cos(kPhiHardwareMin) : 1.0;
}

void check_target(double target_angle) {
  if (!(target_angle > 0.0) || !std::isfinite(target_angle))
    throw Error(ErrorKind::kDomain, "target rotation angle must be > 0");
}

void check_pulsed(Primitive p) {
  if (p == P::kIdentity || primitive_info(p).is_virtual_z)
    throw Error(ErrorKind::kDomain,
                std::string("primitive ") + std::string(primitive_info(p).name) +
                    " is not a pulsed rotation");
}

// Axis of the pulse pair center: a kick at time t rotates about pi/2 + omega01 t
// in the rotating frame, so psi = axis - pi/2.
double timing_phase(double physical_axis) { return wrap_signed(physical_axis - kPi / 2); }

std::vector<PulseEvent> gate_events(const CalibratedGate& gate, double physical_axis, long cycle0,
                                    const QubitParams& params) {
  const double psi = timing_phase(physical_axis);
  std::vector<PulseEvent> events;
  if (gate.mode == DriveMode::kSinglePulse) {
    events.reserve(gate.n_cycles);
    const double period = params.clock_period();
    for (std::size_t k = 0; k < gate.n_cycles; ++k) {
      PulseEvent e;
      e.time = (static_cast<double>(cycle0 + static_cast<long>(k)) + psi / kTwoPi) * period;
      events.push_back(e);
    }
    return events;
  }
  events.reserve(2 * gate.n_cycles);
  for (std::size_t k = 0; k < gate.n_cycles; ++k) {
    const double psi_k = psi + static_cast<double>(k) * gate.phase_ramp;
    const auto [a, b] =
        dual_event_times(DualCycle{cycle0 + static_cast<long>(k), gate.phi, psi_k}, params);
    PulseEvent ea, eb;
    ea.time = a;
    eb.time = b;
    events.push_back(ea);
    events.push_back(eb);
  }
  return events;
}

// 0-1 block of the rotating-frame propagator of the isolated gate.
Unitary3 isolated_propagator(const CalibratedGate& gate, double physical_axis,
                             const QubitParams& params, const PulseShape& shape) {
  PulseTrain train(gate_events(gate, physical_axis, 0, params), params.clock_period());
  const Evolution ev = evolve_kicks(train, params, basis_state(0), shape);
  return to_rotating_frame(ev.propagator, params, train.first_time(), train.last_time());
}

Unitary3 embed_z(double angle) {
  Unitary3 z = Unitary3::Identity();
  z(0, 0) = std::exp(Complex(0.0, -angle / 2));
  z(1, 1) = std::exp(Complex(0.0, angle / 2));
  return z;
}

struct Corrections {
  double left = 0.0;   // u
  double right = 0.0;  // v
};

// B ~ Z(u) R_axis(beta) Z(v) on the 0-1 block.
Corrections euler_corrections(const Unitary3& b, double axis) {
  const Unitary2 w = rotation_z(kPi / 2 - axis) * b.topLeftCorner<2, 2>() *
                     rotation_z(axis - kPi / 2);
  const double c = std::abs(w(0, 0));
  const double s = std::abs(w(1, 0));
  constexpr double kTiny = 1e-9;
  Corrections out;
  if (c > kTiny && s > kTiny) {
    out.left = std::arg(w(1, 0) * std::conj(w(0, 0)));
    out.right = std::arg(w(1, 1) * std::conj(w(1, 0)));
  } else if (c <= kTiny) {
    const double diff = std::arg(w(1, 0) * std::conj(-w(0, 1)));
    out.left = diff / 2;
    out.right = -diff / 2;
  } else {
    const double sum = std::arg(w(1, 1) * std::conj(w(0, 0)));
    out.left = sum / 2;
    out.right = sum / 2;
  }
  return out;
}

// The corrected trace Tr(T^dag Z(-u) B Z(-v)) is
//   t00 e^{i s} + t11 e^{-i s} + t01 e^{i d} + t10 e^{-i d},  s = (u+v)/2, d = (u-v)/2,
// and Tr(M^dag M) does not depend on (u, v), so maximizing its modulus
// maximizes the fidelity. The Euler angles are exact for a unitary block but
// drift once leakage shrinks it, notably for pi rotations.
Corrections optimal_corrections(const Unitary3& b, const Unitary2& target, Corrections start) {
  Complex t[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t[i][j] = std::conj(target(i, j)) * b(i, j);
  auto value = [&](double s, double d) {
    return std::abs(t[0][0] * std::exp(Complex(0, s)) + t[1][1] * std::exp(Complex(0, -s)) +
                    t[0][1] * std::exp(Complex(0, d)) + t[1][0] * std::exp(Complex(0, -d)));
  };
  double best_s = (start.left + start.right) / 2, best_d = (start.left - start.right) / 2;
  double best = value(best_s, best_d);
  constexpr int kGrid = 48;
  std::array<Complex, kGrid> diag_terms, off_terms;
  for (int i = 0; i < kGrid; ++i) {
    const Complex e = std::exp(Complex(0, kTwoPi * i / kGrid));
    diag_terms[static_cast<std::size_t>(i)] = t[0][0] * e + t[1][1] * std::conj(e);
    off_terms[static_cast<std::size_t>(i)] = t[0][1] * e + t[1][0] * std::conj(e);
  }
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const double v =
          std::abs(diag_terms[static_cast<std::size_t>(i)] + off_terms[static_cast<std::size_t>(j)]);
      if (v > best) {
        best = v;
        best_s = kTwoPi * i / kGrid;
        best_d = kTwoPi * j / kGrid;
      }
    }
  // Alternating 1-D refinement (ternary search on a unimodal neighborhood).
  double half = kTwoPi / kGrid;
  for (int round = 0; round < 32; ++round) {
    for (int axis = 0; axis < 2; ++axis) {
      double lo = (axis == 0 ? best_s : best_d) - half, hi = lo + 2 * half;
      for (int it = 0; it < 36; ++it) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        const double f1 = axis == 0 ? value(m1, best_d) : value(best_s, m1);
        const double f2 = axis == 0 ? value(m2, best_d) : value(best_s, m2);
        if (f1 < f2) lo = m1;
        else hi = m2;
      }
      const double x = (lo + hi) / 2;
      const double v = axis == 0 ? value(x, best_d) : value(best_s, x);
      if (v >= best) {
        best = v;
        (axis == 0 ? best_s : best_d) = x;
      }
    }
    half /= 2;
  }
  return {best_s + best_d, best_s - best_d};
}

double golden_maximize(const auto& f, double lo, double hi, double tol, double* best_value) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double x = f1 >= f2 ? x1 : x2;
  *best_value = std::max(f1, f2);
  return x;
}

}  // namespace

const PrimitiveInfo& primitive_info(Primitive p) {
  return kPrimitives.at(static_cast<std::size_t>(p));
}

std::optional<Primitive> primitive_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPrimitives.size(); ++i)
    if (kPrimitives[i].name == name) return static_cast<Primitive>(i);
  return std::nullopt;
}

Unitary2 primitive_matrix(Primitive p) {
  const auto& info = primitive_info(p);
  if (p == P::kIdentity) return Unitary2::Identity();
  if (info.is_virtual_z) return rotation_z(info.rotation_angle);
  return rotation_axis(info.axis_angle, info.rotation_angle);
}

std::span<const Primitive> pulsed_primitives() { return kPulsed; }

const std::vector<CliffordElement>& clifford_table() {
  static const std::vector<CliffordElement> table = [] {
    std::vector<CliffordElement> t;
    const auto& d = decompositions();
    for (std::size_t i = 0; i < d.size(); ++i) {
      CliffordElement e;
      e.index = static_cast<int>(i);
      e.matrix = Unitary2::Identity();
      for (Primitive p : d[i]) {
        if (p != P::kIdentity) e.decomposition.push_back(p);
        e.matrix = primitive_matrix(p) * e.matrix;
      }
      t.push_back(std::move(e));
    }
    return t;
  }();
  return table;
}

int clifford_index_of(const Unitary2& u, double tol) {
  for (const auto& e : clifford_table())
    if (equal_up_to_phase(e.matrix, u, tol)) return e.index;
  return -1;
}

double average_decomposition_length() {
  std::size_t total = 0;
  for (const auto& e : clifford_table()) total += e.decomposition.size();
  return static_cast<double>(total) / static_cast<double>(clifford_table().size());
}

const CliffordElement& recovery_clifford(std::span<const int> sequence) {
  if (sequence.empty()) throw Error(ErrorKind::kDomain, "recovery needs a nonempty sequence");
  const auto& table = clifford_table();
  Unitary2 total = Unitary2::Identity();
  for (int idx : sequence) {
    if (idx < 0 || idx >= static_cast<int>(table.size()))
      throw Error(ErrorKind::kDomain, "Clifford index out of range");
    total = table[static_cast<std::size_t>(idx)].matrix * total;
  }
  const int inv = clifford_index_of(total.adjoint(), 1e-6);
  if (inv < 0) throw Error(ErrorKind::kData, "sequence product is not a Clifford");
  return table[static_cast<std::size_t>(inv)];
}

double tilt_cancelling_ramp(double delta_theta, double phi) {
  // Pair centered on the y axis: kicks about pi/2 -+ phi, in time order.
  const Unitary2 c = rotation_axis(kPi / 2 + phi, delta_theta) * rotation_axis(kPi / 2 - phi, delta_theta);
  const Complex a = c(0, 0);
  // Z(-e) C has a real diagonal when e = -2 arg(a); the ramp applies Z(k e)
  // around cycle k, so the gate becomes Z(n e) (Z(-e) C)^n.
  return -2.0 * std::arg(a.real() < 0 ? -a : a);
}

std::size_t minimum_feasible_cycles(double target_angle, const QubitParams& params,
                                    bool hardware_constrained) {
  check_target(target_angle);
  if (!(params.delta_theta > 0.0)) throw Error(ErrorKind::kDomain, "delta_theta must be > 0");
  // Strict inequality for the unconstrained case: phi = 0 is not a pulse pair.
  const double need = target_angle / (2.0 * params.delta_theta * max_cos(hardware_constrained));
  auto n = static_cast<std::size_t>(std::ceil(need - 1e-12));
  if (n == 0) n = 1;
  if (!hardware_constrained && coarse_argument(target_angle, n, params) >= 1.0) ++n;
  return n;
}

CalibratedGate calibrate_coarse(double target_angle, std::size_t n_cycles,
                                const QubitParams& params, bool hardware_constrained) {
  check_target(target_angle);
  if (n_cycles == 0) throw Error(ErrorKind::kEmptyTrain, "n_cycles must be >= 1");
  if (!(params.delta_theta > 0.0)) throw Error(ErrorKind::kDomain, "delta_theta must be > 0");
  const double arg = coarse_argument(target_angle, n_cycles, params);
  const double limit = max_cos(hardware_constrained);
  const bool infeasible = hardware_constrained ? arg > limit : arg >= limit;
  if (infeasible) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "infeasible: rotation " << target_angle << " rad with n=" << n_cycles
        << " needs cos(phi)=" << arg << " (allowed <= " << limit
        << "); minimum feasible n=" << minimum_feasible_cycles(target_angle, params,
                                                                hardware_constrained);
    throw Error(ErrorKind::kCalibration, msg.str());
  }
  CalibratedGate g;
  g.rotation_angle = target_angle;
  g.mode = DriveMode::kDual;
  g.n_cycles = n_cycles;
  g.phi = std::acos(arg);
  g.hardware_constrained = hardware_constrained;
  g.achieved_fidelity = std::numeric_limits<double>::quiet_NaN();
  if (hardware_constrained && g.phi > kPhiHardwareMax) {
    // Unreachable for positive arguments; kept for negative-angle callers.
    throw Error(ErrorKind::kCalibration, "phi above hardware maximum");
  }
  return g;
}

CalibratedGate calibrate_coarse(Primitive target, std::size_t n_cycles, const QubitParams& params,
                                bool hardware_constrained) {
  check_pulsed(target);
  const auto& info = primitive_info(target);
  CalibratedGate g = calibrate_coarse(info.rotation_angle, n_cycles, params, hardware_constrained);
  g.target = target;
  g.axis_angle = info.axis_angle;
  return g;
}

double simulate_gate_fidelity(const CalibratedGate& gate, const QubitParams& params,
                              const PulseShape& shape) {
  if (gate.n_cycles == 0) throw Error(ErrorKind::kEmptyTrain, "gate has no cycles");
  const Unitary3 b = isolated_propagator(gate, gate.axis_angle + gate.axis_correction, params, shape);
  const Unitary3 corrected = embed_z(-gate.frame_correction) * b;
  return gate_fidelity(corrected, rotation_axis(gate.axis_angle, gate.rotation_angle));
}

CalibratedGate calibrate_single_pulse(Primitive target, const QubitParams& params,
                                      const PulseShape& shape) {
  check_pulsed(target);
  if (!(params.delta_theta > 0.0)) throw Error(ErrorKind::kDomain, "delta_theta must be > 0");
  const auto& info = primitive_info(target);
  CalibratedGate g;
  g.target = target;
  g.axis_angle = info.axis_angle;
  g.rotation_angle = info.rotation_angle;
  g.mode = DriveMode::kSinglePulse;
  g.n_cycles = static_cast<std::size_t>(
      std::max(1.0, std::round(info.rotation_angle / params.delta_theta)));
  g.phi = 0.0;
  g.achieved_fidelity = simulate_gate_fidelity(g, params, shape);
  return g;
}

CalibratedGate calibrate_fine(const CalibratedGate& coarse, const QubitParams& params,
                              const PulseShape& shape) {
  if (coarse.mode != DriveMode::kDual)
    throw Error(ErrorKind::kCalibration, "fine calibration applies to dual-pulse gates");
  if (coarse.n_cycles == 0) throw Error(ErrorKind::kEmptyTrain, "gate has no cycles");
  check_phi(coarse.phi, coarse.hardware_constrained);

  const Unitary2 target = rotation_axis(coarse.axis_angle, coarse.rotation_angle);
  auto evaluate = [&](double phi, Corrections* corr) {
    CalibratedGate g = coarse;
    g.phi = phi;
    g.phase_ramp = tilt_cancelling_ramp(params.delta_theta, phi);
    const Unitary3 b = isolated_propagator(g, coarse.axis_angle, params, shape);
    const Corrections c =
        optimal_corrections(b, target, euler_corrections(b, coarse.axis_angle));
    if (corr) *corr = c;
    return gate_fidelity(embed_z(-c.left) * b * embed_z(-c.right), target);
  };

  const double lo_bound = coarse.hardware_constrained ? kPhiHardwareMin : 0.0;
  const double hi_bound = coarse.hardware_constrained ? kPhiHardwareMax : kPi;
  double lo = coarse.phi * 0.98, hi = coarse.phi * 1.02;
  std::string warning;
  if (lo <= lo_bound || hi >= hi_bound) {
    lo = std::max(lo, lo_bound + 1e-12);
    hi = std::min(hi, hi_bound - 1e-12);
    warning = "fine-calibration window clipped at the phi range boundary";
  }
  constexpr double kTol = 1e-9;
  double best_f = 0.0;
  double best_phi = golden_maximize([&](double x) { return evaluate(x, nullptr); }, lo, hi, kTol,
                                    &best_f);
  const double start_f = evaluate(coarse.phi, nullptr);
  if (start_f > best_f) {
    best_phi = coarse.phi;
    best_f = start_f;
  }
  if (warning.empty() && (best_phi - lo < 10 * kTol || hi - best_phi < 10 * kTol))
    warning = "fine-calibration optimum at the scan window boundary";

  Corrections c;
  evaluate(best_phi, &c);
  CalibratedGate out = coarse;
  out.phi = best_phi;
  out.phase_ramp = tilt_cancelling_ramp(params.delta_theta, best_phi);
  out.fine_tuned = true;
  out.axis_correction = wrap_signed(c.right);
  out.frame_correction = wrap_signed(c.left + c.right);
  out.warning = warning;
  out.achieved_fidelity = simulate_gate_fidelity(out, params, shape);

  // Never worse than the uncorrected gate at either phi; corrections can cost
  // a little when leakage dominates the 0-1 block.
  for (double phi : {best_phi, coarse.phi}) {
    CalibratedGate plain = coarse;
    plain.phi = phi;
    plain.phase_ramp = 0.0;
    plain.fine_tuned = true;
    plain.warning = warning;
    plain.achieved_fidelity = simulate_gate_fidelity(plain, params, shape);
    if (plain.achieved_fidelity > out.achieved_fidelity) out = plain;
  }
  return out;
}

const CalibratedGate* CalibrationSet::find(Primitive p) const {
  auto it = gates_.find(p);
  return it == gates_.end() ? nullptr : &it->second;
}

void CalibrationSet::require_complete() const {
  for (Primitive p : kPulsed)
    if (!find(p))
      throw Error(ErrorKind::kCompile,
                  std::string("missing calibration for ") + std::string(primitive_info(p).name));
}

nlohmann::json CalibrationSet::to_json() const {
  nlohmann::json gates = nlohmann::json::object();
  for (const auto& [p, g] : gates_) {
    nlohmann::json e;
    e["n_cycles"] = g.n_cycles;
    e["phi_rad"] = g.phi;
    e["fine_tuned"] = g.fine_tuned;
    e["achieved_fidelity"] =
        std::isfinite(g.achieved_fidelity) ? nlohmann::json(g.achieved_fidelity) : nlohmann::json();
    e["mode"] = g.mode == DriveMode::kSinglePulse ? "single" : "dual";
    e["axis_correction_rad"] = g.axis_correction;
    e["frame_correction_rad"] = g.frame_correction;
    e["phase_ramp_rad"] = g.phase_ramp;
    e["hardware_constrained"] = g.hardware_constrained;
    if (!g.warning.empty()) e["warning"] = g.warning;
    gates[std::string(primitive_info(p).name)] = e;
  }
  return {{"params", params_to_json(params_)}, {"mode", mode_label_}, {"gates", gates}};
}

CalibrationSet CalibrationSet::from_json(const nlohmann::json& j) {
  try {
    CalibrationSet set(params_from_json(j.at("params")), j.value("mode", std::string()));
    for (const auto& [name, e] : j.at("gates").items()) {
      auto p = primitive_from_name(name);
      if (!p) throw Error(ErrorKind::kConfig, "unknown primitive in calibration store: " + name);
      check_pulsed(*p);
      const auto& info = primitive_info(*p);
      CalibratedGate g;
      g.target = *p;
      g.axis_angle = info.axis_angle;
      g.rotation_angle = info.rotation_angle;
      g.n_cycles = e.at("n_cycles").get<std::size_t>();
      g.phi = e.at("phi_rad").get<double>();
      g.fine_tuned = e.at("fine_tuned").get<bool>();
      const auto& f = e.at("achieved_fidelity");
      g.achieved_fidelity = f.is_null() ? std::numeric_limits<double>::quiet_NaN() : f.get<double>();
      g.mode = e.value("mode", std::string("dual")) == "single" ? DriveMode::kSinglePulse
                                                               : DriveMode::kDual;
      g.axis_correction = e.value("axis_correction_rad", 0.0);
      g.frame_correction = e.value("frame_correction_rad", 0.0);
      g.phase_ramp = e.value("phase_ramp_rad", 0.0);
      g.hardware_constrained = e.value("hardware_constrained", false);
      g.warning = e.value("warning", std::string());
      if (g.n_cycles == 0) throw Error(ErrorKind::kConfig, "calibration n_cycles must be >= 1");
      if (g.mode == DriveMode::kDual) check_phi(g.phi, g.hardware_constrained);
      set.set(g);
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("malformed calibration store: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kRange)
      throw Error(ErrorKind::kConfig, std::string("calibration store: ") + e.what());
    throw;
  }
}

std::string_view calibration_level_name(CalibrationLevel level) {
  switch (level) {
    case CalibrationLevel::kSinglePulse: return "single";
    case CalibrationLevel::kDualCoarse: return "dual-coarse";
    case CalibrationLevel::kDualFine: return "dual-fine";
  }
  return "?";
}

std::optional<CalibrationLevel> calibration_level_from_name(std::string_view name) {
  if (name == "single") return CalibrationLevel::kSinglePulse;
  if (name == "dual-coarse") return CalibrationLevel::kDualCoarse;
  if (name == "dual-fine") return CalibrationLevel::kDualFine;
  return std::nullopt;
}

CalibrationSet calibrate_all(const QubitParams& params, CalibrationLevel level,
                             std::size_t n_cycles, bool hardware_constrained,
                             const PulseShape& shape) {
  CalibrationSet set(params, std::string(calibration_level_name(level)));
  for (Primitive p : kPulsed) {
    if (level == CalibrationLevel::kSinglePulse) {
      set.set(calibrate_single_pulse(p, params, shape));
      continue;
    }
    CalibratedGate g = calibrate_coarse(p, n_cycles, params, hardware_constrained);
    if (level == CalibrationLevel::kDualFine) {
      g = calibrate_fine(g, params, shape);
    } else {
      g.achieved_fidelity = simulate_gate_fidelity(g, params, shape);
    }
    set.set(g);
  }
  return set;
}

CycleSelection select_cycles(const QubitParams& params, std::size_t n_min, std::size_t n_max,
                             bool hardware_constrained, const PulseShape& shape) {
  const std::size_t feasible = minimum_feasible_cycles(kPi, params, hardware_constrained);
  if (n_min < feasible) n_min = feasible;
  if (n_max < n_min) throw Error(ErrorKind::kCalibration, "empty cycle-count range");

  std::size_t half_uses = 0, pi_uses = 0;
  for (const auto& e : clifford_table())
    for (Primitive p : e.decomposition) (is_pi_rotation(p) ? pi_uses : half_uses) += 1;
  const double per = 1.0 / static_cast<double>(clifford_table().size());

  CycleSelection best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const CalibratedGate half =
        calibrate_fine(calibrate_coarse(P::kY90, n, params, hardware_constrained), params, shape);
    const CalibratedGate full =
        calibrate_fine(calibrate_coarse(P::kY180, n, params, hardware_constrained), params, shape);
    const double err = per * (static_cast<double>(half_uses) * (1.0 - half.achieved_fidelity) +
                              static_cast<double>(pi_uses) * (1.0 - full.achieved_fidelity));
    if (err < best.weighted_error) best = {n, err};
  }
  return best;
}

SequenceCompiler::SequenceCompiler(const CalibrationSet& calibrations, Frame frame,
                                   long start_cycle)
    : calibrations_(calibrations),
      params_(calibrations.params()),
      frame_(frame),
      cursor_(start_cycle) {}

void SequenceCompiler::append(Primitive p) {
  if (p == P::kIdentity) return;
  const auto& info = primitive_info(p);
  if (info.is_virtual_z) {
    frame_.rotate(-info.rotation_angle);
    return;
  }
  const CalibratedGate* gate = calibrations_.find(p);
  if (!gate)
    throw Error(ErrorKind::kCompile,
                std::string("missing calibration for ") + std::string(info.name));
  const double axis = info.axis_angle + frame_.angle() + gate->axis_correction;
  const double min_gap = 2.0 * kPhiHardwareMin / params_.omega01;
  std::vector<PulseEvent> next = gate_events(*gate, axis, cursor_, params_);
  // A gate whose pulse pairs sit early in their cycles can reach back into the
  // previous gate's last cycle; push it one idle cycle later until it clears.
  while (!events_.empty() && !next.empty() && next.front().time <= events_.back().time + min_gap) {
    ++cursor_;
    next = gate_events(*gate, axis, cursor_, params_);
  }
  events_.insert(events_.end(), next.begin(), next.end());
  cursor_ += static_cast<long>(gate->n_cycles);
  frame_.rotate(gate->frame_correction);
}

void SequenceCompiler::append(const CliffordElement& element) {
  for (Primitive p : element.decomposition) append(p);
}

PulseTrain SequenceCompiler::train() const { return PulseTrain(events_, params_.clock_period()); }

CompiledClifford compile_clifford(const CliffordElement& element,
                                  const CalibrationSet& calibrations, Frame frame) {
  SequenceCompiler c(calibrations, frame);
  c.append(element);
  return {c.train(), c.frame()};
}

}  // namespace sfq
