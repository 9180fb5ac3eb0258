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

#ifndef SFQ_GATES_HPP
#define SFQ_GATES_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfq/params.hpp"
#include "sfq/pulsetrain.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Physical rotations about xy-plane axes plus virtual-Z quarter turns.
enum class Primitive : int {
  kIdentity = 0,
  kX90,
  kXm90,
  kY90,
  kYm90,
  kX180,
  kY180,
  kZ90,
  kZm90,
};

struct PrimitiveInfo {
  std::string_view name;
  double axis_angle;      // xy-plane axis: X = 0, Y = pi/2, -X = pi, -Y = -pi/2
  double rotation_angle;  // > 0 for physical rotations; signed z angle for virtual Z
  bool is_virtual_z;
};

const PrimitiveInfo& primitive_info(Primitive p);
std::optional<Primitive> primitive_from_name(std::string_view name);
/// Ideal 2x2 matrix (identity for kIdentity).
Unitary2 primitive_matrix(Primitive p);
/// The six pulsed primitives a calibration set must cover.
std::span<const Primitive> pulsed_primitives();

struct CliffordElement {
  int index = 0;
  Unitary2 matrix;
  /// Primitives in time order; matrix equals their product up to global phase.
  std::vector<Primitive> decomposition;
};

/// The 24 single-qubit Cliffords with X/Y-only decompositions. Index 0 is the
/// identity.
const std::vector<CliffordElement>& clifford_table();
/// Table index of a matrix, matched up to global phase; -1 when absent.
int clifford_index_of(const Unitary2& u, double tol = 1e-8);
/// Mean number of pulsed primitives per Clifford.
double average_decomposition_length();
/// Table element whose matrix inverts the ordered product (first element
/// applied first). Throws Error(kDomain) for an empty sequence.
const CliffordElement& recovery_clifford(std::span<const int> sequence);

enum class DriveMode { kSinglePulse, kDual };

struct CalibratedGate {
  Primitive target = Primitive::kY180;
  double axis_angle = kPi / 2;
  double rotation_angle = kPi;
  DriveMode mode = DriveMode::kDual;
  std::size_t n_cycles = 0;
  double phi = 0.0;                 // unused for single-pulse gates
  bool fine_tuned = false;
  double achieved_fidelity = 0.0;   // NaN until simulated
  double axis_correction = 0.0;     // added to the physical axis, rad
  double frame_correction = 0.0;    // virtual-Z frame update after the gate, rad
  double phase_ramp = 0.0;          // timing-phase advance per cycle, rad
  bool hardware_constrained = false;
  std::string warning;
};

/// Per-cycle timing-phase advance that makes a dual pair's two-level rotation
/// axis lie in the xy-plane.
double tilt_cancelling_ramp(double delta_theta, double phi);

/// Smallest cycle count that can deliver `target_angle` with dual pulses.
std::size_t minimum_feasible_cycles(double target_angle, const QubitParams& params,
                                    bool hardware_constrained);

/// phi = arccos(target / (2 n dtheta)). Throws Error(kCalibration) when
/// infeasible; the message names the minimum feasible n.
CalibratedGate calibrate_coarse(double target_angle, std::size_t n_cycles,
                                const QubitParams& params, bool hardware_constrained = false);
CalibratedGate calibrate_coarse(Primitive target, std::size_t n_cycles, const QubitParams& params,
                                bool hardware_constrained = false);

/// Single-pulse sequence: round(angle / dtheta) equally spaced pulses,
/// uncorrected. achieved_fidelity is simulated.
CalibratedGate calibrate_single_pulse(Primitive target, const QubitParams& params,
                                      const PulseShape& shape = PulseShape::delta());

/// Average gate fidelity of a calibrated gate run in isolation through the
/// three-level kick engine, corrections applied.
double simulate_gate_fidelity(const CalibratedGate& gate, const QubitParams& params,
                              const PulseShape& shape = PulseShape::delta());

/// Golden-section refinement of phi within +/-2% of the input, maximizing the
/// simulated fidelity after virtual-Z correction. Each dual pair rotates about
/// a slightly z-tilted axis; a per-cycle timing-phase ramp cancels that tilt,
/// which outer Z corrections cannot do for pi rotations. Axis and frame
/// corrections are then chosen to maximize the fidelity of the simulated 0-1
/// block. A boundary hit is reported in `warning`.
CalibratedGate calibrate_fine(const CalibratedGate& coarse, const QubitParams& params,
                              const PulseShape& shape = PulseShape::delta());

class CalibrationSet {
 public:
  CalibrationSet() = default;
  CalibrationSet(QubitParams params, std::string mode_label)
      : params_(params), mode_label_(std::move(mode_label)) {}

  void set(const CalibratedGate& gate) { gates_[gate.target] = gate; }
  const CalibratedGate* find(Primitive p) const;
  /// Throws Error(kCompile) naming the first missing pulsed primitive.
  void require_complete() const;
  const std::map<Primitive, CalibratedGate>& gates() const { return gates_; }
  const QubitParams& params() const { return params_; }
  const std::string& mode_label() const { return mode_label_; }

  nlohmann::json to_json() const;
  static CalibrationSet from_json(const nlohmann::json& j);

 private:
  QubitParams params_;
  std::string mode_label_;
  std::map<Primitive, CalibratedGate> gates_;
};

enum class CalibrationLevel { kSinglePulse, kDualCoarse, kDualFine };
std::string_view calibration_level_name(CalibrationLevel level);
std::optional<CalibrationLevel> calibration_level_from_name(std::string_view name);

/// Calibrates every pulsed primitive. Dual levels share n_cycles.
CalibrationSet calibrate_all(const QubitParams& params, CalibrationLevel level,
                             std::size_t n_cycles, bool hardware_constrained = false,
                             const PulseShape& shape = PulseShape::delta());

struct CycleSelection {
  std::size_t n_cycles = 0;
  double weighted_error = 0.0;  // usage-weighted infidelity per Clifford
};

/// Dual gate duration choice: scans n in [n_min, n_max] and returns the n whose
/// fine-calibrated Y(pi/2) and Y(pi) minimize the Clifford-usage-weighted
/// infidelity. n_min = 0 means the smallest feasible n.
CycleSelection select_cycles(const QubitParams& params, std::size_t n_min, std::size_t n_max,
                             bool hardware_constrained = false,
                             const PulseShape& shape = PulseShape::delta());

/// Accumulated virtual-Z angle, kept in [0, 2pi).
class Frame {
 public:
  Frame() = default;
  explicit Frame(double angle) : angle_(wrap_angle(angle)) {}
  double angle() const { return angle_; }
  void rotate(double delta) { angle_ = wrap_angle(angle_ + delta); }

 private:
  double angle_ = 0.0;
};

/// Appends calibrated primitives on a contiguous clock-cycle grid.
///
/// A rotation about logical axis a is emitted on physical axis
/// a + frame + axis_correction, i.e. its pulse pairs are centered at
/// (k + psi / 2pi) T with psi = axis - pi/2 wrapped into [-pi, pi). A virtual
/// Z(theta) subtracts theta from the frame. If the first pulse of a gate would
/// not clear the previous pulse by the minimum hardware pair spacing, the gate
/// moves one idle cycle later.
class SequenceCompiler {
 public:
  SequenceCompiler(const CalibrationSet& calibrations, Frame frame = {}, long start_cycle = 0);

  void append(Primitive p);
  void append(const CliffordElement& element);

  PulseTrain train() const;
  const std::vector<PulseEvent>& events() const { return events_; }
  const Frame& frame() const { return frame_; }
  long next_cycle() const { return cursor_; }

 private:
  const CalibrationSet& calibrations_;
  QubitParams params_;
  Frame frame_;
  long cursor_;
  std::vector<PulseEvent> events_;
};

struct CompiledClifford {
  PulseTrain train;
  Frame frame;
};

/// Compiles one element starting at cycle 0. Throws Error(kCompile) when a
/// primitive has no calibration.
CompiledClifford compile_clifford(const CliffordElement& element,
                                  const CalibrationSet& calibrations, Frame frame = {});

}  // namespace sfq

#endif  // SFQ_GATES_HPP
