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

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sfq/error.hpp"
#include "sfq/transmon.hpp"
#include "sfq/twolevel.hpp"

using namespace sfq;

namespace {

const QubitParams kSetI = benchmark_parameter_set(1);
const PulseShape kShortPulse = PulseShape::gaussian(2e-12);

// Level 2 pushed to 1e6 GHz; with 2 ps pulses it no longer couples.
QubitParams two_level_surrogate(double delta_theta = kPi / 30) {
  return QubitParams::from_hz(5e9, 1e15, delta_theta);
}

Unitary2 rotating_two_level(const PulseTrain& t, const QubitParams& p) {
  return to_rotating_frame(propagate_train(t, p), p.omega01, t.first_time(), t.last_time());
}

const CalibrationSet& surrogate_fine_set() {
  static const CalibrationSet set =
      calibrate_all(two_level_surrogate(), CalibrationLevel::kDualFine, 60, false, kShortPulse);
  return set;
}

}  // namespace

TEST(gates, primitive_table) {
  EXPECT_EQ(pulsed_primitives().size(), 6u);
  for (auto p : pulsed_primitives()) {
    const auto& info = primitive_info(p);
    EXPECT_FALSE(info.is_virtual_z);
    EXPECT_EQ(primitive_from_name(info.name), p);
    EXPECT_TRUE(equal_up_to_phase(primitive_matrix(p), rotation_axis(info.axis_angle, info.rotation_angle), 1e-15));
  }
  EXPECT_TRUE(primitive_info(Primitive::kZ90).is_virtual_z);
  EXPECT_FALSE(primitive_from_name("Q90").has_value());
}

TEST(gates, clifford_group_law) {
  const auto& table = clifford_table();
  ASSERT_EQ(table.size(), 24u);
  EXPECT_TRUE(equal_up_to_phase(table[0].matrix, Unitary2::Identity(), 1e-15));
  for (const auto& a : table) {
    const int inv = clifford_index_of(a.matrix.adjoint());
    ASSERT_GE(inv, 0);
    EXPECT_TRUE(equal_up_to_phase(table[inv].matrix * a.matrix, Unitary2::Identity(), 1e-12));
    for (const auto& b : table) EXPECT_GE(clifford_index_of(a.matrix * b.matrix), 0);
  }
}

TEST(gates, clifford_decompositions) {
  for (const auto& e : clifford_table()) {
    Unitary2 u = Unitary2::Identity();
    for (auto p : e.decomposition) u = primitive_matrix(p) * u;
    EXPECT_TRUE(equal_up_to_phase(u, e.matrix, 1e-12)) << "element " << e.index;
  }
  EXPECT_NEAR(average_decomposition_length(), 44.0 / 24.0, 1e-15);
}

TEST(gates, clifford_table_matches_closure_oracle) {
  const auto c = oracles::clifford_closure_reference(oracles::xy_quarter_turn_generators());
  ASSERT_EQ(c.count, 24u);
  for (const auto& cls : c.classes) {
    Unitary2 u;
    u << cls[0][0], cls[0][1], cls[1][0], cls[1][1];
    EXPECT_GE(clifford_index_of(u), 0);
  }
}

TEST(gates, recovery) {
  const int id[] = {0};
  EXPECT_EQ(recovery_clifford(id).index, 0);
  for (int g = 0; g < 24; ++g) {
    const int seq[] = {g};
    const auto& r = recovery_clifford(seq);
    EXPECT_TRUE(equal_up_to_phase(r.matrix * clifford_table()[g].matrix, Unitary2::Identity(), 1e-12));
  }
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 23);
  std::vector<int> seq(20);
  for (auto& s : seq) s = pick(rng);
  Unitary2 u = Unitary2::Identity();
  for (int s : seq) u = clifford_table()[s].matrix * u;
  u = recovery_clifford(seq).matrix * u;
  EXPECT_TRUE(equal_up_to_phase(u, Unitary2::Identity(), 1e-10));
  EXPECT_THROW(recovery_clifford(std::span<const int>{}), Error);
}

TEST(gates, coarse_examples) {
  EXPECT_NEAR(calibrate_coarse(kPi, 30, kSetI).phi, kPi / 3, 1e-15);
  EXPECT_NEAR(calibrate_coarse(kPi, 40, kSetI).phi, std::acos(0.375), 1e-15);
  try {
    calibrate_coarse(kPi, 14, kSetI, true);
    FAIL() << "n=14 should be infeasible";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCalibration);
    EXPECT_NE(std::string(e.what()).find("n=16"), std::string::npos) << e.what();
  }
  EXPECT_EQ(minimum_feasible_cycles(kPi, kSetI, true), 16u);
  EXPECT_EQ(minimum_feasible_cycles(kPi, kSetI, false), 16u);
}

TEST(gates, coarse_round_trip) {
  for (double theta : {kPi / 2, kPi, 2.0})
    for (std::size_t n : {30u, 45u, 113u}) {
      const auto g = calibrate_coarse(theta, n, kSetI);
      EXPECT_NEAR(effective_delta_theta(kSetI.delta_theta, g.phi) * n, theta, 1e-9);
    }
}

TEST(gates, coarse_two_level_error_is_first_order) {
  // Each exact pair carries a z phase ~sin^2(d/2) sin(2 phi) that the
  // small-angle form drops; over n ~ theta/d cycles the coarse gate misses by
  // O(d). Halving d halves the distance.
  double prev = 0.0;
  for (double d : {kPi / 30, kPi / 60, kPi / 120}) {
    const auto p = QubitParams::from_hz(5e9, 4e8, d);
    const auto n = static_cast<std::size_t>(std::lround(2 * kPi / d));
    const auto cal = calibrate_all(p, CalibrationLevel::kDualCoarse, n);
    SequenceCompiler c(cal);
    c.append(Primitive::kY90);
    const double dist = projective_distance(rotating_two_level(c.train(), p), primitive_matrix(Primitive::kY90));
    if (prev > 0.0) {
      EXPECT_NEAR(prev / dist, 2.0, 0.05);
    }
    prev = dist;
  }
}

TEST(gates, fine_beats_coarse_at_n30) {
  auto c = calibrate_coarse(Primitive::kY180, 30, kSetI);
  c.achieved_fidelity = simulate_gate_fidelity(c, kSetI);
  const auto f = calibrate_fine(c, kSetI);
  EXPECT_TRUE(f.fine_tuned);
  EXPECT_GT(f.achieved_fidelity, c.achieved_fidelity);
  EXPECT_NEAR(c.achieved_fidelity, 0.961973203459, 1e-9);
  EXPECT_NEAR(f.achieved_fidelity, 0.967769899298, 1e-6);
  EXPECT_NEAR(f.achieved_fidelity, simulate_gate_fidelity(f, kSetI), 1e-12);
}

TEST(gates, fine_is_idempotent) {
  const auto f = calibrate_fine(calibrate_coarse(Primitive::kX90, 45, kSetI), kSetI);
  const auto ff = calibrate_fine(f, kSetI);
  EXPECT_LT(std::abs(ff.phi - f.phi), 1e-6);
  EXPECT_GE(ff.achieved_fidelity, f.achieved_fidelity - 1e-12);
}

TEST(gates, fine_in_two_level_limit) {
  // Fine phi tracks coarse phi up to the exact-pair O(d^2) shift and the
  // 2 ps form factor at omega01 (~4e-4 relative strength).
  double prev = 1.0;
  for (double d : {kPi / 30, kPi / 60}) {
    const auto p = two_level_surrogate(d);
    const auto n = static_cast<std::size_t>(std::lround(2 * kPi / d));
    const auto c = calibrate_coarse(Primitive::kY180, n, p);
    const auto f = calibrate_fine(c, p, kShortPulse);
    const double shift = std::abs(f.phi - c.phi);
    EXPECT_LT(shift, 1e-3);
    EXPECT_LT(shift, prev);
    prev = shift;
    EXPECT_GT(f.achieved_fidelity, 1 - 1e-4);
  }
}

TEST(gates, fine_primitives_in_three_level_engine) {
  for (const auto& [prim, gate] : surrogate_fine_set().gates()) {
    EXPECT_GT(simulate_gate_fidelity(gate, two_level_surrogate(), kShortPulse), 1 - 1e-4)
        << primitive_info(prim).name;
  }
}

TEST(gates, compile_identity_is_empty) {
  const Frame f(0.7);
  const auto out = compile_clifford(clifford_table()[0], surrogate_fine_set(), f);
  EXPECT_TRUE(out.train.empty());
  EXPECT_EQ(out.frame.angle(), f.angle());
}

TEST(gates, compile_single_primitive_is_its_train) {
  const auto cal = calibrate_all(kSetI, CalibrationLevel::kDualCoarse, 40);
  SequenceCompiler c(cal);
  c.append(Primitive::kY180);
  const auto& g = *cal.find(Primitive::kY180);
  const auto ref = dual_sequence(40, g.phi, 0.0, kSetI).train;
  ASSERT_EQ(c.train().size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_EQ(c.train().events()[i].time, ref.events()[i].time);
  }
  EXPECT_EQ(c.next_cycle(), 40);
}

TEST(gates, compile_x90_then_y90) {
  const auto p = two_level_surrogate();
  SequenceCompiler c(surrogate_fine_set());
  c.append(Primitive::kX90);
  c.append(Primitive::kY90);
  const PulseTrain t = c.train();
  const Unitary2 target = primitive_matrix(Primitive::kY90) * primitive_matrix(Primitive::kX90);
  // Undo the accumulated virtual frame to read the logical operation.
  const Unitary2 undo = rotation_z(-c.frame().angle());
  EXPECT_LT(projective_distance(undo * rotating_two_level(t, p), target), 1e-3);
  const auto ev = evolve_kicks(t, p, basis_state(0), kShortPulse);
  const Unitary3 r = to_rotating_frame(ev.propagator, p, t.first_time(), t.last_time());
  EXPECT_LT(projective_distance(undo * r.topLeftCorner<2, 2>(), target), 1e-4);
}

TEST(gates, virtual_z_shifts_pulse_timing) {
  const auto cal = calibrate_all(kSetI, CalibrationLevel::kDualCoarse, 40);
  SequenceCompiler plain(cal);
  plain.append(Primitive::kY90);
  SequenceCompiler shifted(cal);
  shifted.append(Primitive::kZ90);
  shifted.append(Primitive::kY90);
  ASSERT_EQ(plain.train().size(), shifted.train().size());
  const double period = kSetI.clock_period();
  // Z(theta) then a pulse: times move by -theta / omega01 modulo T.
  const double expect = -(kPi / 2) / kSetI.omega01;
  for (std::size_t i = 0; i < plain.train().size(); ++i) {
    double d = shifted.train().events()[i].time - plain.train().events()[i].time - expect;
    d -= period * std::round(d / period);
    EXPECT_LT(std::abs(d), 1e-15);
  }
  EXPECT_NEAR(shifted.frame().angle(), wrap_angle(-kPi / 2), 1e-15);
}

TEST(gates, compile_requires_calibration) {
  CalibrationSet partial(kSetI, "dual-coarse");
  partial.set(calibrate_coarse(Primitive::kX90, 40, kSetI));
  try {
    partial.require_complete();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCompile);
  }
  const int y180 = clifford_index_of(rotation_y(kPi));
  ASSERT_GE(y180, 0);
  EXPECT_THROW(compile_clifford(clifford_table()[y180], partial), Error);
}

TEST(gates, calibration_json_round_trip) {
  const auto cal = calibrate_all(kSetI, CalibrationLevel::kDualFine, 40);
  const auto back = CalibrationSet::from_json(cal.to_json());
  EXPECT_EQ(back.mode_label(), cal.mode_label());
  ASSERT_EQ(back.gates().size(), 6u);
  for (const auto& [p, g] : cal.gates()) {
    const auto* h = back.find(p);
    ASSERT_NE(h, nullptr);
    EXPECT_EQ(h->phi, g.phi);
    EXPECT_EQ(h->n_cycles, g.n_cycles);
    EXPECT_EQ(h->axis_correction, g.axis_correction);
    EXPECT_EQ(h->frame_correction, g.frame_correction);
    EXPECT_EQ(h->phase_ramp, g.phase_ramp);
    EXPECT_EQ(h->achieved_fidelity, g.achieved_fidelity);
  }
  EXPECT_EQ(back.to_json().dump(), cal.to_json().dump());
  try {
    CalibrationSet::from_json(nlohmann::json{{"gates", 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST(gates, level_names) {
  for (auto l : {CalibrationLevel::kSinglePulse, CalibrationLevel::kDualCoarse, CalibrationLevel::kDualFine}) {
    EXPECT_EQ(calibration_level_from_name(calibration_level_name(l)), l);
  }
  EXPECT_FALSE(calibration_level_from_name("dual").has_value());
}

TEST(gates, single_pulse_calibration) {
  const auto g = calibrate_single_pulse(Primitive::kX90, kSetI);
  EXPECT_EQ(g.mode, DriveMode::kSinglePulse);
  EXPECT_EQ(g.n_cycles, 15u);
  EXPECT_NEAR(g.achieved_fidelity, simulate_gate_fidelity(g, kSetI), 1e-14);
}

TEST(gates, select_cycles_parameter_set_one) {
  const auto sel = select_cycles(kSetI, 0, 120);
  EXPECT_EQ(sel.n_cycles, 113u);
  EXPECT_GT(sel.weighted_error, 0.0);
  EXPECT_LT(sel.weighted_error, 5e-3);
}
