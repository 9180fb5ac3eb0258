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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sfq/pulsetrain.hpp"

using namespace sfq;

namespace {

double max_entry_diff(const Unitary2& a, const Unitary2& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

const Unitary2 kId = Unitary2::Identity();

}  // namespace

TEST(twolevel, rotation_conventions) {
  EXPECT_LT(max_entry_diff(rotation_z(0.0), kId), 1e-15);
  EXPECT_LT(max_entry_diff(rotation_y(0.0), kId), 1e-15);
  EXPECT_LT(max_entry_diff(rotation_z(kTwoPi), -kId), 1e-15);
  EXPECT_LT(max_entry_diff(rotation_y(kPi) * rotation_y(kPi), -kId), 1e-15);
  EXPECT_LT(max_entry_diff(rotation_axis(0.0, 0.4), rotation_x(0.4)), 1e-15);
  EXPECT_LT(max_entry_diff(rotation_axis(kPi / 2, 0.4), rotation_y(0.4)), 1e-15);
}

TEST(twolevel, cycle_trivial_cases) {
  for (double phi : {0.1, 0.9, 2.0}) {
    EXPECT_LT(max_entry_diff(cycle_unitary_exact(0.0, phi), -kId), 1e-15);
    EXPECT_LT(max_entry_diff(cycle_unitary_approx(0.0, phi), -kId), 1e-15);
  }
  for (double d : {0.01, kPi / 30, 0.5}) {
    EXPECT_LT(max_entry_diff(cycle_unitary_exact(d, kPi / 2), -kId), 1e-15);
    EXPECT_LT(max_entry_diff(cycle_unitary_closed_form(d, kPi / 2), -kId), 1e-15);
  }
}

TEST(twolevel, cycle_regression_pi30_pi4) {
  // 40-digit five-matrix product from reference_values.py.
  Unitary2 ref;
  ref << Complex(-0.9972609476841366, -0.0027390523158633317), Complex(0.07391278520356671, 0),
      Complex(-0.07391278520356671, 0), Complex(-0.9972609476841366, 0.0027390523158633317);
  EXPECT_LT(max_entry_diff(cycle_unitary_exact(kPi / 30, kPi / 4), ref), 1e-15);
  EXPECT_LT(max_entry_diff(cycle_unitary_closed_form(kPi / 30, kPi / 4), ref), 1e-15);
}

TEST(twolevel, closed_form_matches_product_random) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> dd(0.0, kPi / 2), dp(0.0, kPi);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double d = dd(rng), p = dp(rng);
    worst = std::max(worst, max_entry_diff(cycle_unitary_exact(d, p), cycle_unitary_closed_form(d, p)));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(twolevel, product_matches_literal_oracle) {
  for (double d : {0.02, kPi / 30, 0.3})
    for (double p : {0.2, kPi / 3, 2.5}) {
      const auto ref = oracles::cycle_product_reference(d, p);
      const Unitary2 u = cycle_unitary_exact(d, p);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_NEAR(std::abs(u(r, c) - ref[r][c]), 0.0, 1e-14);
    }
}

TEST(twolevel, approx_special_value) {
  EXPECT_LT(max_entry_diff(cycle_unitary_approx(kPi / 30, kPi / 3), -rotation_y(kPi / 30)), 1e-15);
}

TEST(twolevel, approx_error_is_second_order) {
  auto worst = [](double d) {
    double w = 0.0;
    for (int i = 1; i < 64; ++i) {
      const double p = kPi * i / 64.0;
      w = std::max(w, operator_norm_distance(cycle_unitary_exact(d, p), cycle_unitary_approx(d, p)));
    }
    return w;
  };
  const double e1 = worst(kPi / 30), e2 = worst(kPi / 60), e3 = worst(kPi / 120);
  // Halving delta_theta divides the error by ~4.
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
  EXPECT_NEAR(e2 / e3, 4.0, 0.1);
  const double c = e1 / std::pow(kPi / 30, 2);
  EXPECT_LT(c, 1.0);
  EXPECT_LE(e3, c * std::pow(kPi / 120, 2) * 1.01);
}

TEST(twolevel, effective_delta_theta_values) {
  EXPECT_NEAR(effective_delta_theta(kPi / 30, kPi / 2), 0.0, 1e-16);
  EXPECT_NEAR(effective_delta_theta(kPi / 30, kPi / 3), kPi / 30, 1e-15);
  EXPECT_NEAR(effective_delta_theta(1.0, 0.0423 * kPi) , 1.982, 5e-4);
}

TEST(twolevel, composition_of_quadrature_cycles) {
  Unitary2 u = kId;
  for (int n = 1; n <= 40; ++n) {
    u = cycle_unitary_exact(kPi / 30, kPi / 2) * u;
    EXPECT_LT(max_entry_diff(u, (n % 2 ? -1.0 : 1.0) * kId), 1e-14);
  }
}

TEST(twolevel, projective_helpers) {
  const Unitary2 a = rotation_y(0.7);
  EXPECT_TRUE(equal_up_to_phase(a, std::exp(Complex(0, 1.3)) * a, 1e-12));
  EXPECT_FALSE(equal_up_to_phase(a, rotation_y(0.8), 1e-6));
  EXPECT_NEAR(projective_distance(a, -a), 0.0, 1e-14);
}

TEST(twolevel, bloch_round_trip) {
  const BlochPoint p{0.6, 0.0, 0.8};
  const BlochPoint q = bloch_from_state(state_from_bloch(p));
  EXPECT_NEAR(q.x, 0.6, 1e-15);
  EXPECT_NEAR(q.y, 0.0, 1e-15);
  EXPECT_NEAR(q.z, 0.8, 1e-15);
}

TEST(twolevel, bloch_empty_schedule_is_constant) {
  const QubitParams p = benchmark_parameter_set(1);
  const DualPulseSchedule empty{{}, p, false};
  const auto traj = evolve_bloch(empty, {0, 0, 1}, 8);
  ASSERT_EQ(traj.size(), 1u);
  EXPECT_EQ(traj[0].r.z, 1.0);
}

TEST(twolevel, bloch_quadrature_cycle_returns_home) {
  const QubitParams p = benchmark_parameter_set(1);
  const auto st = dual_sequence(1, kPi / 2, 0.0, p);
  const auto traj = evolve_bloch(st.schedule, {0, 0, 1}, 16);
  ASSERT_GT(traj.size(), 2u);
  EXPECT_NEAR(traj.back().r.z, 1.0, 1e-12);
}

TEST(twolevel, bloch_pi_endpoint) {
  const QubitParams p = benchmark_parameter_set(1);
  const auto st = dual_sequence(30, std::acos(0.5), 0.0, p);
  const auto traj = evolve_bloch(st.schedule, {0, 0, 1}, 4);
  // Oracle: rotating-frame kick product in reference_values.py. The residual
  // 4e-3 from -1 is the per-pair axis tilt, which the exact evolution keeps.
  EXPECT_NEAR(traj.back().r.z, -0.9958880276476647, 1e-9);
  for (const auto& pt : traj) EXPECT_NEAR(pt.r.norm(), 1.0, 1e-10);
  for (std::size_t i = 1; i < traj.size(); ++i) EXPECT_GE(traj[i].t, traj[i - 1].t);
}

TEST(twolevel, single_sequence_is_y_rotation_in_rotating_frame) {
  const QubitParams p = benchmark_parameter_set(1);
  const PulseTrain t = single_sequence(30, p);
  const Unitary2 lab = propagate_train(t, p);
  const Unitary2 rot = to_rotating_frame(lab, p.omega01, t.first_time(), t.last_time());
  EXPECT_TRUE(equal_up_to_phase(rot, rotation_y(kPi), 1e-10));
}
