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

#include "sfq/pulsetrain.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <gtest/gtest.h>

#include "sfq/error.hpp"

using namespace sfq;

namespace {

const QubitParams kSetI = benchmark_parameter_set(1);

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no sfq::Error thrown";
  return ErrorKind::kIo;
}

}  // namespace

TEST(pulsetrain, single_sequence_times) {
  const auto one = single_sequence(1, kSetI);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.events()[0].time, 0.0);

  const auto three = single_sequence(3, kSetI);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_NEAR(three.events()[1].time, 200e-12, 1e-24);
  EXPECT_NEAR(three.events()[2].time, 400e-12, 1e-24);
  for (const auto& e : three.events()) {
    EXPECT_EQ(e.polarity, 1);
    EXPECT_EQ(e.area, kFluxQuantum);
  }
}

TEST(pulsetrain, single_sequence_pi_pulse_is_30_pulses) {
  const auto n = static_cast<std::size_t>(std::lround(kPi / kSetI.delta_theta));
  EXPECT_EQ(n, 30u);
  EXPECT_EQ(single_sequence(n, kSetI).size(), 30u);
  EXPECT_EQ(kind_of([] { single_sequence(0, kSetI); }), ErrorKind::kEmptyTrain);
}

TEST(pulsetrain, dual_pair_straddles_cycle_center) {
  const auto st = dual_sequence(1, kPi / 2, 0.0, kSetI);
  ASSERT_EQ(st.train.size(), 2u);
  EXPECT_NEAR(st.train.events()[0].time, -50e-12, 1e-24);
  EXPECT_NEAR(st.train.events()[1].time, 50e-12, 1e-24);
}

TEST(pulsetrain, dual_symmetry_invariant) {
  const double phi = 0.8, psi = 1.1;
  const auto st = dual_sequence(25, phi, psi, kSetI);
  const double period = kSetI.clock_period();
  for (std::size_t k = 0; k < 25; ++k) {
    const double lo = st.train.events()[2 * k].time;
    const double hi = st.train.events()[2 * k + 1].time;
    EXPECT_NEAR(0.5 * (lo + hi), (static_cast<double>(k) + psi / kTwoPi) * period, 1e-22);
    EXPECT_NEAR(hi - lo, 2 * phi / kSetI.omega01, 1e-24);
  }
}

TEST(pulsetrain, dual_phi_to_zero_degenerates) {
  const auto st = dual_sequence(3, 1e-9, 0.0, kSetI);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_LT(st.train.events()[2 * k + 1].time - st.train.events()[2 * k].time, 1e-19);
  }
}

TEST(pulsetrain, hardware_range_check) {
  try {
    dual_sequence(4, 0.02 * kPi, 0.0, kSetI, true);
    FAIL() << "expected a range error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kRange);
    EXPECT_NE(std::string(e.what()).find("0.0423"), std::string::npos);
  }
  EXPECT_NO_THROW(dual_sequence(4, 0.02 * kPi, 0.0, kSetI, false));
  EXPECT_EQ(kind_of([] { dual_sequence(4, 0.97 * kPi, 0.0, kSetI, true); }), ErrorKind::kRange);
  EXPECT_EQ(kind_of([] { dual_sequence(4, kPi, 0.0, kSetI, false); }), ErrorKind::kRange);
}

TEST(pulsetrain, gaussian_envelope_normalization) {
  EXPECT_EQ(gaussian_envelope(1, kPi / 20, 4.0, kPi / 30).front(), kPi / 20);
  for (std::size_t n : {40u, 50u, 123u}) {
    const auto s = gaussian_envelope(n, kPi, 4.0, kPi / 30);
    EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), kPi, 1e-12);
  }
}

TEST(pulsetrain, gaussian_envelope_peak_regression) {
  const auto s = gaussian_envelope(50, kPi, 4.0, kPi / 30);
  EXPECT_NEAR(*std::max_element(s.begin(), s.end()), 0.10495435874704499, 1e-14);
}

TEST(pulsetrain, gaussian_envelope_unrealizable) {
  try {
    gaussian_envelope(20, kPi, 4.0, kPi / 30);
    FAIL() << "expected an envelope error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEnvelope);
    EXPECT_NE(std::string(e.what()).find("available"), std::string::npos);
  }
}

TEST(pulsetrain, shaped_constant_matches_dual) {
  const double phi = 1.2;
  const std::vector<double> s(12, 2 * std::cos(phi) * kSetI.delta_theta);
  const auto shaped = shaped_sequence(s, 0.3, kSetI);
  const auto dual = dual_sequence(12, phi, 0.3, kSetI);
  ASSERT_EQ(shaped.train.size(), dual.train.size());
  // acos(cos(phi)) is phi to one ulp, so event times agree to far below 1 zs.
  for (std::size_t i = 0; i < dual.train.size(); ++i) {
    EXPECT_NEAR(shaped.train.events()[i].time, dual.train.events()[i].time, 1e-24);
  }
}

TEST(pulsetrain, shaped_zero_strength_is_quadrature) {
  const std::vector<double> s{0.0, 0.0};
  const auto st = shaped_sequence(s, 0.0, kSetI);
  EXPECT_DOUBLE_EQ(st.schedule.cycles[0].phi, kPi / 2);
}

TEST(pulsetrain, shaped_gaussian_phases) {
  const auto s = gaussian_envelope(50, kPi, 4.0, kPi / 30);
  const auto st = shaped_sequence(s, 0.0, kSetI);
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_NEAR(st.schedule.cycles[k].phi, std::acos(s[k] / (2 * kPi / 30)), 1e-13);
  }
}

TEST(pulsetrain, shaped_rejects_unrealizable) {
  const std::vector<double> too_big{3 * kSetI.delta_theta};
  EXPECT_EQ(kind_of([&] { shaped_sequence(too_big, 0.0, kSetI); }), ErrorKind::kEnvelope);
  const std::vector<double> negative{-0.01};
  EXPECT_EQ(kind_of([&] { shaped_sequence(negative, 0.0, kSetI); }), ErrorKind::kEnvelope);
}

TEST(pulsetrain, train_rejects_unordered_events) {
  std::vector<PulseEvent> ev{{1e-12}, {0.5e-12}};
  EXPECT_EQ(kind_of([&] { PulseTrain(ev, 2e-10); }), ErrorKind::kData);
  std::vector<PulseEvent> bad_pol{{0.0, kFluxQuantum, 0}};
  EXPECT_EQ(kind_of([&] { PulseTrain(bad_pol, 2e-10); }), ErrorKind::kData);
}

TEST(pulsetrain, waveform_single_event_integral) {
  const PulseTrain t({{0.0}}, 2e-10);
  const auto w = render_waveform(t, PulseShape::gaussian(2e-12), 5e12, 20e-12);
  EXPECT_NEAR(integrate(w) / kFluxQuantum, 1.0, 1e-4);
}

TEST(pulsetrain, waveform_peaks_at_event_times) {
  const PulseTrain t({{0.0}, {100e-12}}, 2e-10);
  const auto w = render_waveform(t, PulseShape::gaussian(2e-12), 5e12, 20e-12);
  const std::size_t half = w.samples.size() / 2;
  const auto p1 = std::max_element(w.samples.begin(), w.samples.begin() + half) - w.samples.begin();
  const auto p2 = std::max_element(w.samples.begin() + half, w.samples.end()) - w.samples.begin();
  EXPECT_LE(std::abs(w.time_at(p1) - 0.0), w.sample_interval);
  EXPECT_LE(std::abs(w.time_at(p2) - 100e-12), w.sample_interval);
}

TEST(pulsetrain, waveform_train_integral) {
  const auto w = render_waveform(single_sequence(30, kSetI), PulseShape::gaussian(2e-12), 5e12,
                                 20e-12);
  EXPECT_NEAR(integrate(w) / kFluxQuantum, 30.0, 30e-4);
}

TEST(pulsetrain, waveform_guards) {
  const PulseTrain t({{0.0}}, 2e-10);
  // 2 ps FWHM at 2 THz is only 4 samples per FWHM.
  EXPECT_EQ(kind_of([&] { render_waveform(t, PulseShape::gaussian(2e-12), 2e12, 1e-11); }),
            ErrorKind::kResolution);
  EXPECT_EQ(kind_of([&] { render_waveform(t, PulseShape::delta(), 5e12, 1e-11); }),
            ErrorKind::kDomain);
  EXPECT_EQ(kind_of([&] { render_waveform(PulseTrain{}, PulseShape::gaussian(), 5e12, 1e-11); }),
            ErrorKind::kEmptyTrain);
}

TEST(pulsetrain, waveform_linearity) {
  const PulseShape g = PulseShape::gaussian(2e-12);
  const PulseTrain a({{0.0}, {30e-12}}, 2e-10);
  const PulseTrain b({{13e-12}, {61e-12}}, 2e-10);
  const PulseTrain ab({{0.0}, {13e-12}, {30e-12}, {61e-12}}, 2e-10);
  const double start = -20e-12, dt = 0.2e-12;
  const std::size_t count = 500;
  const auto wa = render_waveform_on_grid(a, g, start, dt, count);
  const auto wb = render_waveform_on_grid(b, g, start, dt, count);
  const auto wab = render_waveform_on_grid(ab, g, start, dt, count);
  double peak = 0.0;
  for (double v : wab.samples) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < count; ++i) {
    EXPECT_NEAR(wab.samples[i], wa.samples[i] + wb.samples[i], 1e-14 * peak);
  }
}
