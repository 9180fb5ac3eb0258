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

#ifndef SFQ_PULSETRAIN_HPP
#define SFQ_PULSETRAIN_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sfq/params.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Narrowest dual-pulse half-interval phase the generator circuit supports at a
/// 5 GHz clock, and the widest. Used only when a builder is asked to be
/// hardware constrained.
inline constexpr double kPhiHardwareMin = 0.0423 * kPi;
inline constexpr double kPhiHardwareMax = 0.958 * kPi;

struct PulseEvent {
  double time = 0.0;             // s
  double area = kFluxQuantum;    // Wb
  int polarity = +1;             // +1 or -1
};

/// Time-ordered SFQ pulse events. Times are strictly increasing; they may be
/// negative (pairs are centered on the cycle grid, so the first pulse of cycle
/// 0 sits before t = 0).
class PulseTrain {
 public:
  PulseTrain() = default;
  /// Throws Error(kData) if times are not strictly increasing, an area is
  /// non-positive, or a polarity is not +/-1.
  PulseTrain(std::vector<PulseEvent> events, double clock_period);

  const std::vector<PulseEvent>& events() const { return events_; }
  double clock_period() const { return clock_period_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  double first_time() const;
  double last_time() const;

  /// Copy with every event moved by dt.
  PulseTrain shifted(double dt) const;

 private:
  std::vector<PulseEvent> events_;
  double clock_period_ = 0.0;
};

struct DualCycle {
  long index = 0;
  double phi = 0.0;   // half-interval phase, rad in (0, pi)
  double psi = 0.0;   // axis (timing) phase, rad
};

struct DualPulseSchedule {
  std::vector<DualCycle> cycles;
  QubitParams params;
  bool hardware_constrained = false;
};

struct ScheduledTrain {
  DualPulseSchedule schedule;
  PulseTrain train;
};

struct PulseShape {
  enum class Kind { kDelta, kGaussian };
  Kind kind = Kind::kGaussian;
  double fwhm = 2e-12;  // s, Gaussian only

  static PulseShape delta() { return {Kind::kDelta, 0.0}; }
  static PulseShape gaussian(double fwhm = 2e-12) { return {Kind::kGaussian, fwhm}; }

  double sigma() const;
  /// Fourier magnitude of a unit-area pulse: 1 for delta, exp(-w^2 s^2 / 2)
  /// for Gaussian.
  double form_factor(double omega) const;
};

struct Waveform {
  std::vector<double> samples;   // V
  double sample_interval = 0.0;  // s
  double start_time = 0.0;       // s

  double time_at(std::size_t i) const {
    return start_time + static_cast<double>(i) * sample_interval;
  }
  double end_time() const;
};

/// Event times of one dual-pulse cycle: center (k + psi/2pi) T, offsets
/// -/+ phi/omega01. Shared by every dual builder so equal inputs give bitwise
/// equal times.
std::pair<double, double> dual_event_times(const DualCycle& cycle, const QubitParams& params);

/// Checks phi against (0, pi), or the hardware range when constrained.
/// Throws Error(kRange) naming the violated bound.
void check_phi(double phi, bool hardware_constrained);

/// n pulses at t = k T.
PulseTrain single_sequence(std::size_t n, const QubitParams& params);

ScheduledTrain dual_sequence(std::size_t n, double phi, double psi, const QubitParams& params,
                             bool hardware_constrained = false);

/// Truncated Gaussian per-cycle strengths summing to total_angle, with
/// sigma = n / sigma_factor. Throws Error(kEnvelope) if the peak exceeds what
/// a dual pair can deliver (2 delta_theta, or 2 delta_theta cos(phi_min) when
/// constrained).
std::vector<double> gaussian_envelope(std::size_t n, double total_angle, double sigma_factor,
                                      double delta_theta, bool hardware_constrained = false);

/// phi_k = arccos(s_k / (2 delta_theta)) per cycle.
ScheduledTrain shaped_sequence(std::span<const double> strengths, double psi,
                               const QubitParams& params, bool hardware_constrained = false);

PulseTrain render_schedule(const DualPulseSchedule& schedule);

/// Sum of shaped voltage pulses sampled on a uniform grid spanning
/// [first - padding, last + padding]. Delta shape is refused (Error kDomain);
/// Gaussian needs sample_rate * fwhm >= 10 (Error kResolution).
Waveform render_waveform(const PulseTrain& train, const PulseShape& shape, double sample_rate,
                         double padding);

/// Same, on a caller-fixed grid (used to compare waveforms sample-by-sample).
Waveform render_waveform_on_grid(const PulseTrain& train, const PulseShape& shape,
                                 double start_time, double sample_interval, std::size_t count);

/// Trapezoid integral of the samples, V s.
double integrate(const Waveform& waveform);

}  // namespace sfq

#endif  // SFQ_PULSETRAIN_HPP
