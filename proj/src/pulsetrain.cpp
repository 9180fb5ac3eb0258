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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sfq/error.hpp"

namespace sfq {

namespace {

// Gaussian pulses are evaluated only within this many sigma of their center.
constexpr double kGaussianSupport = 12.0;
constexpr double kFwhmPerSigma = 2.3548200450309493;  // 2 sqrt(2 ln 2)

void check_params(const QubitParams& p) {
  if (!(p.omega01 > 0.0) || !(p.clock_omega > 0.0)) {
    throw Error(ErrorKind::kDomain, "omega01 and clock_omega must be positive");
  }
}

}  // namespace

PulseTrain::PulseTrain(std::vector<PulseEvent> events, double clock_period)
    : events_(std::move(events)), clock_period_(clock_period) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto& e = events_[i];
    if (!(e.area > 0.0)) throw Error(ErrorKind::kData, "pulse area must be positive");
    if (e.polarity != 1 && e.polarity != -1) {
      throw Error(ErrorKind::kData, "pulse polarity must be +1 or -1");
    }
    if (!std::isfinite(e.time)) throw Error(ErrorKind::kData, "pulse time must be finite");
    if (i > 0 && !(e.time > events_[i - 1].time)) {
      std::ostringstream msg;
      msg << "pulse times must be strictly increasing (event " << i << " at " << e.time
          << " s follows " << events_[i - 1].time << " s)";
      throw Error(ErrorKind::kData, msg.str());
    }
  }
}

double PulseTrain::first_time() const {
  if (events_.empty()) throw Error(ErrorKind::kEmptyTrain, "pulse train is empty");
  return events_.front().time;
}

double PulseTrain::last_time() const {
  if (events_.empty()) throw Error(ErrorKind::kEmptyTrain, "pulse train is empty");
  return events_.back().time;
}

PulseTrain PulseTrain::shifted(double dt) const {
  auto events = events_;
  for (auto& e : events) e.time += dt;
  return PulseTrain(std::move(events), clock_period_);
}

double PulseShape::sigma() const { return kind == Kind::kGaussian ? fwhm / kFwhmPerSigma : 0.0; }

double PulseShape::form_factor(double omega) const {
  if (kind == Kind::kDelta) return 1.0;
  const double x = omega * sigma();
  return std::exp(-0.5 * x * x);
}

double Waveform::end_time() const {
  if (samples.empty()) return start_time;
  return time_at(samples.size() - 1);
}

std::pair<double, double> dual_event_times(const DualCycle& cycle, const QubitParams& params) {
  const double center =
      (static_cast<double>(cycle.index) + cycle.psi / kTwoPi) * params.clock_period();
  const double half = cycle.phi / params.omega01;
  return {center - half, center + half};
}

void check_phi(double phi, bool hardware_constrained) {
  const double lo = hardware_constrained ? kPhiHardwareMin : 0.0;
  const double hi = hardware_constrained ? kPhiHardwareMax : kPi;
  if (!(phi > lo)) {
    std::ostringstream msg;
    msg << "phi = " << phi / kPi << " pi is below the lower bound "
        << (hardware_constrained ? "0.0423 pi (hardware)" : "0");
    throw Error(ErrorKind::kRange, msg.str());
  }
  if (!(phi < hi)) {
    std::ostringstream msg;
    msg << "phi = " << phi / kPi << " pi is above the upper bound "
        << (hardware_constrained ? "0.958 pi (hardware)" : "pi");
    throw Error(ErrorKind::kRange, msg.str());
  }
}

PulseTrain single_sequence(std::size_t n, const QubitParams& params) {
  if (n == 0) throw Error(ErrorKind::kEmptyTrain, "single sequence needs at least one pulse");
  check_params(params);
  const double period = params.clock_period();
  std::vector<PulseEvent> events(n);
  for (std::size_t k = 0; k < n; ++k) events[k].time = static_cast<double>(k) * period;
  return PulseTrain(std::move(events), period);
}

PulseTrain render_schedule(const DualPulseSchedule& schedule) {
  std::vector<PulseEvent> events;
  events.reserve(2 * schedule.cycles.size());
  for (const auto& cycle : schedule.cycles) {
    const auto [early, late] = dual_event_times(cycle, schedule.params);
    events.push_back({early});
    events.push_back({late});
  }
  return PulseTrain(std::move(events), schedule.params.clock_period());
}

ScheduledTrain dual_sequence(std::size_t n, double phi, double psi, const QubitParams& params,
                             bool hardware_constrained) {
  if (n == 0) throw Error(ErrorKind::kEmptyTrain, "dual sequence needs at least one cycle");
  check_params(params);
  check_phi(phi, hardware_constrained);
  DualPulseSchedule schedule{{}, params, hardware_constrained};
  schedule.cycles.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    schedule.cycles.push_back({static_cast<long>(k), phi, psi});
  }
  PulseTrain train = render_schedule(schedule);
  return {std::move(schedule), std::move(train)};
}

std::vector<double> gaussian_envelope(std::size_t n, double total_angle, double sigma_factor,
                                      double delta_theta, bool hardware_constrained) {
  if (n == 0) throw Error(ErrorKind::kEmptyTrain, "envelope needs at least one cycle");
  if (!(total_angle > 0.0)) throw Error(ErrorKind::kDomain, "total_angle must be positive");
  if (!(sigma_factor > 0.0)) throw Error(ErrorKind::kDomain, "sigma_factor must be positive");
  if (!(delta_theta > 0.0)) throw Error(ErrorKind::kDomain, "delta_theta must be positive");

  const double sigma = static_cast<double>(n) / sigma_factor;
  const double center = 0.5 * static_cast<double>(n - 1);
  std::vector<double> s(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = (static_cast<double>(k) - center) / sigma;
    s[k] = std::exp(-0.5 * x * x);
    sum += s[k];
  }
  for (auto& v : s) v *= total_angle / sum;

  const double available =
      2.0 * delta_theta * (hardware_constrained ? std::cos(kPhiHardwareMin) : 1.0);
  const double peak = *std::max_element(s.begin(), s.end());
  if (peak > available) {
    std::ostringstream msg;
    msg << "Gaussian envelope needs peak strength " << peak << " rad per cycle but only "
        << available << " rad is available";
    throw Error(ErrorKind::kEnvelope, msg.str());
  }
  return s;
}

ScheduledTrain shaped_sequence(std::span<const double> strengths, double psi,
                               const QubitParams& params, bool hardware_constrained) {
  if (strengths.empty()) throw Error(ErrorKind::kEmptyTrain, "no per-cycle strengths given");
  check_params(params);
  const double full = 2.0 * params.delta_theta;
  DualPulseSchedule schedule{{}, params, hardware_constrained};
  schedule.cycles.reserve(strengths.size());
  for (std::size_t k = 0; k < strengths.size(); ++k) {
    const double s = strengths[k];
    if (!(s >= 0.0) || s > full) {
      std::ostringstream msg;
      msg << "strength " << s << " rad in cycle " << k << " is not realizable (0 <= s <= "
          << full << ")";
      throw Error(ErrorKind::kEnvelope, msg.str());
    }
    const double phi = std::acos(s / full);
    if (hardware_constrained) {
      try {
        check_phi(phi, true);
      } catch (const Error& e) {
        throw Error(ErrorKind::kEnvelope,
                    "strength in cycle " + std::to_string(k) + " needs " + e.what());
      }
    } else if (phi == 0.0) {
      throw Error(ErrorKind::kEnvelope,
                  "strength in cycle " + std::to_string(k) + " needs coincident pulses");
    }
    schedule.cycles.push_back({static_cast<long>(k), phi, psi});
  }
  PulseTrain train = render_schedule(schedule);
  return {std::move(schedule), std::move(train)};
}

Waveform render_waveform_on_grid(const PulseTrain& train, const PulseShape& shape,
                                 double start_time, double sample_interval, std::size_t count) {
  if (shape.kind == PulseShape::Kind::kDelta) {
    throw Error(ErrorKind::kDomain, "delta pulses cannot be sampled; use the analytic paths");
  }
  if (!(shape.fwhm > 0.0)) throw Error(ErrorKind::kDomain, "pulse FWHM must be positive");
  if (!(sample_interval > 0.0)) throw Error(ErrorKind::kDomain, "sample interval must be positive");
  if (shape.fwhm / sample_interval < 10.0 * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "sampling gives " << shape.fwhm / sample_interval
        << " samples per pulse FWHM; at least 10 required";
    throw Error(ErrorKind::kResolution, msg.str());
  }
  Waveform w;
  w.sample_interval = sample_interval;
  w.start_time = start_time;
  w.samples.assign(count, 0.0);
  const double sigma = shape.sigma();
  const double norm = 1.0 / (sigma * std::sqrt(kTwoPi));
  const double reach = kGaussianSupport * sigma;
  for (const auto& e : train.events()) {
    const double lo = std::ceil((e.time - reach - start_time) / sample_interval);
    const double hi = std::floor((e.time + reach - start_time) / sample_interval);
    const auto first = static_cast<long long>(std::max(lo, 0.0));
    const auto last = std::min(static_cast<long long>(hi), static_cast<long long>(count) - 1);
    const double amp = e.area * e.polarity * norm;
    for (long long i = first; i <= last; ++i) {
      const double x = (w.time_at(static_cast<std::size_t>(i)) - e.time) / sigma;
      w.samples[static_cast<std::size_t>(i)] += amp * std::exp(-0.5 * x * x);
    }
  }
  return w;
}

Waveform render_waveform(const PulseTrain& train, const PulseShape& shape, double sample_rate,
                         double padding) {
  if (train.empty()) throw Error(ErrorKind::kEmptyTrain, "cannot render an empty train");
  if (!(sample_rate > 0.0)) throw Error(ErrorKind::kDomain, "sample rate must be positive");
  if (!(padding >= 0.0)) throw Error(ErrorKind::kDomain, "padding must be non-negative");
  const double dt = 1.0 / sample_rate;
  const double start = train.first_time() - padding;
  const double span = train.last_time() + padding - start;
  const auto count = static_cast<std::size_t>(std::ceil(span / dt - 1e-9)) + 1;
  return render_waveform_on_grid(train, shape, start, dt, count);
}

double integrate(const Waveform& w) {
  if (w.samples.size() < 2) return 0.0;
  double sum = 0.5 * (w.samples.front() + w.samples.back());
  for (std::size_t i = 1; i + 1 < w.samples.size(); ++i) sum += w.samples[i];
  return sum * w.sample_interval;
}

}  // namespace sfq
