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

#include "sfq/sfq.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "sfq/error.hpp"
#include "sfq/gates.hpp"
#include "sfq/io.hpp"
#include "sfq/params.hpp"
#include "sfq/pulsetrain.hpp"
#include "sfq/rb.hpp"
#include "sfq/spectrum.hpp"
#include "sfq/transmon.hpp"
#include "sfq/twolevel.hpp"

#ifndef SFQ_VERSION_STRING
#define SFQ_VERSION_STRING "0.0.0"
#endif

struct sfq_params {
  sfq::QubitParams value;
};
struct sfq_train {
  sfq::PulseTrain value;
};
struct sfq_calibration {
  sfq::CalibrationSet value;
};
struct sfq_rb_result {
  sfq::RBResult value;
};

namespace {

thread_local std::string g_last_error;

sfq_status status_of(sfq::ErrorKind kind) {
  using sfq::ErrorKind;
  switch (kind) {
    case ErrorKind::kDomain: return SFQ_ERR_DOMAIN;
    case ErrorKind::kRange: return SFQ_ERR_RANGE;
    case ErrorKind::kEmptyTrain: return SFQ_ERR_EMPTY_TRAIN;
    case ErrorKind::kEnvelope: return SFQ_ERR_ENVELOPE;
    case ErrorKind::kResolution: return SFQ_ERR_RESOLUTION;
    case ErrorKind::kData: return SFQ_ERR_DATA;
    case ErrorKind::kCalibration: return SFQ_ERR_CALIBRATION;
    case ErrorKind::kCompile: return SFQ_ERR_COMPILE;
    case ErrorKind::kFit: return SFQ_ERR_FIT;
    case ErrorKind::kConfig: return SFQ_ERR_CONFIG;
    case ErrorKind::kIo: return SFQ_ERR_IO;
  }
  return SFQ_ERR_INTERNAL;
}

sfq_status fail(sfq_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
sfq_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SFQ_OK;
  } catch (const sfq::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SFQ_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SFQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SFQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SFQ_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define SFQ_REQUIRE(ptr)                                                     \
  do {                                                                       \
    if (!(ptr)) return fail(SFQ_ERR_INVALID_ARGUMENT, #ptr " is NULL");      \
  } while (0)

std::span<const double> span_of(const double* p, std::size_t n) { return {p, n}; }

}  // namespace

extern "C" {

const char* sfq_version(void) { return SFQ_VERSION_STRING; }
const char* sfq_last_error(void) { return g_last_error.c_str(); }

const char* sfq_status_name(sfq_status status) {
  switch (status) {
    case SFQ_OK: return "ok";
    case SFQ_ERR_DOMAIN: return "domain";
    case SFQ_ERR_RANGE: return "range";
    case SFQ_ERR_EMPTY_TRAIN: return "empty_train";
    case SFQ_ERR_ENVELOPE: return "envelope";
    case SFQ_ERR_RESOLUTION: return "resolution";
    case SFQ_ERR_DATA: return "data";
    case SFQ_ERR_CALIBRATION: return "calibration";
    case SFQ_ERR_COMPILE: return "compile";
    case SFQ_ERR_FIT: return "fit";
    case SFQ_ERR_CONFIG: return "config";
    case SFQ_ERR_IO: return "io";
    case SFQ_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SFQ_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void sfq_string_free(char* s) { std::free(s); }

// ---- params ----

sfq_status sfq_params_create(double omega01, double alpha, double delta_theta, double clock_omega,
                             sfq_params** out) {
  SFQ_REQUIRE(out);
  return guarded([&] {
    *out = new sfq_params{sfq::QubitParams::make(omega01, alpha, delta_theta, clock_omega)};
  });
}

sfq_status sfq_params_preset(int which, sfq_params** out) {
  SFQ_REQUIRE(out);
  return guarded([&] { *out = new sfq_params{sfq::benchmark_parameter_set(which)}; });
}

sfq_status sfq_params_from_json(const char* json, sfq_params** out) {
  SFQ_REQUIRE(json);
  SFQ_REQUIRE(out);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw sfq::Error(sfq::ErrorKind::kConfig, e.what());
    }
    *out = new sfq_params{sfq::params_from_json(j)};
  });
}

sfq_status sfq_params_to_json(const sfq_params* p, char** json_out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(json_out);
  return guarded([&] { *json_out = dup_string(sfq::params_to_json(p->value).dump()); });
}

sfq_status sfq_params_get(const sfq_params* p, double* omega01, double* alpha, double* delta_theta,
                          double* clock_omega) {
  SFQ_REQUIRE(p);
  if (omega01) *omega01 = p->value.omega01;
  if (alpha) *alpha = p->value.alpha;
  if (delta_theta) *delta_theta = p->value.delta_theta;
  if (clock_omega) *clock_omega = p->value.clock_omega;
  return SFQ_OK;
}

sfq_status sfq_params_validate(const sfq_params* p, char** violations_json, int* has_errors) {
  SFQ_REQUIRE(p);
  return guarded([&] {
    const auto v = sfq::validate(p->value);
    if (has_errors) *has_errors = sfq::has_errors(v) ? 1 : 0;
    if (violations_json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& x : v)
        arr.push_back({{"field", x.field}, {"message", x.message}, {"warning", x.warning}});
      *violations_json = dup_string(arr.dump());
    }
  });
}

void sfq_params_destroy(sfq_params* p) { delete p; }

sfq_status sfq_delta_theta_from_circuit(double c_coupling, double c_qubit, double omega01,
                                        double* out) {
  SFQ_REQUIRE(out);
  return guarded([&] {
    *out = sfq::delta_theta_from_circuit(sfq::CouplingSpec{c_coupling, c_qubit}, omega01);
  });
}

// ---- pulse trains ----

sfq_status sfq_train_single(size_t n, const sfq_params* p, sfq_train** out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(out);
  return guarded([&] { *out = new sfq_train{sfq::single_sequence(n, p->value)}; });
}

sfq_status sfq_train_dual(size_t n, double phi, double psi, const sfq_params* p,
                          int hardware_constrained, sfq_train** out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(out);
  return guarded([&] {
    *out = new sfq_train{
        sfq::dual_sequence(n, phi, psi, p->value, hardware_constrained != 0).train};
  });
}

sfq_status sfq_train_shaped(const double* strengths, size_t n, double psi, const sfq_params* p,
                            int hardware_constrained, sfq_train** out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(out);
  if (n > 0) SFQ_REQUIRE(strengths);
  return guarded([&] {
    *out = new sfq_train{sfq::shaped_sequence(span_of(strengths, n), psi, p->value,
                                              hardware_constrained != 0)
                             .train};
  });
}

sfq_status sfq_gaussian_envelope(size_t n, double total_angle, double sigma_factor,
                                 double delta_theta, int hardware_constrained,
                                 double* strengths_out) {
  if (n > 0) SFQ_REQUIRE(strengths_out);
  return guarded([&] {
    const auto s = sfq::gaussian_envelope(n, total_angle, sigma_factor, delta_theta,
                                          hardware_constrained != 0);
    std::copy(s.begin(), s.end(), strengths_out);
  });
}

sfq_status sfq_train_size(const sfq_train* t, size_t* n) {
  SFQ_REQUIRE(t);
  SFQ_REQUIRE(n);
  *n = t->value.size();
  return SFQ_OK;
}

sfq_status sfq_train_times(const sfq_train* t, double* times, size_t capacity) {
  SFQ_REQUIRE(t);
  if (capacity > 0) SFQ_REQUIRE(times);
  const auto& ev = t->value.events();
  for (std::size_t i = 0; i < ev.size() && i < capacity; ++i) times[i] = ev[i].time;
  return SFQ_OK;
}

sfq_status sfq_train_to_csv(const sfq_train* t, char** csv_out) {
  SFQ_REQUIRE(t);
  SFQ_REQUIRE(csv_out);
  return guarded([&] { *csv_out = dup_string(sfq::train_to_csv(t->value)); });
}

sfq_status sfq_train_to_json(const sfq_train* t, char** json_out) {
  SFQ_REQUIRE(t);
  SFQ_REQUIRE(json_out);
  return guarded([&] { *json_out = dup_string(sfq::train_to_json(t->value).dump()); });
}

sfq_status sfq_train_waveform_csv(const sfq_train* t, double fwhm, double sample_rate,
                                  char** csv_out) {
  SFQ_REQUIRE(t);
  SFQ_REQUIRE(csv_out);
  return guarded([&] {
    const auto shape = sfq::PulseShape::gaussian(fwhm);
    const auto w = sfq::render_waveform(t->value, shape, sample_rate, 6.0 * shape.sigma());
    *csv_out = dup_string(sfq::waveform_to_csv(w));
  });
}

void sfq_train_destroy(sfq_train* t) { delete t; }

// ---- two-level ----

sfq_status sfq_cycle_unitary(double delta_theta, double phi, int which, double* out8) {
  SFQ_REQUIRE(out8);
  return guarded([&] {
    sfq::Unitary2 u;
    switch (which) {
      case 0: u = sfq::cycle_unitary_exact(delta_theta, phi); break;
      case 1: u = sfq::cycle_unitary_closed_form(delta_theta, phi); break;
      case 2: u = sfq::cycle_unitary_approx(delta_theta, phi); break;
      default: throw sfq::Error(sfq::ErrorKind::kDomain, "which must be 0, 1 or 2");
    }
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        out8[2 * (2 * r + c)] = u(r, c).real();
        out8[2 * (2 * r + c) + 1] = u(r, c).imag();
      }
  });
}

sfq_status sfq_effective_delta_theta(double delta_theta, double phi, double* out) {
  SFQ_REQUIRE(out);
  return guarded([&] { *out = sfq::effective_delta_theta(delta_theta, phi); });
}

sfq_status sfq_trajectory_csv(const sfq_params* p, size_t n_cycles, double phi, double psi,
                              const double initial_bloch[3], size_t substeps, char** csv_out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(initial_bloch);
  SFQ_REQUIRE(csv_out);
  return guarded([&] {
    sfq::DualPulseSchedule schedule;
    if (n_cycles > 0) schedule = sfq::dual_sequence(n_cycles, phi, psi, p->value).schedule;
    else schedule.params = p->value;
    const sfq::BlochPoint start{initial_bloch[0], initial_bloch[1], initial_bloch[2]};
    const auto traj = sfq::evolve_bloch(schedule, start, substeps);
    *csv_out = dup_string(sfq::trajectory_to_csv(traj));
  });
}

// ---- three-level ----

sfq_status sfq_evolve_kicks(const sfq_train* t, const sfq_params* p, const double* initial,
                            double* state_out, double* propagator_out) {
  SFQ_REQUIRE(t);
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(initial);
  SFQ_REQUIRE(state_out);
  return guarded([&] {
    sfq::State3 s;
    for (int i = 0; i < 3; ++i) s(i) = sfq::Complex(initial[2 * i], initial[2 * i + 1]);
    const auto ev = sfq::evolve_kicks(t->value, p->value, s);
    for (int i = 0; i < 3; ++i) {
      state_out[2 * i] = ev.state(i).real();
      state_out[2 * i + 1] = ev.state(i).imag();
    }
    if (propagator_out)
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          propagator_out[2 * (3 * r + c)] = ev.propagator(r, c).real();
          propagator_out[2 * (3 * r + c) + 1] = ev.propagator(r, c).imag();
        }
  });
}

sfq_status sfq_population_csv(const sfq_train* t, const sfq_params* p, char** csv_out) {
  SFQ_REQUIRE(t);
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(csv_out);
  return guarded([&] {
    const auto pts = sfq::population_series(t->value, p->value, sfq::basis_state(0));
    *csv_out = dup_string(sfq::population_to_csv(pts));
  });
}

// ---- spectrum ----

sfq_status sfq_spectral_component(const sfq_train* t, double omega, double* out) {
  SFQ_REQUIRE(t);
  SFQ_REQUIRE(out);
  return guarded([&] { *out = sfq::spectral_component(t->value, omega); });
}

sfq_status sfq_leakage_ratio(const sfq_train* t, const sfq_params* p, double* out) {
  SFQ_REQUIRE(t);
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(out);
  return guarded([&] { *out = sfq::leakage_ratio(t->value, p->value); });
}

sfq_status sfq_tuning_curve_csv(const sfq_params* p, const double* phi, size_t n_phi,
                                size_t n_cycles, char** csv_out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(csv_out);
  if (n_phi > 0) SFQ_REQUIRE(phi);
  return guarded([&] {
    const auto curve = sfq::tuning_curve(span_of(phi, n_phi), p->value, n_cycles);
    *csv_out = dup_string(sfq::table_to_csv(sfq::tuning_table(curve)));
  });
}

sfq_status sfq_leakage_sweep_csv(const sfq_params* p, const double* phi, size_t n_phi,
                                 double target_angle, char** csv_out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(csv_out);
  if (n_phi > 0) SFQ_REQUIRE(phi);
  return guarded([&] {
    const auto rows = sfq::leakage_ratio_sweep(span_of(phi, n_phi), p->value, target_angle);
    double baseline = std::numeric_limits<double>::quiet_NaN();
    try {
      baseline = sfq::single_sequence_leakage_ratio(p->value, target_angle);
    } catch (const sfq::Error&) {
    }
    *csv_out = dup_string(sfq::table_to_csv(sfq::leakage_table(rows, baseline)));
  });
}

sfq_status sfq_envelope_compare_csv(const sfq_params* p, const double* gate_lengths,
                                    size_t n_lengths, double target_angle, double sigma_factor,
                                    int hardware_constrained, char** csv_out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(csv_out);
  if (n_lengths > 0) SFQ_REQUIRE(gate_lengths);
  return guarded([&] {
    const auto rows =
        sfq::envelope_comparison(span_of(gate_lengths, n_lengths), p->value, target_angle,
                                 sigma_factor, sfq::PulseShape::delta(), hardware_constrained != 0);
    *csv_out = dup_string(sfq::table_to_csv(sfq::envelope_table(rows)));
  });
}

// ---- gates ----

sfq_status sfq_calibrate_coarse(double target_angle, size_t n_cycles, const sfq_params* p,
                                int hardware_constrained, double* phi_out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(phi_out);
  return guarded([&] {
    *phi_out =
        sfq::calibrate_coarse(target_angle, n_cycles, p->value, hardware_constrained != 0).phi;
  });
}

sfq_status sfq_minimum_feasible_cycles(double target_angle, const sfq_params* p,
                                       int hardware_constrained, size_t* n_out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(n_out);
  return guarded([&] {
    *n_out = sfq::minimum_feasible_cycles(target_angle, p->value, hardware_constrained != 0);
  });
}

sfq_status sfq_calibrate(const sfq_params* p, const char* level, size_t n_cycles,
                         int hardware_constrained, sfq_calibration** out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(level);
  SFQ_REQUIRE(out);
  return guarded([&] {
    const auto lv = sfq::calibration_level_from_name(level);
    if (!lv) throw sfq::Error(sfq::ErrorKind::kConfig, std::string("unknown mode: ") + level);
    *out = new sfq_calibration{
        sfq::calibrate_all(p->value, *lv, n_cycles, hardware_constrained != 0)};
  });
}

sfq_status sfq_select_cycles(const sfq_params* p, size_t n_min, size_t n_max,
                             int hardware_constrained, size_t* n_out, double* weighted_error_out) {
  SFQ_REQUIRE(p);
  SFQ_REQUIRE(n_out);
  return guarded([&] {
    const auto sel = sfq::select_cycles(p->value, n_min, n_max, hardware_constrained != 0);
    *n_out = sel.n_cycles;
    if (weighted_error_out) *weighted_error_out = sel.weighted_error;
  });
}

sfq_status sfq_calibration_to_json(const sfq_calibration* c, char** json_out) {
  SFQ_REQUIRE(c);
  SFQ_REQUIRE(json_out);
  return guarded([&] { *json_out = dup_string(c->value.to_json().dump(2)); });
}

sfq_status sfq_calibration_from_json(const char* json, sfq_calibration** out) {
  SFQ_REQUIRE(json);
  SFQ_REQUIRE(out);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw sfq::Error(sfq::ErrorKind::kConfig, e.what());
    }
    *out = new sfq_calibration{sfq::CalibrationSet::from_json(j)};
  });
}

sfq_status sfq_calibration_fidelity(const sfq_calibration* c, const char* primitive, double* out) {
  SFQ_REQUIRE(c);
  SFQ_REQUIRE(primitive);
  SFQ_REQUIRE(out);
  return guarded([&] {
    const auto prim = sfq::primitive_from_name(primitive);
    const sfq::CalibratedGate* g = prim ? c->value.find(*prim) : nullptr;
    if (!g)
      throw sfq::Error(sfq::ErrorKind::kCompile,
                       std::string("no calibration for ") + primitive);
    *out = g->achieved_fidelity;
  });
}

void sfq_calibration_destroy(sfq_calibration* c) { delete c; }

sfq_status sfq_clifford_count(size_t* out) {
  SFQ_REQUIRE(out);
  return guarded([&] { *out = sfq::clifford_table().size(); });
}

sfq_status sfq_average_decomposition_length(double* out) {
  SFQ_REQUIRE(out);
  return guarded([&] { *out = sfq::average_decomposition_length(); });
}

// ---- randomized benchmarking ----

sfq_status sfq_rb_run(const sfq_rb_options* options, const sfq_calibration* c,
                      sfq_rb_result** out) {
  SFQ_REQUIRE(options);
  SFQ_REQUIRE(c);
  SFQ_REQUIRE(out);
  if (options->n_lengths > 0) SFQ_REQUIRE(options->lengths);
  return guarded([&] {
    sfq::RBConfig cfg;
    cfg.sequence_lengths.assign(options->lengths, options->lengths + options->n_lengths);
    cfg.n_random = options->n_random;
    cfg.rng_seed = options->seed;
    cfg.params = c->value.params();
    const auto lv = sfq::calibration_level_from_name(c->value.mode_label());
    cfg.mode = lv.value_or(sfq::CalibrationLevel::kDualFine);
    cfg.threads = options->threads;
    cfg.gate_model = options->ideal_gates ? sfq::GateModel::kIdeal : sfq::GateModel::kKickEngine;
    if (!c->value.gates().empty()) cfg.n_cycles_per_primitive = c->value.gates().begin()->second.n_cycles;
    *out = new sfq_rb_result{sfq::run_rb(cfg, c->value)};
  });
}

sfq_status sfq_rb_result_to_json(const sfq_rb_result* r, char** json_out) {
  SFQ_REQUIRE(r);
  SFQ_REQUIRE(json_out);
  return guarded([&] { *json_out = dup_string(sfq::rb_result_to_json(r->value).dump(2)); });
}

sfq_status sfq_rb_result_to_csv(const sfq_rb_result* r, char** csv_out) {
  SFQ_REQUIRE(r);
  SFQ_REQUIRE(csv_out);
  return guarded([&] { *csv_out = dup_string(sfq::rb_result_to_csv(r->value)); });
}

sfq_status sfq_rb_result_fit(const sfq_rb_result* r, int* fit_ok, double* a, double* b, double* p,
                             double* epc) {
  SFQ_REQUIRE(r);
  const auto& v = r->value;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (fit_ok) *fit_ok = v.fit_ok ? 1 : 0;
  if (a) *a = v.fit_ok ? v.fit.a : nan;
  if (b) *b = v.fit_ok ? v.fit.b : nan;
  if (p) *p = v.fit_ok ? v.fit.p : nan;
  if (epc) *epc = v.fit_ok ? v.epc : nan;
  return SFQ_OK;
}

void sfq_rb_result_destroy(sfq_rb_result* r) { delete r; }

sfq_status sfq_fit_decay(const double* lengths, const double* visibilities, size_t n, double* a,
                         double* b, double* p) {
  if (n > 0) {
    SFQ_REQUIRE(lengths);
    SFQ_REQUIRE(visibilities);
  }
  return guarded([&] {
    const auto fit = sfq::fit_decay(span_of(lengths, n), span_of(visibilities, n));
    if (a) *a = fit.a;
    if (b) *b = fit.b;
    if (p) *p = fit.p;
  });
}

sfq_status sfq_error_per_clifford(double p, double* out) {
  SFQ_REQUIRE(out);
  return guarded([&] { *out = sfq::error_per_clifford(p); });
}

}  // extern "C"
