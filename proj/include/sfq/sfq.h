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

/* C interface to the sfqdrive library. Every function returns an sfq_status;
 * on failure sfq_last_error() holds a message for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * sfq_string_free. Handles are released with their *_destroy function, which
 * accepts NULL. */
#ifndef SFQ_SFQ_H
#define SFQ_SFQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SFQ_BUILDING_LIBRARY)
#define SFQ_API __declspec(dllexport)
#else
#define SFQ_API __declspec(dllimport)
#endif
#else
#define SFQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sfq_status {
  SFQ_OK = 0,
  SFQ_ERR_DOMAIN = 1,
  SFQ_ERR_RANGE = 2,
  SFQ_ERR_EMPTY_TRAIN = 3,
  SFQ_ERR_ENVELOPE = 4,
  SFQ_ERR_RESOLUTION = 5,
  SFQ_ERR_DATA = 6,
  SFQ_ERR_CALIBRATION = 7,
  SFQ_ERR_COMPILE = 8,
  SFQ_ERR_FIT = 9,
  SFQ_ERR_CONFIG = 10,
  SFQ_ERR_IO = 11,
  SFQ_ERR_INVALID_ARGUMENT = 12,
  SFQ_ERR_INTERNAL = 13
} sfq_status;

typedef struct sfq_params sfq_params;
typedef struct sfq_train sfq_train;
typedef struct sfq_calibration sfq_calibration;
typedef struct sfq_rb_result sfq_rb_result;

SFQ_API const char* sfq_version(void);
SFQ_API const char* sfq_last_error(void);
/* Stable lowercase name, e.g. "calibration". */
SFQ_API const char* sfq_status_name(sfq_status status);
SFQ_API void sfq_string_free(char* s);

/* ---- params ---- */
/* Angular frequencies in rad/s; clock_omega <= 0 selects the resonant clock. */
SFQ_API sfq_status sfq_params_create(double omega01, double alpha, double delta_theta,
                                     double clock_omega, sfq_params** out);
/* Benchmark parameter set 1 or 2. */
SFQ_API sfq_status sfq_params_preset(int which, sfq_params** out);
/* JSON text with omega01_hz, alpha_hz, delta_theta_rad (or coupling), clock_hz. */
SFQ_API sfq_status sfq_params_from_json(const char* json, sfq_params** out);
SFQ_API sfq_status sfq_params_to_json(const sfq_params* p, char** json_out);
SFQ_API sfq_status sfq_params_get(const sfq_params* p, double* omega01, double* alpha,
                                  double* delta_theta, double* clock_omega);
/* JSON array of {field, message, warning}; *has_errors set when any entry is
 * not a warning. */
SFQ_API sfq_status sfq_params_validate(const sfq_params* p, char** violations_json,
                                       int* has_errors);
SFQ_API void sfq_params_destroy(sfq_params* p);
SFQ_API sfq_status sfq_delta_theta_from_circuit(double c_coupling, double c_qubit,
                                                double omega01, double* out);

/* ---- pulse trains ---- */
SFQ_API sfq_status sfq_train_single(size_t n, const sfq_params* p, sfq_train** out);
SFQ_API sfq_status sfq_train_dual(size_t n, double phi, double psi, const sfq_params* p,
                                  int hardware_constrained, sfq_train** out);
SFQ_API sfq_status sfq_train_shaped(const double* strengths, size_t n, double psi,
                                    const sfq_params* p, int hardware_constrained,
                                    sfq_train** out);
SFQ_API sfq_status sfq_gaussian_envelope(size_t n, double total_angle, double sigma_factor,
                                         double delta_theta, int hardware_constrained,
                                         double* strengths_out);
SFQ_API sfq_status sfq_train_size(const sfq_train* t, size_t* n);
/* Copies min(capacity, size) event times. */
SFQ_API sfq_status sfq_train_times(const sfq_train* t, double* times, size_t capacity);
SFQ_API sfq_status sfq_train_to_csv(const sfq_train* t, char** csv_out);
SFQ_API sfq_status sfq_train_to_json(const sfq_train* t, char** json_out);
/* Gaussian pulses of the given FWHM sampled at sample_rate (Hz). */
SFQ_API sfq_status sfq_train_waveform_csv(const sfq_train* t, double fwhm, double sample_rate,
                                          char** csv_out);
SFQ_API void sfq_train_destroy(sfq_train* t);

/* ---- two-level ---- */
/* which: 0 five-factor product, 1 closed form, 2 approximation. Row-major
 * [re, im] pairs, 8 doubles. */
SFQ_API sfq_status sfq_cycle_unitary(double delta_theta, double phi, int which, double* out8);
SFQ_API sfq_status sfq_effective_delta_theta(double delta_theta, double phi, double* out);
/* Bloch trajectory CSV (t_s,x,y,z) of n dual cycles, rotating frame. */
SFQ_API sfq_status sfq_trajectory_csv(const sfq_params* p, size_t n_cycles, double phi,
                                      double psi, const double initial_bloch[3], size_t substeps,
                                      char** csv_out);

/* ---- three-level ---- */
/* initial: 6 doubles ([re, im] per level). state_out: 6 doubles; propagator_out
 * (nullable): 18 doubles, lab frame, over [first event, last event]. */
SFQ_API sfq_status sfq_evolve_kicks(const sfq_train* t, const sfq_params* p,
                                    const double* initial, double* state_out,
                                    double* propagator_out);
SFQ_API sfq_status sfq_population_csv(const sfq_train* t, const sfq_params* p, char** csv_out);

/* ---- spectrum ---- */
SFQ_API sfq_status sfq_spectral_component(const sfq_train* t, double omega, double* out);
SFQ_API sfq_status sfq_leakage_ratio(const sfq_train* t, const sfq_params* p, double* out);
SFQ_API sfq_status sfq_tuning_curve_csv(const sfq_params* p, const double* phi, size_t n_phi,
                                        size_t n_cycles, char** csv_out);
SFQ_API sfq_status sfq_leakage_sweep_csv(const sfq_params* p, const double* phi, size_t n_phi,
                                         double target_angle, char** csv_out);
SFQ_API sfq_status sfq_envelope_compare_csv(const sfq_params* p, const double* gate_lengths,
                                            size_t n_lengths, double target_angle,
                                            double sigma_factor, int hardware_constrained,
                                            char** csv_out);

/* ---- gates ---- */
SFQ_API sfq_status sfq_calibrate_coarse(double target_angle, size_t n_cycles, const sfq_params* p,
                                        int hardware_constrained, double* phi_out);
SFQ_API sfq_status sfq_minimum_feasible_cycles(double target_angle, const sfq_params* p,
                                               int hardware_constrained, size_t* n_out);
/* level: "single", "dual-coarse" or "dual-fine". n_cycles is ignored for
 * "single". */
SFQ_API sfq_status sfq_calibrate(const sfq_params* p, const char* level, size_t n_cycles,
                                 int hardware_constrained, sfq_calibration** out);
/* Dual gate duration: best n in [n_min, n_max]; n_min = 0 means the smallest
 * feasible n. */
SFQ_API sfq_status sfq_select_cycles(const sfq_params* p, size_t n_min, size_t n_max,
                                     int hardware_constrained, size_t* n_out,
                                     double* weighted_error_out);
SFQ_API sfq_status sfq_calibration_to_json(const sfq_calibration* c, char** json_out);
SFQ_API sfq_status sfq_calibration_from_json(const char* json, sfq_calibration** out);
/* Calibrated gate fidelity by primitive name (X90, Xm90, Y90, Ym90, X180, Y180). */
SFQ_API sfq_status sfq_calibration_fidelity(const sfq_calibration* c, const char* primitive,
                                            double* out);
SFQ_API void sfq_calibration_destroy(sfq_calibration* c);
SFQ_API sfq_status sfq_clifford_count(size_t* out);
SFQ_API sfq_status sfq_average_decomposition_length(double* out);

/* ---- randomized benchmarking ---- */
typedef struct sfq_rb_options {
  const size_t* lengths; /* strictly ascending, each >= 1 */
  size_t n_lengths;
  size_t n_random;
  uint64_t seed;
  unsigned threads; /* 0: hardware concurrency */
  int ideal_gates;  /* nonzero: exact Clifford matrices instead of pulses */
} sfq_rb_options;

SFQ_API sfq_status sfq_rb_run(const sfq_rb_options* options, const sfq_calibration* c,
                              sfq_rb_result** out);
SFQ_API sfq_status sfq_rb_result_to_json(const sfq_rb_result* r, char** json_out);
SFQ_API sfq_status sfq_rb_result_to_csv(const sfq_rb_result* r, char** csv_out);
/* fit_ok is 0 when the decay fit failed; the other outputs are then NaN. */
SFQ_API sfq_status sfq_rb_result_fit(const sfq_rb_result* r, int* fit_ok, double* a, double* b,
                                     double* p, double* epc);
SFQ_API void sfq_rb_result_destroy(sfq_rb_result* r);
SFQ_API sfq_status sfq_fit_decay(const double* lengths, const double* visibilities, size_t n,
                                 double* a, double* b, double* p);
SFQ_API sfq_status sfq_error_per_clifford(double p, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SFQ_SFQ_H */
