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

#ifndef SFQ_RB_HPP
#define SFQ_RB_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfq/gates.hpp"
#include "sfq/params.hpp"
#include "sfq/pulsetrain.hpp"

namespace sfq {

enum class GateModel {
  kKickEngine,  // compiled pulse trains through the three-level kick engine
  kIdeal,       // exact Clifford matrices; checks the protocol itself
};

struct RBConfig {
  std::vector<std::size_t> sequence_lengths = {2, 4, 8, 16, 32, 64, 128};
  std::size_t n_random = 100;
  std::uint64_t rng_seed = 1;
  QubitParams params;
  CalibrationLevel mode = CalibrationLevel::kDualFine;
  std::size_t n_cycles_per_primitive = 0;
  unsigned threads = 1;
  GateModel gate_model = GateModel::kKickEngine;
  PulseShape shape = PulseShape::delta();
};

/// Throws Error(kConfig) on empty or non-ascending lengths, a zero length or
/// n_random == 0.
void validate(const RBConfig& config);

struct DecayFit {
  double a = 0.0;
  double b = 0.0;
  double p = 0.0;
  double residual_norm = 0.0;
};

struct RBResult {
  std::vector<std::size_t> lengths;
  std::vector<double> mean_visibility;
  std::vector<double> std_error;
  std::vector<std::vector<double>> raw;  // [length][repetition]
  bool fit_ok = false;
  std::string fit_message;
  DecayFit fit;
  double epc = 0.0;  // NaN when the fit failed
  bool asymptote_fixed = false;  // B held at 1/2: decay too small to resolve
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t n_random = 0;
};

/// Seed of the child stream for job (length index, repetition).
std::uint64_t job_seed(std::uint64_t seed, std::size_t length_index, std::size_t repetition);

/// Uniform Clifford indices for one job; mt19937_64 with rejection sampling so
/// the stream is identical on every platform.
std::vector<int> draw_cliffords(std::uint64_t child_seed, std::size_t n);

/// Ground-state population after the sequence plus its recovery.
double sequence_visibility(std::span<const int> cliffords, const CalibrationSet& calibrations,
                           GateModel model, const PulseShape& shape = PulseShape::delta());

/// Runs every (length, repetition) job, in parallel when config.threads > 1.
/// Results are reduced in job order, so the thread count never changes them.
RBResult run_rb(const RBConfig& config, const CalibrationSet& calibrations);

/// Least-squares fit of V = A p^N + B (Levenberg-Marquardt), with A, B in
/// [0, 1] and 0 < p <= 1. `fixed_b` holds B instead of fitting it.
DecayFit fit_decay(std::span<const double> lengths, std::span<const double> visibilities,
                   std::optional<double> fixed_b = std::nullopt);

/// Below this total spread of mean visibilities the free three-parameter fit
/// cannot separate A from p, and run_rb holds B at the qubit value 1/2.
inline constexpr double kUnresolvedDecay = 1e-3;

/// (1 - p) / 2. Throws Error(kDomain) outside 0 < p <= 1.
double error_per_clifford(double p);

nlohmann::json rb_result_to_json(const RBResult& result);
/// Rows `N,mean_visibility,stderr`.
std::string rb_result_to_csv(const RBResult& result);

}  // namespace sfq

#endif  // SFQ_RB_HPP
