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

#ifndef SFQ_IO_HPP
#define SFQ_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfq/params.hpp"
#include "sfq/pulsetrain.hpp"
#include "sfq/spectrum.hpp"
#include "sfq/twolevel.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// 17 significant digits; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double value);

/// Pre-formatted CSV table. `title` becomes a leading "# " comment naming the
/// figure; the next line is the column header.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
std::string table_to_csv(const Table& table);

/// Writes atomically enough for our purposes (truncate + write); throws
/// Error(kIo) on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

std::string train_to_csv(const PulseTrain& train);
nlohmann::json train_to_json(const PulseTrain& train);
std::string waveform_to_csv(const Waveform& waveform);
std::string trajectory_to_csv(std::span<const TrajectoryPoint> points);

nlohmann::json state_to_json(const State3& state);
nlohmann::json unitary_to_json(const Unitary3& u);
nlohmann::json unitary_to_json(const Unitary2& u);

struct PopulationPoint {
  double t = 0.0;
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
};
/// Level populations right after each kick (first row: initial state at the
/// first event).
std::vector<PopulationPoint> population_series(const PulseTrain& train, const QubitParams& params,
                                               const State3& initial,
                                               const PulseShape& shape = PulseShape::delta());
std::string population_to_csv(std::span<const PopulationPoint> points);

Table tuning_table(const TuningCurve& curve);
Table leakage_table(std::span<const LeakageRatioPoint> rows, double single_sequence_ratio);
Table envelope_table(std::span<const EnvelopeRow> rows);

}  // namespace sfq

#endif  // SFQ_IO_HPP
