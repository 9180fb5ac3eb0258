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

#include "sfq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sfq/error.hpp"
#include "sfq/transmon.hpp"

namespace sfq {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {
std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string q = "\"";
  for (char c : cell) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}
}  // namespace

std::string table_to_csv(const Table& table) {
  std::string out;
  if (!table.title.empty()) out += "# " + table.title + '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::kIo, "cannot open for writing: " + path.string());
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot open: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kConfig, path.string() + ": " + e.what());
  }
}

std::string train_to_csv(const PulseTrain& train) {
  std::string out = "time_s,area_wb,polarity\n";
  for (const auto& e : train.events())
    out += format_double(e.time) + ',' + format_double(e.area) + ',' + std::to_string(e.polarity) +
           '\n';
  return out;
}

nlohmann::json train_to_json(const PulseTrain& train) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : train.events())
    events.push_back({{"time_s", e.time}, {"area_wb", e.area}, {"polarity", e.polarity}});
  return {{"clock_period_s", train.clock_period()}, {"events", events}};
}

std::string waveform_to_csv(const Waveform& waveform) {
  std::string out = "time_s,voltage_v\n";
  for (std::size_t i = 0; i < waveform.samples.size(); ++i)
    out += format_double(waveform.time_at(i)) + ',' + format_double(waveform.samples[i]) + '\n';
  return out;
}

std::string trajectory_to_csv(std::span<const TrajectoryPoint> points) {
  std::string out = "t_s,x,y,z\n";
  for (const auto& p : points)
    out += format_double(p.t) + ',' + format_double(p.r.x) + ',' + format_double(p.r.y) + ',' +
           format_double(p.r.z) + '\n';
  return out;
}

namespace {
nlohmann::json complex_pair(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

template <typename M>
nlohmann::json matrix_json(const M& u) {
  nlohmann::json rows = nlohmann::json::array();
  for (long r = 0; r < u.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (long c = 0; c < u.cols(); ++c) row.push_back(complex_pair(u(r, c)));
    rows.push_back(row);
  }
  return {{"format", "rows of [re, im]"}, {"matrix", rows}};
}
}  // namespace

nlohmann::json state_to_json(const State3& state) {
  nlohmann::json amps = nlohmann::json::array();
  for (long i = 0; i < state.size(); ++i) amps.push_back(complex_pair(state(i)));
  return {{"format", "[re, im] per level"}, {"amplitudes", amps}};
}

nlohmann::json unitary_to_json(const Unitary3& u) { return matrix_json(u); }
nlohmann::json unitary_to_json(const Unitary2& u) { return matrix_json(u); }

std::vector<PopulationPoint> population_series(const PulseTrain& train, const QubitParams& params,
                                               const State3& initial, const PulseShape& shape) {
  std::vector<PopulationPoint> out;
  if (train.empty()) return out;
  auto pops = [](double t, const State3& s) {
    return PopulationPoint{t, std::norm(s(0)), std::norm(s(1)), std::norm(s(2))};
  };
  out.push_back(pops(train.first_time(), initial));
  State3 state = initial;
  double t = train.first_time();
  for (const auto& e : train.events()) {
    PulseTrain one({e}, train.clock_period());
    state = free_propagator(e.time - t, params) * state;
    state = evolve_kicks_state(one, params, state, shape);
    t = e.time;
    out.push_back(pops(t, state));
  }
  return out;
}

std::string population_to_csv(std::span<const PopulationPoint> points) {
  std::string out = "t_s,p0,p1,p2\n";
  for (const auto& p : points)
    out += format_double(p.t) + ',' + format_double(p.p0) + ',' + format_double(p.p1) + ',' +
           format_double(p.p2) + '\n';
  return out;
}

Table tuning_table(const TuningCurve& curve) {
  Table t{"fig3a: resonant amplitude ratio dual/single vs 2phi (" + curve.normalization + ")",
          {"two_phi_rad", "ratio"},
          {}};
  for (const auto& p : curve.points) t.rows.push_back({format_double(p.two_phi), format_double(p.ratio)});
  return t;
}

Table leakage_table(std::span<const LeakageRatioPoint> rows, double single_sequence_ratio) {
  Table t{"fig3b: A(w12)/A(w01) of calibrated pi trains vs 2phi; single-sequence baseline row "
          "has two_phi = nan",
          {"two_phi_rad", "n_cycles", "ratio", "warning"},
          {}};
  for (const auto& r : rows)
    t.rows.push_back({format_double(r.two_phi), std::to_string(r.n_cycles), format_double(r.ratio),
                      r.warning});
  t.rows.push_back({"nan", "0", format_double(single_sequence_ratio), "single-sequence baseline"});
  return t;
}

Table envelope_table(std::span<const EnvelopeRow> rows) {
  Table t{"fig3c: A(w12)/A(w01) of pi gates vs gate length, rectangle vs Gaussian envelope",
          {"t_gate_s", "n_cycles", "ratio_rect", "ratio_gauss"},
          {}};
  for (const auto& r : rows)
    t.rows.push_back({format_double(r.t_gate), std::to_string(r.n_cycles),
                      format_double(r.ratio_rect), format_double(r.ratio_gauss)});
  return t;
}

}  // namespace sfq
