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

// sfq: figure and experiment runner on top of the C API.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sfq/sfq.h"
#include "sfq_oracles.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
// Lower end of the merger's operating range at a 5 GHz clock; the tuning
// curve spans from here to pi/2 by default.
constexpr double kPhiHardwareMin = 0.0423 * kPi;

struct Failure {
  int code;  // sfq_status, or -1 for CLI-level problems
  std::string status;
  std::string message;
};

void check(sfq_status s) {
  if (s != SFQ_OK) throw Failure{s, sfq_status_name(s), sfq_last_error()};
}

[[noreturn]] void fail(sfq_status s, const std::string& message) {
  throw Failure{s, sfq_status_name(s), message};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  sfq_string_free(s);
  return out;
}

struct Globals {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool hardware_constrained = false;
};

class Run {
 public:
  Run(std::string command, const Globals& g) : command_(std::move(command)), g_(g) {
    start_ = std::chrono::steady_clock::now();
    config_ = load_config();
    check(sfq_params_from_json(config_.dump().c_str(), &params_));
  }
  ~Run() { sfq_params_destroy(params_); }
  Run(const Run&) = delete;
  Run& operator=(const Run&) = delete;

  const sfq_params* params() const { return params_; }
  const Globals& globals() const { return g_; }
  json section(const std::string& name) const {
    return config_.contains(name) ? config_.at(name) : json::object();
  }

  // Spectral commands continue on violations with a warning; calibration
  // and benchmarking stop.
  void validate(bool fatal) {
    char* text = nullptr;
    int has_errors = 0;
    check(sfq_params_validate(params_, &text, &has_errors));
    const json violations = json::parse(take(text));
    for (const auto& v : violations) {
      const bool error = !v.value("warning", false);
      if (error && fatal) fail(SFQ_ERR_DOMAIN, v.value("field", "") + ": " + v.value("message", ""));
      std::cerr << json{{"warning", v}}.dump() << "\n";
    }
  }

  fs::path path(const std::string& name) const { return fs::path(g_.out_dir) / name; }

  void write(const std::string& name, const std::string& text) {
    const fs::path p = path(name);
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    std::ofstream f(p, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) fail(SFQ_ERR_IO, "cannot write " + p.string());
    outputs_.push_back(p.string());
  }

  void note(const std::string& key, json value) { extra_[key] = std::move(value); }

  void finish() {
    char* params_json = nullptr;
    check(sfq_params_to_json(params_, &params_json));
    json m{{"command", command_},
           {"version", sfq_version()},
           {"config", config_},
           {"params", json::parse(take(params_json))},
           {"seed", g_.seed},
           {"threads", g_.threads},
           {"hardware_constrained", g_.hardware_constrained},
           {"outputs", outputs_}};
    for (auto& [k, v] : extra_.items()) m[k] = v;
    m["duration_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const std::string name = command_ + "_manifest.json";
    write(name, m.dump(2) + "\n");
  }

 private:
  json load_config() const {
    if (g_.config_path.empty()) return json{{"preset", "I"}};
    std::ifstream f(g_.config_path);
    if (!f) fail(SFQ_ERR_IO, "cannot read config " + g_.config_path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      json j = json::parse(ss.str());
      if (!j.is_object()) fail(SFQ_ERR_CONFIG, "config must be a JSON object");
      return j;
    } catch (const json::exception& e) {
      fail(SFQ_ERR_CONFIG, std::string("config ") + g_.config_path + ": " + e.what());
    }
  }

  std::string command_;
  Globals g_;
  std::chrono::steady_clock::time_point start_;
  json config_;
  sfq_params* params_ = nullptr;
  std::vector<std::string> outputs_;
  json extra_ = json::object();
};

template <typename T>
T get(const json& section, const char* key, T fallback) {
  if (!section.contains(key)) return fallback;
  try {
    return section.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(SFQ_ERR_CONFIG, std::string("config key '") + key + "': " + e.what());
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

double delta_theta_of(const sfq_params* p) {
  double w, a, d, c;
  check(sfq_params_get(p, &w, &a, &d, &c));
  return d;
}

void cmd_tuning_curve(const Globals& g) {
  Run run("tuning-curve", g);
  run.validate(false);
  const json s = run.section("tuning_curve");
  const auto phi = s.contains("phi_rad")
                       ? get<std::vector<double>>(s, "phi_rad", {})
                       : linspace(get(s, "phi_min_rad", kPhiHardwareMin),
                                  get(s, "phi_max_rad", kPi / 2), get<std::size_t>(s, "points", 200));
  char* csv = nullptr;
  check(sfq_tuning_curve_csv(run.params(), phi.data(), phi.size(),
                             get<std::size_t>(s, "n_cycles", 30), &csv));
  run.write("fig3a.csv", take(csv));
  run.finish();
}

void cmd_leakage_ratio(const Globals& g) {
  Run run("leakage-ratio", g);
  run.validate(false);
  const json s = run.section("leakage_ratio");
  std::vector<double> phi;
  if (s.contains("phi_rad")) {
    phi = get<std::vector<double>>(s, "phi_rad", {});
  } else {
    const auto n = get<std::size_t>(s, "points", 199);
    for (std::size_t i = 1; i <= n; ++i) phi.push_back(kPi * static_cast<double>(i) / (n + 1.0));
  }
  if (g.hardware_constrained) std::erase_if(phi, [](double f) { return f < kPhiHardwareMin || f > 0.958 * kPi; });
  char* csv = nullptr;
  check(sfq_leakage_sweep_csv(run.params(), phi.data(), phi.size(),
                              get(s, "target_angle_rad", kPi), &csv));
  run.write("fig3b.csv", take(csv));
  run.finish();
}

void cmd_envelope_compare(const Globals& g) {
  Run run("envelope-compare", g);
  run.validate(false);
  const json s = run.section("envelope_compare");
  const auto lengths = get<std::vector<double>>(s, "gate_lengths_s",
                                                {8e-9, 12e-9, 16e-9, 24e-9, 32e-9, 48e-9});
  char* csv = nullptr;
  check(sfq_envelope_compare_csv(run.params(), lengths.data(), lengths.size(),
                                 get(s, "target_angle_rad", kPi), get(s, "sigma_factor", 4.0),
                                 g.hardware_constrained, &csv));
  run.write("fig3c.csv", take(csv));
  run.finish();
}

// Shared dual-gate duration: explicit n_cycles, else the library's scan up to
// four times the single-pulse pi length.
std::size_t dual_cycles(const Run& run, const json& s) {
  if (s.contains("n_cycles")) return get<std::size_t>(s, "n_cycles", 0);
  const auto pi_len = static_cast<std::size_t>(std::lround(kPi / delta_theta_of(run.params())));
  std::size_t n = 0;
  check(sfq_select_cycles(run.params(), 0, 4 * pi_len, run.globals().hardware_constrained, &n,
                          nullptr));
  return n;
}

std::string calibration_name(const std::string& level) { return "calibration_" + level + ".json"; }

// Calibrates and writes the store; returns its JSON.
json calibrate_into(Run& run, const json& s, const std::string& level) {
  const std::size_t n = level == "single" ? 0 : dual_cycles(run, s);
  sfq_calibration* cal = nullptr;
  check(sfq_calibrate(run.params(), level.c_str(), n, run.globals().hardware_constrained, &cal));
  char* text = nullptr;
  const sfq_status st = sfq_calibration_to_json(cal, &text);
  sfq_calibration_destroy(cal);
  check(st);
  const std::string store = take(text);
  run.write(calibration_name(level), store + "\n");
  return json{{"level", level}, {"n_cycles", n}, {"store", run.path(calibration_name(level)).string()}};
}

void cmd_calibrate(const Globals& g) {
  Run run("calibrate", g);
  run.validate(true);
  const json s = run.section("calibrate");
  run.note("calibration", calibrate_into(run, s, get<std::string>(s, "level", "dual-fine")));
  run.finish();
}

std::vector<std::size_t> default_rb_lengths() {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= 1024; n *= 2) out.push_back(n);
  return out;
}

void cmd_rb(const Globals& g) {
  Run run("rb", g);
  run.validate(true);
  const json s = run.section("rb");
  const std::string level = get<std::string>(s, "mode", "dual-fine");
  const fs::path store = s.contains("calibration_store")
                             ? fs::path(get<std::string>(s, "calibration_store", ""))
                             : run.path(calibration_name(level));
  if (!fs::exists(store)) {
    json implicit = calibrate_into(run, s, level);
    implicit["implicit"] = true;
    run.note("calibration", implicit);
  } else {
    run.note("calibration", json{{"store", store.string()}, {"implicit", false}});
  }
  std::ifstream f(store);
  std::stringstream text;
  text << f.rdbuf();
  if (!f) fail(SFQ_ERR_IO, "cannot read calibration store " + store.string());
  sfq_calibration* cal = nullptr;
  check(sfq_calibration_from_json(text.str().c_str(), &cal));

  const auto lengths = get<std::vector<std::size_t>>(s, "lengths", default_rb_lengths());
  const sfq_rb_options o{lengths.data(), lengths.size(), get<std::size_t>(s, "n_random", 100),
                         g.seed, g.threads, 0};
  sfq_rb_result* r = nullptr;
  const sfq_status st = sfq_rb_run(&o, cal, &r);
  sfq_calibration_destroy(cal);
  check(st);
  char* csv = nullptr;
  char* fit = nullptr;
  sfq_status a = sfq_rb_result_to_csv(r, &csv);
  sfq_status b = sfq_rb_result_to_json(r, &fit);
  sfq_rb_result_destroy(r);
  check(a);
  check(b);
  run.write("fig4.csv", take(csv));
  run.write("fig4_fit.json", take(fit) + "\n");
  run.finish();
}

void cmd_trajectory(const Globals& g) {
  Run run("trajectory", g);
  run.validate(false);
  const json s = run.section("trajectory");
  const auto start = get<std::vector<double>>(s, "initial_bloch", {0.0, 0.0, 1.0});
  if (start.size() != 3) fail(SFQ_ERR_CONFIG, "trajectory.initial_bloch needs 3 components");
  const double phi = get(s, "phi_rad", kPi / 2);
  if (g.hardware_constrained && (phi < kPhiHardwareMin || phi > 0.958 * kPi))
    fail(SFQ_ERR_RANGE, "phi outside the hardware range (0.0423 pi, 0.958 pi)");
  char* csv = nullptr;
  check(sfq_trajectory_csv(run.params(), get<std::size_t>(s, "n_cycles", 1), phi,
                           get(s, "psi_rad", 0.0), start.data(), get<std::size_t>(s, "substeps", 16),
                           &csv));
  run.write("bloch.csv", take(csv));
  run.finish();
}

int cmd_verify() {
  char* lines = nullptr;
  int failed = 0;
  const int status = sfq_oracle_suite_run(&lines, &failed);
  std::cout << (lines ? lines : "");
  std::free(lines);
  if (status != 0) throw Failure{SFQ_ERR_INTERNAL, "internal", "oracle suite aborted"};
  return failed == 0 ? 0 : 1;
}

void print_error(const Failure& f) {
  std::cerr << json{{"error", {{"code", f.code}, {"status", f.status}, {"message", f.message}}}}.dump()
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFQ pulse-train qubit control: figures, calibration, benchmarking"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON config: qubit parameters plus command sections");
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads, 0 = all cores")->capture_default_str();
  app.add_flag("--hardware-constrained", g.hardware_constrained,
               "restrict phi to the merger's operating range");

  int code = 0;
  auto wrap = [&](auto fn) { return [&, fn] { fn(g); }; };
  app.add_subcommand("tuning-curve", "resonant amplitude vs 2phi (fig3a.csv)")
      ->callback(wrap(cmd_tuning_curve));
  app.add_subcommand("leakage-ratio", "A(w12)/A(w01) of calibrated pi trains (fig3b.csv)")
      ->callback(wrap(cmd_leakage_ratio));
  app.add_subcommand("envelope-compare", "rectangle vs Gaussian envelopes (fig3c.csv)")
      ->callback(wrap(cmd_envelope_compare));
  app.add_subcommand("calibrate", "calibrate all primitives into a JSON store")
      ->callback(wrap(cmd_calibrate));
  app.add_subcommand("rb", "randomized benchmarking (fig4.csv, fig4_fit.json)")
      ->callback(wrap(cmd_rb));
  app.add_subcommand("trajectory", "Bloch trajectory of dual-pulse cycles (bloch.csv)")
      ->callback(wrap(cmd_trajectory));
  app.add_subcommand("verify", "run the oracle suite")->group("")->callback([&] {
    code = cmd_verify();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error({-1, "usage", e.what()});
    return 2;
  } catch (const Failure& f) {
    print_error(f);
    return 1;
  } catch (const std::exception& e) {
    print_error({SFQ_ERR_INTERNAL, "internal", e.what()});
    return 1;
  }
  return code;
}
