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

#include "sfq/rb.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <thread>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "sfq/error.hpp"
#include "sfq/io.hpp"
#include "sfq/transmon.hpp"

namespace sfq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, n): std::uniform_int_distribution differs between
// standard libraries.
std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % n;
}

}  // namespace

void validate(const RBConfig& config) {
  if (config.sequence_lengths.empty())
    throw Error(ErrorKind::kConfig, "sequence_lengths must not be empty");
  for (std::size_t i = 0; i < config.sequence_lengths.size(); ++i) {
    if (config.sequence_lengths[i] == 0)
      throw Error(ErrorKind::kConfig, "sequence lengths must be >= 1");
    if (i > 0 && config.sequence_lengths[i] <= config.sequence_lengths[i - 1])
      throw Error(ErrorKind::kConfig, "sequence lengths must be strictly ascending");
  }
  if (config.n_random == 0) throw Error(ErrorKind::kConfig, "n_random must be >= 1");
}

std::uint64_t job_seed(std::uint64_t seed, std::size_t length_index, std::size_t repetition) {
  return splitmix64(splitmix64(seed) ^ splitmix64((static_cast<std::uint64_t>(length_index) << 32) ^
                                                  static_cast<std::uint64_t>(repetition)));
}

std::vector<int> draw_cliffords(std::uint64_t child_seed, std::size_t n) {
  std::mt19937_64 gen(child_seed);
  const auto size = static_cast<std::uint64_t>(clifford_table().size());
  std::vector<int> out(n);
  for (auto& v : out) v = static_cast<int>(uniform_index(gen, size));
  return out;
}

double sequence_visibility(std::span<const int> cliffords, const CalibrationSet& calibrations,
                           GateModel model, const PulseShape& shape) {
  const auto& table = clifford_table();
  const CliffordElement& recovery = recovery_clifford(cliffords);
  if (model == GateModel::kIdeal) {
    Unitary2 u = Unitary2::Identity();
    for (int idx : cliffords) u = table[static_cast<std::size_t>(idx)].matrix * u;
    u = recovery.matrix * u;
    return std::clamp(std::norm(u(0, 0)), 0.0, 1.0);
  }
  SequenceCompiler compiler(calibrations);
  for (int idx : cliffords) compiler.append(table[static_cast<std::size_t>(idx)]);
  compiler.append(recovery);
  if (compiler.events().empty()) return 1.0;
  const State3 final_state =
      evolve_kicks_state(compiler.train(), calibrations.params(), basis_state(0), shape);
  return std::clamp(std::norm(final_state(0)), 0.0, 1.0);
}

RBResult run_rb(const RBConfig& config, const CalibrationSet& calibrations) {
  validate(config);
  if (config.gate_model == GateModel::kKickEngine) {
    try {
      calibrations.require_complete();
    } catch (const Error& e) {
      throw Error(ErrorKind::kConfig, e.what());
    }
  }
  const std::size_t n_len = config.sequence_lengths.size();
  const std::size_t n_jobs = n_len * config.n_random;
  std::vector<double> vis(n_jobs, 0.0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= n_jobs || failed.load()) return;
      const std::size_t li = j / config.n_random, rep = j % config.n_random;
      try {
        const auto seq = draw_cliffords(job_seed(config.rng_seed, li, rep),
                                        config.sequence_lengths[li]);
        vis[j] = sequence_visibility(seq, calibrations, config.gate_model, config.shape);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  RBResult r;
  r.lengths = config.sequence_lengths;
  r.mode = std::string(calibration_level_name(config.mode));
  r.seed = config.rng_seed;
  r.n_random = config.n_random;
  for (std::size_t li = 0; li < n_len; ++li) {
    std::vector<double> row(vis.begin() + static_cast<long>(li * config.n_random),
                            vis.begin() + static_cast<long>((li + 1) * config.n_random));
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(row.size());
    double var = 0.0;
    for (double v : row) var += (v - mean) * (v - mean);
    const double se = row.size() > 1
                          ? std::sqrt(var / static_cast<double>(row.size() - 1)) /
                                std::sqrt(static_cast<double>(row.size()))
                          : 0.0;
    r.mean_visibility.push_back(mean);
    r.std_error.push_back(se);
    r.raw.push_back(std::move(row));
  }
  std::vector<double> lengths(r.lengths.begin(), r.lengths.end());
  const auto [vlo, vhi] = std::minmax_element(r.mean_visibility.begin(), r.mean_visibility.end());
  const double spread = *vhi - *vlo;
  try {
    if (spread >= 1e-12 && spread < kUnresolvedDecay) {
      r.asymptote_fixed = true;
      r.fit = fit_decay(lengths, r.mean_visibility, 0.5);
    } else {
      r.fit = fit_decay(lengths, r.mean_visibility);
    }
    r.epc = error_per_clifford(r.fit.p);
    r.fit_ok = true;
  } catch (const Error& e) {
    r.fit_ok = false;
    r.fit_message = e.what();
    r.epc = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

DecayFit fit_decay(std::span<const double> lengths, std::span<const double> visibilities,
                   std::optional<double> fixed_b) {
  if (lengths.size() != visibilities.size())
    throw Error(ErrorKind::kDomain, "lengths and visibilities differ in size");
  std::vector<double> distinct(lengths.begin(), lengths.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw Error(ErrorKind::kDomain, "fit needs >= 3 distinct lengths");
  for (double v : visibilities)
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw Error(ErrorKind::kDomain, "visibility outside [0, 1]");
  const auto [lo, hi] = std::minmax_element(visibilities.begin(), visibilities.end());
  if (fixed_b && !(*fixed_b >= 0.0 && *fixed_b <= 1.0))
    throw Error(ErrorKind::kDomain, "fixed asymptote outside [0, 1]");
  if (!fixed_b && *hi - *lo < 1e-12)
    throw Error(ErrorKind::kFit, "visibilities are constant: decay indeterminate (p = 1)");

  const std::size_t m = lengths.size();
  const double b0 = fixed_b ? *fixed_b : visibilities.back();
  double a0 = visibilities.front() - b0;
  if (!(a0 > 0.0)) a0 = visibilities.front() - visibilities.back();
  double p0 = 0.9;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = (visibilities[i] - b0) / a0;
      if (d > 0 && std::isfinite(d)) {
        const double y = std::log(d);
        sx += lengths[i];
        sy += y;
        sxx += lengths[i] * lengths[i];
        sxy += lengths[i] * y;
        ++k;
      }
    }
    const double den = k * sxx - sx * sx;
    if (k >= 2 && den != 0.0) p0 = std::exp((k * sxy - sx * sy) / den);
    if (!std::isfinite(p0)) p0 = 0.9;
    p0 = std::clamp(p0, 1e-6, 1.0);
  }

  Eigen::Vector3d x(std::clamp(a0, 0.0, 1.0), std::clamp(b0, 0.0, 1.0), p0);
  auto residuals = [&](const Eigen::Vector3d& q) {
    Eigen::VectorXd r(static_cast<long>(m));
    for (std::size_t i = 0; i < m; ++i)
      r(static_cast<long>(i)) = q(0) * std::pow(q(2), lengths[i]) + q(1) - visibilities[i];
    return r;
  };
  Eigen::VectorXd r = residuals(x);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  bool converged = false;
  for (int it = 0; it < 2000 && !converged; ++it) {
    Eigen::MatrixXd jac(static_cast<long>(m), 3);
    for (std::size_t i = 0; i < m; ++i) {
      const double n = lengths[i];
      const long row = static_cast<long>(i);
      jac(row, 0) = std::pow(x(2), n);
      jac(row, 1) = 1.0;
      jac(row, 2) = x(0) * n * std::pow(x(2), n - 1.0);
    }
    const Eigen::Matrix3d h = jac.transpose() * jac;
    const Eigen::Vector3d g = jac.transpose() * r;
    bool improved = false;
    while (lambda < 1e20) {
      Eigen::Matrix3d damped = h;
      for (int d = 0; d < 3; ++d) damped(d, d) += lambda * std::max(h(d, d), 1e-300);
      if (fixed_b) {
        damped.row(1).setZero();
        damped.col(1).setZero();
        damped(1, 1) = 1.0;
      }
      Eigen::Vector3d step = damped.ldlt().solve(-g);
      if (fixed_b) step(1) = 0.0;
      Eigen::Vector3d trial = x + step;
      trial(0) = std::clamp(trial(0), 0.0, 1.0);
      trial(1) = std::clamp(trial(1), 0.0, 1.0);
      trial(2) = std::clamp(trial(2), 1e-12, 1.0);
      const Eigen::VectorXd rt = residuals(trial);
      const double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct <= cost) {
        const double change = (trial - x).norm();
        x = trial;
        r = rt;
        const double prev = cost;
        cost = ct;
        lambda = std::max(lambda / 10.0, 1e-15);
        improved = true;
        converged = change <= 1e-15 * (1.0 + x.norm()) || prev - ct <= 1e-32;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  if (!(x(2) > 0.0 && x(2) <= 1.0) || !x.allFinite())
    throw Error(ErrorKind::kFit, "decay fit did not converge to 0 < p <= 1");
  return {x(0), x(1), x(2), std::sqrt(cost)};
}

double error_per_clifford(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::kDomain, "decay p must satisfy 0 < p <= 1");
  return (1.0 - p) / 2.0;
}

nlohmann::json rb_result_to_json(const RBResult& result) {
  nlohmann::json j;
  j["mode"] = result.mode;
  j["seed"] = result.seed;
  j["n_random"] = result.n_random;
  j["lengths"] = result.lengths;
  j["mean_visibility"] = result.mean_visibility;
  j["stderr"] = result.std_error;
  j["raw_visibility"] = result.raw;
  j["fit_ok"] = result.fit_ok;
  j["asymptote_fixed"] = result.asymptote_fixed;
  if (result.fit_ok) {
    j["fit"] = {{"A", result.fit.a},
                {"B", result.fit.b},
                {"p", result.fit.p},
                {"residual_norm", result.fit.residual_norm}};
    j["epc"] = result.epc;
    j["mean_clifford_fidelity"] = 1.0 - result.epc;
  } else {
    j["fit"] = nullptr;
    j["fit_message"] = result.fit_message;
    j["epc"] = nullptr;
  }
  return j;
}

std::string rb_result_to_csv(const RBResult& result) {
  std::string out = "N,mean_visibility,stderr\n";
  for (std::size_t i = 0; i < result.lengths.size(); ++i) {
    out += std::to_string(result.lengths[i]) + ',' + format_double(result.mean_visibility[i]) +
           ',' + format_double(result.std_error[i]) + '\n';
  }
  return out;
}

}  // namespace sfq
