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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace sfq::oracles {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

Mat identity(std::size_t n) {
  Mat m(n, std::vector<cplx>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<cplx>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

double norm1(const Mat& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) col += std::abs(a[i][j]);
    best = std::max(best, col);
  }
  return best;
}

Mat2 mul2(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Mat2 rz(double t) {
  return {{{std::exp(-kI * (t / 2)), 0.0}, {0.0, std::exp(kI * (t / 2))}}};
}

Mat2 ry(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return {{{c, -s}, {s, c}}};
}

void fft_in_place(std::vector<cplx>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        // Twiddle computed directly each time; slower but no drift from recurrences.
        const cplx w = std::polar(1.0, ang * static_cast<double>(k));
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace

Mat matrix_exp_reference(const Mat& g) {
  const std::size_t n = g.size();
  int squarings = 0;
  double nrm = norm1(g);
  while (nrm > 0.25) {
    nrm /= 2.0;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  Mat a = g;
  for (auto& row : a)
    for (auto& x : row) x *= scale;

  Mat result = identity(n);
  Mat term = identity(n);
  for (int k = 1; k < 60; ++k) {
    term = mul(term, a);
    for (auto& row : term)
      for (auto& x : row) x /= static_cast<double>(k);
    double biggest = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        result[i][j] += term[i][j];
        biggest = std::max(biggest, std::abs(term[i][j]));
      }
    if (biggest < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

Mat2 cycle_product_reference(double delta_theta, double phi) {
  Mat2 u = rz(phi);
  u = mul2(u, ry(delta_theta));
  u = mul2(u, rz(2.0 * kPi - 2.0 * phi));
  u = mul2(u, ry(delta_theta));
  return mul2(u, rz(phi));
}

double fft_spectrum_reference(const SampledWaveform& w, double omega, double pulse_area,
                              std::size_t n_pulses, std::size_t min_fft_size) {
  if (w.samples.empty() || n_pulses == 0) return 0.0;
  // Pad until the main lobe spans >= 64 bins so 4-point interpolation is exact
  // to ~1e-6.
  std::size_t n = 1;
  while (n < std::max(min_fft_size, 64 * w.samples.size())) n <<= 1;
  std::vector<cplx> a(n, 0.0);
  for (std::size_t i = 0; i < w.samples.size(); ++i) a[i] = w.samples[i];
  fft_in_place(a);

  const double x = omega * w.dt * static_cast<double>(n) / (2.0 * kPi);
  const auto m0 = static_cast<long>(std::floor(x)) - 1;
  cplx value = 0.0;
  for (long j = 0; j < 4; ++j) {
    double l = 1.0;
    for (long k = 0; k < 4; ++k)
      if (k != j) l *= (x - static_cast<double>(m0 + k)) / static_cast<double>(j - k);
    const long idx = ((m0 + j) % static_cast<long>(n) + static_cast<long>(n)) %
                     static_cast<long>(n);
    value += l * a[static_cast<std::size_t>(idx)];
  }
  return std::abs(value) * w.dt / (pulse_area * static_cast<double>(n_pulses));
}

Mat2 phase_normalized(const Mat2& u) {
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(u[i][j]) > best + 1e-9) {
        best = std::abs(u[i][j]);
        bi = i;
        bj = j;
      }
  const cplx phase = std::conj(u[bi][bj]) / std::abs(u[bi][bj]);
  Mat2 r = u;
  for (auto& row : r)
    for (auto& x : row) x *= phase;
  return r;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

std::vector<Mat2> xy_quarter_turn_generators() {
  const double c = std::sqrt(0.5);
  const Mat2 x90{{{c, -kI * c}, {-kI * c, c}}};
  const Mat2 y90{{{c, -c}, {c, c}}};
  return {x90, y90};
}

ClosureResult clifford_closure_reference(const std::vector<Mat2>& generators) {
  ClosureResult out;
  const Mat2 id{{{1.0, 0.0}, {0.0, 1.0}}};
  auto known = [&](const Mat2& u) {
    const Mat2 n = phase_normalized(u);
    for (const auto& c : out.classes)
      if (max_abs_diff(c, n) < 1e-9) return true;
    return false;
  };
  std::deque<Mat2> queue{id};
  out.classes.push_back(phase_normalized(id));
  while (!queue.empty()) {
    const Mat2 u = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      const Mat2 v = mul2(g, u);
      if (known(v)) continue;
      out.classes.push_back(phase_normalized(v));
      queue.push_back(v);
      if (out.classes.size() > 10000) throw std::runtime_error("closure does not terminate");
    }
  }
  out.count = out.classes.size();
  return out;
}

WaveformIntegration waveform_integration_reference(const std::vector<double>& event_times,
                                                   double fwhm, double omega01, double alpha,
                                                   double delta_theta,
                                                   const std::array<cplx, 3>& initial,
                                                   double t_start, double t_end, double tol,
                                                   double first_step) {
  const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * kPi));
  const double reach = 12.0 * sigma;
  std::vector<double> times = event_times;
  std::sort(times.begin(), times.end());
  const double e1 = omega01, e2 = 2.0 * omega01 - alpha;
  const double r2 = std::sqrt(2.0);

  // Dimensionless drive: 0.5 * dtheta * sum of unit-area Gaussians.
  auto drive = [&](double t) {
    auto it = std::lower_bound(times.begin(), times.end(), t - reach);
    double s = 0.0;
    for (; it != times.end() && *it <= t + reach; ++it) {
      const double u = (t - *it) / sigma;
      s += norm * std::exp(-0.5 * u * u);
    }
    return 0.5 * delta_theta * s;
  };
  auto rhs = [&](double t, const std::array<cplx, 3>& y) {
    const double d = drive(t);
    std::array<cplx, 3> f;
    f[0] = d * (-y[1]);
    f[1] = -kI * e1 * y[1] + d * (y[0] - r2 * y[2]);
    f[2] = -kI * e2 * y[2] + d * (r2 * y[1]);
    return f;
  };
  auto run = [&](double h) {
    const auto steps = static_cast<long>(std::ceil((t_end - t_start) / h));
    const double hh = (t_end - t_start) / static_cast<double>(steps);
    std::array<cplx, 3> y = initial;
    for (long s = 0; s < steps; ++s) {
      const double t = t_start + static_cast<double>(s) * hh;
      auto axpy = [](const std::array<cplx, 3>& a, double c, const std::array<cplx, 3>& b) {
        return std::array<cplx, 3>{a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2]};
      };
      const auto k1 = rhs(t, y);
      const auto k2 = rhs(t + hh / 2, axpy(y, hh / 2, k1));
      const auto k3 = rhs(t + hh / 2, axpy(y, hh / 2, k2));
      const auto k4 = rhs(t + hh, axpy(y, hh, k3));
      for (int i = 0; i < 3; ++i) y[i] += hh / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y;
  };

  WaveformIntegration out;
  double h = first_step;
  auto prev = run(h);
  for (int k = 1; k <= 8; ++k) {
    h /= 2.0;
    auto cur = run(h);
    double diff = 0.0;
    for (int i = 0; i < 3; ++i) diff += std::norm(cur[i] - prev[i]);
    diff = std::sqrt(diff);
    out = {cur, h, diff, k};
    if (diff < tol) break;
    prev = cur;
  }
  return out;
}

OracleReport make_report(std::string quantity, double primary, double oracle, double tolerance,
                         bool relative) {
  OracleReport r;
  r.quantity = std::move(quantity);
  r.primary = primary;
  r.oracle = oracle;
  r.abs_dev = std::abs(primary - oracle);
  r.rel_dev = oracle != 0.0 ? r.abs_dev / std::abs(oracle) : r.abs_dev;
  r.tolerance = tolerance;
  r.pass = (relative ? r.rel_dev : r.abs_dev) <= tolerance;
  return r;
}

std::string report_json_line(const OracleReport& r) {
  // Hand-rolled so the oracle tree stays free of the library's JSON choices.
  std::string q;
  for (char c : r.quantity) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  auto num = [](double v) {
    if (!std::isfinite(v)) return std::string("null");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  return "{\"quantity\":\"" + q + "\",\"primary\":" + num(r.primary) +
         ",\"oracle\":" + num(r.oracle) + ",\"abs_dev\":" + num(r.abs_dev) +
         ",\"rel_dev\":" + num(r.rel_dev) + ",\"tolerance\":" + num(r.tolerance) +
         ",\"pass\":" + (r.pass ? "true" : "false") + "}";
}

}  // namespace sfq::oracles
