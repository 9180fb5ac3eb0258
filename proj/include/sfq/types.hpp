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

#ifndef SFQ_TYPES_HPP
#define SFQ_TYPES_HPP

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace sfq {

using Complex = std::complex<double>;

/// 2x2 propagator on the computational {|0>, |1>} subspace.
using Unitary2 = Eigen::Matrix2cd;
/// 3x3 propagator on {|0>, |1>, |2>}.
using Unitary3 = Eigen::Matrix3cd;
using State2 = Eigen::Vector2cd;
using State3 = Eigen::Vector3cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2pi).
inline double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Reduces an angle into [-pi, pi).
inline double wrap_signed(double angle) {
  double r = wrap_angle(angle + kPi) - kPi;
  return r;
}

}  // namespace sfq

#endif  // SFQ_TYPES_HPP
