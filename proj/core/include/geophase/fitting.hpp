// Copyright 2026 The geophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace geophase {

/// Least-squares fit of y = offset + amplitude * cos(harmonic * x - phase).
///
/// Solved linearly as y = a + p cos(kx) + q sin(kx); `covariance` is the
/// covariance of (a, p, q). With explicit weights (1/sigma^2) it is the
/// inverse normal matrix; without weights it is scaled by the residual
/// variance, so an exact fit reports zero spread.
struct CosineFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double harmonic = 1.0;
  std::array<std::array<double, 3>, 3> covariance{};
  double chi2 = 0.0;
  int dof = 0;

  double operator()(double x) const noexcept;

  double offset_variance() const noexcept { return covariance[0][0]; }
  double amplitude_variance() const noexcept;
  double offset_amplitude_covariance() const noexcept;

  double maximum() const noexcept { return offset + amplitude; }
  double minimum() const noexcept { return offset - amplitude; }
  double maximum_variance() const noexcept;
  double minimum_variance() const noexcept;
  double extrema_covariance() const noexcept;
};

/// Throws FitFailure with fewer than three points or a singular design.
CosineFit fit_cosine(std::span<const double> x, std::span<const double> y, double harmonic,
                     std::optional<std::span<const double>> weights = std::nullopt);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_sigma = 0.0;
};

/// Ordinary least squares line. Throws FitFailure with fewer than two distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Removes 2pi jumps between consecutive samples.
std::vector<double> unwrap_phases(std::span<const double> phases);

}  // namespace geophase
