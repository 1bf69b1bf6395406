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

#include "geophase/fitting.hpp"

#include <cmath>

#include "geophase/error.hpp"
#include "geophase/spin_core.hpp"

namespace geophase {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Inverse of a symmetric positive-definite 3x3 matrix by cofactors.
std::optional<Mat3> invert3(const Mat3& m) {
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  const double scale = std::abs(m[0][0] * m[1][1] * m[2][2]);
  if (!(std::abs(det) > 1e-14 * scale) || !std::isfinite(det)) return std::nullopt;
  Mat3 inv;
  inv[0][0] = c00 / det;
  inv[1][0] = c01 / det;
  inv[2][0] = c02 / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

}  // namespace

double CosineFit::operator()(double x) const noexcept {
  return offset + amplitude * std::cos(harmonic * x - phase);
}

// amplitude = hypot(p, q); gradient (p, q) / amplitude.
double CosineFit::amplitude_variance() const noexcept {
  if (amplitude <= 0.0) return covariance[1][1] + covariance[2][2];
  const double gp = std::cos(phase);
  const double gq = std::sin(phase);
  return gp * gp * covariance[1][1] + gq * gq * covariance[2][2] + 2.0 * gp * gq * covariance[1][2];
}

double CosineFit::offset_amplitude_covariance() const noexcept {
  return std::cos(phase) * covariance[0][1] + std::sin(phase) * covariance[0][2];
}

double CosineFit::maximum_variance() const noexcept {
  return offset_variance() + amplitude_variance() + 2.0 * offset_amplitude_covariance();
}

double CosineFit::minimum_variance() const noexcept {
  return offset_variance() + amplitude_variance() - 2.0 * offset_amplitude_covariance();
}

double CosineFit::extrema_covariance() const noexcept {
  return offset_variance() - amplitude_variance();
}

CosineFit fit_cosine(std::span<const double> x, std::span<const double> y, double harmonic,
                     std::optional<std::span<const double>> weights) {
  const std::size_t n = x.size();
  if (y.size() != n || (weights && weights->size() != n)) {
    throw Error(ErrorCode::InvalidArgument, "fit inputs differ in length");
  }
  if (n < 3) throw Error(ErrorCode::FitFailure, "a cosine fit needs at least three points");

  Mat3 normal{};
  std::array<double, 3> rhs{};
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    const std::array<double, 3> row{1.0, std::cos(harmonic * x[i]), std::sin(harmonic * x[i])};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += w * row[r] * y[i];
      for (int c = 0; c < 3; ++c) normal[r][c] += w * row[r] * row[c];
    }
  }
  const auto inv = invert3(normal);
  if (!inv) throw Error(ErrorCode::FitFailure, "singular design; sample points do not resolve the harmonic");

  std::array<double, 3> coef{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) coef[r] += (*inv)[r][c] * rhs[c];

  CosineFit fit;
  fit.harmonic = harmonic;
  fit.offset = coef[0];
  fit.amplitude = std::hypot(coef[1], coef[2]);
  fit.phase = std::atan2(coef[2], coef[1]);
  fit.dof = static_cast<int>(n) - 3;

  double chi2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    const double r = y[i] - fit(x[i]);
    chi2 += w * r * r;
  }
  fit.chi2 = chi2;

  double scale = 1.0;
  if (!weights) scale = fit.dof > 0 ? chi2 / fit.dof : 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) fit.covariance[r][c] = (*inv)[r][c] * scale;
  return fit;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw Error(ErrorCode::InvalidArgument, "fit inputs differ in length");
  if (n < 2) throw Error(ErrorCode::FitFailure, "a line fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::FitFailure, "line fit needs two distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_sigma = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

std::vector<double> unwrap_phases(std::span<const double> phases) {
  std::vector<double> out(phases.begin(), phases.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    out[i] = out[i - 1] + angle_difference(phases[i], phases[i - 1]);
  }
  return out;
}

}  // namespace geophase
