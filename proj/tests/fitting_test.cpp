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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "geophase/error.hpp"
#include "geophase/optimize.hpp"
#include "test_support.hpp"

namespace geophase {
namespace {

std::vector<double> grid(int n, double period) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = period * i / n;
  return x;
}

TEST(FitCosine, RecoversExactHarmonic) {
  testing::Rng rng(1);
  for (double k : {1.0, 2.0}) {
    for (int trial = 0; trial < 50; ++trial) {
      const double a = rng.uniform(1, 5), b = rng.uniform(0.1, 1), c = rng.angle();
      const auto x = grid(16, kTwoPi);
      std::vector<double> y;
      for (double xi : x) y.push_back(a + b * std::cos(k * xi - c));
      const CosineFit fit = fit_cosine(x, y, k);
      ASSERT_NEAR(fit.offset, a, 1e-12);
      ASSERT_NEAR(fit.amplitude, b, 1e-12);
      ASSERT_NEAR(angle_difference(fit.phase, c), 0.0, 1e-12);
      ASSERT_NEAR(fit.maximum(), a + b, 1e-12);
      ASSERT_NEAR(fit.minimum(), a - b, 1e-12);
      ASSERT_NEAR(fit.amplitude_variance(), 0.0, 1e-20);
    }
  }
}

TEST(FitCosine, CovarianceMatchesMonteCarloSpread) {
  // Known Gaussian noise with weights 1/sigma^2: the reported amplitude
  // variance should match the empirical one.
  const auto x = grid(32, kTwoPi);
  const double sigma = 0.05;
  std::mt19937_64 gen(7);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> w(x.size(), 1.0 / (sigma * sigma));
  double sum = 0.0, sum2 = 0.0, reported = 0.0;
  const int runs = 4000;
  for (int r = 0; r < runs; ++r) {
    std::vector<double> y;
    for (double xi : x) y.push_back(2.0 + 0.7 * std::cos(xi - 0.4) + noise(gen));
    const CosineFit fit = fit_cosine(x, y, 1.0, std::span<const double>(w));
    sum += fit.maximum();
    sum2 += fit.maximum() * fit.maximum();
    reported += fit.maximum_variance();
  }
  const double mean = sum / runs;
  const double var = sum2 / runs - mean * mean;
  EXPECT_NEAR(var / (reported / runs), 1.0, 0.1);
}

TEST(FitCosine, Failures) {
  const std::vector<double> x{0.0, 1.0};
  EXPECT_THROW(fit_cosine(x, x, 1.0), Error);
  // All samples at the same phase of the harmonic: cos and the constant are collinear.
  const std::vector<double> same{0.0, kTwoPi, 2 * kTwoPi, 3 * kTwoPi};
  const std::vector<double> y{1.0, 1.0, 1.0, 1.0};
  try {
    fit_cosine(same, y, 1.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FitFailure);
  }
}

TEST(FitLine, ExactAndDegenerate) {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const LinearFit f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.slope_sigma, 0.0, 1e-14);
  const std::vector<double> flat{1, 1, 1};
  EXPECT_THROW(fit_line(flat, flat), Error);
}

TEST(UnwrapPhases, RemovesJumps) {
  std::vector<double> wrapped, truth;
  for (int i = 0; i < 40; ++i) {
    truth.push_back(-3.0 + 0.4 * i);
    wrapped.push_back(wrap_angle(truth.back()));
  }
  const auto out = unwrap_phases(wrapped);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out[i], truth[i], 1e-12);
}

TEST(NelderMead, Rosenbrock) {
  auto rosen = [](std::span<const double> v) {
    return 100 * std::pow(v[1] - v[0] * v[0], 2) + std::pow(1 - v[0], 2);
  };
  NelderMeadOptions opt;
  opt.initial_step = 0.5;
  opt.f_tolerance = 1e-16;
  opt.x_tolerance = 1e-8;
  const auto r = nelder_mead(rosen, {-1.2, 1.0}, opt);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

TEST(NelderMead, StallsOnUnboundedObjective) {
  NelderMeadOptions opt;
  opt.max_iterations = 50;
  try {
    nelder_mead([](std::span<const double> v) { return v[0]; }, {0.0}, opt);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OptimizerStall);
  }
}

}  // namespace
}  // namespace geophase
