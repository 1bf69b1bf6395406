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

#include "geophase/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "geophase/error.hpp"

namespace geophase {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "nothing to optimize");

  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto point_along = [&](double t, std::vector<double>& out) {
    // centroid + t * (centroid - worst)
    const auto& worst = simplex[order[n]];
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (centroid[j] - worst[j]);
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });

    const double f_spread = values[order[n]] - values[order[0]];
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(simplex[order[i]][j] - simplex[order[0]][j]));
      diameter = std::max(diameter, d);
    }
    if (f_spread <= options.f_tolerance && diameter <= options.x_tolerance) {
      return {simplex[order[0]], values[order[0]], iter};
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[order[i]][j] / static_cast<double>(n);

    point_along(1.0, trial);
    const double f_reflect = f(trial);
    if (f_reflect < values[order[0]]) {
      point_along(2.0, trial2);
      const double f_expand = f(trial2);
      if (f_expand < f_reflect) {
        simplex[order[n]] = trial2;
        values[order[n]] = f_expand;
      } else {
        simplex[order[n]] = trial;
        values[order[n]] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[order[n - 1]]) {
      simplex[order[n]] = trial;
      values[order[n]] = f_reflect;
      continue;
    }
    // Outside contraction if the reflection improved on the worst, else inside.
    const bool outside = f_reflect < values[order[n]];
    point_along(outside ? 0.5 : -0.5, trial2);
    const double f_contract = f(trial2);
    if (f_contract < (outside ? f_reflect : values[order[n]])) {
      simplex[order[n]] = trial2;
      values[order[n]] = f_contract;
      continue;
    }
    const auto best = simplex[order[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      auto& p = simplex[order[i]];
      for (std::size_t j = 0; j < n; ++j) p[j] = best[j] + 0.5 * (p[j] - best[j]);
      values[order[i]] = f(p);
    }
  }
  throw Error(ErrorCode::OptimizerStall,
              "Nelder-Mead did not converge within " + std::to_string(options.max_iterations) + " iterations");
}

}  // namespace geophase
