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

#include <functional>
#include <span>
#include <vector>

namespace geophase {

struct NelderMeadOptions {
  double initial_step = 0.05;
  double f_tolerance = 1e-10;  // spread of simplex values
  double x_tolerance = 1e-9;   // simplex diameter
  int max_iterations = 20000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free polytope minimization (standard reflection / expansion /
/// contraction / shrink coefficients 1, 2, 1/2, 1/2). Throws OptimizerStall
/// when both tolerances are not met within max_iterations.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace geophase
