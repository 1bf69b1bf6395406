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

// Joint path-spin measurements on |Psi(gamma)> = (|I>|up> + e^{i gamma}|II>|down>) / sqrt 2
// and the CHSH combination S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')|.

#include <array>
#include <cstdint>

#include "geophase/spin_core.hpp"

namespace geophase {

/// Measurement direction: polar angle from the |I> (or |up>) pole, azimuth of the |II> (|down>) admixture.
struct ProjectorAngles {
  double polar = 0.0;
  double azimuthal = 0.0;

  /// Same projector with polar in [0, pi] and azimuthal in (-pi, pi].
  ProjectorAngles normalized() const noexcept;
};

enum class Outcome { Plus, Minus };

/// |+> = cos(a1/2)|0> + e^{i a2} sin(a1/2)|1>, |-> = -sin(a1/2)|0> + e^{i a2} cos(a1/2)|1>.
Matrix2 path_projector(const ProjectorAngles& a, Outcome sign) noexcept;
Matrix2 spin_projector(const ProjectorAngles& b, Outcome sign) noexcept;

/// P+ - P- for the direction.
Matrix2 observable(const ProjectorAngles& a) noexcept;

/// Analyzer direction realizing spin setting b in the correlation below:
/// (b1 + pi, -b2).
ProjectorAngles spin_analyzer(const ProjectorAngles& b) noexcept;

struct BellSetting {
  ProjectorAngles alpha;
  ProjectorAngles alpha_p;
  ProjectorAngles beta;
  ProjectorAngles beta_p;

  /// Polar angles 0, pi/2, pi/4, 3pi/4 with zero azimuths.
  static BellSetting standard() noexcept;
};

struct CountRates {
  double n_pp = 0.0;
  double n_pm = 0.0;
  double n_mp = 0.0;
  double n_mm = 0.0;

  double total() const noexcept { return n_pp + n_pm + n_mp + n_mm; }
};

enum class CountNoise { Multinomial, Poisson };

/// -cos a1 cos b1 - sin a1 sin b1 cos(a2 - b2 - gamma).
double expectation_analytic(const ProjectorAngles& a, const ProjectorAngles& b, double gamma) noexcept;

/// <Psi(gamma)| O(a) (x) O(spin_analyzer(b)) |Psi(gamma)> by explicit contraction.
double expectation_contraction(const ProjectorAngles& a, const ProjectorAngles& b, double gamma) noexcept;

/// (N++ - N+- - N-+ + N--) / total. Throws EmptyCounts for a zero total and
/// InvalidArgument for a negative rate.
double expectation_from_counts(const CountRates& c);

/// Channel probabilities times `total`, drawn with the given noise. total == 0
/// returns the exact probabilities. Throws InvalidArgument for total < 0.
CountRates simulate_counts(const ProjectorAngles& a, const ProjectorAngles& b, double gamma, double total,
                           std::uint64_t seed, CountNoise noise = CountNoise::Multinomial);

double s_value(const BellSetting& s, double gamma) noexcept;

/// Counts ordered (a,b), (a,b'), (a',b), (a',b').
double s_value(const std::array<CountRates, 4>& counts);

/// One-sigma spread of S from `total` multinomial counts per correlation,
/// using Var E = (1 - E^2) / total.
double s_value_sigma(const BellSetting& s, double gamma, double total);

/// |-sqrt2 - sqrt2 cos gamma|: standard angles without compensation.
double s_standard(double gamma) noexcept;

/// S with alpha = (0, 0) written out term by term.
double s_reduced(const ProjectorAngles& alpha_p, const ProjectorAngles& beta, const ProjectorAngles& beta_p,
                 double gamma) noexcept;

/// 2 sqrt(1 + cos^2 gamma): S at the polar optimum.
double s_polar_optimum(double gamma) noexcept;

enum class AdjustmentScheme { None, Polar, Azimuthal };

struct AdjustmentResult {
  BellSetting angles;
  double s_value = 0.0;
  AdjustmentScheme scheme = AdjustmentScheme::None;
  double beta1 = 0.0;
  double beta1_p = 0.0;
  double alpha2_p = 0.0;
  bool alpha_is_block = false;    // alpha polar at 0 or pi: realizable with a beam block
  bool alpha_p_is_block = false;
};

/// b1 = atan(cos gamma), b1' = pi - b1, a1' = pi/2, alpha = (0, 0), azimuths 0.
AdjustmentResult polar_adjust(double gamma);

/// Maximizes S over (b1, b1') with the polar_adjust layout: 129 x 129 grid on
/// the torus, then Nelder-Mead on -S. (b1, b1') and (b1 + pi, b1' + pi) give
/// the same S; the representative with cos b1 >= 0 is returned.
AdjustmentResult numerical_polar_max(double gamma);

/// Standard polar angles with a2' = gamma mod 2pi, in [0, 2pi).
AdjustmentResult azimuthal_adjust(double gamma);

}  // namespace geophase
