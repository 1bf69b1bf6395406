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

#include "geophase/bell_chsh.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "geophase/error.hpp"
#include "geophase/interferometry.hpp"
#include "geophase/optimize.hpp"

namespace geophase {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

Matrix2 projector(const ProjectorAngles& a, Outcome sign) noexcept {
  const double c = std::cos(0.5 * a.polar);
  const double s = std::sin(0.5 * a.polar);
  const Complex ph = std::polar(1.0, a.azimuthal);
  const Complex k0 = sign == Outcome::Plus ? Complex(c) : Complex(-s);
  const Complex k1 = sign == Outcome::Plus ? ph * s : ph * c;
  return {k0 * std::conj(k0), k0 * std::conj(k1), k1 * std::conj(k0), k1 * std::conj(k1)};
}

bool is_block(const ProjectorAngles& a) noexcept {
  const double p = a.normalized().polar;
  return std::abs(p) < 1e-12 || std::abs(p - kPi) < 1e-12;
}

BellSetting polar_layout(double beta1, double beta1_p) noexcept {
  return {{0.0, 0.0}, {0.5 * kPi, 0.0}, {beta1, 0.0}, {beta1_p, 0.0}};
}

AdjustmentResult finish(BellSetting angles, double gamma, AdjustmentScheme scheme) {
  AdjustmentResult r;
  r.angles = angles;
  r.s_value = s_value(angles, gamma);
  r.scheme = scheme;
  r.beta1 = angles.beta.polar;
  r.beta1_p = angles.beta_p.polar;
  r.alpha2_p = angles.alpha_p.azimuthal;
  r.alpha_is_block = is_block(angles.alpha);
  r.alpha_p_is_block = is_block(angles.alpha_p);
  return r;
}

}  // namespace

ProjectorAngles ProjectorAngles::normalized() const noexcept {
  double p = wrap_angle(polar);
  double az = azimuthal;
  if (p < 0.0) {
    // cos(-p/2)|0> + e^{i(az+pi)} sin(-p/2)|1> is the same ket.
    p = -p;
    az += kPi;
  }
  return {p, wrap_angle(az)};
}

Matrix2 path_projector(const ProjectorAngles& a, Outcome sign) noexcept { return projector(a, sign); }
Matrix2 spin_projector(const ProjectorAngles& b, Outcome sign) noexcept { return projector(b, sign); }

Matrix2 observable(const ProjectorAngles& a) noexcept {
  return projector(a, Outcome::Plus) + projector(a, Outcome::Minus) * Complex(-1.0);
}

ProjectorAngles spin_analyzer(const ProjectorAngles& b) noexcept { return {b.polar + kPi, -b.azimuthal}; }

BellSetting BellSetting::standard() noexcept { return polar_layout(0.25 * kPi, 0.75 * kPi); }

double expectation_analytic(const ProjectorAngles& a, const ProjectorAngles& b, double gamma) noexcept {
  return -std::cos(a.polar) * std::cos(b.polar) -
         std::sin(a.polar) * std::sin(b.polar) * std::cos(a.azimuthal - b.azimuthal - gamma);
}

double expectation_contraction(const ProjectorAngles& a, const ProjectorAngles& b, double gamma) noexcept {
  const SpinPathState psi = build_entangled_state(0.0, gamma);
  return psi.expectation(observable(a), observable(spin_analyzer(b))).real();
}

double expectation_from_counts(const CountRates& c) {
  if (c.n_pp < 0.0 || c.n_pm < 0.0 || c.n_mp < 0.0 || c.n_mm < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "count rates must be non-negative");
  }
  const double total = c.total();
  if (!(total > 0.0)) throw Error(ErrorCode::EmptyCounts, "no counts recorded");
  return (c.n_pp - c.n_pm - c.n_mp + c.n_mm) / total;
}

CountRates simulate_counts(const ProjectorAngles& a, const ProjectorAngles& b, double gamma, double total,
                           std::uint64_t seed, CountNoise noise) {
  if (!(total >= 0.0)) throw Error(ErrorCode::InvalidArgument, "total counts must be non-negative");
  const SpinPathState psi = build_entangled_state(0.0, gamma);
  const ProjectorAngles analyzer = spin_analyzer(b);
  std::array<double, 4> p{};
  const std::array<Outcome, 2> outcomes{Outcome::Plus, Outcome::Minus};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      p[2 * i + j] = std::max(
          0.0, psi.expectation(path_projector(a, outcomes[i]), spin_projector(analyzer, outcomes[j])).real());
    }

  if (total == 0.0) return {p[0], p[1], p[2], p[3]};

  std::mt19937_64 rng(seed);
  std::array<double, 4> n{};
  if (noise == CountNoise::Poisson) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (p[k] <= 0.0) continue;
      std::poisson_distribution<long long> draw(total * p[k]);
      n[k] = static_cast<double>(draw(rng));
    }
  } else {
    // Sequential conditional binomials.
    auto remaining = static_cast<long long>(std::llround(total));
    double mass = 1.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double q = mass > 0.0 ? std::clamp(p[k] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<long long> draw(remaining, q);
      const long long got = draw(rng);
      n[k] = static_cast<double>(got);
      remaining -= got;
      mass -= p[k];
    }
    n[3] = static_cast<double>(remaining);
  }
  return {n[0], n[1], n[2], n[3]};
}

double s_value(const BellSetting& s, double gamma) noexcept {
  return std::abs(expectation_analytic(s.alpha, s.beta, gamma) - expectation_analytic(s.alpha, s.beta_p, gamma) +
                  expectation_analytic(s.alpha_p, s.beta, gamma) + expectation_analytic(s.alpha_p, s.beta_p, gamma));
}

double s_value(const std::array<CountRates, 4>& counts) {
  return std::abs(expectation_from_counts(counts[0]) - expectation_from_counts(counts[1]) +
                  expectation_from_counts(counts[2]) + expectation_from_counts(counts[3]));
}

double s_value_sigma(const BellSetting& s, double gamma, double total) {
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidArgument, "total counts must be positive");
  double var = 0.0;
  for (const auto& [a, b] : {std::pair{s.alpha, s.beta}, std::pair{s.alpha, s.beta_p}, std::pair{s.alpha_p, s.beta},
                             std::pair{s.alpha_p, s.beta_p}}) {
    const double e = expectation_analytic(a, b, gamma);
    var += (1.0 - e * e) / total;
  }
  return std::sqrt(var);
}

double s_standard(double gamma) noexcept { return std::abs(-kSqrt2 - kSqrt2 * std::cos(gamma)); }

double s_reduced(const ProjectorAngles& alpha_p, const ProjectorAngles& beta, const ProjectorAngles& beta_p,
                 double gamma) noexcept {
  const double ca = std::cos(alpha_p.polar);
  const double sa = std::sin(alpha_p.polar);
  return std::abs(-std::cos(beta.polar) + std::cos(beta_p.polar) - ca * std::cos(beta.polar) -
                  sa * std::sin(beta.polar) * std::cos(alpha_p.azimuthal - beta.azimuthal - gamma) -
                  ca * std::cos(beta_p.polar) -
                  sa * std::sin(beta_p.polar) * std::cos(alpha_p.azimuthal - beta_p.azimuthal - gamma));
}

double s_polar_optimum(double gamma) noexcept {
  const double c = std::cos(gamma);
  return 2.0 * std::sqrt(1.0 + c * c);
}

AdjustmentResult polar_adjust(double gamma) {
  const double b1 = std::atan(std::cos(gamma));
  return finish(polar_layout(b1, kPi - b1), gamma, AdjustmentScheme::Polar);
}

AdjustmentResult numerical_polar_max(double gamma) {
  auto s_at = [gamma](double b1, double b1p) { return s_value(polar_layout(b1, b1p), gamma); };

  constexpr int kGrid = 129;
  double best = -1.0;
  double b1 = 0.0;
  double b1p = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = -kPi + kTwoPi * (i + 1) / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const double y = -kPi + kTwoPi * (j + 1) / kGrid;
      const double v = s_at(x, y);
      if (v > best) {
        best = v;
        b1 = x;
        b1p = y;
      }
    }
  }
  NelderMeadOptions opt;
  opt.initial_step = kTwoPi / kGrid;
  const auto res = nelder_mead([&](std::span<const double> v) { return -s_at(v[0], v[1]); }, {b1, b1p}, opt);
  b1 = wrap_angle(res.x[0]);
  b1p = wrap_angle(res.x[1]);
  if (std::cos(b1) < 0.0) {
    b1 = wrap_angle(b1 + kPi);
    b1p = wrap_angle(b1p + kPi);
  }
  // Same branch as pi - b1: b1 < b1' <= b1 + 2pi.
  double gap = std::fmod(b1p - b1, kTwoPi);
  if (gap <= 0.0) gap += kTwoPi;
  b1p = b1 + gap;
  return finish(polar_layout(b1, b1p), gamma, AdjustmentScheme::Polar);
}

AdjustmentResult azimuthal_adjust(double gamma) {
  double a2p = std::fmod(gamma, kTwoPi);
  if (a2p < 0.0) a2p += kTwoPi;
  BellSetting s = BellSetting::standard();
  s.alpha_p.azimuthal = a2p;
  return finish(s, gamma, AdjustmentScheme::Azimuthal);
}

}  // namespace geophase
