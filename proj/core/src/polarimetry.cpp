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

#include "geophase/polarimetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "geophase/error.hpp"

namespace geophase {

namespace {

constexpr double kDomainTol = 1e-9;

void require_purity(double purity) {
  if (!(purity >= 0.0 && purity <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "purity " + std::to_string(purity) + " out of [0,1]");
  }
}

double draw_poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0.0;
  std::poisson_distribution<long long> dist(mean);
  return static_cast<double>(dist(rng));
}

}  // namespace

FringeStats FringeStats::make(double i_max, double i_min, double i_zero, double purity) {
  require_purity(purity);
  FringeStats s{i_max, i_min, i_zero, 2.0 * i_zero / (1.0 + purity)};
  if (!(s.i_min >= 0.0 && s.i_min <= s.i_max)) {
    throw Error(ErrorCode::InvalidArgument, "fringe extrema must satisfy 0 <= i_min <= i_max");
  }
  if (!(s.i_norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "normalization intensity must be positive");
  return s;
}

double pure_intensity(const Su2Params& p, double eta) noexcept {
  const double c = std::cos(p.xi());
  const double s = std::sin(p.xi());
  const double cd = std::cos(p.delta());
  const double ce = std::cos(p.zeta() - eta);
  return c * c * cd * cd + s * s * ce * ce;
}

double mixed_intensity(double purity, const Su2Params& p, double eta) {
  require_purity(purity);
  return 0.5 * (1.0 - purity) + purity * pure_intensity(p, eta);
}

double extract_phase(const FringeStats& stats, double purity) {
  if (purity < 1e-12) throw Error(ErrorCode::PurityZero, "phase extraction needs a nonzero purity");
  require_purity(purity);
  const double r = purity;
  const double lo = stats.i_min / stats.i_norm;
  const double hi = stats.i_max / stats.i_norm;
  const double a = (lo - 0.5 * (1.0 - r)) / r;
  const double b = r * (0.5 * (1.0 + r) - hi);
  const double denom = b + a;
  if (!(std::abs(denom) > 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "fringe extrema leave the radicand undefined (0/0)");
  }
  const double radicand = a / denom;
  if (!(radicand >= -kDomainTol && radicand <= 1.0 + kDomainTol)) {
    throw Error(ErrorCode::OutOfDomain,
                "radicand " + std::to_string(radicand) + " outside [0,1]; stats inconsistent with purity");
  }
  return std::acos(std::sqrt(std::clamp(radicand, 0.0, 1.0)));
}

double extract_phase_sigma(const FringeScan& scan) {
  const double r = scan.effective_purity;
  const FringeStats& s = scan.stats;
  const std::array<double, 3> x{s.i_max, s.i_min, s.i_zero};
  auto phase_at = [&](const std::array<double, 3>& v) {
    FringeStats t{v[0], v[1], v[2], 2.0 * v[2] / (1.0 + r)};
    return extract_phase(t, r);
  };
  std::array<double, 3> grad{};
  for (int k = 0; k < 3; ++k) {
    const double h = 1e-5 * std::max(std::abs(x[k]), 1e-3);
    auto up = x;
    auto dn = x;
    up[k] += h;
    dn[k] -= h;
    grad[k] = (phase_at(up) - phase_at(dn)) / (2.0 * h);
  }
  const double var = grad[0] * grad[0] * scan.fit.maximum_variance() +
                     grad[1] * grad[1] * scan.fit.minimum_variance() +
                     2.0 * grad[0] * grad[1] * scan.fit.extrema_covariance() +
                     grad[2] * grad[2] * scan.i_zero_variance;
  return std::sqrt(std::max(var, 0.0));
}

FringeScan simulate_fringe_scan(const PolarimeterConfig& cfg, const NoiseModel& noise) {
  require_purity(cfg.purity);
  if (!(cfg.counts_per_point > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "counts_per_point must be positive");
  }
  if (noise.sigma < 0.0) throw Error(ErrorCode::InvalidArgument, "noise sigma must be non-negative");
  const std::size_t n = cfg.eta_grid.size();
  if (n < 3) throw Error(ErrorCode::FitFailure, "fringe fit needs at least three eta points");

  FringeScan scan;
  scan.effective_purity = cfg.purity;
  if (noise.kind == NoiseKind::AngleJitter) {
    // <cos eps> for eps ~ N(0, sigma^2)
    scan.effective_purity *= std::exp(-0.5 * noise.sigma * noise.sigma);
  }
  const double r = scan.effective_purity;
  const double k = cfg.counts_per_point;

  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<double> eta(n), counts(n);
  scan.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    eta[i] = cfg.eta_grid[i];
    const double mean = k * mixed_intensity(r, cfg.params, eta[i]);
    counts[i] = cfg.analytic ? mean : draw_poisson(rng, mean);
    scan.samples.push_back({eta[i], counts[i]});
  }

  // The fringe cos^2(zeta - eta) oscillates at twice the scan angle.
  constexpr double kHarmonic = 2.0;
  CosineFit fit = fit_cosine(eta, counts, kHarmonic);
  if (!cfg.analytic) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / std::max(fit(eta[i]), 1.0);
    fit = fit_cosine(eta, counts, kHarmonic, std::span<const double>(w));
  }
  const double amp_sigma = std::sqrt(std::max(fit.amplitude_variance(), 0.0));
  if (!(fit.amplitude > 3.0 * amp_sigma) || !(fit.amplitude > 1e-12 * std::abs(fit.offset))) {
    throw Error(ErrorCode::FitFailure, "fringe visibility indistinguishable from zero");
  }
  scan.fit = fit;

  // Reference run with U_phi = 1: pure intensity 1 at every eta.
  const double ref_mean = k * mixed_intensity(r, Su2Params(0.0, 0.0, 0.0), 0.0);
  double ref_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) ref_sum += cfg.analytic ? ref_mean : draw_poisson(rng, ref_mean);
  const double i_zero = ref_sum / static_cast<double>(n);
  scan.i_zero_variance = cfg.analytic ? 0.0 : i_zero / static_cast<double>(n);

  scan.stats = FringeStats::make(fit.maximum(), std::max(fit.minimum(), 0.0), i_zero, r);
  return scan;
}

BlochVector depolarize(const BlochVector& initial, const NoiseModel& noise, long nsamples) {
  if (noise.sigma < 0.0) throw Error(ErrorCode::InvalidArgument, "noise sigma must be non-negative");
  const Matrix2 rho = density_matrix(initial);
  const Vec3 x_axis{1.0, 0.0, 0.0};
  const double nominal = 0.5 * kPi;
  if (noise.kind == NoiseKind::None || noise.sigma == 0.0 || nsamples <= 0) {
    const Unitary2 u = rotation(x_axis, nominal);
    return bloch_of(u.matrix() * rho * u.matrix().adjoint());
  }
  std::mt19937_64 rng(noise.rng_seed);
  std::normal_distribution<double> jitter(0.0, noise.sigma);
  Matrix2 acc(0.0, 0.0, 0.0, 0.0);
  for (long i = 0; i < nsamples; ++i) {
    const Unitary2 u = rotation(x_axis, nominal + jitter(rng));
    acc = acc + u.matrix() * rho * u.matrix().adjoint();
  }
  return bloch_of(acc * Complex(1.0 / static_cast<double>(nsamples), 0.0));
}

NonAdditivityReport non_additivity_report(double phi_g, double phi_d, double purity) {
  if (!(purity > 0.0 && purity <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "non-additivity report needs purity in (0, 1]");
  }
  auto in_range = [](double d) { return d > -kPi && d <= kPi; };
  const double delta_tot = phi_g + phi_d;
  if (!in_range(phi_g) || !in_range(phi_d) || !in_range(delta_tot)) {
    throw Error(ErrorCode::NoRealization, "phases must lie in (-pi, pi] together with their sum");
  }
  // delta (1 - cos 2xi) = phi_g and delta cos 2xi = phi_d  =>  delta = phi_g + phi_d.
  double xi_tot = 0.0;
  if (std::abs(delta_tot) < 1e-15) {
    if (std::abs(phi_d) > 1e-15) {
      throw Error(ErrorCode::NoRealization, "phi_g = -phi_d != 0 has no (xi, delta) realization");
    }
  } else {
    const double c2 = phi_d / delta_tot;
    if (std::abs(c2) > 1.0 + 1e-12) {
      throw Error(ErrorCode::NoRealization, "cos(2 xi) = phi_d / (phi_g + phi_d) lies outside [-1, 1]");
    }
    xi_tot = 0.5 * std::acos(std::clamp(c2, -1.0, 1.0));
  }

  NonAdditivityReport rep;
  rep.geometric_params = Su2Params(0.25 * kPi, phi_g, 0.0);
  rep.dynamical_params = Su2Params(0.0, phi_d, 0.0);
  rep.total_params = Su2Params(xi_tot, delta_tot, 0.0);
  rep.phi_g = mixed_phase_theory(purity, phi_g);
  rep.phi_d = mixed_phase_theory(purity, phi_d);
  rep.phi_tot = mixed_phase_theory(purity, delta_tot);
  rep.sum = rep.phi_g + rep.phi_d;

  const BlochVector rho = BlochVector::along_z(purity);
  const std::array<std::pair<const Su2Params*, double>, 3> checks{
      {{&rep.geometric_params, rep.phi_g}, {&rep.dynamical_params, rep.phi_d}, {&rep.total_params, rep.phi_tot}}};
  for (const auto& [params, theory] : checks) {
    try {
      const MixedPhase m = mixed_phase_general(rho, su2_from_params(*params));
      rep.oracle_residual = std::max(rep.oracle_residual, std::abs(angle_difference(m.phase, theory)));
    } catch (const Error& e) {
      // xi = pi/2 realizations (phi_d = -delta) have Tr(rho U) = 0: nothing to compare.
      if (e.code() != ErrorCode::UndefinedPhase) throw;
    }
  }
  const PhaseDecomposition d = decompose_phase(rep.total_params);
  rep.oracle_residual = std::max(rep.oracle_residual, std::abs(angle_difference(d.geometric, phi_g)));
  rep.oracle_residual = std::max(rep.oracle_residual, std::abs(angle_difference(d.dynamical, phi_d)));
  return rep;
}

}  // namespace geophase
