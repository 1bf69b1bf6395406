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

// Polarimeter model: U1, U_phi(eta), U1^dagger between a +z polarizer and a
// +z analyzer. Intensities are normalized to one incident neutron; simulated
// counts scale them by counts_per_point.

#include <cstdint>
#include <vector>

#include "geophase/fitting.hpp"
#include "geophase/spin_core.hpp"

namespace geophase {

struct PolarimeterConfig {
  Su2Params params;
  double purity = 1.0;
  std::vector<double> eta_grid;
  double counts_per_point = 1e4;
  std::uint64_t rng_seed = 0;
  bool analytic = false;  // exact expected counts, no Poisson draw
};

/// Fringe extrema plus the U_phi = 1 reference intensity.
struct FringeStats {
  double i_max = 0.0;
  double i_min = 0.0;
  double i_zero = 0.0;
  double i_norm = 0.0;  // 2 i_zero / (1 + r)

  /// Fills i_norm; throws InvalidArgument unless 0 <= i_min <= i_max and i_norm > 0.
  static FringeStats make(double i_max, double i_min, double i_zero, double purity);
};

enum class NoiseKind { None, AngleJitter };

/// Gaussian jitter of the first coil's pi/2 rotation angle.
struct NoiseModel {
  NoiseKind kind = NoiseKind::None;
  double sigma = 0.0;  // rad
  std::uint64_t rng_seed = 0;
};

struct FringeSample {
  double eta = 0.0;
  double counts = 0.0;
};

struct FringeScan {
  std::vector<FringeSample> samples;
  FringeStats stats;
  CosineFit fit;
  double i_zero_variance = 0.0;
  double effective_purity = 1.0;  // incident purity after coil noise
};

double pure_intensity(const Su2Params& p, double eta) noexcept;

double mixed_intensity(double purity, const Su2Params& p, double eta);

/// Mixed-state phase from fringe extrema, in [0, pi/2]. Throws PurityZero for
/// purity < 1e-12 and OutOfDomain when the radicand leaves [0, 1] by more than 1e-9.
double extract_phase(const FringeStats& stats, double purity);

/// One-sigma uncertainty of extract_phase(scan.stats, scan.effective_purity)
/// propagated from the fit covariance and the reference-run variance.
double extract_phase_sigma(const FringeScan& scan);

/// Poisson-sampled (or exact, in analytic mode) eta scan, a two-pass weighted
/// fit of offset + amplitude cos(2 eta - phase), and a U_phi = 1 reference run
/// over the same grid. Throws FitFailure for fewer than three points or a
/// fringe amplitude within 3 sigma of zero.
FringeScan simulate_fringe_scan(const PolarimeterConfig& cfg, const NoiseModel& noise = {});

/// Average of rho over first-coil rotations about +x by pi/2 + eps, eps ~ N(0, sigma).
BlochVector depolarize(const BlochVector& initial, const NoiseModel& noise, long nsamples);

struct NonAdditivityReport {
  double phi_g = 0.0;    // mixed-state phase of the purely geometric evolution
  double phi_d = 0.0;    // ... purely dynamical evolution
  double phi_tot = 0.0;  // ... evolution carrying phi_g + phi_d
  double sum = 0.0;      // phi_g + phi_d
  Su2Params geometric_params;
  Su2Params dynamical_params;
  Su2Params total_params;
  double oracle_residual = 0.0;  // max |theory - arg Tr(rho U)| over evolutions with Tr(rho U) != 0

  double gap() const noexcept { return phi_tot - sum; }
};

/// Throws NoRealization when no (xi, delta) with delta in (-pi, pi] produces
/// geometric phase phi_g and dynamical phase phi_d together.
NonAdditivityReport non_additivity_report(double phi_g, double phi_d, double purity);

}  // namespace geophase
