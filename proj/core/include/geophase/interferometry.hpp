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

// Spin-path interferometer in the rotating frame. Path basis {|I>, |II>},
// spin basis {|up>, |down>}; joint index = 2 * path + spin.

#include <array>
#include <cstdint>
#include <vector>

#include "geophase/fitting.hpp"
#include "geophase/spin_core.hpp"

namespace geophase {

inline constexpr double kHbar = 1.054571817e-34;                // J s
inline constexpr double kNeutronMagneticMoment = -9.6623651e-27;  // J/T

struct RfFlipperConfig {
  double b0 = 0.0;   // static guide field, T
  double tau = 0.0;  // time spent in the rf field, s
  double phi = 0.0;  // rf phase, rad
  double mu = kNeutronMagneticMoment;
  double hbar = kHbar;
};

struct Resonance {
  double b_rf = 0.0;   // T
  double omega = 0.0;  // rad/s
  double bloch_siegert_factor = 1.0;

  double frequency_hz() const noexcept { return omega / kTwoPi; }
};

/// pi-flip amplitude and Bloch-Siegert-corrected frequency. Throws
/// InvalidArgument unless b0 > 0, tau > 0, mu != 0 and hbar > 0.
Resonance resonance(const RfFlipperConfig& cfg);

/// pi flip about the transverse axis at azimuth phi: |up> -> e^{i phi}|down>,
/// |down> -> e^{-i phi}|up>.
Unitary2 rf_flip(double phi);

/// phi_I - phi_0 wrapped to (-pi, pi].
double geometric_phase_of_flip_pair(double phi_i, double phi_0) noexcept;

/// Bloch path of two successive flips out of the south pole: up the meridian
/// at azimuth phi_0 - pi/2, then down the one at phi_I - pi/2. Its solid
/// angle is -2 (phi_I - phi_0) mod 4pi.
SpherePath flip_lune_path(double phi_i, double phi_0, int segments_per_leg = 64);

/// Unit vector in path (x) spin space.
class SpinPathState {
 public:
  /// Throws InvalidArgument when the norm differs from 1 by more than 1e-12.
  explicit SpinPathState(const std::array<Complex, 4>& amplitudes);

  /// Rescales to unit norm; throws InvalidArgument for the zero vector.
  static SpinPathState normalized(std::array<Complex, 4> amplitudes);

  const std::array<Complex, 4>& amplitudes() const noexcept { return amp_; }
  Complex amplitude(int path, int spin) const noexcept { return amp_[static_cast<std::size_t>(2 * path + spin)]; }
  double norm() const noexcept;

  Matrix2 reduced_path() const noexcept;
  Matrix2 reduced_spin() const noexcept;

  /// <psi| A (x) B |psi>.
  Complex expectation(const Matrix2& path_op, const Matrix2& spin_op) const noexcept;

 private:
  std::array<Complex, 4> amp_;
};

/// (|I>|up> + e^{i chi} e^{i gamma} |II>|down>) / sqrt 2.
SpinPathState build_entangled_state(double chi, double gamma);

struct TimeDependenceOptions {
  bool second_flipper = true;
  bool remove_offset = true;  // drop the constant e^{-i omega T}
  double chi = 0.0;
  double phi_i = 0.0;
  double phi_ii = 0.0;
};

/// Carries the phases of the pre-second-flipper state as c + a omega t + b omega T,
/// applies the omega/2 flipper on the coefficients, fixes the gauge on the
/// path-I component and returns max_t |psi(t) - mean_t psi|. Throws
/// InvalidArgument for omega < 0 or an empty grid.
double time_dependence_residual(const std::vector<double>& t_grid, double omega, double big_t,
                                const TimeDependenceOptions& options = {});

enum class Polarization { Up, Down };

struct InterferometerScan {
  std::vector<double> chi_grid;
  double phi_i = 0.0;
  double phi_ii = 0.0;
  Polarization initial_polarization = Polarization::Up;
  double analysis_delta = 0.5 * kPi;  // spin-turner angle
};

/// O-beam intensity from explicit operators: flip path II with rf_flip(phi_I),
/// add e^{i chi}, project on (|I> + |II>)/sqrt 2, flip with rf_flip(phi_II),
/// turn by analysis_delta about +y, project on |up>.
double o_beam_intensity(const InterferometerScan& scan, double chi);

/// (1/4)(1 + sin(delta) cos(chi + s (phi_I - 2 phi_II))), s = +1 up, -1 down.
double o_beam_intensity_closed_form(const InterferometerScan& scan, double chi) noexcept;

/// Fringe phase f with I proportional to 1 + cos(chi + f). Signed by the
/// polarization flag.
double expected_fringe_phase(const InterferometerScan& scan) noexcept;

struct Interferogram {
  std::vector<double> chi;
  std::vector<double> intensity;  // expected counts, or drawn counts when sampled
  CosineFit fit;
  double fringe_phase = 0.0;  // in (-pi, pi]

  /// (max - min) / (max + min) of the fitted fringe.
  double contrast() const noexcept;
};

/// Exact intensities (counts_per_point <= 0) or Poisson counts with the
/// given mean per neutron, fitted with offset + amplitude cos(chi - c).
/// Throws FitFailure on fewer than three points.
Interferogram simulate_interferogram(const InterferometerScan& scan, double counts_per_point = 0.0,
                                     std::uint64_t seed = 0);

struct PhaseSlope {
  std::vector<double> phi_i;
  std::vector<double> fringe_phase;  // unwrapped
  LinearFit line;
};

/// Fringe phase as a function of phi_I over `phi_grid`; other scan fields
/// are kept. Throws InvalidArgument when chi_grid spans less than 2 pi.
PhaseSlope fringe_phase_slope(const InterferometerScan& base, const std::vector<double>& phi_grid,
                              double counts_per_point = 0.0, std::uint64_t seed = 0);

}  // namespace geophase
