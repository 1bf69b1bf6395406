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

#include "geophase/interferometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "geophase/error.hpp"

namespace geophase {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Complex cis(double phase) { return std::polar(1.0, phase); }

double polarization_sign(Polarization p) { return p == Polarization::Up ? 1.0 : -1.0; }

// Phase c + a (omega t) + b (omega T), kept as coefficients so cancellations are exact.
struct SymbolicPhase {
  double constant = 0.0;
  double wt = 0.0;
  double wbig_t = 0.0;

  SymbolicPhase operator+(const SymbolicPhase& o) const {
    return {constant + o.constant, wt + o.wt, wbig_t + o.wbig_t};
  }
  SymbolicPhase operator-(const SymbolicPhase& o) const {
    return {constant - o.constant, wt - o.wt, wbig_t - o.wbig_t};
  }
  double at(double omega, double t, double big_t) const { return constant + wt * omega * t + wbig_t * omega * big_t; }
};

// One populated joint-basis component with unit-modulus-times-weight amplitude.
struct SymbolicComponent {
  int path = 0;
  int spin = 0;
  double weight = 0.0;
  SymbolicPhase phase;
};

}  // namespace

Resonance resonance(const RfFlipperConfig& cfg) {
  if (!(cfg.b0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "b0 must be positive");
  if (!(cfg.tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
  if (!(cfg.hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "hbar must be positive");
  const double mu = std::abs(cfg.mu);
  if (!(mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "magnetic moment must be nonzero");
  Resonance r;
  r.b_rf = kPi * cfg.hbar / (cfg.tau * mu);
  r.bloch_siegert_factor = 1.0 + (r.b_rf * r.b_rf) / (16.0 * cfg.b0 * cfg.b0);
  r.omega = (2.0 * mu * cfg.b0 / cfg.hbar) * r.bloch_siegert_factor;
  return r;
}

Unitary2 rf_flip(double phi) { return Unitary2(Matrix2(0.0, cis(-phi), cis(phi), 0.0)); }

double geometric_phase_of_flip_pair(double phi_i, double phi_0) noexcept { return wrap_angle(phi_i - phi_0); }

SpherePath flip_lune_path(double phi_i, double phi_0, int segments_per_leg) {
  if (segments_per_leg < 2) throw Error(ErrorCode::InvalidArgument, "lune legs need at least two segments");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(2 * segments_per_leg + 1));
  const double up_az = phi_0 - 0.5 * kPi;
  const double down_az = phi_i - 0.5 * kPi;
  for (int k = 0; k <= segments_per_leg; ++k) {
    pts.push_back(spherical_point(kPi * (1.0 - static_cast<double>(k) / segments_per_leg), up_az));
  }
  for (int k = 1; k <= segments_per_leg; ++k) {
    pts.push_back(spherical_point(kPi * static_cast<double>(k) / segments_per_leg, down_az));
  }
  return SpherePath(std::move(pts));
}

SpinPathState::SpinPathState(const std::array<Complex, 4>& amplitudes) : amp_(amplitudes) {
  if (std::abs(norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "spin-path state norm " + std::to_string(norm()) + " != 1");
  }
}

SpinPathState SpinPathState::normalized(std::array<Complex, 4> amplitudes) {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (!(n2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= inv;
  return SpinPathState(amplitudes);
}

double SpinPathState::norm() const noexcept {
  double n2 = 0.0;
  for (const auto& a : amp_) n2 += std::norm(a);
  return std::sqrt(n2);
}

Matrix2 SpinPathState::reduced_path() const noexcept {
  auto el = [&](int p, int q) {
    return amplitude(p, 0) * std::conj(amplitude(q, 0)) + amplitude(p, 1) * std::conj(amplitude(q, 1));
  };
  return {el(0, 0), el(0, 1), el(1, 0), el(1, 1)};
}

Matrix2 SpinPathState::reduced_spin() const noexcept {
  auto el = [&](int s, int t) {
    return amplitude(0, s) * std::conj(amplitude(0, t)) + amplitude(1, s) * std::conj(amplitude(1, t));
  };
  return {el(0, 0), el(0, 1), el(1, 0), el(1, 1)};
}

Complex SpinPathState::expectation(const Matrix2& path_op, const Matrix2& spin_op) const noexcept {
  Complex acc = 0.0;
  for (int p = 0; p < 2; ++p)
    for (int s = 0; s < 2; ++s)
      for (int q = 0; q < 2; ++q)
        for (int t = 0; t < 2; ++t) {
          acc += std::conj(amplitude(p, s)) * path_op(p, q) * spin_op(s, t) * amplitude(q, t);
        }
  return acc;
}

SpinPathState build_entangled_state(double chi, double gamma) {
  return SpinPathState({kInvSqrt2, 0.0, 0.0, kInvSqrt2 * cis(chi + gamma)});
}

double time_dependence_residual(const std::vector<double>& t_grid, double omega, double big_t,
                                const TimeDependenceOptions& options) {
  if (!(omega >= 0.0)) throw Error(ErrorCode::InvalidArgument, "omega must be non-negative");
  if (t_grid.empty()) throw Error(ErrorCode::InvalidArgument, "time grid is empty");

  // Before the omega/2 flipper: |I>|up> + e^{i omega t} e^{i chi} e^{i phi_I} |II>|down>.
  std::array<SymbolicComponent, 2> comp{{
      {0, 0, kInvSqrt2, {}},
      {1, 1, kInvSqrt2, {options.chi + options.phi_i, 1.0, 0.0}},
  }};
  if (options.second_flipper) {
    // In the frame of the omega/2 field the flip picks up its phase phi_II + (omega/2)(t + T):
    // up -> down with +, down -> up with -.
    for (auto& c : comp) {
      const double s = c.spin == 0 ? 1.0 : -1.0;
      c.phase = c.phase + SymbolicPhase{s * options.phi_ii, s * 0.5, s * 0.5};
      c.spin = 1 - c.spin;
    }
  }
  const SymbolicPhase gauge = comp[0].phase;
  for (auto& c : comp) c.phase = c.phase - gauge;
  if (options.remove_offset) {
    for (auto& c : comp) c.phase.wbig_t = 0.0;
  }

  const std::size_t n = t_grid.size();
  std::vector<std::array<Complex, 4>> states(n);
  std::array<Complex, 4> mean{};
  for (std::size_t i = 0; i < n; ++i) {
    states[i].fill(0.0);
    for (const auto& c : comp) {
      states[i][static_cast<std::size_t>(2 * c.path + c.spin)] += c.weight * cis(c.phase.at(omega, t_grid[i], big_t));
    }
    for (std::size_t k = 0; k < 4; ++k) mean[k] += states[i][k] / static_cast<double>(n);
  }
  double worst = 0.0;
  for (const auto& s : states) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < 4; ++k) d2 += std::norm(s[k] - mean[k]);
    worst = std::max(worst, std::sqrt(d2));
  }
  return worst;
}

double o_beam_intensity(const InterferometerScan& scan, double chi) {
  const SpinState s0 = scan.initial_polarization == Polarization::Up ? SpinState::up() : SpinState::down();
  const SpinState flipped = rf_flip(scan.phi_i).apply(s0);
  const SpinPathState psi({kInvSqrt2 * s0.amp_up(), kInvSqrt2 * s0.amp_down(),
                           kInvSqrt2 * cis(chi) * flipped.amp_up(), kInvSqrt2 * cis(chi) * flipped.amp_down()});

  // <O| = (<I| + <II|) / sqrt 2 leaves an unnormalized spinor.
  const Complex up = kInvSqrt2 * (psi.amplitude(0, 0) + psi.amplitude(1, 0));
  const Complex down = kInvSqrt2 * (psi.amplitude(0, 1) + psi.amplitude(1, 1));
  const Unitary2 chain = rotation(Vec3{0.0, 1.0, 0.0}, -scan.analysis_delta) * rf_flip(scan.phi_ii);
  const Complex out = chain(0, 0) * up + chain(0, 1) * down;
  return std::norm(out);
}

double expected_fringe_phase(const InterferometerScan& scan) noexcept {
  return wrap_angle(polarization_sign(scan.initial_polarization) * (scan.phi_i - 2.0 * scan.phi_ii));
}

double o_beam_intensity_closed_form(const InterferometerScan& scan, double chi) noexcept {
  return 0.25 * (1.0 + std::sin(scan.analysis_delta) * std::cos(chi + expected_fringe_phase(scan)));
}

double Interferogram::contrast() const noexcept {
  const double hi = fit.maximum();
  const double lo = fit.minimum();
  return (hi + lo) > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
}

Interferogram simulate_interferogram(const InterferometerScan& scan, double counts_per_point, std::uint64_t seed) {
  const std::size_t n = scan.chi_grid.size();
  if (n < 3) throw Error(ErrorCode::FitFailure, "interferogram fit needs at least three chi points");
  Interferogram g;
  g.chi = scan.chi_grid;
  g.intensity.resize(n);
  const bool sampled = counts_per_point > 0.0;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = o_beam_intensity(scan, scan.chi_grid[i]);
    if (sampled) {
      std::poisson_distribution<long long> draw(std::max(counts_per_point * p, 1e-300));
      g.intensity[i] = static_cast<double>(draw(rng));
    } else {
      g.intensity[i] = p;
    }
  }
  g.fit = fit_cosine(g.chi, g.intensity, 1.0);
  g.fringe_phase = wrap_angle(-g.fit.phase);
  return g;
}

PhaseSlope fringe_phase_slope(const InterferometerScan& base, const std::vector<double>& phi_grid,
                              double counts_per_point, std::uint64_t seed) {
  const auto& chi = base.chi_grid;
  if (chi.size() < 3) throw Error(ErrorCode::InvalidArgument, "chi grid needs at least three points");
  const auto [lo, hi] = std::minmax_element(chi.begin(), chi.end());
  // A uniform grid over one period excludes its endpoint, so count one cell beyond the extremes.
  const double span = (*hi - *lo) * static_cast<double>(chi.size()) / static_cast<double>(chi.size() - 1);
  if (span < kTwoPi - 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "chi grid must span at least 2 pi for slope fitting");
  }
  PhaseSlope out;
  out.phi_i = phi_grid;
  std::vector<double> raw;
  raw.reserve(phi_grid.size());
  InterferometerScan scan = base;
  for (std::size_t i = 0; i < phi_grid.size(); ++i) {
    scan.phi_i = phi_grid[i];
    raw.push_back(simulate_interferogram(scan, counts_per_point, seed + i).fringe_phase);
  }
  out.fringe_phase = unwrap_phases(raw);
  out.line = fit_line(out.phi_i, out.fringe_phase);
  return out;
}

}  // namespace geophase
