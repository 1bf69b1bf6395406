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

// Spin-1/2 algebra: SU(2) evolutions, Bloch-sphere geometry and the pure and
// mixed-state phase functionals. Every type here is an immutable value.

#include <array>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace geophase {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any angle onto (-pi, pi].
double wrap_angle(double angle) noexcept;

/// Signed difference a - b reduced to (-pi, pi].
inline double angle_difference(double a, double b) noexcept { return wrap_angle(a - b); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const noexcept { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const noexcept { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const noexcept { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator-() const noexcept { return {-x, -y, -z}; }

  constexpr double dot(const Vec3& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const noexcept {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const noexcept;
  Vec3 normalized() const;
};

/// Unit vector with polar angle theta (from +z) and azimuth phi.
Vec3 spherical_point(double theta, double phi) noexcept;

/// Normalized pure spin state a|up> + b|down>.
class SpinState {
 public:
  /// Normalizes (up, down); throws InvalidArgument for the zero vector.
  SpinState(Complex up, Complex down);

  static SpinState up() { return {1.0, 0.0}; }
  static SpinState down() { return {0.0, 1.0}; }

  Complex amp_up() const noexcept { return up_; }
  Complex amp_down() const noexcept { return down_; }

  Complex inner(const SpinState& other) const noexcept {
    return std::conj(up_) * other.up_ + std::conj(down_) * other.down_;
  }

 private:
  Complex up_;
  Complex down_;
};

/// Bloch vector of a spin-1/2 density operator rho = (1 + r.sigma)/2.
struct BlochVector {
  double rx = 0.0;
  double ry = 0.0;
  double rz = 0.0;

  double purity() const noexcept;
  Vec3 as_vec() const noexcept { return {rx, ry, rz}; }

  static BlochVector along_z(double purity) noexcept { return {0.0, 0.0, purity}; }
  static BlochVector of(const SpinState& state) noexcept;
};

/// 2x2 complex matrix in the {|up>, |down>} basis, row-major.
class Matrix2 {
 public:
  constexpr Matrix2() = default;
  constexpr Matrix2(Complex m00, Complex m01, Complex m10, Complex m11) : m_{m00, m01, m10, m11} {}

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex operator()(int row, int col) const noexcept { return m_[static_cast<std::size_t>(2 * row + col)]; }

  Matrix2 operator*(const Matrix2& o) const noexcept;
  Matrix2 operator+(const Matrix2& o) const noexcept;
  Matrix2 operator*(Complex s) const noexcept;
  Matrix2 adjoint() const noexcept;
  Complex trace() const noexcept { return m_[0] + m_[3]; }
  Complex det() const noexcept { return m_[0] * m_[3] - m_[1] * m_[2]; }

  /// Largest entrywise modulus of (this - o).
  double max_abs_diff(const Matrix2& o) const noexcept;

 private:
  std::array<Complex, 4> m_{};
};

/// Density operator of a Bloch vector.
Matrix2 density_matrix(const BlochVector& r) noexcept;
/// Bloch vector of a Hermitian, unit-trace 2x2 operator.
BlochVector bloch_of(const Matrix2& rho) noexcept;

/// A 2x2 unitary. Construction checks U^dagger U = 1 within 1e-12.
class Unitary2 {
 public:
  explicit Unitary2(const Matrix2& m);

  static Unitary2 identity() { return Unitary2(Matrix2::identity()); }

  const Matrix2& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const noexcept { return m_(row, col); }

  Unitary2 operator*(const Unitary2& o) const { return Unitary2(m_ * o.m_); }
  Unitary2 adjoint() const { return Unitary2(m_.adjoint()); }
  SpinState apply(const SpinState& s) const;

 private:
  Matrix2 m_;
};

/// Rotation of the Bloch vector by `angle` about unit `axis`: exp(-i angle n.sigma / 2).
Unitary2 rotation(const Vec3& axis, double angle);

/// The angles (xi, delta, zeta) of a general evolution. Stored in (-pi, pi].
class Su2Params {
 public:
  Su2Params() noexcept : Su2Params(0.0, 0.0, 0.0) {}
  Su2Params(double xi, double delta, double zeta) noexcept;

  double xi() const noexcept { return xi_; }
  double delta() const noexcept { return delta_; }
  double zeta() const noexcept { return zeta_; }

 private:
  double xi_;
  double delta_;
  double zeta_;
};

struct PhaseDecomposition {
  double total = 0.0;
  double dynamical = 0.0;
  double geometric = 0.0;
};

/// Ordered points on the unit sphere joined by geodesic legs.
class SpherePath {
 public:
  /// Normalizes every point. Throws InvalidArgument on a zero point or on
  /// consecutive antipodal points (leg not unique).
  explicit SpherePath(std::vector<Vec3> points);

  const std::vector<Vec3>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// Concatenation; a duplicated junction point is dropped.
  SpherePath then(const SpherePath& next) const;

 private:
  std::vector<Vec3> points_;
};

/// `segments` geodesic chords along the minor great-circle arc from -> to.
SpherePath great_circle_arc(const Vec3& from, const Vec3& to, int segments);
/// Trajectory of `start` rotated about `axis` by angles 0..angle, `segments` chords.
SpherePath rotation_arc(const Vec3& start, const Vec3& axis, double angle, int segments);

/// Signed area of the geodesic triangle (a, b, c); positive when a, b, c run
/// counter-clockwise seen from outside the sphere.
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) noexcept;

// ---- operations ----

Unitary2 su2_from_params(const Su2Params& p);

/// arg <up|U|up> in (-pi, pi]. Throws UndefinedPhase when |<up|U|up>| < 1e-12.
double total_phase(const Unitary2& u);

PhaseDecomposition decompose_phase(const Su2Params& p);

/// Signed area enclosed by the path and its shortest geodesic closure, in
/// (-2pi, 2pi] (the area is defined mod 4pi). Geometric phase = -Omega/2.
/// Throws DegenerateClosure if the open endpoints are antipodal within 1e-9.
double solid_angle(const SpherePath& path);

struct MixedPhase {
  double phase = 0.0;
  double visibility = 0.0;
};

/// Phase and visibility of Tr(rho U). Throws UndefinedPhase when the
/// visibility is below 1e-12.
MixedPhase mixed_phase_general(const BlochVector& rho, const Unitary2& u);

/// Quadrant-correct arg[(1 + r) e^{i delta} + (1 - r) e^{-i delta}].
double mixed_phase_theory(double purity, double delta);

}  // namespace geophase
