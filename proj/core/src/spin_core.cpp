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

#include "geophase/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geophase/error.hpp"

namespace geophase {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kPhaseFloor = 1e-12;
constexpr double kAntipodalTol = 1e-9;

}  // namespace

double wrap_angle(double angle) noexcept {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double Vec3::norm() const noexcept { return std::sqrt(dot(*this)); }

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  return *this * (1.0 / n);
}

Vec3 spherical_point(double theta, double phi) noexcept {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

SpinState::SpinState(Complex up, Complex down) {
  const double n = std::sqrt(std::norm(up) + std::norm(down));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidArgument, "spin state amplitudes must not both vanish");
  }
  up_ = up / n;
  down_ = down / n;
}

double BlochVector::purity() const noexcept { return std::sqrt(rx * rx + ry * ry + rz * rz); }

BlochVector BlochVector::of(const SpinState& s) noexcept {
  const Complex c = std::conj(s.amp_up()) * s.amp_down();
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(s.amp_up()) - std::norm(s.amp_down())};
}

Matrix2 Matrix2::operator*(const Matrix2& o) const noexcept {
  return {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
          m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]};
}

Matrix2 Matrix2::operator+(const Matrix2& o) const noexcept {
  return {m_[0] + o.m_[0], m_[1] + o.m_[1], m_[2] + o.m_[2], m_[3] + o.m_[3]};
}

Matrix2 Matrix2::operator*(Complex s) const noexcept {
  return {m_[0] * s, m_[1] * s, m_[2] * s, m_[3] * s};
}

Matrix2 Matrix2::adjoint() const noexcept {
  return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

double Matrix2::max_abs_diff(const Matrix2& o) const noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(m_[i] - o.m_[i]));
  return d;
}

Matrix2 density_matrix(const BlochVector& r) noexcept {
  return {Complex(0.5 * (1.0 + r.rz), 0.0), Complex(0.5 * r.rx, -0.5 * r.ry),
          Complex(0.5 * r.rx, 0.5 * r.ry), Complex(0.5 * (1.0 - r.rz), 0.0)};
}

BlochVector bloch_of(const Matrix2& rho) noexcept {
  const Complex off = rho(1, 0);
  return {2.0 * off.real(), 2.0 * off.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

Unitary2::Unitary2(const Matrix2& m) : m_(m) {
  const double err = (m_.adjoint() * m_).max_abs_diff(Matrix2::identity());
  if (!(err <= kUnitaryTol)) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix is not unitary (|U^dagger U - 1| = " + std::to_string(err) + ")");
  }
}

SpinState Unitary2::apply(const SpinState& s) const {
  return {m_(0, 0) * s.amp_up() + m_(0, 1) * s.amp_down(),
          m_(1, 0) * s.amp_up() + m_(1, 1) * s.amp_down()};
}

Unitary2 rotation(const Vec3& axis, double angle) {
  const Vec3 n = axis.normalized();
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const Complex mi(0.0, -s);
  // cos(a/2) 1 - i sin(a/2) n.sigma
  return Unitary2(Matrix2(c + mi * n.z, mi * Complex(n.x, -n.y), mi * Complex(n.x, n.y),
                          c - mi * n.z));
}

Su2Params::Su2Params(double xi, double delta, double zeta) noexcept
    : xi_(wrap_angle(xi)), delta_(wrap_angle(delta)), zeta_(wrap_angle(zeta)) {}

SpherePath::SpherePath(std::vector<Vec3> points) : points_(std::move(points)) {
  for (auto& p : points_) p = p.normalized();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if ((points_[i] + points_[i - 1]).norm() < kAntipodalTol) {
      throw Error(ErrorCode::InvalidArgument,
                  "consecutive path points " + std::to_string(i - 1) + " and " +
                      std::to_string(i) + " are antipodal");
    }
  }
}

SpherePath SpherePath::then(const SpherePath& next) const {
  std::vector<Vec3> pts = points_;
  auto it = next.points_.begin();
  if (!pts.empty() && it != next.points_.end() && (pts.back() - *it).norm() < 1e-12) ++it;
  pts.insert(pts.end(), it, next.points_.end());
  return SpherePath(std::move(pts));
}

SpherePath great_circle_arc(const Vec3& from, const Vec3& to, int segments) {
  const Vec3 a = from.normalized();
  const Vec3 b = to.normalized();
  const Vec3 axis = a.cross(b);
  const double sin_t = axis.norm();
  const double angle = std::atan2(sin_t, a.dot(b));
  if (sin_t < 1e-15) {
    if (a.dot(b) > 0.0) return SpherePath({a, b});
    throw Error(ErrorCode::InvalidArgument, "great-circle arc between antipodal points is not unique");
  }
  return rotation_arc(a, axis, angle, segments);
}

SpherePath rotation_arc(const Vec3& start, const Vec3& axis, double angle, int segments) {
  if (segments < 1) throw Error(ErrorCode::InvalidArgument, "an arc needs at least one segment");
  const Vec3 k = axis.normalized();
  const Vec3 v = start.normalized();
  const Vec3 kxv = k.cross(v);
  const Vec3 along = k * k.dot(v);
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(segments) + 1);
  for (int i = 0; i <= segments; ++i) {
    const double t = angle * static_cast<double>(i) / segments;
    const double c = std::cos(t);
    // Rodrigues: v cos t + (k x v) sin t + k (k.v)(1 - cos t)
    pts.push_back(v * c + kxv * std::sin(t) + along * (1.0 - c));
  }
  return SpherePath(std::move(pts));
}

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) noexcept {
  const double triple = a.dot(b.cross(c));
  const double denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(triple, denom);
}

Unitary2 su2_from_params(const Su2Params& p) {
  const double c = std::cos(p.xi());
  const double s = std::sin(p.xi());
  const Complex ed = std::polar(1.0, p.delta());
  const Complex ez = std::polar(1.0, p.zeta());
  return Unitary2(Matrix2(ed * c, -std::conj(ez) * s, ez * s, std::conj(ed) * c));
}

double total_phase(const Unitary2& u) {
  const Complex a = u(0, 0);
  if (std::abs(a) < kPhaseFloor) {
    throw Error(ErrorCode::UndefinedPhase, "<up|U|up> vanishes; final state orthogonal to initial");
  }
  return wrap_angle(std::arg(a));
}

PhaseDecomposition decompose_phase(const Su2Params& p) {
  const double c2 = std::cos(2.0 * p.xi());
  const double delta = p.delta();
  return {wrap_angle(delta), wrap_angle(delta * c2), wrap_angle(delta * (1.0 - c2))};
}

namespace {

// Smallest value of 1 + r.v over the polygon; near zero means r is close to
// the antipode of some vertex and the fan triangles through r degenerate.
double anchor_clearance(const Vec3& r, const std::vector<Vec3>& verts) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : verts) m = std::min(m, 1.0 + r.dot(v));
  return m;
}

Vec3 choose_anchor(const std::vector<Vec3>& verts) {
  const Vec3& first = verts.front();
  double best_score = anchor_clearance(first, verts);
  if (best_score > 0.25) return first;

  Vec3 best = first;
  auto consider = [&](Vec3 c) {
    const double n = c.norm();
    if (!(n > 1e-9)) return;
    c = c * (1.0 / n);
    const double s = anchor_clearance(c, verts);
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  };

  Vec3 centroid;
  for (const auto& v : verts) centroid = centroid + v;
  consider(centroid);
  for (std::size_t i = 1; i + 1 < verts.size(); ++i) {
    const Vec3 normal = (verts[i] - verts[0]).cross(verts[i + 1] - verts[0]);
    if (normal.norm() > 1e-6) {
      consider(normal);
      consider(-normal);
      break;
    }
  }
  static const Vec3 fixed[] = {{1, 0, 0},  {-1, 0, 0},  {0, 1, 0},   {0, -1, 0},  {0, 0, 1},
                               {0, 0, -1}, {1, 2, 3},   {-3, 1, 2},  {2, -3, 1},  {1, 1, -3},
                               {-2, -1, -1}, {3, -2, -2}, {-1, 3, -2}, {2, 2, 1}};
  for (const auto& c : fixed) consider(c);
  return best;
}

}  // namespace

double solid_angle(const SpherePath& path) {
  std::vector<Vec3> verts = path.points();
  if (verts.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "solid angle needs a path of at least two points");
  }
  const bool closed = (verts.front() - verts.back()).norm() < 1e-12;
  if (closed) {
    verts.pop_back();
  } else if ((verts.front() + verts.back()).norm() < kAntipodalTol) {
    throw Error(ErrorCode::DegenerateClosure, "open path endpoints are antipodal; closing geodesic is ambiguous");
  }
  if (verts.size() < 3) return 0.0;

  const Vec3 anchor = choose_anchor(verts);
  double omega = 0.0;
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i) {
    omega += spherical_triangle_area(anchor, verts[i], verts[(i + 1) % n]);
  }
  // Reduce to (-2pi, 2pi].
  double r = std::remainder(omega, 4.0 * kPi);
  if (r <= -kTwoPi) r += 4.0 * kPi;
  return r;
}

MixedPhase mixed_phase_general(const BlochVector& rho, const Unitary2& u) {
  if (rho.purity() > 1.0 + 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "Bloch vector longer than 1 is not a density operator");
  }
  const Complex tr = (density_matrix(rho) * u.matrix()).trace();
  const double vis = std::abs(tr);
  if (vis < kPhaseFloor) {
    throw Error(ErrorCode::UndefinedPhase, "Tr(rho U) vanishes; mixed-state phase undefined");
  }
  return {wrap_angle(std::arg(tr)), vis};
}

double mixed_phase_theory(double purity, double delta) {
  if (!(purity >= 0.0 && purity <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "purity must lie in [0, 1]");
  }
  const double y = purity * std::sin(delta);
  const double x = std::cos(delta);
  if (std::hypot(x, y) < kPhaseFloor) {
    throw Error(ErrorCode::UndefinedPhase, "maximally mixed input with cos(delta) = 0");
  }
  return wrap_angle(std::atan2(y, x));
}

}  // namespace geophase
