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

#include <gtest/gtest.h>

#include <cmath>

#include "geophase/error.hpp"
#include "test_support.hpp"

namespace geophase {
namespace {

using testing::Rng;

constexpr double kTight = 1e-12;

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(WrapAngle, MapsOntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi), kPi, kTight);
  EXPECT_NEAR(wrap_angle(kTwoPi + 0.3), 0.3, kTight);
  EXPECT_NEAR(wrap_angle(-0.3 - 4 * kPi), -0.3, kTight);
}

TEST(SpinState, NormalizesAndRejectsZero) {
  const SpinState s(3.0, Complex(0.0, 4.0));
  EXPECT_NEAR(std::norm(s.amp_up()) + std::norm(s.amp_down()), 1.0, kTight);
  expect_code(ErrorCode::InvalidArgument, [] { SpinState(0.0, 0.0); });
}

TEST(Su2Params, StoresWrappedAngles) {
  const Su2Params p(kPi + 0.5, -kTwoPi - 0.25, 7.0);
  EXPECT_NEAR(p.xi(), -kPi + 0.5, kTight);
  EXPECT_NEAR(p.delta(), -0.25, kTight);
  EXPECT_NEAR(p.zeta(), 7.0 - kTwoPi, kTight);
}

TEST(Su2FromParams, IdentityAndFlip) {
  EXPECT_LT(su2_from_params({0.0, 0.0, 0.0}).matrix().max_abs_diff(Matrix2::identity()), kTight);
  const Unitary2 flip = su2_from_params({0.5 * kPi, 0.0, 0.0});
  EXPECT_LT(std::abs(flip(0, 0)), kTight);
}

TEST(Su2FromParams, MatchesMatrixExponentialOracle) {
  const Unitary2 u = su2_from_params({0.25 * kPi, kPi / 3, kPi / 5});
  EXPECT_LT(u.matrix().max_abs_diff(testing::su2_oracle(0.25 * kPi, kPi / 3, kPi / 5)), kTight);
  EXPECT_NEAR(std::arg(u(0, 0)), kPi / 3, kTight);

  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double xi = rng.angle(), delta = rng.angle(), zeta = rng.angle();
    const Matrix2 m = su2_from_params({xi, delta, zeta}).matrix();
    ASSERT_LT(m.max_abs_diff(testing::su2_oracle(xi, delta, zeta)), 1e-12) << xi << " " << delta << " " << zeta;
  }
}

TEST(Su2FromParams, UnitaryForRandomParams) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Matrix2 m = su2_from_params({rng.angle(), rng.angle(), rng.angle()}).matrix();
    ASSERT_LT((m.adjoint() * m).max_abs_diff(Matrix2::identity()), kTight);
    ASSERT_NEAR(std::abs(m.det()), 1.0, kTight);
  }
}

TEST(Unitary2, RejectsNonUnitary) {
  expect_code(ErrorCode::InvalidArgument, [] { Unitary2(Matrix2(1.0, 0.0, 0.0, 2.0)); });
}

TEST(Rotation, AgreesWithSeriesAndMovesBlochVector) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const double angle = rng.angle();
    ASSERT_LT(rotation({1, 0, 0}, angle).matrix().max_abs_diff(testing::expm_rotation(testing::kSigmaX, angle)),
              kTight);
    ASSERT_LT(rotation({0, 1, 0}, angle).matrix().max_abs_diff(testing::expm_rotation(testing::kSigmaY, angle)),
              kTight);
  }
  // +z about +x by pi/2 lands on -y.
  const Unitary2 r = rotation({1, 0, 0}, 0.5 * kPi);
  const BlochVector b = bloch_of(r.matrix() * density_matrix({0, 0, 1}) * r.matrix().adjoint());
  EXPECT_NEAR(b.rx, 0.0, kTight);
  EXPECT_NEAR(b.ry, -1.0, kTight);
  EXPECT_NEAR(b.rz, 0.0, kTight);
}

TEST(TotalPhase, Examples) {
  EXPECT_NEAR(total_phase(Unitary2::identity()), 0.0, kTight);
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    EXPECT_NEAR(total_phase(su2_from_params({0.25 * kPi, 0.7, rng.angle()})), 0.7, kTight);
  }
  expect_code(ErrorCode::UndefinedPhase, [] { total_phase(su2_from_params({0.5 * kPi - 1e-13, 0.4, 0.2})); });
}

TEST(DecomposePhase, Examples) {
  auto d = decompose_phase({0.25 * kPi, 0.9, 0.0});
  EXPECT_NEAR(d.geometric, 0.9, kTight);
  EXPECT_NEAR(d.dynamical, 0.0, kTight);
  d = decompose_phase({0.0, 0.9, 0.0});
  EXPECT_NEAR(d.geometric, 0.0, kTight);
  EXPECT_NEAR(d.dynamical, 0.9, kTight);
  d = decompose_phase({kPi / 6, 0.6, 0.0});
  EXPECT_NEAR(d.geometric, 0.3, kTight);
  EXPECT_NEAR(d.dynamical, 0.3, kTight);
}

TEST(DecomposePhase, ComponentsSumToTotalModTwoPi) {
  Rng rng(15);
  for (int i = 0; i < 1000; ++i) {
    const auto d = decompose_phase({rng.angle(), rng.angle(), rng.angle()});
    ASSERT_NEAR(angle_difference(d.dynamical + d.geometric, d.total), 0.0, kTight);
  }
}

// Path of |up> under the evolution with parameters (xi, delta, zeta = -delta):
// down to polar angle 2 xi, then precession through azimuth -2 delta.
SpherePath evolution_path(double xi, double delta, int chords) {
  SpherePath path = great_circle_arc({0, 0, 1}, spherical_point(2 * xi, 0.0), 8);
  std::vector<Vec3> ring;
  ring.reserve(static_cast<std::size_t>(chords) + 1);
  for (int k = 0; k <= chords; ++k) ring.push_back(spherical_point(2 * xi, -2 * delta * k / chords));
  return path.then(SpherePath(std::move(ring)));
}

TEST(DecomposePhase, GeometricPartIsMinusHalfSolidAngle) {
  Rng rng(16);
  for (int i = 0; i < 12; ++i) {
    const double xi = rng.uniform(0.05, 0.5 * kPi - 0.05);
    const double delta = rng.uniform(-kPi, kPi);
    const double omega = solid_angle(evolution_path(xi, delta, 1 << 18));
    const double geometric = decompose_phase({xi, delta, -delta}).geometric;
    EXPECT_NEAR(angle_difference(-0.5 * omega, geometric), 0.0, 1e-9) << "xi=" << xi << " delta=" << delta;
  }
}

TEST(SolidAngle, OctantLoop) {
  const SpherePath octant({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_NEAR(solid_angle(octant), 0.5 * kPi, 1e-12);
  const SpherePath reversed({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  EXPECT_NEAR(solid_angle(reversed), -0.5 * kPi, 1e-12);
}

TEST(SolidAngle, MeridianLune) {
  for (double phi : {0.3, 1.1, -2.0, 3.0}) {
    std::vector<Vec3> pts;
    for (int k = 0; k <= 16; ++k) pts.push_back(spherical_point(kPi * (1.0 - k / 16.0), -0.5 * kPi));
    for (int k = 1; k <= 16; ++k) pts.push_back(spherical_point(kPi * k / 16.0, phi - 0.5 * kPi));
    const double omega = solid_angle(SpherePath(pts));
    EXPECT_NEAR(angle_difference(-0.5 * omega, phi), 0.0, 1e-12) << phi;
  }
}

TEST(SolidAngle, GreatCircleIsHemisphere) {
  std::vector<Vec3> equator;
  for (int k = 0; k < 8; ++k) equator.push_back(spherical_point(0.5 * kPi, kTwoPi * k / 8));
  equator.push_back(equator.front());
  EXPECT_NEAR(std::abs(solid_angle(SpherePath(equator))), kTwoPi, 1e-12);
}

TEST(SolidAngle, SmallCapConverges) {
  // Latitude circle at polar angle theta encloses 2 pi (1 - cos theta).
  const double theta = 0.4;
  std::vector<Vec3> ring;
  for (int k = 0; k <= 4096; ++k) ring.push_back(spherical_point(theta, kTwoPi * k / 4096));
  EXPECT_NEAR(solid_angle(SpherePath(ring)), kTwoPi * (1 - std::cos(theta)), 1e-6);
}

TEST(SolidAngle, DegenerateClosureAndShortPaths) {
  expect_code(ErrorCode::DegenerateClosure, [] { solid_angle(SpherePath({{0, 0, 1}, {1, 0, 0}, {0, 0, -1}})); });
  EXPECT_EQ(solid_angle(SpherePath({{0, 0, 1}, {1, 0, 0}})), 0.0);
  expect_code(ErrorCode::InvalidArgument, [] { SpherePath({{0, 0, 1}, {0, 0, -1}}); });
}

TEST(SolidAngle, SplicingAddsClosureTriangle) {
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    auto random_point = [&] { return spherical_point(std::acos(rng.uniform(-1, 1)), rng.angle()); };
    const Vec3 a = random_point(), b = random_point(), c = random_point(), d = random_point(), e = random_point();
    if ((a + e).norm() < 1e-3 || (a + c).norm() < 1e-3 || (c + e).norm() < 1e-3) continue;
    const SpherePath p1({a, b, c});
    const SpherePath p2({c, d, e});
    const double whole = solid_angle(p1.then(p2));
    const double parts = solid_angle(p1) + solid_angle(p2) + spherical_triangle_area(a, c, e);
    // Areas agree mod 4 pi.
    ASSERT_NEAR(2.0 * angle_difference(0.5 * whole, 0.5 * parts), 0.0, 1e-9);
  }
}

TEST(MixedPhaseGeneral, Examples) {
  EXPECT_NEAR(mixed_phase_general({0, 0, 1}, su2_from_params({0.25 * kPi, 0.7, 1.3})).phase, 0.7, kTight);
  expect_code(ErrorCode::UndefinedPhase,
              [] { mixed_phase_general({0, 0, 0}, su2_from_params({0.0, 0.5 * kPi, 0.0})); });
  const double phase = mixed_phase_general({0, 0, 0.5}, su2_from_params({0.25 * kPi, 0.25 * kPi, 0.0})).phase;
  EXPECT_NEAR(phase, std::atan(0.5), kTight);
  EXPECT_NEAR(phase, 0.46365, 1e-5);
}

TEST(MixedPhaseTheory, Examples) {
  Rng rng(18);
  for (int i = 0; i < 100; ++i) {
    const double d = rng.angle();
    ASSERT_NEAR(mixed_phase_theory(1.0, d), d, kTight);
  }
  EXPECT_NEAR(mixed_phase_theory(0.5, 0.25 * kPi), 0.46365, 1e-5);
  EXPECT_NEAR(mixed_phase_theory(0.0, 0.3), 0.0, kTight);
  expect_code(ErrorCode::UndefinedPhase, [] { mixed_phase_theory(0.0, 0.5 * kPi); });
  expect_code(ErrorCode::InvalidArgument, [] { mixed_phase_theory(1.5, 0.3); });
}

TEST(MixedPhaseTheory, ContinuousThroughQuarterTurn) {
  // arctan(r tan delta) jumps by pi at delta = pi/2; the trace argument does not.
  const double below = mixed_phase_theory(0.3, 0.5 * kPi - 1e-6);
  const double above = mixed_phase_theory(0.3, 0.5 * kPi + 1e-6);
  EXPECT_NEAR(below, above, 1e-5);
}

TEST(MixedPhaseTheory, EqualsTraceOracleForAnyXiZeta) {
  Rng rng(19);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const double r = rng.uniform(0, 1);
    const double xi = rng.uniform(-0.5 * kPi, 0.5 * kPi);
    const double delta = rng.angle(), zeta = rng.angle();
    MixedPhase m;
    try {
      m = mixed_phase_general(BlochVector::along_z(r), su2_from_params({xi, delta, zeta}));
    } catch (const Error&) {
      continue;
    }
    if (m.visibility < 1e-6) continue;
    ASSERT_NEAR(angle_difference(m.phase, mixed_phase_theory(r, delta)), 0.0, 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 1900);
}

TEST(MixedPhaseGeneral, VisibilityNonDecreasingInPurity) {
  Rng rng(20);
  for (int i = 0; i < 200; ++i) {
    const Unitary2 u = su2_from_params({rng.angle(), rng.angle(), rng.angle()});
    double last = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double vis = std::abs((density_matrix(BlochVector::along_z(k / 20.0)) * u.matrix()).trace());
      ASSERT_GE(vis, last - 1e-15);
      last = vis;
    }
  }
}

TEST(BlochVector, DensityRoundTrip) {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const BlochVector b{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    const BlochVector back = bloch_of(density_matrix(b));
    ASSERT_NEAR(back.rx, b.rx, kTight);
    ASSERT_NEAR(back.ry, b.ry, kTight);
    ASSERT_NEAR(back.rz, b.rz, kTight);
  }
  const BlochVector minus_i = BlochVector::of(SpinState(1.0, Complex(0.0, -1.0)));
  EXPECT_NEAR(minus_i.ry, -1.0, kTight);
  EXPECT_NEAR(minus_i.purity(), 1.0, kTight);
}

}  // namespace
}  // namespace geophase
