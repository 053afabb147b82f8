/*
 * Copyright (c) 2026 The thinlayer Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "thinlayer/confinement.hpp"
#include "thinlayer/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace thinlayer;

namespace {

constexpr double kPi = std::numbers::pi;

HelicalSpec default_spec() {
  HelicalSpec s;
  s.epsilon = 0.1;
  s.omega = 8.0;
  s.kappa = 1.0;
  s.radius = 1.0;
  s.ditch_count = 2;
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Numerical;
}

}  // namespace

TEST(HelicalProfile, DitchCenterAndRidge) {
  const auto s = helical_profile(default_spec());
  EXPECT_EQ(s.kind(), ProfileKind::Helical);
  // m_d theta - q z = 0 is a ditch centre, = pi a ridge.
  EXPECT_NEAR(s(0.0, 0.0), 0.9, 1e-15);
  EXPECT_NEAR(s(kPi / 2, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(s(0.4, 0.4 * 2 / 8.0), 0.9, 1e-14);
}

TEST(HelicalProfile, ZeroEpsilonIsHomogeneous) {
  auto spec = default_spec();
  spec.epsilon = 0.0;
  const auto s = helical_profile(spec);
  EXPECT_EQ(s.kind(), ProfileKind::Homogeneous);
  EXPECT_EQ(s(1.2, 3.4), 1.0);
  ASSERT_TRUE(s.helical().has_value());
}

TEST(HelicalProfile, DenseGridRangeMatchesDirectFormula) {
  const auto spec = default_spec();
  const auto s = helical_profile(spec);
  const auto well = TransverseWell::from_ground_energy(70.0);
  const double q = spec.omega * spec.kappa;
  const double pitch = 2 * kPi / q;
  double lo = INFINITY, hi = -INFINITY, worst = 0;
  for (int i = 0; i < 256; ++i) {
    for (int j = 0; j < 256; ++j) {
      const double th = 2 * kPi * i / 256, z = pitch * j / 256;
      const double direct = (1.0 - 0.1 * (0.5 * std::cos(2 * th - q * z) + 0.5) - 1.0) * 70.0;
      const double v = inhomogeneity_potential(s, well, {th, z});
      worst = std::max(worst, std::abs(v - direct));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  EXPECT_LE(worst, 1e-12);
  EXPECT_NEAR(lo, -7.0, 1e-12);
  EXPECT_NEAR(hi, 0.0, 1e-12);
}

TEST(HelicalProfile, HarmonicRules) {
  auto spec = default_spec();
  spec.rule = HarmonicRule::OmegaRadius;
  EXPECT_EQ(helical_profile(spec).helical()->harmonic, 8);
  spec.omega = 8.3;
  EXPECT_EQ(code_of([&] { helical_profile(spec); }), ErrorCode::Periodicity);
  spec.round_omega_r = true;
  EXPECT_EQ(helical_profile(spec).helical()->harmonic, 8);
  spec.omega = 8.0 + 5e-7;
  spec.round_omega_r = false;
  EXPECT_EQ(helical_profile(spec).helical()->harmonic, 8);
}

TEST(HelicalProfile, Validation) {
  auto spec = default_spec();
  spec.ditch_count = 3;
  EXPECT_EQ(code_of([&] { helical_profile(spec); }), ErrorCode::Validation);
  spec = default_spec();
  spec.epsilon = 0.6;
  EXPECT_EQ(code_of([&] { helical_profile(spec); }), ErrorCode::Validation);
  spec.epsilon = -0.1;
  EXPECT_EQ(code_of([&] { helical_profile(spec); }), ErrorCode::Validation);
}

TEST(TransverseWell, GroundEnergy) {
  EXPECT_EQ(transverse_ground_energy(TransverseWell::from_frequency(140.0)), 70.0);
  EXPECT_EQ(transverse_ground_energy(TransverseWell::from_ground_energy(70.0)), 70.0);
  EXPECT_EQ(transverse_ground_energy(TransverseWell::from_frequency(2.0)), 1.0);
  EXPECT_EQ(code_of([] { TransverseWell::from_frequency(0.0); }), ErrorCode::Validation);
  EXPECT_EQ(code_of([] { TransverseWell::from_ground_energy(-1.0); }), ErrorCode::Validation);
}

TEST(EffectivePotential, DitchCenterOnUnitCylinder) {
  const auto chart = cylinder_chart(1.0);
  const auto well = TransverseWell::from_ground_energy(70.0);
  EXPECT_NEAR(effective_potential(helical_profile(default_spec()), well, chart, {0.0, 0.0}), -7.25,
              1e-13);
  auto flat = default_spec();
  flat.epsilon = 0.0;
  EXPECT_EQ(effective_potential(helical_profile(flat), well, chart, {0.0, 0.0}), -0.25);
  EXPECT_EQ(effective_potential(homogeneous_profile(), well, chart, {1.0, 2.0}),
            geometric_potential(chart, {1.0, 2.0}));
}

TEST(EffectivePotential, GridExtremesAndBounds) {
  const auto chart = cylinder_chart(1.0);
  const auto well = TransverseWell::from_ground_energy(70.0);
  const auto s = helical_profile(default_spec());
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < 128; ++i) {
    for (int j = 0; j < 128; ++j) {
      const SurfacePoint q{2 * kPi * i / 128, 2 * kPi / 8 * j / 128};
      const double v = effective_potential(s, well, chart, q);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      EXPECT_LE(std::abs(inhomogeneity_potential(s, well, q)), 0.1 * 70.0 + 1e-12);
    }
  }
  EXPECT_NEAR(hi, -0.25, 1e-12);
  EXPECT_NEAR(lo, -0.25 - 7.0, 1e-12);
  EXPECT_DOUBLE_EQ((hi - lo) / 70.0, 0.1);
}

TEST(EffectivePotential, ConstantAlongHelices) {
  const auto chart = cylinder_chart(1.0);
  const auto well = TransverseWell::from_ground_energy(70.0);
  for (double kappa : {0.5, 1.0, -2.0}) {
    auto spec = default_spec();
    spec.kappa = kappa;
    const auto s = helical_profile(spec);
    const double q = spec.omega * kappa;
    for (double th0 : {0.0, 0.7, 2.0}) {
      const double v0 = effective_potential(s, well, chart, {th0, 0.0});
      for (double d : {0.1, 0.9, 3.0}) {
        const double v = effective_potential(s, well, chart, {th0 + d, 2 * d / q});
        EXPECT_NEAR(v, v0, 1e-12);
      }
    }
  }
}

TEST(EffectivePotential, LinearInGroundEnergy) {
  const auto chart = cylinder_chart(1.0);
  const auto s = helical_profile(default_spec());
  for (double th : {0.2, 1.9}) {
    const SurfacePoint q{th, 0.37};
    const double a = effective_potential(s, TransverseWell::from_ground_energy(35.0), chart, q);
    const double b = effective_potential(s, TransverseWell::from_ground_energy(70.0), chart, q);
    EXPECT_NEAR(b - a, (s(q) - 1.0) * 35.0, 1e-13);
  }
}

TEST(ValidateProfile, AcceptsHelicalOnCylinderBox) {
  const auto c = cylinder_chart(1.0, 0, 5);
  EXPECT_NO_THROW(validate_profile(helical_profile(default_spec()), c.axis(0), c.axis(1)));
  EXPECT_NO_THROW(validate_profile(homogeneous_profile(), c.axis(0), c.axis(1)));
}

TEST(ValidateProfile, RejectsViolations) {
  const auto c = cylinder_chart(1.0, 0, 5);
  const Axis& a = c.axis(0);
  const Axis& b = c.axis(1);
  // |s - 1| larger than the declared deviation scale.
  EXPECT_EQ(code_of([&] {
              validate_profile(custom_profile(0.05, [](double, double) { return 0.9; }), a, b);
            }),
            ErrorCode::Validation);
  // Nonpositive s.
  EXPECT_EQ(code_of([&] {
              validate_profile(custom_profile(2.0, [](double, double z) { return z - 2.0; }), a, b);
            }),
            ErrorCode::Validation);
  // A step in z is not continuous.
  EXPECT_EQ(code_of([&] {
              validate_profile(custom_profile(0.1, [](double, double z) { return z < 2.0 ? 1.0 : 0.9; }),
                               a, b);
            }),
            ErrorCode::Validation);
  // Not 2 pi periodic in theta.
  EXPECT_EQ(code_of([&] {
              validate_profile(custom_profile(0.2, [](double th, double) { return 1.0 - 0.02 * th; }),
                               a, b);
            }),
            ErrorCode::Periodicity);
}
