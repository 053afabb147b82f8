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

#ifndef THINLAYER_GEOMETRY_HPP
#define THINLAYER_GEOMETRY_HPP

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <string>

namespace thinlayer {

// Natural units throughout: hbar = 1, 2m = 1, lengths in a, energies in
// e0 = hbar^2 / (2 m a^2). The kinetic operator is then minus the
// Laplace-Beltrami operator and V_g = -(M^2 - K).

using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

struct SurfacePoint {
  double q1 = 0.0;
  double q2 = 0.0;
};

/// How a coordinate axis ends. Natural axes have a vanishing area element at
/// the ends (sphere poles) and take a zero-flux condition in discretizations.
enum class Boundary { Periodic, Dirichlet, Natural };

struct Axis {
  double min = 0.0;
  double max = 1.0;
  Boundary boundary = Boundary::Dirichlet;

  double extent() const { return max - min; }
  bool periodic() const { return boundary == Boundary::Periodic; }
};

enum class EvalMode { Analytic, FiniteDifference };

/// Position and its first and second coordinate derivatives at one point.
struct Jet {
  Vec3 r = Vec3::Zero();
  Vec3 r1 = Vec3::Zero();
  Vec3 r2 = Vec3::Zero();
  Vec3 r11 = Vec3::Zero();
  Vec3 r12 = Vec3::Zero();
  Vec3 r22 = Vec3::Zero();
};

/// A parametrized surface r(q1, q2) over a rectangular coordinate box.
///
/// Built-in charts carry closed-form derivatives; any chart can also be
/// evaluated by second-order central differences of its position map, with a
/// default step of 1e-4 times the axis extent. Charts are immutable values and
/// safe to evaluate concurrently.
class SurfaceChart {
 public:
  using PositionMap = std::function<Vec3(double, double)>;
  using JetMap = std::function<Jet(double, double)>;

  SurfaceChart(std::string name, PositionMap position, Axis axis1, Axis axis2,
               JetMap analytic = {});

  const std::string& name() const { return name_; }
  const Axis& axis(int i) const { return i == 0 ? axis1_ : axis2_; }
  int orientation() const { return orientation_; }
  EvalMode mode() const { return mode_; }
  bool has_analytic() const { return static_cast<bool>(analytic_); }
  std::array<double, 2> steps() const { return steps_; }

  SurfaceChart with_orientation(int sign) const;
  SurfaceChart with_mode(EvalMode mode) const;
  SurfaceChart with_steps(double h1, double h2) const;

  bool contains(SurfacePoint q) const;
  /// Maps periodic coordinates into [min, max); throws a domain error for
  /// points outside a non-periodic axis.
  SurfacePoint canonical(SurfacePoint q) const;

  Vec3 position(SurfacePoint q) const;
  Jet jet(SurfacePoint q) const;

 private:
  Jet finite_difference_jet(SurfacePoint q) const;

  std::string name_;
  PositionMap position_;
  JetMap analytic_;
  Axis axis1_;
  Axis axis2_;
  int orientation_ = 1;
  EvalMode mode_ = EvalMode::Analytic;
  std::array<double, 2> steps_{};
};

// Built-in charts. Angles are in radians.

/// (theta, z) on a cylinder of radius r, or (r*theta, z) when arclength is set.
SurfaceChart cylinder_chart(double radius, double z_min = -10.0, double z_max = 10.0,
                            bool arclength = false);
/// (polar phi, azimuth theta) on a sphere.
SurfaceChart sphere_chart(double radius);
/// (u, v) = (major angle, minor angle); v = 0 is the outer equator.
SurfaceChart torus_chart(double major, double minor);
/// r(u, v) = c (cosh u cos v, cosh u sin v, u); the unit catenoid has c = 1.
SurfaceChart catenoid_chart(double scale = 1.0, double u_min = -1.5, double u_max = 1.5);
/// Flat chart r(u, v) = (u + shear * v, v, 0) over [0, l1] x [0, l2].
SurfaceChart plane_chart(double l1, double l2, double shear = 0.0, bool periodic = false);

struct CurvatureData {
  Mat2 weingarten = Mat2::Zero();
  double mean_curvature = 0.0;
  double gaussian_curvature = 0.0;
  /// max_a |d_a N - alpha_ab d_b r|
  double residual = 0.0;
};

Mat2 metric(const SurfaceChart& chart, SurfacePoint q);
Vec3 unit_normal(const SurfaceChart& chart, SurfacePoint q);
/// sqrt(det g), the area element.
double area_element(const SurfaceChart& chart, SurfacePoint q);
CurvatureData curvature(const SurfaceChart& chart, SurfacePoint q);
/// -(M^2 - K) in e0; never positive.
double geometric_potential(const SurfaceChart& chart, SurfacePoint q);
double geometric_potential(const CurvatureData& curvature);

}  // namespace thinlayer

#endif  // THINLAYER_GEOMETRY_HPP
