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

#include "thinlayer/geometry.hpp"

#include "thinlayer/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace thinlayer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string point_str(SurfacePoint q) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << q.q1 << ", " << q.q2 << ")";
  return os.str();
}

double wrap(double x, const Axis& a) {
  double t = std::fmod(x - a.min, a.extent());
  if (t < 0) t += a.extent();
  return a.min + t;
}

}  // namespace

SurfaceChart::SurfaceChart(std::string name, PositionMap position, Axis axis1, Axis axis2,
                           JetMap analytic)
    : name_(std::move(name)),
      position_(std::move(position)),
      analytic_(std::move(analytic)),
      axis1_(axis1),
      axis2_(axis2) {
  require(static_cast<bool>(position_), ErrorCode::Validation, "chart needs a position map");
  for (const Axis* a : {&axis1_, &axis2_}) {
    require(std::isfinite(a->min) && std::isfinite(a->max) && a->max > a->min,
            ErrorCode::UnsupportedDomain,
            "chart '" + name_ + "' needs a finite rectangular coordinate box");
  }
  mode_ = analytic_ ? EvalMode::Analytic : EvalMode::FiniteDifference;
  steps_ = {1e-4 * axis1_.extent(), 1e-4 * axis2_.extent()};
}

SurfaceChart SurfaceChart::with_orientation(int sign) const {
  require(sign == 1 || sign == -1, ErrorCode::Validation, "orientation must be +1 or -1");
  SurfaceChart c = *this;
  c.orientation_ = sign;
  return c;
}

SurfaceChart SurfaceChart::with_mode(EvalMode mode) const {
  require(mode == EvalMode::FiniteDifference || has_analytic(), ErrorCode::Validation,
          "chart '" + name_ + "' has no analytic derivatives");
  SurfaceChart c = *this;
  c.mode_ = mode;
  return c;
}

SurfaceChart SurfaceChart::with_steps(double h1, double h2) const {
  SurfaceChart c = *this;
  c.steps_ = {h1, h2};
  return c;
}

bool SurfaceChart::contains(SurfacePoint q) const {
  auto inside = [](double x, const Axis& a) {
    if (!std::isfinite(x)) return false;
    if (a.periodic()) return true;
    const double slack = 1e-12 * a.extent();
    return x >= a.min - slack && x <= a.max + slack;
  };
  return inside(q.q1, axis1_) && inside(q.q2, axis2_);
}

SurfacePoint SurfaceChart::canonical(SurfacePoint q) const {
  require(contains(q), ErrorCode::Domain,
          "point " + point_str(q) + " is outside the domain of chart '" + name_ + "'");
  if (axis1_.periodic()) q.q1 = wrap(q.q1, axis1_);
  if (axis2_.periodic()) q.q2 = wrap(q.q2, axis2_);
  return q;
}

Vec3 SurfaceChart::position(SurfacePoint q) const {
  q = canonical(q);
  return position_(q.q1, q.q2);
}

Jet SurfaceChart::jet(SurfacePoint q) const {
  q = canonical(q);
  if (mode_ == EvalMode::Analytic) return analytic_(q.q1, q.q2);
  return finite_difference_jet(q);
}

Jet SurfaceChart::finite_difference_jet(SurfacePoint q) const {
  const double h1 = steps_[0];
  const double h2 = steps_[1];
  for (auto [h, x] : {std::pair{h1, q.q1}, std::pair{h2, q.q2}}) {
    if (!(h >= 1e-7 * std::max(1.0, std::abs(x)))) {
      std::ostringstream os;
      os << "finite-difference step " << h << " underflows at coordinate " << x
         << " on chart '" << name_ << "'";
      raise(ErrorCode::StepSize, os.str());
    }
  }
  auto p = [&](double a, double b) { return position_(q.q1 + a * h1, q.q2 + b * h2); };
  Jet j;
  j.r = p(0, 0);
  const Vec3 xp = p(1, 0), xm = p(-1, 0), yp = p(0, 1), ym = p(0, -1);
  j.r1 = (xp - xm) / (2 * h1);
  j.r2 = (yp - ym) / (2 * h2);
  j.r11 = (xp - 2 * j.r + xm) / (h1 * h1);
  j.r22 = (yp - 2 * j.r + ym) / (h2 * h2);
  j.r12 = (p(1, 1) - p(1, -1) - p(-1, 1) + p(-1, -1)) / (4 * h1 * h2);
  return j;
}

// --- built-in charts -------------------------------------------------------

SurfaceChart cylinder_chart(double radius, double z_min, double z_max, bool arclength) {
  require(radius > 0, ErrorCode::Validation, "cylinder radius must be positive");
  const double c = arclength ? 1.0 / radius : 1.0;  // theta = c * q1
  auto pos = [radius, c](double q1, double z) -> Vec3 {
    const double t = c * q1;
    return Vec3(radius * std::cos(t), radius * std::sin(t), z);
  };
  auto jet = [radius, c](double q1, double z) {
    const double t = c * q1, ct = std::cos(t), st = std::sin(t);
    Jet j;
    j.r = Vec3(radius * ct, radius * st, z);
    j.r1 = Vec3(-radius * c * st, radius * c * ct, 0);
    j.r2 = Vec3(0, 0, 1);
    j.r11 = Vec3(-radius * c * c * ct, -radius * c * c * st, 0);
    return j;
  };
  const double period = arclength ? kTwoPi * radius : kTwoPi;
  return SurfaceChart(arclength ? "cylinder-arclength" : "cylinder", pos,
                      Axis{0.0, period, Boundary::Periodic},
                      Axis{z_min, z_max, Boundary::Dirichlet}, jet);
}

SurfaceChart sphere_chart(double radius) {
  require(radius > 0, ErrorCode::Validation, "sphere radius must be positive");
  auto pos = [radius](double phi, double th) -> Vec3 {
    return Vec3(radius * std::sin(phi) * std::cos(th), radius * std::sin(phi) * std::sin(th),
                radius * std::cos(phi));
  };
  auto jet = [radius](double phi, double th) {
    const double sp = std::sin(phi), cp = std::cos(phi), st = std::sin(th), ct = std::cos(th);
    Jet j;
    j.r = radius * Vec3(sp * ct, sp * st, cp);
    j.r1 = radius * Vec3(cp * ct, cp * st, -sp);
    j.r2 = radius * Vec3(-sp * st, sp * ct, 0);
    j.r11 = radius * Vec3(-sp * ct, -sp * st, -cp);
    j.r12 = radius * Vec3(-cp * st, cp * ct, 0);
    j.r22 = radius * Vec3(-sp * ct, -sp * st, 0);
    return j;
  };
  return SurfaceChart("sphere", pos, Axis{0.0, std::numbers::pi, Boundary::Natural},
                      Axis{0.0, kTwoPi, Boundary::Periodic}, jet);
}

SurfaceChart torus_chart(double major, double minor) {
  require(minor > 0 && major > minor, ErrorCode::Validation,
          "torus needs major > minor > 0");
  auto pos = [major, minor](double u, double v) -> Vec3 {
    const double w = major + minor * std::cos(v);
    return Vec3(w * std::cos(u), w * std::sin(u), minor * std::sin(v));
  };
  auto jet = [major, minor](double u, double v) {
    const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    const double w = major + minor * cv;
    Jet j;
    j.r = Vec3(w * cu, w * su, minor * sv);
    j.r1 = Vec3(-w * su, w * cu, 0);
    j.r2 = Vec3(-minor * sv * cu, -minor * sv * su, minor * cv);
    j.r11 = Vec3(-w * cu, -w * su, 0);
    j.r12 = Vec3(minor * sv * su, -minor * sv * cu, 0);
    j.r22 = Vec3(-minor * cv * cu, -minor * cv * su, -minor * sv);
    return j;
  };
  return SurfaceChart("torus", pos, Axis{0.0, kTwoPi, Boundary::Periodic},
                      Axis{0.0, kTwoPi, Boundary::Periodic}, jet);
}

SurfaceChart catenoid_chart(double scale, double u_min, double u_max) {
  require(scale > 0, ErrorCode::Validation, "catenoid scale must be positive");
  auto pos = [scale](double u, double v) -> Vec3 {
    return scale * Vec3(std::cosh(u) * std::cos(v), std::cosh(u) * std::sin(v), u);
  };
  auto jet = [scale](double u, double v) {
    const double ch = std::cosh(u), sh = std::sinh(u), cv = std::cos(v), sv = std::sin(v);
    Jet j;
    j.r = scale * Vec3(ch * cv, ch * sv, u);
    j.r1 = scale * Vec3(sh * cv, sh * sv, 1);
    j.r2 = scale * Vec3(-ch * sv, ch * cv, 0);
    j.r11 = scale * Vec3(ch * cv, ch * sv, 0);
    j.r12 = scale * Vec3(-sh * sv, sh * cv, 0);
    j.r22 = scale * Vec3(-ch * cv, -ch * sv, 0);
    return j;
  };
  return SurfaceChart("catenoid", pos, Axis{u_min, u_max, Boundary::Dirichlet},
                      Axis{0.0, kTwoPi, Boundary::Periodic}, jet);
}

SurfaceChart plane_chart(double l1, double l2, double shear, bool periodic) {
  auto pos = [shear](double u, double v) -> Vec3 { return Vec3(u + shear * v, v, 0); };
  auto jet = [shear](double u, double v) {
    Jet j;
    j.r = Vec3(u + shear * v, v, 0);
    j.r1 = Vec3(1, 0, 0);
    j.r2 = Vec3(shear, 1, 0);
    return j;
  };
  const Boundary b = periodic ? Boundary::Periodic : Boundary::Dirichlet;
  return SurfaceChart("plane", pos, Axis{0.0, l1, b}, Axis{0.0, l2, b}, jet);
}

// --- differential geometry ---------------------------------------------------

namespace {

struct Frame {
  Jet jet;
  Mat2 g;
  Vec3 n_raw;  // r1 x r2
  double n_norm = 0;
};

Frame frame(const SurfaceChart& chart, SurfacePoint q) {
  Frame f;
  f.jet = chart.jet(q);
  const Jet& j = f.jet;
  f.g << j.r1.dot(j.r1), j.r1.dot(j.r2), j.r2.dot(j.r1), j.r2.dot(j.r2);
  f.n_raw = j.r1.cross(j.r2);
  f.n_norm = f.n_raw.norm();
  const double det = f.g.determinant();
  const double scale = f.g(0, 0) * f.g(1, 1);
  if (!(det > 1e-12 * scale) || !(scale > 1e-300)) {
    raise(ErrorCode::SingularChart,
          "degenerate parametrization of chart '" + chart.name() + "' at " + point_str(q));
  }
  return f;
}

}  // namespace

Mat2 metric(const SurfaceChart& chart, SurfacePoint q) { return frame(chart, q).g; }

Vec3 unit_normal(const SurfaceChart& chart, SurfacePoint q) {
  const Frame f = frame(chart, q);
  return chart.orientation() * f.n_raw / f.n_norm;
}

double area_element(const SurfaceChart& chart, SurfacePoint q) {
  return std::sqrt(frame(chart, q).g.determinant());
}

CurvatureData curvature(const SurfaceChart& chart, SurfacePoint q) {
  const Frame f = frame(chart, q);
  const Jet& j = f.jet;
  const Vec3 nhat = f.n_raw / f.n_norm;
  const double o = chart.orientation();

  // d_a N for N = o * n / |n| with n = r1 x r2.
  std::array<Vec3, 2> dn = {j.r11.cross(j.r2) + j.r1.cross(j.r12),
                            j.r12.cross(j.r2) + j.r1.cross(j.r22)};
  std::array<Vec3, 2> dN;
  for (int a = 0; a < 2; ++a) dN[a] = o * (dn[a] - nhat * nhat.dot(dn[a])) / f.n_norm;

  // (d_a N) . (d_b r) = alpha_ac g_cb
  const std::array<Vec3, 2> dr = {j.r1, j.r2};
  Mat2 b;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) b(a, c) = dN[a].dot(dr[c]);

  CurvatureData out;
  out.weingarten = b * f.g.inverse();
  out.mean_curvature = 0.5 * out.weingarten.trace();
  out.gaussian_curvature = out.weingarten.determinant();
  for (int a = 0; a < 2; ++a) {
    const Vec3 res = dN[a] - out.weingarten(a, 0) * dr[0] - out.weingarten(a, 1) * dr[1];
    out.residual = std::max(out.residual, res.norm());
  }
  return out;
}

double geometric_potential(const CurvatureData& c) {
  // M^2 - K = ((k1 - k2) / 2)^2 >= 0; clamp roundoff on umbilic points.
  const double split = c.mean_curvature * c.mean_curvature - c.gaussian_curvature;
  return -std::max(split, 0.0);
}

double geometric_potential(const SurfaceChart& chart, SurfacePoint q) {
  return geometric_potential(curvature(chart, q));
}

}  // namespace thinlayer
