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

// Reference results computed independently of the library: closed forms,
// textbook recursions and quadrature. Nothing here calls into thinlayer.

#ifndef THINLAYER_TESTS_ORACLES_HPP
#define THINLAYER_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

// --- surfaces ---------------------------------------------------------------

struct Curv {
  double abs_mean;
  double gauss;
  double vg() const { return -(abs_mean * abs_mean - gauss); }
};

inline Curv cylinder(double r) { return {0.5 / r, 0.0}; }
inline Curv sphere(double r) { return {1.0 / r, 1.0 / (r * r)}; }

// Torus with tube centre radius R and tube radius rho at minor angle v
// (v = 0 on the outer equator).
inline Curv torus(double big, double rho, double v) {
  const double w = big + rho * std::cos(v);
  return {std::abs(big + 2 * rho * std::cos(v)) / (2 * rho * w), std::cos(v) / (rho * w)};
}

// Catenoid c (cosh u cos v, cosh u sin v, u): minimal, K = -1 / (c^2 cosh^4 u).
inline Curv catenoid(double c, double u) {
  return {0.0, -1.0 / (c * c * std::pow(std::cosh(u), 4))};
}

// --- 1D lattice scattering -------------------------------------------------

// Chebyshev polynomial of the second kind U_n(y) for any real y.
inline double chebyshev_u(int n, double y) {
  if (n < 0) return n == -1 ? 0.0 : -chebyshev_u(-n - 2, y);
  if (std::abs(y) < 1.0) {
    const double th = std::acos(y);
    return std::sin((n + 1) * th) / std::sin(th);
  }
  if (std::abs(y) == 1.0) return (y > 0 ? 1.0 : ((n % 2) ? -1.0 : 1.0)) * (n + 1);
  const double th = std::acosh(std::abs(y));
  const double val = std::sinh((n + 1) * th) / std::sinh(th);
  return (y < 0 && (n % 2)) ? -val : val;
}

// Transmission probability through `sites` consecutive sites of extra onsite
// energy v0 on the chain -t psi_{n-1} + 2t psi_n - t psi_{n+1}, t = 1/dz^2.
// The N-site transfer matrix [[x, -1], [1, 0]]^N has Chebyshev entries.
inline double lattice_barrier(double energy, double v0, int sites, double dz) {
  const double t = 1.0 / (dz * dz);
  const double k = 2.0 * std::asin(std::sqrt(energy / (4 * t)));
  const double y = 0.5 * (2 * t + v0 - energy) / t;
  const int n = sites;
  const double p11 = chebyshev_u(n, y), p12 = -chebyshev_u(n - 1, y);
  const double p21 = chebyshev_u(n - 1, y), p22 = -chebyshev_u(n - 2, y);
  // Unknowns (rho, tau): left wave 1 + rho at site 0, e^{-ik} + rho e^{ik} at -1;
  // right wave tau e^{ikN} at site N and tau e^{ik(N-1)} at N-1.
  const cd em = std::polar(1.0, -k), ep = std::polar(1.0, k);
  Eigen::Matrix2cd a;
  Eigen::Vector2cd b;
  a << p11 + p12 * ep, -std::polar(1.0, k * n), p21 + p22 * ep, -std::polar(1.0, k * (n - 1));
  b << -(p11 + p12 * em), -(p21 + p22 * em);
  const Eigen::Vector2cd x = a.fullPivLu().solve(b);
  return std::norm(x(1));
}

// Continuum square barrier of height v0 and length L for 2m = hbar = 1.
inline double continuum_barrier(double energy, double v0, double length) {
  if (energy > v0) {
    const double q = std::sqrt(energy - v0);
    const double s = std::sin(q * length);
    return 1.0 / (1.0 + v0 * v0 * s * s / (4 * energy * (energy - v0)));
  }
  const double q = std::sqrt(v0 - energy);
  const double s = std::sinh(q * length);
  return 1.0 / (1.0 + v0 * v0 * s * s / (4 * energy * (v0 - energy)));
}

// Surface Green's function of a semi-infinite chain (onsite eps, hopping -t)
// by Sancho-Rubio decimation at E + i eta; returns the lead self-energy t^2 g_s.
inline cd decimation_self_energy(double energy, double eps, double t, double eta) {
  const cd z(energy, eta);
  cd alpha = -t, beta = -t, es = eps, e = eps;
  for (int it = 0; it < 200; ++it) {
    const cd g = 1.0 / (z - e);
    const cd ag = alpha * g, bg = beta * g;
    es += ag * beta;
    e += ag * beta + bg * alpha;
    alpha = ag * alpha;
    beta = bg * beta;
    if (std::abs(alpha) < 1e-300 * t || std::abs(alpha) + std::abs(beta) < 1e-18 * t) break;
  }
  const cd gs = 1.0 / (z - es);
  return t * t * gs;
}

// --- quadrature ------------------------------------------------------------

inline cd simpson_step(const std::function<cd(double)>& f, double a, double b, cd fa, cd fm,
                       cd fb, cd whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const cd flm = f(lm), frm = f(rm);
  const cd left = (m - a) / 6 * (fa + 4.0 * flm + fm);
  const cd right = (b - m) / 6 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline cd adaptive_simpson(const std::function<cd(double)>& f, double a, double b, double tol) {
  const cd fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const cd whole = (b - a) / 6 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

// --- closed spectra --------------------------------------------------------

// Lowest `count` Dirichlet eigenvalues of a rectangle.
inline std::vector<double> box_spectrum(double l1, double l2, int count) {
  std::vector<double> v;
  for (int m = 1; m <= 40; ++m)
    for (int n = 1; n <= 40; ++n) v.push_back(pi * pi * (m * m / (l1 * l1) + n * n / (l2 * l2)));
  std::sort(v.begin(), v.end());
  v.resize(count);
  return v;
}

// Lowest eigenvalues of -Laplacian on a flat torus with metric g (constant).
inline std::vector<double> flat_torus_spectrum(const Eigen::Matrix2d& g, double l1, double l2,
                                               int count) {
  const Eigen::Matrix2d gi = g.inverse();
  std::vector<double> v;
  for (int m = -20; m <= 20; ++m)
    for (int n = -20; n <= 20; ++n) {
      const Eigen::Vector2d k(2 * pi * m / l1, 2 * pi * n / l2);
      v.push_back(k.dot(gi * k));
    }
  std::sort(v.begin(), v.end());
  v.resize(count);
  return v;
}

// Laplace-Beltrami spectrum of the sphere of radius R: Lambda (Lambda + 1) / R^2
// with multiplicity 2 Lambda + 1.
inline std::vector<double> sphere_spectrum(double r, int count) {
  std::vector<double> v;
  for (int l = 0; static_cast<int>(v.size()) < count; ++l)
    for (int m = -l; m <= l && static_cast<int>(v.size()) < count; ++m)
      v.push_back(l * (l + 1) / (r * r));
  return v;
}

// Richardson order estimate from three results at steps h, h/2, h/4.
inline double richardson_order(double coarse, double mid, double fine) {
  return std::log2(std::abs((coarse - mid) / (mid - fine)));
}

}  // namespace oracle

#endif  // THINLAYER_TESTS_ORACLES_HPP
