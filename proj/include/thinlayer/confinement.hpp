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

#ifndef THINLAYER_CONFINEMENT_HPP
#define THINLAYER_CONFINEMENT_HPP

#include "thinlayer/geometry.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace thinlayer {

enum class ProfileKind { Homogeneous, Helical, Custom };

const char* to_string(ProfileKind kind);

/// Parameters of the helical ditch corrugation
///   s(theta, z) = 1 - eps * [cos(m_d theta - Omega kappa z) / 2 + 1/2].
/// Ditch centers (s = 1 - eps) follow the helices m_d theta - Omega kappa z = 2 pi j.
struct HelicalParams {
  double epsilon = 0.1;
  double omega = 8.0;
  double kappa = 1.0;
  double radius = 1.0;
  int harmonic = 2;  // m_d: ditches per circumference

  double z_wavenumber() const { return omega * kappa; }
};

/// One term a * cos(m theta - p z + phase) of a custom corrugation.
struct FourierTerm {
  int m = 0;
  double p = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
};

/// Dimensionless confinement morphology s(q1, q2). For cylinder work
/// q1 = theta and q2 = z.
class ConfinementProfile {
 public:
  using Shape = std::function<double(double, double)>;

  ConfinementProfile(ProfileKind kind, double epsilon, Shape shape);

  ProfileKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  double operator()(double q1, double q2) const { return shape_(q1, q2); }
  double operator()(SurfacePoint q) const { return shape_(q.q1, q.q2); }

  /// Set for helical profiles (also kept for the eps = 0 limit so the helix
  /// pitch still defines the scattering window).
  const std::optional<HelicalParams>& helical() const { return helical_; }
  /// Largest |m| of the theta harmonics of s, when known.
  std::optional<int> angular_bandwidth() const { return bandwidth_; }

  ConfinementProfile with_helical(HelicalParams p) const;
  ConfinementProfile with_bandwidth(int m) const;

 private:
  ProfileKind kind_;
  double epsilon_;
  Shape shape_;
  std::optional<HelicalParams> helical_;
  std::optional<int> bandwidth_;
};

enum class HarmonicRule {
  DitchCount,   // m_d = ditch_count, independent of Omega
  OmegaRadius,  // m_d = Omega * r, which must be an integer
};

struct HelicalSpec {
  double epsilon = 0.1;
  double omega = 8.0;
  double kappa = 1.0;
  double radius = 1.0;
  int ditch_count = 2;
  HarmonicRule rule = HarmonicRule::DitchCount;
  bool round_omega_r = false;
};

ConfinementProfile helical_profile(const HelicalSpec& spec);
ConfinementProfile homogeneous_profile();
/// s = 1 + offset everywhere; used for square barriers and wells.
ConfinementProfile uniform_profile(double offset);
/// s = 1 + sum of terms; epsilon is the sum of |amplitude|.
ConfinementProfile fourier_profile(std::vector<FourierTerm> terms);
ConfinementProfile custom_profile(double epsilon, ConfinementProfile::Shape shape);

/// Harmonic transverse well, given by its frequency or directly by E0.
class TransverseWell {
 public:
  static TransverseWell from_frequency(double hbar_omega);
  static TransverseWell from_ground_energy(double e0);

  double ground_energy() const { return e0_; }

 private:
  explicit TransverseWell(double e0) : e0_(e0) {}
  double e0_;
};

/// E0 = hbar omega / 2.
double transverse_ground_energy(const TransverseWell& well);

/// Checks 0 < s, |s - 1| <= eps, periodic identification and a Lipschitz
/// bound on an n x n sample grid over the chart box.
void validate_profile(const ConfinementProfile& profile, const Axis& axis1, const Axis& axis2,
                      int samples = 64);

/// (s - 1) E0
double inhomogeneity_potential(const ConfinementProfile& profile, const TransverseWell& well,
                               SurfacePoint q);
/// V_g + (s - 1) E0
double effective_potential(const ConfinementProfile& profile, const TransverseWell& well,
                           const SurfaceChart& chart, SurfacePoint q);

}  // namespace thinlayer

#endif  // THINLAYER_CONFINEMENT_HPP
