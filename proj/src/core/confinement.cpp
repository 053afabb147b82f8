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

#include <cmath>
#include <sstream>

namespace thinlayer {

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Homogeneous: return "homogeneous";
    case ProfileKind::Helical: return "helical";
    case ProfileKind::Custom: return "custom";
  }
  return "unknown";
}

ConfinementProfile::ConfinementProfile(ProfileKind kind, double epsilon, Shape shape)
    : kind_(kind), epsilon_(epsilon), shape_(std::move(shape)) {
  require(static_cast<bool>(shape_), ErrorCode::Validation, "profile needs a shape function");
  require(std::isfinite(epsilon) && epsilon >= 0, ErrorCode::Validation,
          "profile deviation scale epsilon must be finite and non-negative");
}

ConfinementProfile ConfinementProfile::with_helical(HelicalParams p) const {
  ConfinementProfile c = *this;
  c.helical_ = p;
  c.bandwidth_ = p.harmonic;
  return c;
}

ConfinementProfile ConfinementProfile::with_bandwidth(int m) const {
  ConfinementProfile c = *this;
  c.bandwidth_ = m;
  return c;
}

ConfinementProfile helical_profile(const HelicalSpec& spec) {
  std::ostringstream os;
  if (!(spec.epsilon >= 0 && spec.epsilon <= 0.5)) {
    os << "helical profile needs 0 <= epsilon <= 0.5, got " << spec.epsilon;
    raise(ErrorCode::Validation, os.str());
  }
  require(spec.radius > 0, ErrorCode::Validation, "cylinder radius must be positive");
  require(std::isfinite(spec.omega) && spec.omega > 0, ErrorCode::Validation,
          "helical profile needs Omega > 0");
  require(std::isfinite(spec.kappa), ErrorCode::Validation, "kappa must be finite");

  int harmonic = 0;
  if (spec.rule == HarmonicRule::DitchCount) {
    if (spec.ditch_count != 1 && spec.ditch_count != 2) {
      os << "ditch_count must be 1 or 2, got " << spec.ditch_count;
      raise(ErrorCode::Validation, os.str());
    }
    harmonic = spec.ditch_count;
  } else {
    const double w = spec.omega * spec.radius;
    const double nearest = std::round(w);
    if (std::abs(w - nearest) > 1e-6 && !spec.round_omega_r) {
      os << "Omega * r = " << w << " is not an integer; s(theta, z) would not be "
         << "single-valued on the cylinder (set round_omega_r to round it)";
      raise(ErrorCode::Periodicity, os.str());
    }
    harmonic = static_cast<int>(nearest);
    require(harmonic >= 1, ErrorCode::Periodicity, "Omega * r rounds to zero ditches");
  }

  HelicalParams p{spec.epsilon, spec.omega, spec.kappa, spec.radius, harmonic};
  if (spec.epsilon == 0.0) {
    return homogeneous_profile().with_helical(p);
  }
  const double eps = spec.epsilon, q = p.z_wavenumber();
  auto shape = [eps, harmonic, q](double theta, double z) {
    return 1.0 - eps * (0.5 * std::cos(harmonic * theta - q * z) + 0.5);
  };
  return ConfinementProfile(ProfileKind::Helical, eps, shape).with_helical(p);
}

ConfinementProfile homogeneous_profile() {
  return ConfinementProfile(ProfileKind::Homogeneous, 0.0, [](double, double) { return 1.0; })
      .with_bandwidth(0);
}

ConfinementProfile uniform_profile(double offset) {
  require(std::isfinite(offset) && offset > -1.0, ErrorCode::Validation,
          "uniform profile needs 1 + offset > 0");
  if (offset == 0.0) return homogeneous_profile();
  return ConfinementProfile(ProfileKind::Custom, std::abs(offset),
                            [offset](double, double) { return 1.0 + offset; })
      .with_bandwidth(0);
}

ConfinementProfile fourier_profile(std::vector<FourierTerm> terms) {
  double eps = 0;
  int band = 0;
  for (const auto& t : terms) {
    eps += std::abs(t.amplitude);
    band = std::max(band, std::abs(t.m));
  }
  require(eps < 1.0, ErrorCode::Validation, "Fourier profile amplitudes must sum below 1");
  if (eps == 0.0) return homogeneous_profile();
  auto shape = [terms = std::move(terms)](double theta, double z) {
    double s = 1.0;
    for (const auto& t : terms) s += t.amplitude * std::cos(t.m * theta - t.p * z + t.phase);
    return s;
  };
  return ConfinementProfile(ProfileKind::Custom, eps, shape).with_bandwidth(band);
}

ConfinementProfile custom_profile(double epsilon, ConfinementProfile::Shape shape) {
  return ConfinementProfile(ProfileKind::Custom, epsilon, std::move(shape));
}

TransverseWell TransverseWell::from_frequency(double hbar_omega) {
  require(std::isfinite(hbar_omega) && hbar_omega > 0, ErrorCode::Validation,
          "transverse well frequency must be positive");
  return TransverseWell(0.5 * hbar_omega);
}

TransverseWell TransverseWell::from_ground_energy(double e0) {
  require(std::isfinite(e0) && e0 > 0, ErrorCode::Validation,
          "transverse ground energy E0 must be positive");
  return TransverseWell(e0);
}

double transverse_ground_energy(const TransverseWell& well) { return well.ground_energy(); }

void validate_profile(const ConfinementProfile& profile, const Axis& axis1, const Axis& axis2,
                      int samples) {
  require(samples >= 4, ErrorCode::Validation, "need at least 4 samples per axis");
  const double eps = profile.epsilon();
  const double tol = 1e-12 * (1.0 + eps);

  auto coord = [](const Axis& a, int i, int n) {
    return a.min + a.extent() * static_cast<double>(i) / (n - 1);
  };

  auto lipschitz = [&](int n) {
    double worst = 0;
    const double d1 = axis1.extent() / (n - 1), d2 = axis2.extent() / (n - 1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x = coord(axis1, i, n), y = coord(axis2, j, n);
        const double s = profile(x, y);
        if (!(s > 0)) {
          std::ostringstream os;
          os << "confinement profile must stay positive; s(" << x << ", " << y << ") = " << s;
          raise(ErrorCode::Validation, os.str());
        }
        if (std::abs(s - 1.0) > eps + tol) {
          std::ostringstream os;
          os << "|s - 1| = " << std::abs(s - 1.0) << " exceeds epsilon = " << eps << " at ("
             << x << ", " << y << ")";
          raise(ErrorCode::Validation, os.str());
        }
        if (i + 1 < n) worst = std::max(worst, std::abs(profile(x + d1, y) - s) / d1);
        if (j + 1 < n) worst = std::max(worst, std::abs(profile(x, y + d2) - s) / d2);
      }
    }
    return worst;
  };

  const double coarse = lipschitz(samples);
  const double fine = lipschitz(2 * samples);
  // A jump doubles the difference-quotient estimate under refinement.
  if (fine > 1.5 * coarse + 1e-9 * (1.0 + eps)) {
    raise(ErrorCode::Validation, "confinement profile appears discontinuous");
  }

  for (int k = 0; k < samples; ++k) {
    if (axis1.periodic()) {
      const double y = coord(axis2, k, samples);
      if (std::abs(profile(axis1.min, y) - profile(axis1.max, y)) > 1e-10) {
        raise(ErrorCode::Periodicity, "profile does not respect periodicity of the first axis");
      }
    }
    if (axis2.periodic()) {
      const double x = coord(axis1, k, samples);
      if (std::abs(profile(x, axis2.min) - profile(x, axis2.max)) > 1e-10) {
        raise(ErrorCode::Periodicity, "profile does not respect periodicity of the second axis");
      }
    }
  }
}

double inhomogeneity_potential(const ConfinementProfile& profile, const TransverseWell& well,
                               SurfacePoint q) {
  if (profile.kind() == ProfileKind::Homogeneous) return 0.0;
  return (profile(q) - 1.0) * well.ground_energy();
}

double effective_potential(const ConfinementProfile& profile, const TransverseWell& well,
                           const SurfaceChart& chart, SurfacePoint q) {
  const double vg = geometric_potential(chart, q);
  return vg + inhomogeneity_potential(profile, well, chart.canonical(q));
}

}  // namespace thinlayer
