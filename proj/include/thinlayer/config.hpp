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

#ifndef THINLAYER_CONFIG_HPP
#define THINLAYER_CONFIG_HPP

#include "thinlayer/analysis.hpp"
#include "thinlayer/real_space.hpp"
#include "thinlayer/transport.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace thinlayer {

// Run configuration. Every field has a default; a config file only needs the
// fields it changes. Lengths are in a, energies in e0, angles in radians.

struct ChartConfig {
  std::string kind = "cylinder";  // cylinder | sphere | torus | catenoid | plane
  double radius = 1.0;            // cylinder and sphere
  double z_min = 0.0;             // cylinder axis range (curvature, spectrum)
  double z_max = 1.0;
  bool arclength = false;
  double major = 2.0;  // torus
  double minor = 0.5;
  double scale = 1.0;  // catenoid
  double u_min = -1.5;
  double u_max = 1.5;
  double l1 = 1.0;  // plane
  double l2 = 1.0;
  double shear = 0.0;
  bool periodic = false;
  std::string mode = "analytic";  // analytic | finite_difference
  int orientation = 1;
  double fd_step_scale = 1e-4;  // step = scale * axis extent
};

struct ProfileConfig {
  std::string kind = "helical";  // helical | homogeneous | uniform | fourier
  double epsilon = 0.1;
  double omega = 8.0;
  double kappa = 1.0;
  int ditch_count = 2;
  std::string harmonic = "ditch_count";  // ditch_count | omega_r
  bool round_omega_r = false;
  double offset = 0.0;  // uniform
  std::vector<FourierTerm> terms;
};

struct WellConfig {
  double e0 = 70.0;
  double hbar_omega = 0.0;  // when > 0, E0 = hbar_omega / 2 overrides e0
};

struct NumericsConfig {
  int l_max = -1;  // < 0: default cutoff
  double dz = 0.005;
  double region_length = -1.0;
  double region_pitches = 8.0;
  double taper_length = -1.0;
  double taper_pitches = 1.0;
  double buffer_length = 0.5;
  int theta_samples = 64;
  bool include_vg = true;
};

struct SweepConfig {
  double e_min = 0.1;
  double e_max = 4.5;
  int points = 200;
  std::string reference = "threshold";      // threshold | raw
  std::string direction = "left_to_right";  // left_to_right | right_to_left
  int polarization_pair = 1;
  int threads = 0;
  bool lmax_check = true;
  bool dz_check = false;
  double plateau_tol = 0.05;
  int plateau_min_points = 10;
};

struct SpectrumConfig {
  std::string method = "real_space";  // real_space | coupled_channel
  int n1 = 64;
  int n2 = 64;
  int count = 10;
  double segment_length = 1.0;  // coupled_channel closed segment
  int segment_points = 99;
  double tol = 1e-8;
};

struct CurvatureGridConfig {
  int n1 = 16;
  int n2 = 16;
};

struct DensityConfig {
  double energy = 1.3;  // in the sweep's energy reference
  int mode = 1;
  int theta_points = 64;
  double lead_padding = 2.0;
  std::string direction = "left_to_right";
};

struct OutputConfig {
  std::string dir = ".";
};

struct RunConfig {
  ChartConfig chart;
  ProfileConfig profile;
  WellConfig well;
  NumericsConfig numerics;
  SweepConfig sweep;
  SpectrumConfig spectrum;
  CurvatureGridConfig curvature;
  DensityConfig density;
  OutputConfig output;

  bool operator==(const RunConfig&) const;
};

/// Parses a config object; unknown keys and ill-typed values are validation
/// errors naming the offending field.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Applies "section.field=value" (value parsed as JSON when possible,
/// otherwise taken as a string).
RunConfig apply_override(const RunConfig& c, const std::string& assignment);

/// Builds every physics object the config describes, which runs all
/// module-level validation. Returns non-fatal warnings.
std::vector<std::string> validate_config(const RunConfig& c);

SurfaceChart make_chart(const RunConfig& c);
ConfinementProfile make_profile(const RunConfig& c);
TransverseWell make_well(const RunConfig& c);
ChannelBasis make_basis(const RunConfig& c, const ConfinementProfile& profile);
GridSpec make_grid(const RunConfig& c);
SweepSpec make_sweep_spec(const RunConfig& c);
TransportProblem make_problem(const RunConfig& c);
Direction parse_direction(const std::string& s);
EnergyReference parse_reference(const std::string& s);

}  // namespace thinlayer

#endif  // THINLAYER_CONFIG_HPP
