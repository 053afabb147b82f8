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

#ifndef THINLAYER_TRANSPORT_HPP
#define THINLAYER_TRANSPORT_HPP

#include "thinlayer/channel_operator.hpp"

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

namespace thinlayer {

enum class Direction { LeftToRight, RightToLeft };

/// Flux-normalized scattering matrix over the open lead channels. Blocks are
/// indexed (outgoing, incident) in the order of `open_modes`.
struct SMatrix {
  double energy = 0.0;  // raw E1
  LeadModeSet leads;
  std::vector<int> open_modes;
  Eigen::MatrixXcd t;   // right <- left
  Eigen::MatrixXcd r;   // left <- left
  Eigen::MatrixXcd tp;  // left <- right
  Eigen::MatrixXcd rp;  // right <- right
  bool near_threshold = false;

  /// [[r, tp], [t, rp]]
  Eigen::MatrixXcd full() const;
  /// max |S^dagger S - I|
  double unitarity_residual() const;
  /// max over incident modes of |sum |t|^2 + |r|^2 - 1|, both leads.
  double flux_residual() const;
};

struct SolveOptions {
  /// Test hook: scales the flux normalization of the first open channel.
  double velocity_scale = 1.0;
};

/// Diagonal retarded self-energy -t lambda_l of a clean semi-infinite lead.
Eigen::VectorXcd lead_self_energy(const LeadModeSet& leads, double dz);

/// Recursive Green's function solve (slice recursion + Fisher-Lee).
SMatrix rgf_smatrix(const CoupledChannelOperator& op, double energy,
                    const SolveOptions& options = {});

/// Same S-matrix from one dense inversion of (E - H - Sigma); small systems only.
SMatrix dense_smatrix(const CoupledChannelOperator& op, double energy);

/// Mode-resolved Landauer conductance in units of e^2/h (spinless).
/// sigma(i, j) is the conductance for incident mode modes[i] scattered into
/// mode modes[j].
struct Conductance {
  std::vector<int> modes;
  Eigen::MatrixXd sigma;
  double total = 0.0;

  double entry(int incident, int outgoing) const;
  /// sum over incident l' of sigma_{l', l}
  double outgoing_into(int l) const;
  /// sum over outgoing l of sigma_{l', l}
  double injected_from(int l) const;
};

Conductance conductance(const SMatrix& s, Direction direction = Direction::LeftToRight);

/// P = sum_{l'} (sigma_{l', p} - sigma_{l', -p}) / sigma for outgoing pair p.
/// Throws UndefinedPolarization when sigma = 0.
double polarization(const Conductance& c, int pair = 1);

struct DensityMap {
  std::vector<double> z;
  std::vector<double> theta;
  /// |psi(theta, z)|^2, rows z, columns theta.
  Eigen::MatrixXd density;
  /// Probability current between consecutive z rows.
  std::vector<double> current;
  double incident_velocity = 0.0;
  double window_begin = 0.0;
  double window_end = 0.0;
};

/// Scattering state for unit-amplitude injection in channel `mode`, sampled on
/// a uniform theta grid; the grid extends `lead_padding` into each lead using
/// the exact lead modes.
DensityMap scattering_density(const CoupledChannelOperator& op, double energy, int mode,
                              int theta_points = 64, double lead_padding = 2.0,
                              Direction direction = Direction::LeftToRight);

enum class EnergyReference {
  Threshold,  // E1 measured from the l = 0 lead threshold
  Raw,        // E1 as it enters H_eff, including V_g when it is included
};

struct SweepSpec {
  double e_min = 0.1;
  double e_max = 4.5;
  int points = 200;
  EnergyReference reference = EnergyReference::Threshold;
  Direction direction = Direction::LeftToRight;
  int polarization_pair = 1;
  int threads = 0;  // 0: hardware concurrency
  bool lmax_check = true;
  bool dz_check = false;
};

/// Midpoint grid e_min + (i + 1/2)(e_max - e_min)/points, which keeps integer
/// thresholds off the grid for the usual ranges.
std::vector<double> sweep_energies(const SweepSpec& spec);

struct SweepPoint {
  static constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  double energy = 0.0;
  double raw_energy = 0.0;
  bool ok = false;
  std::string error;
  int open_channels = 0;
  double total = nan;
  /// Over the curve's table modes, (incident, outgoing).
  Eigen::MatrixXd sigma;
  double polarization = nan;
  double unitarity = nan;
  double flux = nan;
  bool near_threshold = false;
  double lmax_delta = nan;
  double dz_delta = nan;
};

struct ConductanceCurve {
  std::vector<int> modes;
  EnergyReference reference = EnergyReference::Threshold;
  Direction direction = Direction::LeftToRight;
  int polarization_pair = 1;
  /// raw = energy + shift
  double energy_shift = 0.0;
  std::vector<SweepPoint> points;

  double outgoing_into(size_t point, int l) const;
  double injected_from(size_t point, int l) const;
};

struct TransportProblem {
  ConfinementProfile profile;
  TransverseWell well;
  ChannelBasis basis;
  GridSpec grid;
};

/// Solves every energy independently (in parallel); results are ordered by
/// energy and identical regardless of the thread count.
ConductanceCurve energy_sweep(const TransportProblem& problem, const SweepSpec& spec);

/// raw E1 = reference E1 + shift for the given convention.
double energy_shift(EnergyReference reference, const ChannelBasis& basis, bool include_vg);

}  // namespace thinlayer

#endif  // THINLAYER_TRANSPORT_HPP
