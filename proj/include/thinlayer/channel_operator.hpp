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

#ifndef THINLAYER_CHANNEL_OPERATOR_HPP
#define THINLAYER_CHANNEL_OPERATOR_HPP

#include "thinlayer/confinement.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <optional>
#include <vector>

namespace thinlayer {

using cdouble = std::complex<double>;

/// Angular modes e^{i l theta} / sqrt(2 pi), l = -l_max..l_max.
struct ChannelBasis {
  int l_max = 0;
  double radius = 1.0;

  ChannelBasis(int l_max, double radius);

  int size() const { return 2 * l_max + 1; }
  int mode(int index) const { return index - l_max; }
  int index(int l) const;
  bool contains(int l) const { return l >= -l_max && l <= l_max; }
  /// l^2 / r^2
  double angular_energy(int l) const { return static_cast<double>(l) * l / (radius * radius); }
};

/// Default mode cutoff: m_d + 4 for helical profiles, bandwidth + 4 otherwise.
int default_l_max(const ConfinementProfile& profile);

/// Matrix elements <l| (s - 1) E0 |l'> at fixed z, from an FFT of theta samples.
Eigen::MatrixXcd fourier_couplings(const ConfinementProfile& profile, const TransverseWell& well,
                                   const ChannelBasis& basis, double z, int theta_samples = 64);

struct GridSpec {
  double dz = 0.005;
  /// Potential window [0, region_length]; <= 0 means region_pitches helix
  /// pitches, or 10 a when the profile has no helix.
  double region_length = -1.0;
  double region_pitches = 8.0;
  /// Cosine ramp at each window edge; < 0 means taper_pitches pitches.
  double taper_length = -1.0;
  double taper_pitches = 1.0;
  /// Clean slices kept on each side of the window.
  double buffer_length = 0.5;
  int theta_samples = 64;
  bool include_vg = true;
  /// Highest raw energy the operator will be solved at (resolution check).
  double max_energy = 4.5;
  /// Reject a mode cutoff that drops channels open below max_energy. Turn off
  /// only for deliberately truncated models such as a single-channel barrier.
  bool require_open_channels = true;
};

/// Block-tridiagonal discretization of H_eff on the cylinder in the angular
/// mode basis: onsite blocks H_n and hopping -t I between neighbouring slices,
/// t = 1 / dz^2. Slices outside the window are diagonal and equal to the lead.
struct CoupledChannelOperator {
  ChannelBasis basis{0, 1.0};
  double dz = 0.0;
  std::vector<double> z;
  std::vector<Eigen::MatrixXcd> onsite;
  /// l^2 / r^2 + V_g (V_g only when include_vg).
  Eigen::VectorXd lead_offset;
  double vg = 0.0;
  bool include_vg = true;
  double window_length = 0.0;
  double taper_length = 0.0;
  std::optional<HelicalParams> helical;

  double hopping() const { return 1.0 / (dz * dz); }
  int slices() const { return static_cast<int>(z.size()); }
  /// Lower bound on the spectrum of the potential part (kinetic part is PSD).
  double potential_lower_bound() const;
};

/// Window weight in [0, 1] for the inhomogeneity term at z.
double window_weight(double z, double length, double taper);

CoupledChannelOperator assemble_coupled_channel(const ConfinementProfile& profile,
                                                const TransverseWell& well,
                                                const ChannelBasis& basis, const GridSpec& grid);

/// Closed segment z in [0, length] with Dirichlet ends and the potential fully
/// on; interior_points slices at z_n = n * length / (interior_points + 1).
CoupledChannelOperator assemble_closed_segment(const ConfinementProfile& profile,
                                               const TransverseWell& well,
                                               const ChannelBasis& basis, double length,
                                               int interior_points, bool include_vg = true,
                                               int theta_samples = 64);

/// The operator as one sparse Hermitian matrix (Dirichlet outside the grid).
Eigen::SparseMatrix<cdouble> to_sparse(const CoupledChannelOperator& op);

struct LeadMode {
  int l = 0;
  double offset = 0.0;
  /// Lattice momentum; for evanescent modes the decay rate -ln|lambda| / dz.
  double k = 0.0;
  double continuum_k = 0.0;
  /// Outgoing (right-moving or right-decaying) Bloch factor per slice.
  cdouble lambda{0.0, 0.0};
  /// (2 / dz) sin(k dz) for open modes, zero otherwise.
  double velocity = 0.0;
  bool open = false;
};

struct LeadModeSet {
  double energy = 0.0;
  double dz = 0.0;
  bool include_vg = true;
  bool near_threshold = false;
  std::vector<LeadMode> modes;

  std::vector<int> open_indices() const;
};

/// Lead modes at raw energy E1 for clean slices with offsets l^2/r^2 (+ V_g).
/// k is taken from the lattice dispersion so the modes are exact eigenmodes
/// of the discrete operator. Channels exactly at threshold count as closed.
LeadModeSet lead_modes(double energy, const ChannelBasis& basis, double dz, bool include_vg);

/// -1 / (4 r^2)
double cylinder_geometric_potential(double radius);

}  // namespace thinlayer

#endif  // THINLAYER_CHANNEL_OPERATOR_HPP
