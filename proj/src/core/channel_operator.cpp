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

#include "thinlayer/channel_operator.hpp"

#include "thinlayer/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace thinlayer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// Fourier coefficients c_m = (1/N) sum_j f(theta_j) e^{-i m theta_j} of a
/// real theta-periodic function, for |m| <= N / 2.
class ThetaTransform {
 public:
  explicit ThetaTransform(int samples) : n_(samples) {
    in_ = static_cast<double*>(fftw_malloc(sizeof(double) * n_));
    out_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n_ / 2 + 1)));
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(n_, in_, out_, FFTW_ESTIMATE);
  }
  ~ThetaTransform() {
    {
      std::lock_guard<std::mutex> lock(fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  ThetaTransform(const ThetaTransform&) = delete;
  ThetaTransform& operator=(const ThetaTransform&) = delete;

  template <class F>
  void transform(F&& f) {
    for (int j = 0; j < n_; ++j) in_[j] = f(kTwoPi * j / n_);
    fftw_execute(plan_);
  }

  cdouble coefficient(int m) const {
    const int a = std::abs(m);
    cdouble c(out_[a][0], out_[a][1]);
    c /= static_cast<double>(n_);
    return m >= 0 ? c : std::conj(c);
  }

 private:
  int n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

void check_theta_samples(const ConfinementProfile& profile, const ChannelBasis& basis,
                         int samples) {
  std::ostringstream os;
  const int band = profile.angular_bandwidth().value_or(2 * basis.l_max);
  int needed = 2 * basis.l_max + band + 1;
  if (profile.helical()) needed = std::max(needed, 8 * profile.helical()->harmonic);
  if (samples < needed) {
    os << "theta sampling too coarse: " << samples << " samples alias the angular "
       << "couplings; need at least " << needed;
    raise(ErrorCode::Resolution, os.str());
  }
}

void fill_couplings(ThetaTransform& fft, const ConfinementProfile& profile, double e0,
                    const ChannelBasis& basis, double z, double weight, Eigen::MatrixXcd& block) {
  fft.transform([&](double theta) { return (profile(theta, z) - 1.0) * e0; });
  const int n = basis.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      block(i, j) += weight * fft.coefficient(basis.mode(i) - basis.mode(j));
}

}  // namespace

ChannelBasis::ChannelBasis(int l_max_, double radius_) : l_max(l_max_), radius(radius_) {
  require(l_max >= 0, ErrorCode::Validation, "mode cutoff l_max must be non-negative");
  require(radius > 0, ErrorCode::Validation, "cylinder radius must be positive");
}

int ChannelBasis::index(int l) const {
  require(contains(l), ErrorCode::Validation,
          "mode l = " + std::to_string(l) + " is outside the retained channel basis");
  return l + l_max;
}

int default_l_max(const ConfinementProfile& profile) {
  if (profile.helical()) return profile.helical()->harmonic + 4;
  return profile.angular_bandwidth().value_or(0) + 4;
}

double cylinder_geometric_potential(double radius) { return -0.25 / (radius * radius); }

Eigen::MatrixXcd fourier_couplings(const ConfinementProfile& profile, const TransverseWell& well,
                                   const ChannelBasis& basis, double z, int theta_samples) {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  if (profile.kind() == ProfileKind::Homogeneous) return v;
  check_theta_samples(profile, basis, theta_samples);
  ThetaTransform fft(theta_samples);
  fill_couplings(fft, profile, well.ground_energy(), basis, z, 1.0, v);
  return v;
}

double window_weight(double z, double length, double taper) {
  if (z < 0.0 || z > length) return 0.0;
  const double edge = std::min(z, length - z);
  if (taper > 0.0 && edge < taper) return 0.5 - 0.5 * std::cos(std::numbers::pi * edge / taper);
  return 1.0;
}

double CoupledChannelOperator::potential_lower_bound() const {
  double bound = std::numeric_limits<double>::infinity();
  const double kinetic = 2.0 * hopping();
  for (const auto& h : onsite) {
    for (int i = 0; i < h.rows(); ++i) {
      double off = 0;
      for (int j = 0; j < h.cols(); ++j)
        if (j != i) off += std::abs(h(i, j));
      bound = std::min(bound, h(i, i).real() - kinetic - off);
    }
  }
  return bound;
}

CoupledChannelOperator assemble_coupled_channel(const ConfinementProfile& profile,
                                                const TransverseWell& well,
                                                const ChannelBasis& basis, const GridSpec& grid) {
  std::ostringstream os;
  require(grid.dz > 0 && std::isfinite(grid.dz), ErrorCode::Validation, "dz must be positive");
  require(grid.buffer_length >= 0, ErrorCode::Validation, "buffer length must be >= 0");

  const auto& helix = profile.helical();
  const double q = helix ? std::abs(helix->z_wavenumber()) : 0.0;
  const double pitch = q > 0 ? kTwoPi / q : 0.0;

  double length = grid.region_length;
  if (length <= 0) length = pitch > 0 ? grid.region_pitches * pitch : 10.0;
  double taper = grid.taper_length;
  if (taper < 0) taper = pitch > 0 ? grid.taper_pitches * pitch : 0.0;
  require(length > 0, ErrorCode::Validation, "scattering window length must be positive");
  if (2 * taper > length) {
    os << "taper length " << taper << " exceeds half the window length " << length;
    raise(ErrorCode::Validation, os.str());
  }

  const double vg = grid.include_vg ? cylinder_geometric_potential(basis.radius) : 0.0;
  const double e0 = well.ground_energy();
  const bool homogeneous = profile.kind() == ProfileKind::Homogeneous;

  // Resolution: shortest local wavelength and helix pitch.
  const double v_min = vg - (homogeneous ? 0.0 : profile.epsilon() * e0);
  const double k_max = std::sqrt(std::max(grid.max_energy - v_min, 0.0));
  if (k_max * grid.dz > 0.2) {
    os << "grid under-resolved: k_max * dz = " << k_max * grid.dz << " > 0.2; need dz <= "
       << 0.2 / k_max;
    raise(ErrorCode::Resolution, os.str());
  }
  if (!homogeneous && pitch > 0 && pitch / grid.dz < 20.0) {
    os << "grid under-resolved: " << pitch / grid.dz << " points per helix pitch (< 20); "
       << "need dz <= " << pitch / 20.0;
    raise(ErrorCode::Resolution, os.str());
  }
  const double top = basis.angular_energy(basis.l_max) + vg;
  if (grid.require_open_channels && top < grid.max_energy) {
    os << "mode cutoff l_max = " << basis.l_max << " drops channels that are open below E1 = "
       << grid.max_energy << "; raise l_max";
    raise(ErrorCode::Validation, os.str());
  }
  if (!homogeneous) check_theta_samples(profile, basis, grid.theta_samples);

  // Window endpoints sit on grid points so the grid is mirror-symmetric.
  const int window_steps = std::max(1, static_cast<int>(std::lround(length / grid.dz)));
  const double dz = length / window_steps;
  const int buffer_steps = static_cast<int>(std::lround(grid.buffer_length / dz));
  const int slices = window_steps + 2 * buffer_steps + 1;

  CoupledChannelOperator op;
  op.basis = basis;
  op.dz = dz;
  op.vg = vg;
  op.include_vg = grid.include_vg;
  op.window_length = length;
  op.taper_length = taper;
  op.helical = helix;
  op.lead_offset.resize(basis.size());
  for (int i = 0; i < basis.size(); ++i) op.lead_offset[i] = basis.angular_energy(basis.mode(i)) + vg;

  const double t = 1.0 / (dz * dz);
  Eigen::MatrixXcd clean = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (int i = 0; i < basis.size(); ++i) clean(i, i) = 2.0 * t + op.lead_offset[i];

  std::optional<ThetaTransform> fft;
  if (!homogeneous) fft.emplace(grid.theta_samples);

  op.z.resize(slices);
  op.onsite.reserve(slices);
  for (int n = 0; n < slices; ++n) {
    const int m = n - buffer_steps;  // steps into the window
    op.z[n] = m * dz;
    Eigen::MatrixXcd block = clean;
    if (!homogeneous && m >= 0 && m <= window_steps) {
      const double edge = std::min(m, window_steps - m) * dz;
      const double w = window_weight(edge, length, taper);
      if (w > 0) fill_couplings(*fft, profile, e0, basis, op.z[n], w, block);
    }
    // Symmetrize away FFT roundoff so blocks are Hermitian to machine precision.
    op.onsite.push_back(0.5 * (block + block.adjoint()));
  }
  return op;
}

CoupledChannelOperator assemble_closed_segment(const ConfinementProfile& profile,
                                               const TransverseWell& well,
                                               const ChannelBasis& basis, double length,
                                               int interior_points, bool include_vg,
                                               int theta_samples) {
  require(length > 0, ErrorCode::Validation, "segment length must be positive");
  require(interior_points >= 1, ErrorCode::Validation, "segment needs interior points");
  const bool homogeneous = profile.kind() == ProfileKind::Homogeneous;
  if (!homogeneous) check_theta_samples(profile, basis, theta_samples);

  CoupledChannelOperator op;
  op.basis = basis;
  op.dz = length / (interior_points + 1);
  op.vg = include_vg ? cylinder_geometric_potential(basis.radius) : 0.0;
  op.include_vg = include_vg;
  op.window_length = length;
  op.helical = profile.helical();
  op.lead_offset.resize(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    op.lead_offset[i] = basis.angular_energy(basis.mode(i)) + op.vg;

  const double t = op.hopping();
  std::optional<ThetaTransform> fft;
  if (!homogeneous) fft.emplace(theta_samples);
  for (int n = 1; n <= interior_points; ++n) {
    const double z = n * op.dz;
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (int i = 0; i < basis.size(); ++i) block(i, i) = 2.0 * t + op.lead_offset[i];
    if (!homogeneous) fill_couplings(*fft, profile, well.ground_energy(), basis, z, 1.0, block);
    op.z.push_back(z);
    op.onsite.push_back(0.5 * (block + block.adjoint()));
  }
  return op;
}

Eigen::SparseMatrix<cdouble> to_sparse(const CoupledChannelOperator& op) {
  const int b = op.basis.size();
  const int n = op.slices();
  std::vector<Eigen::Triplet<cdouble>> trips;
  trips.reserve(static_cast<size_t>(n) * b * (b + 2));
  const double t = op.hopping();
  for (int s = 0; s < n; ++s) {
    const auto& h = op.onsite[s];
    for (int i = 0; i < b; ++i) {
      for (int j = 0; j < b; ++j)
        if (h(i, j) != cdouble(0)) trips.emplace_back(s * b + i, s * b + j, h(i, j));
      if (s + 1 < n) {
        trips.emplace_back(s * b + i, (s + 1) * b + i, -t);
        trips.emplace_back((s + 1) * b + i, s * b + i, -t);
      }
    }
  }
  Eigen::SparseMatrix<cdouble> m(n * b, n * b);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

std::vector<int> LeadModeSet::open_indices() const {
  std::vector<int> out;
  for (size_t i = 0; i < modes.size(); ++i)
    if (modes[i].open) out.push_back(static_cast<int>(i));
  return out;
}

LeadModeSet lead_modes(double energy, const ChannelBasis& basis, double dz, bool include_vg) {
  require(std::isfinite(energy), ErrorCode::Validation, "energy must be finite");
  require(dz > 0, ErrorCode::Validation, "dz must be positive");
  const double vg = include_vg ? cylinder_geometric_potential(basis.radius) : 0.0;
  const double t = 1.0 / (dz * dz);

  LeadModeSet set;
  set.energy = energy;
  set.dz = dz;
  set.include_vg = include_vg;
  for (int i = 0; i < basis.size(); ++i) {
    LeadMode m;
    m.l = basis.mode(i);
    m.offset = basis.angular_energy(m.l) + vg;
    const double de = energy - m.offset;
    if (std::abs(de) < 1e-9) set.near_threshold = true;
    m.continuum_k = std::sqrt(std::abs(de));
    if (de > 0 && de < 4 * t) {
      // E - offset = 2t (1 - cos k dz) = 4t sin^2(k dz / 2)
      const double kdz = 2.0 * std::asin(std::sqrt(de / (4 * t)));
      m.open = true;
      m.k = kdz / dz;
      m.lambda = std::polar(1.0, kdz);
      m.velocity = 2.0 / dz * std::sin(kdz);
    } else if (de <= 0) {
      const double kdz = 2.0 * std::asinh(std::sqrt(-de / (4 * t)));
      m.k = kdz / dz;
      m.lambda = std::exp(-kdz);
    } else {
      // Above the lattice band: alternating decaying branch.
      const double x = 1.0 - de / (2 * t);
      const double lam = x + std::sqrt(x * x - 1.0);
      m.k = -std::log(std::abs(lam)) / dz;
      m.lambda = lam;
    }
    set.modes.push_back(m);
  }
  return set;
}

}  // namespace thinlayer
