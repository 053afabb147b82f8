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

#include "thinlayer/transport.hpp"

#include "thinlayer/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace thinlayer {

namespace {

using Mat = Eigen::MatrixXcd;
constexpr cdouble kI{0.0, 1.0};

/// Block LU of (E - H - Sigma) for a block-tridiagonal operator with hopping
/// -t I. The stored pivots g_n are the left-connected Green's functions.
class BlockSolver {
 public:
  BlockSolver(const CoupledChannelOperator& op, double energy, const Eigen::VectorXcd& sigma_left,
              const Eigen::VectorXcd& sigma_right)
      : t_(op.hopping()) {
    const int n = op.slices();
    const int b = op.basis.size();
    require(n >= 1, ErrorCode::Validation, "operator has no slices");
    g_.reserve(n);
    for (int s = 0; s < n; ++s) {
      Mat d = -op.onsite[s];
      d.diagonal().array() += energy;
      if (s == 0) d.diagonal() -= sigma_left;
      if (s == n - 1) d.diagonal() -= sigma_right;
      if (s > 0) d -= (t_ * t_) * g_.back();
      Eigen::PartialPivLU<Mat> lu(d);
      Mat inv = lu.inverse();
      if (!inv.allFinite()) {
        std::ostringstream os;
        os << "singular slice matrix at slice " << s << " (E = " << energy << ")";
        raise(ErrorCode::Numerical, os.str());
      }
      g_.push_back(std::move(inv));
    }
    (void)b;
  }

  int slices() const { return static_cast<int>(g_.size()); }

  /// Solves A psi = rhs placed at `slice`; returns psi at every slice.
  std::vector<Mat> solve(int slice, const Mat& rhs) const {
    const int n = slices();
    std::vector<Mat> y(n);
    for (int s = 0; s < n; ++s) {
      if (s < slice) continue;
      y[s] = (s == slice) ? rhs : Mat(-t_ * (g_[s - 1] * y[s - 1]));
    }
    std::vector<Mat> psi(n);
    psi[n - 1] = g_[n - 1] * y[n - 1];
    for (int s = n - 2; s >= 0; --s) {
      Mat rhs_s = -t_ * psi[s + 1];
      if (s >= slice) rhs_s += y[s];
      psi[s] = g_[s] * rhs_s;
    }
    return psi;
  }

 private:
  double t_;
  std::vector<Mat> g_;
};

Mat unit_columns(int rows, const std::vector<int>& idx) {
  Mat m = Mat::Zero(rows, static_cast<Eigen::Index>(idx.size()));
  for (size_t c = 0; c < idx.size(); ++c) m(idx[c], static_cast<Eigen::Index>(c)) = 1.0;
  return m;
}

Mat restrict_rows(const Mat& m, const std::vector<int>& idx) {
  Mat out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (size_t r = 0; r < idx.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(idx[r]);
  return out;
}

struct Normalization {
  std::vector<int> open;
  Eigen::VectorXd root_gamma;  // sqrt(Gamma) per open channel
};

Normalization normalization(const LeadModeSet& leads, const Eigen::VectorXcd& sigma,
                            const SolveOptions& options) {
  Normalization n;
  n.open = leads.open_indices();
  n.root_gamma.resize(static_cast<Eigen::Index>(n.open.size()));
  for (size_t c = 0; c < n.open.size(); ++c) {
    const double gamma = -2.0 * sigma[n.open[c]].imag();
    n.root_gamma[static_cast<Eigen::Index>(c)] = std::sqrt(gamma);
  }
  if (!n.open.empty()) n.root_gamma[0] *= std::sqrt(options.velocity_scale);
  return n;
}

// Fisher-Lee: S_block = -delta + i sqrt(Gamma) G sqrt(Gamma).
Mat fisher_lee(const Mat& g_block, const Eigen::VectorXd& root_gamma, bool reflection) {
  Mat s = kI * (root_gamma.asDiagonal() * g_block * root_gamma.asDiagonal());
  if (reflection) s.diagonal().array() -= 1.0;
  return s;
}

SMatrix assemble_smatrix(double energy, const LeadModeSet& leads, const Normalization& norm,
                         const Mat& g_last_first, const Mat& g_first_first,
                         const Mat& g_first_last, const Mat& g_last_last) {
  SMatrix s;
  s.energy = energy;
  s.leads = leads;
  s.near_threshold = leads.near_threshold;
  for (int i : norm.open) s.open_modes.push_back(leads.modes[i].l);
  s.t = fisher_lee(g_last_first, norm.root_gamma, false);
  s.r = fisher_lee(g_first_first, norm.root_gamma, true);
  s.tp = fisher_lee(g_first_last, norm.root_gamma, false);
  s.rp = fisher_lee(g_last_last, norm.root_gamma, true);
  return s;
}

}  // namespace

Eigen::MatrixXcd SMatrix::full() const {
  const Eigen::Index n = static_cast<Eigen::Index>(open_modes.size());
  Mat m(2 * n, 2 * n);
  m << r, tp, t, rp;
  return m;
}

double SMatrix::unitarity_residual() const {
  if (open_modes.empty()) return 0.0;
  const Mat s = full();
  const Mat d = s.adjoint() * s - Mat::Identity(s.rows(), s.cols());
  return d.cwiseAbs().maxCoeff();
}

double SMatrix::flux_residual() const {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < t.cols(); ++c) {
    worst = std::max(worst, std::abs(t.col(c).squaredNorm() + r.col(c).squaredNorm() - 1.0));
    worst = std::max(worst, std::abs(tp.col(c).squaredNorm() + rp.col(c).squaredNorm() - 1.0));
  }
  return worst;
}

Eigen::VectorXcd lead_self_energy(const LeadModeSet& leads, double dz) {
  const double t = 1.0 / (dz * dz);
  Eigen::VectorXcd sigma(static_cast<Eigen::Index>(leads.modes.size()));
  for (size_t i = 0; i < leads.modes.size(); ++i) {
    const auto& m = leads.modes[i];
    // Outgoing branch only: |lambda| = 1 with Im lambda > 0, or |lambda| <= 1.
    if (std::abs(m.lambda) > 1.0 + 1e-12 || (m.open && m.lambda.imag() <= 0.0)) {
      raise(ErrorCode::Numerical, "lead self-energy picked a growing or incoming branch");
    }
    sigma[static_cast<Eigen::Index>(i)] = -t * m.lambda;
  }
  return sigma;
}

SMatrix rgf_smatrix(const CoupledChannelOperator& op, double energy,
                    const SolveOptions& options) {
  const LeadModeSet leads = lead_modes(energy, op.basis, op.dz, op.include_vg);
  const Eigen::VectorXcd sigma = lead_self_energy(leads, op.dz);
  const Normalization norm = normalization(leads, sigma, options);
  const int b = op.basis.size();
  const int last = op.slices() - 1;

  if (norm.open.empty()) {
    return assemble_smatrix(energy, leads, norm, Mat(), Mat(), Mat(), Mat());
  }

  const BlockSolver solver(op, energy, sigma, sigma);
  const Mat src = unit_columns(b, norm.open);
  const auto from_left = solver.solve(0, src);
  const auto from_right = solver.solve(last, src);
  return assemble_smatrix(energy, leads, norm, restrict_rows(from_left[last], norm.open),
                          restrict_rows(from_left[0], norm.open),
                          restrict_rows(from_right[0], norm.open),
                          restrict_rows(from_right[last], norm.open));
}

SMatrix dense_smatrix(const CoupledChannelOperator& op, double energy) {
  const LeadModeSet leads = lead_modes(energy, op.basis, op.dz, op.include_vg);
  const Eigen::VectorXcd sigma = lead_self_energy(leads, op.dz);
  const Normalization norm = normalization(leads, sigma, {});
  const int b = op.basis.size();
  const int n = op.slices() * b;
  require(n <= 4000, ErrorCode::Validation, "dense S-matrix oracle is limited to small systems");

  Mat a = -Mat(to_sparse(op).toDense());
  a.diagonal().array() += energy;
  a.diagonal().head(b) -= sigma;
  a.diagonal().tail(b) -= sigma;
  const Mat g = a.partialPivLu().inverse();

  const int last = n - b;
  auto block = [&](int row0, int col0) {
    Mat m(static_cast<Eigen::Index>(norm.open.size()), static_cast<Eigen::Index>(norm.open.size()));
    for (size_t i = 0; i < norm.open.size(); ++i)
      for (size_t j = 0; j < norm.open.size(); ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            g(row0 + norm.open[i], col0 + norm.open[j]);
    return m;
  };
  return assemble_smatrix(energy, leads, norm, block(last, 0), block(0, 0), block(0, last),
                          block(last, last));
}

double Conductance::entry(int incident, int outgoing) const {
  auto find = [&](int l) {
    for (size_t i = 0; i < modes.size(); ++i)
      if (modes[i] == l) return static_cast<Eigen::Index>(i);
    return Eigen::Index{-1};
  };
  const auto i = find(incident), j = find(outgoing);
  return (i < 0 || j < 0) ? 0.0 : sigma(i, j);
}

double Conductance::outgoing_into(int l) const {
  double s = 0;
  for (int in : modes) s += entry(in, l);
  return s;
}

double Conductance::injected_from(int l) const {
  double s = 0;
  for (int out : modes) s += entry(l, out);
  return s;
}

Conductance conductance(const SMatrix& s, Direction direction) {
  const Mat& t = direction == Direction::LeftToRight ? s.t : s.tp;
  Conductance c;
  c.modes = s.open_modes;
  // t is (outgoing, incident); sigma is (incident, outgoing).
  c.sigma = t.cwiseAbs2().transpose();
  c.total = c.sigma.sum();
  return c;
}

double polarization(const Conductance& c, int pair) {
  if (!(c.total > 0.0)) {
    raise(ErrorCode::UndefinedPolarization, "polarization is undefined at zero conductance");
  }
  return (c.outgoing_into(pair) - c.outgoing_into(-pair)) / c.total;
}

DensityMap scattering_density(const CoupledChannelOperator& op, double energy, int mode,
                              int theta_points, double lead_padding, Direction direction) {
  require(theta_points >= 2 * op.basis.l_max + 1, ErrorCode::Resolution,
          "density theta grid must resolve every retained mode");
  require(lead_padding >= 0, ErrorCode::Validation, "lead padding must be >= 0");
  const LeadModeSet leads = lead_modes(energy, op.basis, op.dz, op.include_vg);
  const int b = op.basis.size();
  const int inj = op.basis.index(mode);
  const LeadMode& in = leads.modes[inj];
  if (!in.open) {
    std::ostringstream os;
    os << "channel l = " << mode << " is closed at E1 = " << energy << " (threshold "
       << in.offset << ")";
    raise(ErrorCode::ClosedChannel, os.str());
  }
  const Eigen::VectorXcd sigma = lead_self_energy(leads, op.dz);
  const BlockSolver solver(op, energy, sigma, sigma);
  const int last = op.slices() - 1;
  const bool ltr = direction == Direction::LeftToRight;

  Mat src = Mat::Zero(b, 1);
  src(inj, 0) = kI * (-2.0 * sigma[inj].imag());
  const auto psi_region = solver.solve(ltr ? 0 : last, src);

  const int pad = static_cast<int>(std::lround(lead_padding / op.dz));
  const double kdz = in.k * op.dz;
  std::vector<Eigen::VectorXcd> psi;
  std::vector<double> zs;
  psi.reserve(op.slices() + 2 * pad);

  // Left lead, sites -pad..-1 relative to slice 0.
  const Eigen::VectorXcd first = psi_region.front().col(0);
  for (int j = pad; j >= 1; --j) {
    Eigen::VectorXcd v(b);
    for (int m = 0; m < b; ++m) {
      const cdouble decay = std::pow(leads.modes[m].lambda, j);
      if (ltr) {
        const cdouble incident = (m == inj) ? std::polar(1.0, -kdz * j) : cdouble(0);
        const cdouble reflected = first[m] - ((m == inj) ? cdouble(1) : cdouble(0));
        v[m] = incident + reflected * decay;
      } else {
        v[m] = first[m] * decay;
      }
    }
    psi.push_back(v);
    zs.push_back(op.z.front() - j * op.dz);
  }
  for (int s = 0; s <= last; ++s) {
    psi.push_back(psi_region[s].col(0));
    zs.push_back(op.z[s]);
  }
  const Eigen::VectorXcd end = psi_region.back().col(0);
  for (int j = 1; j <= pad; ++j) {
    Eigen::VectorXcd v(b);
    for (int m = 0; m < b; ++m) {
      const cdouble decay = std::pow(leads.modes[m].lambda, j);
      if (ltr) {
        v[m] = end[m] * decay;
      } else {
        const cdouble incident = (m == inj) ? std::polar(1.0, -kdz * j) : cdouble(0);
        const cdouble reflected = end[m] - ((m == inj) ? cdouble(1) : cdouble(0));
        v[m] = incident + reflected * decay;
      }
    }
    psi.push_back(v);
    zs.push_back(op.z.back() + j * op.dz);
  }

  DensityMap map;
  map.z = zs;
  map.incident_velocity = in.velocity;
  map.window_begin = 0.0;
  map.window_end = op.window_length;
  map.theta.resize(theta_points);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  Mat phase(b, theta_points);
  for (int j = 0; j < theta_points; ++j) {
    map.theta[j] = 2.0 * std::numbers::pi * j / theta_points;
    for (int m = 0; m < b; ++m) phase(m, j) = norm * std::polar(1.0, op.basis.mode(m) * map.theta[j]);
  }
  map.density.resize(static_cast<Eigen::Index>(psi.size()), theta_points);
  for (size_t r = 0; r < psi.size(); ++r) {
    const Eigen::RowVectorXcd row = psi[r].transpose() * phase;
    map.density.row(static_cast<Eigen::Index>(r)) = row.cwiseAbs2();
  }
  const double t = op.hopping();
  for (size_t r = 0; r + 1 < psi.size(); ++r) {
    map.current.push_back(2.0 * t * op.dz * psi[r].dot(psi[r + 1]).imag());
  }
  return map;
}

std::vector<double> sweep_energies(const SweepSpec& spec) {
  require(spec.points >= 1, ErrorCode::Validation, "sweep needs at least one energy point");
  if (!(spec.e_max > spec.e_min)) {
    std::ostringstream os;
    os << "empty energy range [" << spec.e_min << ", " << spec.e_max << "]";
    raise(ErrorCode::Validation, os.str());
  }
  std::vector<double> e(spec.points);
  const double h = (spec.e_max - spec.e_min) / spec.points;
  for (int i = 0; i < spec.points; ++i) e[i] = spec.e_min + (i + 0.5) * h;
  return e;
}

double energy_shift(EnergyReference reference, const ChannelBasis& basis, bool include_vg) {
  if (reference == EnergyReference::Raw || !include_vg) return 0.0;
  return cylinder_geometric_potential(basis.radius);
}

double ConductanceCurve::outgoing_into(size_t point, int l) const {
  const auto& p = points[point];
  if (!p.ok) return SweepPoint::nan;
  double s = 0;
  for (size_t j = 0; j < modes.size(); ++j)
    if (modes[j] == l) s += p.sigma.col(static_cast<Eigen::Index>(j)).sum();
  return s;
}

double ConductanceCurve::injected_from(size_t point, int l) const {
  const auto& p = points[point];
  if (!p.ok) return SweepPoint::nan;
  double s = 0;
  for (size_t i = 0; i < modes.size(); ++i)
    if (modes[i] == l) s += p.sigma.row(static_cast<Eigen::Index>(i)).sum();
  return s;
}

namespace {

Eigen::MatrixXd table_sigma(const Conductance& c, const std::vector<int>& modes) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = c.entry(modes[i], modes[j]);
  return m;
}

double max_deviation(const Conductance& a, const Conductance& b, const std::vector<int>& modes) {
  double d = std::abs(a.total - b.total);
  d = std::max(d, (table_sigma(a, modes) - table_sigma(b, modes)).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

ConductanceCurve energy_sweep(const TransportProblem& problem, const SweepSpec& spec) {
  const std::vector<double> energies = sweep_energies(spec);
  const double shift = energy_shift(spec.reference, problem.basis, problem.grid.include_vg);

  GridSpec grid = problem.grid;
  grid.max_energy = spec.e_max + shift;
  const CoupledChannelOperator op =
      assemble_coupled_channel(problem.profile, problem.well, problem.basis, grid);

  std::optional<CoupledChannelOperator> wide, fine;
  if (spec.lmax_check) {
    const int extra = problem.profile.helical() ? problem.profile.helical()->harmonic
                                                : std::max(1, problem.profile.angular_bandwidth().value_or(1));
    GridSpec g = grid;
    g.theta_samples = std::max(grid.theta_samples, 4 * (problem.basis.l_max + extra) + 8);
    wide = assemble_coupled_channel(problem.profile, problem.well,
                                    ChannelBasis(problem.basis.l_max + extra, problem.basis.radius), g);
  }
  if (spec.dz_check) {
    GridSpec g = grid;
    g.dz = op.dz / 2;
    g.region_length = op.window_length;
    g.taper_length = op.taper_length;
    fine = assemble_coupled_channel(problem.profile, problem.well, problem.basis, g);
  }

  ConductanceCurve curve;
  curve.reference = spec.reference;
  curve.direction = spec.direction;
  curve.polarization_pair = spec.polarization_pair;
  curve.energy_shift = shift;
  const double top = spec.e_max + shift;
  for (int l = -problem.basis.l_max; l <= problem.basis.l_max; ++l) {
    if (problem.basis.angular_energy(l) + op.vg < top) curve.modes.push_back(l);
  }
  curve.points.resize(energies.size());

  auto solve_point = [&](size_t i) {
    SweepPoint& p = curve.points[i];
    p.energy = energies[i];
    p.raw_energy = energies[i] + shift;
    try {
      const SMatrix s = rgf_smatrix(op, p.raw_energy);
      const Conductance c = conductance(s, spec.direction);
      p.open_channels = static_cast<int>(s.open_modes.size());
      p.total = c.total;
      p.sigma = table_sigma(c, curve.modes);
      p.unitarity = s.unitarity_residual();
      p.flux = s.flux_residual();
      p.near_threshold = s.near_threshold;
      if (c.total > 0) p.polarization = polarization(c, spec.polarization_pair);
      if (wide) {
        p.lmax_delta = max_deviation(c, conductance(rgf_smatrix(*wide, p.raw_energy), spec.direction),
                                     curve.modes);
      }
      if (fine) {
        p.dz_delta = max_deviation(c, conductance(rgf_smatrix(*fine, p.raw_energy), spec.direction),
                                   curve.modes);
      }
      p.ok = true;
    } catch (const Error& e) {
      p.ok = false;
      p.error = e.what();
    }
  };

  unsigned workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(energies.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < energies.size(); ++i) solve_point(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < energies.size(); i = next++) solve_point(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return curve;
}

}  // namespace thinlayer
