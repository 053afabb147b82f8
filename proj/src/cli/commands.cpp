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

#include "thinlayer/commands.hpp"

#include "thinlayer/eigensolver.hpp"
#include "thinlayer/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace thinlayer {

using nlohmann::json;

void Table::add_row(const std::vector<double>& row) {
  if (row.size() != columns.size()) {
    raise(ErrorCode::Numerical, "table row width does not match its header");
  }
  data.insert(data.end(), row.begin(), row.end());
}

void write_csv(const Table& table, std::ostream& out) {
  for (size_t c = 0; c < table.cols(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  char buf[32];
  for (size_t r = 0; r < table.rows(); ++r) {
    for (size_t c = 0; c < table.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", table.at(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

void write_csv(const Table& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::Io, "cannot write '" + path + "'");
  write_csv(table, out);
  if (!out) raise(ErrorCode::Io, "write to '" + path + "' failed");
}

namespace {

constexpr double kPi = std::numbers::pi;

// JSON cannot carry NaN; absent diagnostics become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const char* reference_name(EnergyReference r) {
  return r == EnergyReference::Threshold ? "threshold" : "raw";
}

const char* direction_name(Direction d) {
  return d == Direction::LeftToRight ? "left_to_right" : "right_to_left";
}

json conventions(const ConductanceCurve& curve, bool include_vg) {
  return {
      {"units", "energies in e0, conductance in sigma0 = e^2/h (spinless)"},
      {"energy_reference", reference_name(curve.reference)},
      {"energy_shift", curve.energy_shift},
      {"raw_energy", "E1_raw = E1 + energy_shift"},
      {"include_vg", include_vg},
      {"sigma_index_order", "sigma_<lp>_to_<l> is incident mode lp scattered into outgoing mode l"},
      {"polarization", "P_Lz = sum_lp (sigma_lp_to_p - sigma_lp_to_-p) / sigma"},
      {"polarization_pair", curve.polarization_pair},
      {"direction", direction_name(curve.direction)},
  };
}

}  // namespace

// ---------------------------------------------------------------------------
// curvature

CommandResult run_curvature(const RunConfig& config) {
  CommandResult res;
  res.warnings = validate_config(config);
  const SurfaceChart chart = make_chart(config);
  const Axis& a1 = chart.axis(0);
  const Axis& a2 = chart.axis(1);
  const int n1 = config.curvature.n1, n2 = config.curvature.n2;

  res.table.columns = {"q1", "q2", "M[1/a]", "K[1/a^2]", "V_g[e0]"};
  double vg_min = INFINITY, vg_max = -INFINITY, residual = 0;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const SurfacePoint q{a1.min + (i + 0.5) * a1.extent() / n1,
                           a2.min + (j + 0.5) * a2.extent() / n2};
      CurvatureData cd;
      try {
        cd = curvature(chart, q);
      } catch (const Error& e) {
        std::ostringstream os;
        os << e.what() << " at (q1, q2) = (" << q.q1 << ", " << q.q2 << ")";
        raise(e.code(), os.str());
      }
      const double vg = geometric_potential(cd);
      vg_min = std::min(vg_min, vg);
      vg_max = std::max(vg_max, vg);
      residual = std::max(residual, cd.residual);
      res.table.add_row({q.q1, q.q2, cd.mean_curvature, cd.gaussian_curvature, vg});
    }
  }
  res.summary = {
      {"command", "curvature"},
      {"chart", chart.name()},
      {"orientation", chart.orientation()},
      {"mode", config.chart.mode},
      {"grid", {n1, n2}},
      {"units", "q in chart units (radians for angles, a for lengths), M in 1/a, K in 1/a^2, "
                "V_g in e0"},
      {"vg_min", vg_min},
      {"vg_max", vg_max},
      {"max_weingarten_residual", residual},
  };
  return res;
}

// ---------------------------------------------------------------------------
// spectrum

CommandResult run_spectrum(const RunConfig& config) {
  CommandResult res;
  res.warnings = validate_config(config);
  const auto& sc = config.spectrum;
  std::vector<double> values;
  json detail;
  if (sc.method == "real_space") {
    const RealSpaceOperator op = assemble_2d(make_chart(config), make_profile(config),
                                             make_well(config), RealSpaceGrid{sc.n1, sc.n2});
    values = lowest_eigenvalues(op.matrix, sc.count, op.potential_min(), sc.tol);
    detail = {{"grid", {sc.n1, sc.n2}}, {"unknowns", op.matrix.rows()}};
  } else {
    const TransportProblem p = make_problem(config);
    const CoupledChannelOperator op = assemble_closed_segment(
        p.profile, p.well, p.basis, sc.segment_length, sc.segment_points, p.grid.include_vg,
        p.grid.theta_samples);
    values = lowest_eigenvalues(to_sparse(op), sc.count, op.potential_lower_bound(), sc.tol);
    detail = {{"segment_length", sc.segment_length},
              {"interior_points", sc.segment_points},
              {"l_max", p.basis.l_max},
              {"dz", op.dz}};
  }
  res.table.columns = {"index", "E[e0]"};
  for (size_t i = 0; i < values.size(); ++i) res.table.add_row({double(i), values[i]});
  res.summary = {{"command", "spectrum"},
                 {"method", sc.method},
                 {"chart", config.chart.kind},
                 {"units", "eigenvalues in e0"},
                 {"eigenvalues", values},
                 {"discretization", detail}};
  return res;
}

// ---------------------------------------------------------------------------
// sweep

CommandResult run_sweep(const RunConfig& config) {
  CommandResult res;
  res.warnings = validate_config(config);
  const TransportProblem problem = make_problem(config);
  const SweepSpec spec = make_sweep_spec(config);
  const ConductanceCurve curve = energy_sweep(problem, spec);

  size_t ok = 0;
  for (const auto& p : curve.points) ok += p.ok;
  if (ok == 0) {
    raise(ErrorCode::Numerical,
          "every sweep point failed; first error: " + curve.points.front().error);
  }

  auto& t = res.table;
  t.columns = {"E1[e0]", "E1_raw[e0]", "open_channels", "sigma[sigma0]"};
  for (int lp : curve.modes)
    for (int l : curve.modes)
      t.columns.push_back("sigma_" + std::to_string(lp) + "_to_" + std::to_string(l) + "[sigma0]");
  for (const char* c : {"P_Lz", "unitarity", "flux", "lmax_delta", "dz_delta", "near_threshold"})
    t.columns.push_back(c);

  const size_t n = curve.modes.size();
  const double nan = SweepPoint::nan;
  json failures = json::array();
  for (const auto& p : curve.points) {
    std::vector<double> row = {p.energy, p.raw_energy, p.ok ? double(p.open_channels) : nan,
                               p.total};
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        row.push_back(p.ok ? p.sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))
                           : nan);
    row.insert(row.end(), {p.polarization, p.unitarity, p.flux, p.lmax_delta, p.dz_delta,
                           p.near_threshold ? 1.0 : 0.0});
    t.add_row(row);
    if (!p.ok) failures.push_back({{"energy", p.energy}, {"error", p.error}});
  }

  const auto plateaus = detect_plateaus(curve, config.sweep.plateau_tol,
                                        static_cast<size_t>(config.sweep.plateau_min_points));
  json jp = json::array();
  for (const auto& p : plateaus) {
    jp.push_back({{"level", p.level},
                  {"e_begin", p.e_begin},
                  {"e_end", p.e_end},
                  {"points", p.count()},
                  {"max_deviation", p.max_deviation}});
  }
  json jt = json::array();
  for (const auto& th : detect_thresholds(curve)) {
    jt.push_back({{"channels_above", th.channels},
                  {"estimate", th.estimate},
                  {"bracket", {th.below, th.above}}});
  }
  const double r = problem.basis.radius;
  const bool vg = problem.grid.include_vg;

  WindowCriteria wc;
  const int pair = curve.polarization_pair;
  wc.above = pair * pair / (r * r) + (vg ? cylinder_geometric_potential(r) : 0.0) -
             curve.energy_shift;
  const PolarizedWindow w = find_polarized_window(curve, wc);
  json jw = {{"criteria",
              {{"level", wc.level},
               {"level_tol", wc.level_tol},
               {"min_split", wc.min_split},
               {"min_width", wc.min_width},
               {"above", wc.above}}},
             {"found", w.found}};
  if (w.last >= w.first && (w.found || w.e_end > w.e_begin)) {
    jw["e_begin"] = w.e_begin;
    jw["e_end"] = w.e_end;
    jw["width"] = w.width();
    jw["min_split"] = number(w.min_split);
    jw["max_level_deviation"] = w.max_level_deviation;
  }

  const ConvergenceSummary cs = summarize_convergence(curve);
  res.summary = {
      {"command", "sweep"},
      {"conventions", conventions(curve, vg)},
      {"modes", curve.modes},
      {"l_max", problem.basis.l_max},
      {"points", curve.points.size()},
      {"ok_points", ok},
      {"failures", failures},
      {"plateaus", jp},
      {"thresholds",
       {{"detected", jt},
        {"analytic", analytic_thresholds(curve, r, vg, spec.e_min, spec.e_max)}}},
      {"polarized_window", jw},
      {"convergence",
       {{"max_lmax_delta", number(cs.max_lmax_delta)},
        {"lmax_check_l_max", spec.lmax_check ? json(problem.basis.l_max +
                                                    (problem.profile.helical()
                                                         ? problem.profile.helical()->harmonic
                                                         : std::max(1, problem.profile
                                                                           .angular_bandwidth()
                                                                           .value_or(1))))
                                             : json(nullptr)},
        {"max_dz_delta", number(cs.max_dz_delta)},
        {"max_unitarity_residual", number(cs.max_unitarity)},
        {"max_flux_residual", number(cs.max_flux)},
        {"near_threshold_points", cs.near_threshold_points}}},
  };
  return res;
}

// ---------------------------------------------------------------------------
// density

CommandResult run_density(const RunConfig& config, const double* energy, const int* mode) {
  RunConfig c = config;
  if (energy) c.density.energy = *energy;
  if (mode) c.density.mode = *mode;
  CommandResult res;
  res.warnings = validate_config(c);
  const TransportProblem problem = make_problem(c);
  const EnergyReference ref = parse_reference(c.sweep.reference);
  const Direction dir = parse_direction(c.density.direction);
  const double shift = energy_shift(ref, problem.basis, problem.grid.include_vg);
  const double raw = c.density.energy + shift;
  require(problem.basis.contains(c.density.mode), ErrorCode::Validation,
          "density mode " + std::to_string(c.density.mode) + " is outside the channel basis");

  GridSpec g = problem.grid;
  g.max_energy = raw;
  const CoupledChannelOperator op = assemble_coupled_channel(problem.profile, problem.well,
                                                             problem.basis, g);
  const DensityMap map = scattering_density(op, raw, c.density.mode, c.density.theta_points,
                                            c.density.lead_padding, dir);

  res.table.columns = {"theta", "z[a]", "density"};
  const auto nz = static_cast<Eigen::Index>(map.z.size());
  const auto nt = static_cast<Eigen::Index>(map.theta.size());
  for (Eigen::Index i = 0; i < nz; ++i)
    for (Eigen::Index j = 0; j < nt; ++j)
      res.table.add_row({map.theta[j], map.z[i], map.density(i, j)});

  // Side averages and correlation with the ditch indicator inside the window.
  double trans_sum = 0, refl_sum = 0;
  size_t trans_n = 0, refl_n = 0;
  const bool ltr = dir == Direction::LeftToRight;
  for (Eigen::Index i = 0; i < nz; ++i) {
    const bool after = map.z[i] > map.window_end;
    const bool before = map.z[i] < map.window_begin;
    if (ltr ? after : before) {
      trans_sum += map.density.row(i).sum();
      trans_n += nt;
    } else if (ltr ? before : after) {
      refl_sum += map.density.row(i).sum();
      refl_n += nt;
    }
  }
  double corr = SweepPoint::nan;
  if (op.helical) {
    const double q = op.helical->z_wavenumber();
    const int md = op.helical->harmonic;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, cnt = 0;
    for (Eigen::Index i = 0; i < nz; ++i) {
      if (map.z[i] < map.window_begin || map.z[i] > map.window_end) continue;
      for (Eigen::Index j = 0; j < nt; ++j) {
        const double x = map.density(i, j);
        const double y = std::cos(md * map.theta[j] - q * map.z[i]) > 0 ? 1.0 : 0.0;
        sx += x, sy += y, sxx += x * x, syy += y * y, sxy += x * y, cnt += 1;
      }
    }
    const double cov = sxy / cnt - (sx / cnt) * (sy / cnt);
    const double vx = sxx / cnt - (sx / cnt) * (sx / cnt);
    const double vy = syy / cnt - (sy / cnt) * (sy / cnt);
    if (vx > 0 && vy > 0) corr = cov / std::sqrt(vx * vy);
  }
  double jmin = INFINITY, jmax = -INFINITY;
  for (double j : map.current) jmin = std::min(jmin, j), jmax = std::max(jmax, j);

  res.summary = {
      {"command", "density"},
      {"layout", "long format, rows ordered by z then theta"},
      {"n_theta", nt},
      {"n_z", nz},
      {"energy", c.density.energy},
      {"raw_energy", raw},
      {"energy_reference", reference_name(ref)},
      {"mode", c.density.mode},
      {"direction", direction_name(dir)},
      {"normalization", "incident plane wave has unit amplitude: |psi|^2 = 1/(2 pi) for it alone"},
      {"window", {map.window_begin, map.window_end}},
      {"taper_length", op.taper_length},
      {"dz", op.dz},
      {"incident_velocity", map.incident_velocity},
      {"current", {{"min", number(jmin)}, {"max", number(jmax)}}},
      {"transmitted_fraction", number(0.5 * (jmin + jmax) / map.incident_velocity)},
      {"transmitted_mean_density", number(trans_n ? trans_sum / trans_n : SweepPoint::nan)},
      {"incident_side_mean_density", number(refl_n ? refl_sum / refl_n : SweepPoint::nan)},
      {"ditch_correlation", number(corr)},
  };
  return res;
}

// ---------------------------------------------------------------------------
// selftest

namespace {

struct Check {
  std::string suite;
  std::string name;
  double observed;
  double expected;
  double tolerance;  // absolute
  bool passed;
};

class Report {
 public:
  void add(const std::string& suite, const std::string& name, double observed, double expected,
           double tolerance) {
    const bool ok = std::isfinite(observed) && std::abs(observed - expected) <= tolerance;
    checks_.push_back({suite, name, observed, expected, tolerance, ok});
  }
  void fail(const std::string& suite, const std::string& name, const std::string& why) {
    checks_.push_back({suite, name + ": " + why, SweepPoint::nan, 0.0, 0.0, false});
  }
  const std::vector<Check>& checks() const { return checks_; }

 private:
  std::vector<Check> checks_;
};

void curvature_suite(Report& rep, std::uint32_t faults) {
  const std::string suite = "curvature";
  auto vg_of = [&](const CurvatureData& cd) {
    const double v = geometric_potential(cd);
    return (faults & kFaultFlipVgSign) ? -v : v;
  };
  struct Mode {
    EvalMode mode;
    double tol;
    const char* tag;
  };
  const Mode modes[] = {{EvalMode::Analytic, 1e-12, "analytic"},
                        {EvalMode::FiniteDifference, 1e-6, "fd"}};
  std::mt19937_64 rng(0x5e1f7e57);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (const auto& m : modes) {
    for (double r : {1.0, 2.0}) {
      const SurfaceChart c = cylinder_chart(r).with_mode(m.mode);
      const SurfacePoint q{2 * kPi * unit(rng), -5 + 10 * unit(rng)};
      const CurvatureData cd = curvature(c, q);
      const std::string tag = std::string(m.tag) + " cylinder r=" + std::to_string(int(r));
      rep.add(suite, tag + " |M|", std::abs(cd.mean_curvature), 0.5 / r, m.tol / r);
      rep.add(suite, tag + " K", cd.gaussian_curvature, 0.0, m.tol / (r * r));
      rep.add(suite, tag + " V_g", vg_of(cd), -0.25 / (r * r), m.tol / (r * r));
    }
    for (double r : {1.0, 3.0}) {
      const SurfaceChart c = sphere_chart(r).with_mode(m.mode);
      const SurfacePoint q{0.3 + (kPi - 0.6) * unit(rng), 2 * kPi * unit(rng)};
      const CurvatureData cd = curvature(c, q);
      const std::string tag = std::string(m.tag) + " sphere R=" + std::to_string(int(r));
      rep.add(suite, tag + " |M|", std::abs(cd.mean_curvature), 1.0 / r, m.tol / r);
      rep.add(suite, tag + " K", cd.gaussian_curvature, 1.0 / (r * r), m.tol / (r * r));
      rep.add(suite, tag + " V_g", vg_of(cd), 0.0, m.tol / (r * r));
    }
    {
      const double big = 2.0, small = 0.5;
      const SurfaceChart c = torus_chart(big, small).with_mode(m.mode);
      for (double v : {0.0, 1.0, 2.5}) {
        const CurvatureData cd = curvature(c, {2 * kPi * unit(rng), v});
        const double w = big + small * std::cos(v);
        const double k = std::cos(v) / (small * w);
        const double mm = (big + 2 * small * std::cos(v)) / (2 * small * w);
        const std::string tag = std::string(m.tag) + " torus v=" + std::to_string(v);
        rep.add(suite, tag + " |M|", std::abs(cd.mean_curvature), std::abs(mm), m.tol * 4);
        rep.add(suite, tag + " K", cd.gaussian_curvature, k, m.tol * 4);
        rep.add(suite, tag + " V_g", vg_of(cd), -(mm * mm - k), m.tol * 4);
      }
    }
    {
      const SurfaceChart c = catenoid_chart(1.0).with_mode(m.mode);
      for (double u : {0.0, 0.3}) {
        const CurvatureData cd = curvature(c, {u, 2 * kPi * unit(rng)});
        const double k = -1.0 / std::pow(std::cosh(u), 4);
        const std::string tag = std::string(m.tag) + " catenoid u=" + std::to_string(u);
        rep.add(suite, tag + " M", cd.mean_curvature, 0.0, m.tol);
        rep.add(suite, tag + " V_g", vg_of(cd), k, m.tol);
      }
    }
  }
}

// Exact transmission of the 1D lattice with `sites` barrier sites of height v0,
// by propagating a pure transmitted wave backwards through the barrier.
double lattice_barrier_transmission(double energy, double v0, int sites, double dz) {
  const double t = 1.0 / (dz * dz);
  const double k = 2.0 * std::asin(std::sqrt(energy / (4 * t)));
  using C = std::complex<double>;
  C next = std::polar(1.0, k * (sites + 1));  // psi_{n+1}
  C cur = std::polar(1.0, k * sites);         // psi_n
  for (int n = sites; n >= -1; --n) {
    const double v = (n >= 0 && n < sites) ? v0 : 0.0;
    const C prev = ((2 * t + v - energy) / t) * cur - next;
    next = cur;
    cur = prev;
  }
  // Now cur = psi_{-2}, next = psi_{-1}; split into e^{ikn} and e^{-ikn}.
  const C e1 = std::polar(1.0, -k), e2 = std::polar(1.0, -2 * k);
  const C det = e1 / e2 - e2 / e1;
  const C a = (next / e2 - cur / e1) / det;
  return 1.0 / std::norm(a);
}

void barrier_suite(Report& rep) {
  const std::string suite = "square_barrier";
  const double v0 = 2.0, length = 1.0, e0 = 10.0;
  GridSpec g;
  g.dz = 0.01;
  g.region_length = length;
  g.taper_length = 0.0;
  g.buffer_length = 0.1;
  g.include_vg = false;
  g.max_energy = 4.0;
  g.require_open_channels = false;
  const auto op = assemble_coupled_channel(uniform_profile(v0 / e0),
                                           TransverseWell::from_ground_energy(e0),
                                           ChannelBasis(0, 1.0), g);
  const int sites = static_cast<int>(std::lround(length / op.dz)) + 1;
  for (double e : {0.5, 1.5, 2.5, 3.5}) {
    const SMatrix s = rgf_smatrix(op, e);
    const double observed = std::norm(s.t(0, 0));
    rep.add(suite, "|t|^2 at E=" + std::to_string(e), observed,
            lattice_barrier_transmission(e, v0, sites, op.dz), 1e-6);
  }
}

CoupledChannelOperator small_helical_operator() {
  HelicalSpec hs;
  GridSpec g;
  g.dz = 0.035;
  g.region_length = 1.4;
  g.taper_length = 0.2;
  g.buffer_length = 0.175;
  g.max_energy = 3.5;
  return assemble_coupled_channel(helical_profile(hs), TransverseWell::from_ground_energy(70.0),
                                  ChannelBasis(2, 1.0), g);
}

void dense_suite(Report& rep) {
  const std::string suite = "dense_vs_rgf";
  const auto op = small_helical_operator();
  for (double e : {0.3, 1.2, 2.0, 3.0}) {
    const SMatrix a = rgf_smatrix(op, e);
    const SMatrix b = dense_smatrix(op, e);
    rep.add(suite, "sigma at E=" + std::to_string(e), conductance(a).total,
            conductance(b).total, 1e-10);
    rep.add(suite, "max |S_rgf - S_dense| at E=" + std::to_string(e),
            (a.full() - b.full()).cwiseAbs().maxCoeff(), 0.0, 1e-10);
  }
}

void unitarity_suite(Report& rep, std::uint32_t faults, int samples) {
  const std::string suite = "unitarity";
  SolveOptions opt;
  if (faults & kFaultPerturbVelocity) opt.velocity_scale = 1.05;
  std::mt19937_64 rng(0xb17e5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_u = 0, worst_f = 0;
  int done = 0;
  for (int i = 0; i < samples; ++i) {
    HelicalSpec hs;
    hs.epsilon = 0.01 + 0.19 * u(rng);
    hs.omega = 4 + 8 * u(rng);
    hs.kappa = (u(rng) < 0.5 ? -1 : 1) * (0.3 + 1.7 * u(rng));
    hs.ditch_count = u(rng) < 0.5 ? 1 : 2;
    const double e = 0.1 + 4.4 * u(rng);
    const auto profile = helical_profile(hs);
    const double pitch = 2 * kPi / std::abs(hs.omega * hs.kappa);
    GridSpec g;
    g.dz = std::min(0.02, pitch / 25);
    g.region_pitches = 2;
    g.taper_pitches = 0.5;
    g.buffer_length = 0.2;
    const ChannelBasis basis(default_l_max(profile), 1.0);
    g.max_energy = e + energy_shift(EnergyReference::Threshold, basis, true);
    try {
      const auto op =
          assemble_coupled_channel(profile, TransverseWell::from_ground_energy(70.0), basis, g);
      const SMatrix s = rgf_smatrix(op, g.max_energy, opt);
      worst_u = std::max(worst_u, s.unitarity_residual());
      worst_f = std::max(worst_f, s.flux_residual());
      ++done;
    } catch (const Error& err) {
      rep.fail(suite, "sample " + std::to_string(i), err.what());
    }
  }
  rep.add(suite, "max |S^dagger S - I| over " + std::to_string(done) + " samples", worst_u, 0.0,
          1e-8);
  rep.add(suite, "max flux-sum deviation over " + std::to_string(done) + " samples", worst_f, 0.0,
          1e-8);
}

}  // namespace

CommandResult run_selftest(std::uint32_t faults) {
  Report rep;
  auto guarded = [&](const char* suite, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rep.fail(suite, "suite aborted", e.what());
    }
  };
  guarded("curvature", [&] { curvature_suite(rep, faults); });
  guarded("square_barrier", [&] { barrier_suite(rep); });
  guarded("dense_vs_rgf", [&] { dense_suite(rep); });
  guarded("unitarity", [&] { unitarity_suite(rep, faults, 40); });

  CommandResult res;
  res.table.columns = {"suite", "check", "observed", "expected", "tolerance", "passed"};
  std::vector<std::string> suites;
  json checks = json::array();
  json per_suite = json::object();
  for (size_t i = 0; i < rep.checks().size(); ++i) {
    const Check& c = rep.checks()[i];
    auto it = std::find(suites.begin(), suites.end(), c.suite);
    if (it == suites.end()) {
      suites.push_back(c.suite);
      it = suites.end() - 1;
      per_suite[c.suite] = true;
    }
    res.table.add_row({double(it - suites.begin()), double(i), c.observed, c.expected,
                       c.tolerance, c.passed ? 1.0 : 0.0});
    checks.push_back({{"suite", c.suite},
                      {"check", c.name},
                      {"observed", number(c.observed)},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
    if (!c.passed) {
      per_suite[c.suite] = false;
      res.passed = false;
    }
  }
  res.summary = {{"command", "selftest"},
                 {"faults", faults},
                 {"passed", res.passed},
                 {"suites", per_suite},
                 {"suite_order", suites},
                 {"checks", checks}};
  return res;
}

}  // namespace thinlayer
