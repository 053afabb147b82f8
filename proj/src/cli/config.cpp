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

#include "thinlayer/config.hpp"

#include "thinlayer/error.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace thinlayer {

using nlohmann::json;

namespace {

// Reads typed fields out of one config section and remembers which keys were
// consumed so leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) fail("", "must be an object");
  }

  void read(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) fail(key, "must be a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(key, "must be finite");
    }
  }
  void read(const char* key, int& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) fail(key, "must be an integer");
      out = v->get<int>();
    }
  }
  void read(const char* key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) fail(key, "must be true or false");
      out = v->get<bool>();
    }
  }
  void read(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) fail(key, "must be a string");
      out = v->get<std::string>();
    }
  }
  void read(const char* key, std::vector<FourierTerm>& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_array()) fail(key, "must be an array of {m, p, amplitude, phase}");
    out.clear();
    for (const auto& item : *v) {
      Section s(item, name_ + "." + key + "[]");
      FourierTerm t;
      s.read("m", t.m);
      s.read("p", t.p);
      s.read("amplitude", t.amplitude);
      s.read("phase", t.phase);
      s.finish();
      out.push_back(t);
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(it.key(), "is not a known field");
    }
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::string field = key.empty() ? name_ : name_ + "." + key;
    raise(ErrorCode::Validation, "config field '" + field + "' " + what);
  }

  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

template <class F>
void with_section(const json& root, const char* name, F&& f) {
  auto it = root.find(name);
  if (it == root.end()) return;
  Section s(*it, name);
  f(s);
  s.finish();
}

json terms_to_json(const std::vector<FourierTerm>& terms) {
  json a = json::array();
  for (const auto& t : terms) {
    a.push_back({{"m", t.m}, {"p", t.p}, {"amplitude", t.amplitude}, {"phase", t.phase}});
  }
  return a;
}

void require_choice(const std::string& value, std::initializer_list<const char*> choices,
                    const char* field) {
  std::string list;
  for (const char* c : choices) {
    if (value == c) return;
    list += list.empty() ? c : std::string(" | ") + c;
  }
  raise(ErrorCode::Validation,
        std::string("config field '") + field + "' = '" + value + "' must be one of " + list);
}

}  // namespace

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) raise(ErrorCode::Validation, "config must be a JSON object");
  static const std::set<std::string> known = {"chart",   "profile",  "well",
                                              "numerics", "sweep",   "spectrum",
                                              "curvature", "density", "output", "units"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      raise(ErrorCode::Validation, "config section '" + it.key() + "' is not known");
    }
  }
  RunConfig c;
  with_section(j, "chart", [&](Section& s) {
    auto& x = c.chart;
    s.read("kind", x.kind);
    s.read("radius", x.radius);
    s.read("z_min", x.z_min);
    s.read("z_max", x.z_max);
    s.read("arclength", x.arclength);
    s.read("major", x.major);
    s.read("minor", x.minor);
    s.read("scale", x.scale);
    s.read("u_min", x.u_min);
    s.read("u_max", x.u_max);
    s.read("l1", x.l1);
    s.read("l2", x.l2);
    s.read("shear", x.shear);
    s.read("periodic", x.periodic);
    s.read("mode", x.mode);
    s.read("orientation", x.orientation);
    s.read("fd_step_scale", x.fd_step_scale);
  });
  with_section(j, "profile", [&](Section& s) {
    auto& x = c.profile;
    s.read("kind", x.kind);
    s.read("epsilon", x.epsilon);
    s.read("omega", x.omega);
    s.read("kappa", x.kappa);
    s.read("ditch_count", x.ditch_count);
    s.read("harmonic", x.harmonic);
    s.read("round_omega_r", x.round_omega_r);
    s.read("offset", x.offset);
    s.read("terms", x.terms);
  });
  with_section(j, "well", [&](Section& s) {
    s.read("e0", c.well.e0);
    s.read("hbar_omega", c.well.hbar_omega);
  });
  with_section(j, "numerics", [&](Section& s) {
    auto& x = c.numerics;
    s.read("l_max", x.l_max);
    s.read("dz", x.dz);
    s.read("region_length", x.region_length);
    s.read("region_pitches", x.region_pitches);
    s.read("taper_length", x.taper_length);
    s.read("taper_pitches", x.taper_pitches);
    s.read("buffer_length", x.buffer_length);
    s.read("theta_samples", x.theta_samples);
    s.read("include_vg", x.include_vg);
  });
  with_section(j, "sweep", [&](Section& s) {
    auto& x = c.sweep;
    s.read("e_min", x.e_min);
    s.read("e_max", x.e_max);
    s.read("points", x.points);
    s.read("reference", x.reference);
    s.read("direction", x.direction);
    s.read("polarization_pair", x.polarization_pair);
    s.read("threads", x.threads);
    s.read("lmax_check", x.lmax_check);
    s.read("dz_check", x.dz_check);
    s.read("plateau_tol", x.plateau_tol);
    s.read("plateau_min_points", x.plateau_min_points);
  });
  with_section(j, "spectrum", [&](Section& s) {
    auto& x = c.spectrum;
    s.read("method", x.method);
    s.read("n1", x.n1);
    s.read("n2", x.n2);
    s.read("count", x.count);
    s.read("segment_length", x.segment_length);
    s.read("segment_points", x.segment_points);
    s.read("tol", x.tol);
  });
  with_section(j, "curvature", [&](Section& s) {
    s.read("n1", c.curvature.n1);
    s.read("n2", c.curvature.n2);
  });
  with_section(j, "density", [&](Section& s) {
    auto& x = c.density;
    s.read("energy", x.energy);
    s.read("mode", x.mode);
    s.read("theta_points", x.theta_points);
    s.read("lead_padding", x.lead_padding);
    s.read("direction", x.direction);
  });
  with_section(j, "output", [&](Section& s) { s.read("dir", c.output.dir); });
  // "units" is informational; its content is fixed.
  if (auto it = j.find("units"); it != j.end() && !it->is_string()) {
    raise(ErrorCode::Validation, "config field 'units' must be a string");
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  const auto& ch = c.chart;
  const auto& p = c.profile;
  const auto& n = c.numerics;
  const auto& sw = c.sweep;
  const auto& sp = c.spectrum;
  const auto& d = c.density;
  return {
      {"units", "lengths in a, energies in e0 = hbar^2/(2 m a^2), angles in radians"},
      {"chart",
       {{"kind", ch.kind},       {"radius", ch.radius},   {"z_min", ch.z_min},
        {"z_max", ch.z_max},     {"arclength", ch.arclength}, {"major", ch.major},
        {"minor", ch.minor},     {"scale", ch.scale},     {"u_min", ch.u_min},
        {"u_max", ch.u_max},     {"l1", ch.l1},           {"l2", ch.l2},
        {"shear", ch.shear},     {"periodic", ch.periodic}, {"mode", ch.mode},
        {"orientation", ch.orientation}, {"fd_step_scale", ch.fd_step_scale}}},
      {"profile",
       {{"kind", p.kind},
        {"epsilon", p.epsilon},
        {"omega", p.omega},
        {"kappa", p.kappa},
        {"ditch_count", p.ditch_count},
        {"harmonic", p.harmonic},
        {"round_omega_r", p.round_omega_r},
        {"offset", p.offset},
        {"terms", terms_to_json(p.terms)}}},
      {"well", {{"e0", c.well.e0}, {"hbar_omega", c.well.hbar_omega}}},
      {"numerics",
       {{"l_max", n.l_max},
        {"dz", n.dz},
        {"region_length", n.region_length},
        {"region_pitches", n.region_pitches},
        {"taper_length", n.taper_length},
        {"taper_pitches", n.taper_pitches},
        {"buffer_length", n.buffer_length},
        {"theta_samples", n.theta_samples},
        {"include_vg", n.include_vg}}},
      {"sweep",
       {{"e_min", sw.e_min},
        {"e_max", sw.e_max},
        {"points", sw.points},
        {"reference", sw.reference},
        {"direction", sw.direction},
        {"polarization_pair", sw.polarization_pair},
        {"threads", sw.threads},
        {"lmax_check", sw.lmax_check},
        {"dz_check", sw.dz_check},
        {"plateau_tol", sw.plateau_tol},
        {"plateau_min_points", sw.plateau_min_points}}},
      {"spectrum",
       {{"method", sp.method},
        {"n1", sp.n1},
        {"n2", sp.n2},
        {"count", sp.count},
        {"segment_length", sp.segment_length},
        {"segment_points", sp.segment_points},
        {"tol", sp.tol}}},
      {"curvature", {{"n1", c.curvature.n1}, {"n2", c.curvature.n2}}},
      {"density",
       {{"energy", d.energy},
        {"mode", d.mode},
        {"theta_points", d.theta_points},
        {"lead_padding", d.lead_padding},
        {"direction", d.direction}}},
      {"output", {{"dir", c.output.dir}}},
  };
}

bool RunConfig::operator==(const RunConfig& other) const {
  return config_to_json(*this) == config_to_json(other);
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::Validation, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::Io, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunConfig apply_override(const RunConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    raise(ErrorCode::Validation, "override '" + assignment + "' must look like section.field=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json j = config_to_json(c);
  json* node = &j;
  std::stringstream parts(key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) path.push_back(part);
  if (path.size() != 2) {
    raise(ErrorCode::Validation, "override key '" + key + "' must be section.field");
  }
  if (!node->contains(path[0]) || !(*node)[path[0]].contains(path[1])) {
    raise(ErrorCode::Validation, "override key '" + key + "' is not a known field");
  }
  (*node)[path[0]][path[1]] = value;
  return config_from_json(j);
}

Direction parse_direction(const std::string& s) {
  require_choice(s, {"left_to_right", "right_to_left"}, "direction");
  return s == "left_to_right" ? Direction::LeftToRight : Direction::RightToLeft;
}

EnergyReference parse_reference(const std::string& s) {
  require_choice(s, {"threshold", "raw"}, "sweep.reference");
  return s == "threshold" ? EnergyReference::Threshold : EnergyReference::Raw;
}

SurfaceChart make_chart(const RunConfig& c) {
  const auto& x = c.chart;
  require_choice(x.kind, {"cylinder", "sphere", "torus", "catenoid", "plane"}, "chart.kind");
  require_choice(x.mode, {"analytic", "finite_difference"}, "chart.mode");
  require(x.orientation == 1 || x.orientation == -1, ErrorCode::Validation,
          "config field 'chart.orientation' must be +1 or -1");
  require(x.fd_step_scale > 0 && x.fd_step_scale < 0.1, ErrorCode::Validation,
          "config field 'chart.fd_step_scale' must be in (0, 0.1)");
  auto positive = [](double v, const char* field) {
    require(v > 0, ErrorCode::Validation, std::string("config field '") + field + "' must be > 0");
  };

  SurfaceChart chart = [&] {
    if (x.kind == "cylinder") {
      positive(x.radius, "chart.radius");
      return cylinder_chart(x.radius, x.z_min, x.z_max, x.arclength);
    }
    if (x.kind == "sphere") {
      positive(x.radius, "chart.radius");
      return sphere_chart(x.radius);
    }
    if (x.kind == "torus") {
      positive(x.minor, "chart.minor");
      require(x.major > x.minor, ErrorCode::Validation,
              "config field 'chart.major' must exceed chart.minor");
      return torus_chart(x.major, x.minor);
    }
    if (x.kind == "catenoid") {
      positive(x.scale, "chart.scale");
      return catenoid_chart(x.scale, x.u_min, x.u_max);
    }
    positive(x.l1, "chart.l1");
    positive(x.l2, "chart.l2");
    return plane_chart(x.l1, x.l2, x.shear, x.periodic);
  }();

  chart = chart.with_orientation(x.orientation);
  if (x.mode == "finite_difference") {
    chart = chart.with_mode(EvalMode::FiniteDifference)
                .with_steps(x.fd_step_scale * chart.axis(0).extent(),
                            x.fd_step_scale * chart.axis(1).extent());
  }
  return chart;
}

ConfinementProfile make_profile(const RunConfig& c) {
  const auto& p = c.profile;
  require_choice(p.kind, {"helical", "homogeneous", "uniform", "fourier"}, "profile.kind");
  if (p.kind == "homogeneous") return homogeneous_profile();
  if (p.kind == "uniform") return uniform_profile(p.offset);
  if (p.kind == "fourier") return fourier_profile(p.terms);
  require_choice(p.harmonic, {"ditch_count", "omega_r"}, "profile.harmonic");
  HelicalSpec spec;
  spec.epsilon = p.epsilon;
  spec.omega = p.omega;
  spec.kappa = p.kappa;
  spec.radius = c.chart.radius;
  spec.ditch_count = p.ditch_count;
  spec.rule = p.harmonic == "omega_r" ? HarmonicRule::OmegaRadius : HarmonicRule::DitchCount;
  spec.round_omega_r = p.round_omega_r;
  return helical_profile(spec);
}

TransverseWell make_well(const RunConfig& c) {
  if (c.well.hbar_omega != 0.0) return TransverseWell::from_frequency(c.well.hbar_omega);
  return TransverseWell::from_ground_energy(c.well.e0);
}

ChannelBasis make_basis(const RunConfig& c, const ConfinementProfile& profile) {
  const double r = c.chart.radius;
  if (c.numerics.l_max >= 0) return ChannelBasis(c.numerics.l_max, r);
  // Default cutoff, raised if needed so every channel open in the sweep is kept.
  const double vg = c.numerics.include_vg ? cylinder_geometric_potential(r) : 0.0;
  const double shift =
      energy_shift(parse_reference(c.sweep.reference), ChannelBasis(0, r), c.numerics.include_vg);
  const double top = std::max(c.sweep.e_max, c.density.energy) + shift - vg;
  const int needed = top > 0 ? static_cast<int>(std::ceil(r * std::sqrt(top))) + 1 : 1;
  return ChannelBasis(std::max(default_l_max(profile), needed), r);
}

GridSpec make_grid(const RunConfig& c) {
  const auto& n = c.numerics;
  GridSpec g;
  g.dz = n.dz;
  g.region_length = n.region_length;
  g.region_pitches = n.region_pitches;
  g.taper_length = n.taper_length;
  g.taper_pitches = n.taper_pitches;
  g.buffer_length = n.buffer_length;
  g.theta_samples = n.theta_samples;
  g.include_vg = n.include_vg;
  require(n.region_pitches > 0, ErrorCode::Validation,
          "config field 'numerics.region_pitches' must be > 0");
  require(n.taper_pitches >= 0, ErrorCode::Validation,
          "config field 'numerics.taper_pitches' must be >= 0");
  return g;
}

SweepSpec make_sweep_spec(const RunConfig& c) {
  const auto& s = c.sweep;
  SweepSpec spec;
  spec.e_min = s.e_min;
  spec.e_max = s.e_max;
  spec.points = s.points;
  spec.reference = parse_reference(s.reference);
  spec.direction = parse_direction(s.direction);
  spec.polarization_pair = s.polarization_pair;
  spec.threads = s.threads;
  spec.lmax_check = s.lmax_check;
  spec.dz_check = s.dz_check;
  require(s.points >= 1, ErrorCode::Validation, "config field 'sweep.points' must be >= 1");
  if (!(s.e_max > s.e_min)) {
    std::ostringstream os;
    os << "config fields 'sweep.e_min' = " << s.e_min << " and 'sweep.e_max' = " << s.e_max
       << " give an empty energy range";
    raise(ErrorCode::Validation, os.str());
  }
  require(s.polarization_pair >= 1, ErrorCode::Validation,
          "config field 'sweep.polarization_pair' must be >= 1");
  require(s.threads >= 0, ErrorCode::Validation, "config field 'sweep.threads' must be >= 0");
  require(s.plateau_tol > 0, ErrorCode::Validation, "config field 'sweep.plateau_tol' must be > 0");
  require(s.plateau_min_points >= 1, ErrorCode::Validation,
          "config field 'sweep.plateau_min_points' must be >= 1");
  return spec;
}

TransportProblem make_problem(const RunConfig& c) {
  if (c.chart.kind != "cylinder" || c.chart.arclength) {
    raise(ErrorCode::UnsupportedDomain,
          "transport runs need chart.kind = 'cylinder' with angular coordinates "
          "(chart.arclength = false)");
  }
  ConfinementProfile profile = make_profile(c);
  ChannelBasis basis = make_basis(c, profile);
  return TransportProblem{std::move(profile), make_well(c), basis, make_grid(c)};
}

std::vector<std::string> validate_config(const RunConfig& c) {
  std::vector<std::string> warnings;
  const SurfaceChart chart = make_chart(c);
  const ConfinementProfile profile = make_profile(c);
  const TransverseWell well = make_well(c);
  // Profiles are functions of the chart coordinates; check them on that box.
  // On the cylinder the transport direction is unbounded, so a few pitches of z
  // are sampled instead.
  Axis a2 = chart.axis(1);
  if (c.chart.kind == "cylinder") {
    a2 = Axis{0.0, 10.0, Boundary::Dirichlet};
  }
  validate_profile(profile, chart.axis(0), a2);

  const SweepSpec sweep = make_sweep_spec(c);
  parse_direction(c.density.direction);
  require_choice(c.spectrum.method, {"real_space", "coupled_channel"}, "spectrum.method");
  require(c.spectrum.n1 >= 3 && c.spectrum.n2 >= 3, ErrorCode::Validation,
          "config fields 'spectrum.n1' and 'spectrum.n2' must be >= 3");
  require(c.spectrum.count >= 1, ErrorCode::Validation, "config field 'spectrum.count' must be >= 1");
  require(c.spectrum.tol > 0, ErrorCode::Validation, "config field 'spectrum.tol' must be > 0");
  require(c.spectrum.segment_length > 0 && c.spectrum.segment_points >= 1, ErrorCode::Validation,
          "config fields 'spectrum.segment_length' > 0 and 'spectrum.segment_points' >= 1 required");
  require(c.curvature.n1 >= 1 && c.curvature.n2 >= 1, ErrorCode::Validation,
          "config fields 'curvature.n1' and 'curvature.n2' must be >= 1");
  require(c.density.theta_points >= 1, ErrorCode::Validation,
          "config field 'density.theta_points' must be >= 1");
  require(c.density.lead_padding >= 0, ErrorCode::Validation,
          "config field 'density.lead_padding' must be >= 0");

  const double e_top = std::max(std::abs(sweep.e_max), std::abs(c.density.energy));
  if (well.ground_energy() < 10.0 * e_top) {
    std::ostringstream os;
    os << "E0 = " << well.ground_energy() << " e0 is less than 10x the largest tangential energy "
       << e_top << " e0; the transverse ground state may not separate";
    warnings.push_back(os.str());
  }

  if (c.chart.kind == "cylinder" && !c.chart.arclength) {
    TransportProblem problem = make_problem(c);
    GridSpec g = problem.grid;
    g.max_energy = sweep.e_max + energy_shift(sweep.reference, problem.basis, g.include_vg);
    assemble_coupled_channel(problem.profile, problem.well, problem.basis, g);
  }
  return warnings;
}

}  // namespace thinlayer
