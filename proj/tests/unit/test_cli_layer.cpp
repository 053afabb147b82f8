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
#include "thinlayer/error.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <optional>
#include <sstream>

using namespace thinlayer;
using nlohmann::json;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

// Synthetic curve: one incident/outgoing pair table over modes -1, 0, 1.
ConductanceCurve synthetic(const std::vector<double>& e, const std::vector<double>& total,
                           const std::vector<double>& split = {}) {
  ConductanceCurve c;
  c.modes = {-1, 0, 1};
  for (size_t i = 0; i < e.size(); ++i) {
    SweepPoint p;
    p.energy = e[i];
    p.raw_energy = e[i];
    p.ok = true;
    p.total = total[i];
    p.open_channels = e[i] < 1 ? 1 : 3;
    p.sigma = Eigen::MatrixXd::Zero(3, 3);
    const double s = split.empty() ? 0.0 : split[i];
    if (p.open_channels == 1) {
      p.sigma(1, 1) = total[i];
    } else {
      p.sigma(2, 2) = 0.5 * (total[i] + s);
      p.sigma(0, 0) = 0.5 * (total[i] - s);
    }
    c.points.push_back(p);
  }
  return c;
}

}  // namespace

// ---- config ----------------------------------------------------------------------

TEST(Config, DefaultsRoundTrip) {
  const RunConfig c;
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_TRUE(back == c);
  EXPECT_TRUE(parse_config("{}") == c);
}

TEST(Config, NonDefaultRoundTrip) {
  RunConfig c = parse_config(R"({"profile": {"kappa": -0.5, "epsilon": 0.2},
                                 "sweep": {"points": 17, "reference": "raw"},
                                 "numerics": {"l_max": 7}})");
  EXPECT_EQ(c.profile.kappa, -0.5);
  EXPECT_EQ(c.sweep.points, 17);
  EXPECT_EQ(c.numerics.l_max, 7);
  EXPECT_TRUE(config_from_json(config_to_json(c)) == c);
}

TEST(Config, UnknownAndIllTypedFieldsAreNamed) {
  EXPECT_EQ(code_of([] { parse_config(R"({"profile": {"kapa": 1}})"); }), ErrorCode::Validation);
  EXPECT_NE(message_of([] { parse_config(R"({"profile": {"kapa": 1}})"); }).find("profile.kapa"),
            std::string::npos);
  EXPECT_NE(message_of([] { parse_config(R"({"sweep": {"points": "many"}})"); }).find("sweep.points"),
            std::string::npos);
  EXPECT_EQ(code_of([] { parse_config(R"({"extra": {}})"); }), ErrorCode::Validation);
  EXPECT_EQ(code_of([] { parse_config("{not json"); }), ErrorCode::Validation);
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load_config("/nonexistent/run.json"); }), ErrorCode::Io);
}

TEST(Config, Overrides) {
  RunConfig c;
  c = apply_override(c, "profile.kappa=0.5");
  c = apply_override(c, "chart.kind=sphere");
  c = apply_override(c, "sweep.lmax_check=false");
  EXPECT_EQ(c.profile.kappa, 0.5);
  EXPECT_EQ(c.chart.kind, "sphere");
  EXPECT_FALSE(c.sweep.lmax_check);
  EXPECT_EQ(code_of([&] { apply_override(c, "profile.nope=1"); }), ErrorCode::Validation);
  EXPECT_EQ(code_of([&] { apply_override(c, "no_equals_sign"); }), ErrorCode::Validation);
}

TEST(Config, ValidationCatchesPhysicsErrors) {
  RunConfig c;
  c.sweep.e_min = 2.0;
  c.sweep.e_max = 2.0;
  EXPECT_EQ(code_of([&] { validate_config(c); }), ErrorCode::Validation);
  EXPECT_NE(message_of([&] { validate_config(c); }).find("empty energy range"), std::string::npos);

  RunConfig d;
  d.numerics.dz = 0.5;
  EXPECT_EQ(code_of([&] { validate_config(d); }), ErrorCode::Resolution);

  RunConfig e;
  e.numerics.l_max = 1;
  EXPECT_EQ(code_of([&] { validate_config(e); }), ErrorCode::Validation);
  EXPECT_NE(message_of([&] { validate_config(e); }).find("raise l_max"), std::string::npos);

  RunConfig f;
  f.profile.epsilon = 1.5;
  EXPECT_EQ(code_of([&] { validate_config(f); }), ErrorCode::Validation);
  EXPECT_NE(message_of([&] { validate_config(f); }).find("epsilon"), std::string::npos);
}

TEST(Config, WeakConfinementWarns) {
  RunConfig c;
  c.well.e0 = 20.0;
  const auto w = validate_config(c);
  ASSERT_FALSE(w.empty());
  EXPECT_NE(w.front().find("E0"), std::string::npos);
  EXPECT_TRUE(validate_config(RunConfig{}).empty());
}

TEST(Config, TransportNeedsAngularCylinder) {
  RunConfig c;
  c.chart.kind = "sphere";
  EXPECT_EQ(code_of([&] { make_problem(c); }), ErrorCode::UnsupportedDomain);
}

// ---- analysis --------------------------------------------------------------------

TEST(Analysis, PlateausAndThresholds) {
  std::vector<double> e, t;
  for (int i = 0; i < 40; ++i) {
    e.push_back(0.025 + 0.05 * i);
    t.push_back(e.back() < 1 ? 1.0 : 3.0);
  }
  t[5] = 1.2;  // a glitch splits the first plateau
  const auto curve = synthetic(e, t);
  const auto plateaus = detect_plateaus(curve, 0.05, 6);  // drops the 5-point run before it
  ASSERT_EQ(plateaus.size(), 2u);
  EXPECT_EQ(plateaus[0].level, 1);
  EXPECT_EQ(plateaus[0].first, 6u);
  EXPECT_EQ(plateaus[1].level, 3);
  EXPECT_EQ(plateaus[1].count(), 20u);

  const auto th = detect_thresholds(curve);
  ASSERT_EQ(th.size(), 1u);
  EXPECT_EQ(th[0].channels, 3);
  EXPECT_LT(th[0].below, 1.0);
  EXPECT_GT(th[0].above, 1.0);
  EXPECT_NEAR(th[0].estimate, 1.0, 0.05);

  const auto exact = analytic_thresholds(curve, 1.0, false, 0.0, 4.5);
  ASSERT_EQ(exact.size(), 3u);
  EXPECT_DOUBLE_EQ(exact[1], 1.0);
  EXPECT_DOUBLE_EQ(exact[2], 4.0);
}

TEST(Analysis, PolarizedWindowIsLongestQualifyingRun) {
  std::vector<double> e, t, s;
  for (int i = 0; i < 60; ++i) {
    e.push_back(1.025 + 0.05 * i);
    const bool in = (i >= 10 && i < 30) || (i >= 40 && i < 45);
    t.push_back(in ? 2.05 : 2.6);
    s.push_back(in ? 0.5 : 0.1);
  }
  const auto curve = synthetic(e, t, s);
  WindowCriteria crit;
  crit.above = 1.0;
  const auto w = find_polarized_window(curve, crit);
  ASSERT_TRUE(w.found);
  EXPECT_EQ(w.first, 10u);
  EXPECT_EQ(w.last, 29u);
  EXPECT_NEAR(w.min_split, 0.5, 1e-12);
  EXPECT_NEAR(w.max_level_deviation, 0.05, 1e-12);

  crit.min_width = 5.0;
  EXPECT_FALSE(find_polarized_window(curve, crit).found);
}

TEST(Analysis, ConvergenceSummaryIgnoresNaN) {
  auto curve = synthetic({0.5, 0.6, 0.7}, {1, 1, 1});
  curve.points[0].unitarity = 1e-12;
  curve.points[2].unitarity = 3e-12;
  curve.points[1].ok = false;
  const auto s = summarize_convergence(curve);
  EXPECT_EQ(s.max_unitarity, 3e-12);
  EXPECT_TRUE(std::isnan(s.max_dz_delta));
  EXPECT_EQ(s.failed_points, 1u);
}

// ---- commands ------------------------------------------------------------------------

TEST(Commands, CsvIsExactAndStable) {
  Table t;
  t.columns = {"a", "b"};
  t.add_row({0.1, 1.0 / 3.0});
  t.add_row({-2.0, 1e-300});
  std::ostringstream out;
  write_csv(t, out);
  EXPECT_EQ(out.str(), "a,b\n0.10000000000000001,0.33333333333333331\n-2,1e-300\n");
  EXPECT_THROW(t.add_row({1.0}), Error);
}

TEST(Commands, CurvatureTable) {
  RunConfig c;
  c.curvature.n1 = 4;
  c.curvature.n2 = 3;
  const auto r = run_curvature(c);
  ASSERT_EQ(r.table.rows(), 12u);
  ASSERT_EQ(r.table.columns[4], "V_g[e0]");
  for (size_t i = 0; i < r.table.rows(); ++i) {
    EXPECT_NEAR(r.table.at(i, 2), 0.5, 1e-12);
    EXPECT_NEAR(r.table.at(i, 3), 0.0, 1e-12);
    EXPECT_NEAR(r.table.at(i, 4), -0.25, 1e-12);
  }
}

TEST(Commands, SpectrumOnSphere) {
  RunConfig c;
  c.chart.kind = "sphere";
  c.profile.kind = "homogeneous";
  c.spectrum.n1 = 40;
  c.spectrum.n2 = 80;
  c.spectrum.count = 4;
  const auto r = run_spectrum(c);
  ASSERT_EQ(r.table.rows(), 4u);
  EXPECT_NEAR(r.table.at(0, 1), 0.0, 1e-6);
  for (size_t i = 1; i < 4; ++i) EXPECT_NEAR(r.table.at(i, 1), 2.0, 0.01);
}

TEST(Commands, HomogeneousSweepSummary) {
  RunConfig c = parse_config(R"({"profile": {"kind": "homogeneous"},
                                 "numerics": {"region_length": 3.0},
                                 "sweep": {"points": 120, "lmax_check": false}})");
  const auto r = run_sweep(c);
  EXPECT_EQ(r.table.rows(), 120u);
  const auto& levels = r.summary["plateaus"];
  ASSERT_EQ(levels.size(), 3u);
  EXPECT_EQ(levels[0]["level"], 1);
  EXPECT_EQ(levels[1]["level"], 3);
  EXPECT_EQ(levels[2]["level"], 5);
  EXPECT_FALSE(r.summary["polarized_window"]["found"].get<bool>());
  const auto exact = r.summary["thresholds"]["analytic"].get<std::vector<double>>();
  ASSERT_EQ(exact.size(), 2u);
  EXPECT_NEAR(exact[0], 1.0, 1e-12);
  EXPECT_NEAR(exact[1], 4.0, 1e-12);
}

TEST(Commands, DensityErrorsAndOverrides) {
  RunConfig c = parse_config(R"({"profile": {"kappa": 0.5}})");
  const double below = 0.5;
  const int mode = 1;
  EXPECT_EQ(code_of([&] { run_density(c, &below, &mode); }), ErrorCode::ClosedChannel);
  const double e = 1.3;
  const auto r = run_density(c, &e, &mode);
  EXPECT_EQ(r.table.columns.size(), 3u);
  EXPECT_EQ(r.table.rows() % 64, 0u);
  EXPECT_GT(r.summary["transmitted_fraction"].get<double>(), 0.0);
}

TEST(Commands, SelftestCatchesInjectedFaults) {
  const auto clean = run_selftest();
  EXPECT_TRUE(clean.passed);
  const auto flip = run_selftest(kFaultFlipVgSign);
  EXPECT_FALSE(flip.passed);
  const auto vel = run_selftest(kFaultPerturbVelocity);
  EXPECT_FALSE(vel.passed);
  // Each fault trips its own suite only.
  auto suite_passed = [](const CommandResult& r, const std::string& name) {
    return r.summary["suites"].at(name).get<bool>();
  };
  EXPECT_FALSE(suite_passed(flip, "curvature"));
  EXPECT_TRUE(suite_passed(flip, "unitarity"));
  EXPECT_FALSE(suite_passed(vel, "unitarity"));
  EXPECT_TRUE(suite_passed(vel, "curvature"));
}
