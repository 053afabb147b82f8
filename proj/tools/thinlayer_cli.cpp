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

// thinlayer command-line driver. Physics runs read a JSON config, apply
// --set overrides, and write a CSV table plus a JSON summary into --out.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure (including a
// failing selftest).

#include "thinlayer/thinlayer.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct ConfigDeleter {
  void operator()(tl_config* c) const { tl_config_free(c); }
};
struct ResultDeleter {
  void operator()(tl_result* r) const { tl_result_free(r); }
};
using ConfigPtr = std::unique_ptr<tl_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<tl_result, ResultDeleter>;

// Carries a failing status out of nested helpers.
struct Failure {
  tl_status status;
  std::string message;
};

void check(tl_status s, const std::string& context) {
  if (s != TL_OK) throw Failure{s, context + ": " + tl_last_error()};
}

int exit_code(tl_status s) {
  if (s == TL_OK) return kExitOk;
  return tl_status_is_validation(s) ? kExitValidation : kExitNumerical;
}

struct Options {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::optional<double> energy;
  std::optional<int> mode;
  std::vector<std::string> faults;
  bool quiet = false;
};

ConfigPtr load(const Options& o) {
  tl_config* raw = nullptr;
  check(tl_config_load(o.config_path.c_str(), &raw), "loading " + o.config_path);
  ConfigPtr cfg(raw);
  for (const auto& ov : o.overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) {
      throw Failure{TL_ERR_VALIDATION, "--set expects key=value, got '" + ov + "'"};
    }
    check(tl_config_set(cfg.get(), ov.substr(0, eq).c_str(), ov.substr(eq + 1).c_str()),
          "--set " + ov);
  }
  check(tl_config_validate(cfg.get()), "invalid config");
  return cfg;
}

std::filesystem::path output_dir(const Options& o, const tl_config* cfg) {
  std::string dir = o.out_dir;
  if (dir.empty()) {
    char* text = nullptr;
    check(tl_config_to_json(cfg, &text), "reading config");
    dir = nlohmann::json::parse(text)["output"]["dir"].get<std::string>();
    tl_string_free(text);
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Failure{TL_ERR_IO, "cannot create output directory '" + dir + "': " + ec.message()};
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text << '\n';
  if (!out) throw Failure{TL_ERR_IO, "cannot write '" + path.string() + "'"};
}

void emit(const tl_result* r, const std::filesystem::path& dir, const std::string& csv,
          const std::string& json, bool quiet) {
  for (size_t i = 0; i < tl_result_warning_count(r); ++i) {
    std::cerr << "warning: " << tl_result_warning(r, i) << '\n';
  }
  const auto csv_path = dir / csv;
  check(tl_result_write_csv(r, csv_path.string().c_str()), "writing " + csv_path.string());
  write_text(dir / json, tl_result_summary_json(r));
  if (!quiet) {
    std::cout << "wrote " << csv_path.string() << " (" << tl_result_rows(r) << " rows) and "
              << (dir / json).string() << '\n';
  }
}

void print_sweep(const tl_result* r) {
  const auto s = nlohmann::json::parse(tl_result_summary_json(r));
  std::cout << "points: " << s["ok_points"] << " ok of " << s["points"] << '\n';
  for (const auto& p : s["plateaus"]) {
    std::printf("plateau %d sigma0: E1 in [%.4f, %.4f] e0 (%d points)\n", p["level"].get<int>(),
                p["e_begin"].get<double>(), p["e_end"].get<double>(), p["points"].get<int>());
  }
  const auto& w = s["polarized_window"];
  if (w["found"].get<bool>()) {
    std::printf("polarized 2 sigma0 window: [%.4f, %.4f] e0, min split %.4f sigma0\n",
                w["e_begin"].get<double>(), w["e_end"].get<double>(),
                w["min_split"].get<double>());
  } else {
    std::cout << "no polarized 2 sigma0 window found\n";
  }
}

int run_physics(const std::string& cmd, const Options& o) {
  ConfigPtr cfg = load(o);
  const auto dir = output_dir(o, cfg.get());
  tl_result* raw = nullptr;
  if (cmd == "curvature") {
    check(tl_run_curvature(cfg.get(), &raw), "curvature");
    ResultPtr r(raw);
    emit(r.get(), dir, "curvature.csv", "curvature.json", o.quiet);
  } else if (cmd == "spectrum") {
    check(tl_run_spectrum(cfg.get(), &raw), "spectrum");
    ResultPtr r(raw);
    emit(r.get(), dir, "spectrum.csv", "spectrum.json", o.quiet);
    if (!o.quiet) {
      const double* d = tl_result_data(r.get());
      for (size_t i = 0; i < tl_result_rows(r.get()); ++i) std::printf("E[%zu] = %.10g e0\n", i, d[2 * i + 1]);
    }
  } else if (cmd == "sweep") {
    check(tl_run_sweep(cfg.get(), &raw), "sweep");
    ResultPtr r(raw);
    emit(r.get(), dir, "sweep.csv", "sweep_summary.json", o.quiet);
    if (!o.quiet) print_sweep(r.get());
  } else {
    const double* e = o.energy ? &*o.energy : nullptr;
    const int* m = o.mode ? &*o.mode : nullptr;
    check(tl_run_density(cfg.get(), e, m, &raw), "density");
    ResultPtr r(raw);
    emit(r.get(), dir, "density.csv", "density_meta.json", o.quiet);
  }
  return kExitOk;
}

int run_selftest(const Options& o) {
  unsigned faults = TL_FAULT_NONE;
  for (const auto& f : o.faults) {
    if (f == "flip_vg_sign") {
      faults |= TL_FAULT_FLIP_VG_SIGN;
    } else if (f == "perturb_velocity") {
      faults |= TL_FAULT_PERTURB_VELOCITY;
    } else {
      throw Failure{TL_ERR_VALIDATION, "unknown fault '" + f + "'"};
    }
  }
  tl_result* raw = nullptr;
  check(tl_run_selftest(faults, &raw), "selftest");
  ResultPtr r(raw);
  const auto s = nlohmann::json::parse(tl_result_summary_json(r.get()));
  for (const auto& c : s["checks"]) {
    if (!c["passed"].get<bool>()) {
      std::printf("FAIL %-14s %s: observed %s, expected %.6g +- %.1e\n",
                  c["suite"].get<std::string>().c_str(), c["check"].get<std::string>().c_str(),
                  c["observed"].dump().c_str(), c["expected"].get<double>(),
                  c["tolerance"].get<double>());
    }
  }
  for (const auto& name : s["suite_order"]) {
    const bool ok = s["suites"][name.get<std::string>()].get<bool>();
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", name.get<std::string>().c_str());
  }
  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    write_text(std::filesystem::path(o.out_dir) / "selftest.json", s.dump(2));
  }
  return tl_result_passed(r.get()) ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thinlayer: quantum transport on curved thin layers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tl_version()));
  Options o;

  auto physics = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config,-c", o.config_path, "JSON run configuration")->required();
    sub->add_option("--out,-o", o.out_dir, "output directory (default: output.dir)");
    sub->add_option("--set,-s", o.overrides, "override a config field, section.field=value")
        ->take_all();
    sub->add_flag("--quiet,-q", o.quiet, "print nothing on success");
    return sub;
  };
  physics("curvature", "tabulate M, K and V_g over the chart");
  physics("spectrum", "lowest closed-system eigenvalues");
  physics("sweep", "conductance and polarization versus energy");
  auto* density = physics("density", "scattering-state density map");
  density->add_option("--energy,-E", o.energy, "energy E1 in e0 (config reference)");
  density->add_option("--mode,-l", o.mode, "incident angular mode l");
  auto* selftest = app.add_subcommand("selftest", "run the built-in oracle suite");
  selftest->add_option("--out,-o", o.out_dir, "write selftest.json here");
  selftest->add_option("--fault", o.faults, "inject a deliberate fault (test fixture)")
      ->check(CLI::IsMember({"flip_vg_sign", "perturb_velocity"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (selftest->parsed()) return run_selftest(o);
    for (const char* name : {"curvature", "spectrum", "sweep", "density"}) {
      if (app.get_subcommand(name)->parsed()) return run_physics(name, o);
    }
  } catch (const Failure& f) {
    std::cerr << "error (" << tl_status_name(f.status) << "): " << f.message << '\n';
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}
