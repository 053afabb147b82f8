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

#include "thinlayer/thinlayer.h"

#include "thinlayer/commands.hpp"
#include "thinlayer/config.hpp"
#include "thinlayer/error.hpp"

#include <cstring>
#include <exception>
#include <new>
#include <string>

struct tl_config {
  thinlayer::RunConfig config;
};

struct tl_result {
  thinlayer::CommandResult result;
  std::string summary;
};

namespace {

thread_local std::string last_error;

tl_status status_of(thinlayer::ErrorCode code) {
  using thinlayer::ErrorCode;
  switch (code) {
    case ErrorCode::Validation: return TL_ERR_VALIDATION;
    case ErrorCode::Domain: return TL_ERR_DOMAIN;
    case ErrorCode::SingularChart: return TL_ERR_SINGULAR_CHART;
    case ErrorCode::StepSize: return TL_ERR_STEP_SIZE;
    case ErrorCode::Periodicity: return TL_ERR_PERIODICITY;
    case ErrorCode::Resolution: return TL_ERR_RESOLUTION;
    case ErrorCode::UnsupportedDomain: return TL_ERR_UNSUPPORTED_DOMAIN;
    case ErrorCode::ClosedChannel: return TL_ERR_CLOSED_CHANNEL;
    case ErrorCode::UndefinedPolarization: return TL_ERR_UNDEFINED_POLARIZATION;
    case ErrorCode::Numerical: return TL_ERR_NUMERICAL;
    case ErrorCode::Io: return TL_ERR_IO;
  }
  return TL_ERR_INTERNAL;
}

tl_status fail(tl_status s, const std::string& message) {
  last_error = message;
  return s;
}

// Runs body, translating exceptions into status codes at the boundary.
template <class F>
tl_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return TL_OK;
  } catch (const thinlayer::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TL_ERR_INTERNAL, "unknown error");
  }
}

#define TL_REQUIRE_ARG(cond, what) \
  if (!(cond)) return fail(TL_ERR_INVALID_ARGUMENT, what)

template <class F>
tl_status run_command(tl_result** out, F&& make) {
  TL_REQUIRE_ARG(out, "output pointer is null");
  *out = nullptr;
  return guard([&] {
    auto* r = new tl_result{make(), {}};
    r->summary = r->result.summary.dump(2);
    *out = r;
  });
}

}  // namespace

extern "C" {

const char* tl_version(void) { return "0.1.0"; }

const char* tl_last_error(void) { return last_error.c_str(); }

const char* tl_status_name(tl_status status) {
  switch (status) {
    case TL_OK: return "ok";
    case TL_ERR_VALIDATION: return "validation";
    case TL_ERR_DOMAIN: return "domain";
    case TL_ERR_SINGULAR_CHART: return "singular_chart";
    case TL_ERR_STEP_SIZE: return "step_size";
    case TL_ERR_PERIODICITY: return "periodicity";
    case TL_ERR_RESOLUTION: return "resolution";
    case TL_ERR_UNSUPPORTED_DOMAIN: return "unsupported_domain";
    case TL_ERR_CLOSED_CHANNEL: return "closed_channel";
    case TL_ERR_UNDEFINED_POLARIZATION: return "undefined_polarization";
    case TL_ERR_NUMERICAL: return "numerical";
    case TL_ERR_IO: return "io";
    case TL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case TL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int tl_status_is_validation(tl_status status) {
  return status != TL_OK && status != TL_ERR_NUMERICAL &&
         status != TL_ERR_UNDEFINED_POLARIZATION && status != TL_ERR_INTERNAL;
}

tl_status tl_config_create(tl_config** out) {
  TL_REQUIRE_ARG(out, "output pointer is null");
  *out = nullptr;
  return guard([&] { *out = new tl_config{}; });
}

tl_status tl_config_load(const char* path, tl_config** out) {
  TL_REQUIRE_ARG(path && out, "null argument");
  *out = nullptr;
  return guard([&] { *out = new tl_config{thinlayer::load_config(path)}; });
}

tl_status tl_config_parse(const char* json_text, tl_config** out) {
  TL_REQUIRE_ARG(json_text && out, "null argument");
  *out = nullptr;
  return guard([&] { *out = new tl_config{thinlayer::parse_config(json_text)}; });
}

tl_status tl_config_set(tl_config* config, const char* key, const char* value) {
  TL_REQUIRE_ARG(config && key && value, "null argument");
  return guard([&] {
    config->config =
        thinlayer::apply_override(config->config, std::string(key) + "=" + value);
  });
}

tl_status tl_config_validate(const tl_config* config) {
  TL_REQUIRE_ARG(config, "null config");
  return guard([&] { thinlayer::validate_config(config->config); });
}

tl_status tl_config_to_json(const tl_config* config, char** out) {
  TL_REQUIRE_ARG(config && out, "null argument");
  *out = nullptr;
  return guard([&] {
    const std::string s = thinlayer::config_to_json(config->config).dump(2);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

void tl_config_free(tl_config* config) { delete config; }

void tl_string_free(char* text) { delete[] text; }

tl_status tl_chart_evaluate(const tl_config* config, double q1, double q2, double out[4]) {
  TL_REQUIRE_ARG(config && out, "null argument");
  return guard([&] {
    const auto chart = thinlayer::make_chart(config->config);
    const thinlayer::SurfacePoint q{q1, q2};
    const auto cd = thinlayer::curvature(chart, q);
    out[0] = cd.mean_curvature;
    out[1] = cd.gaussian_curvature;
    out[2] = thinlayer::geometric_potential(cd);
    out[3] = thinlayer::area_element(chart, q);
  });
}

tl_status tl_run_curvature(const tl_config* config, tl_result** out) {
  TL_REQUIRE_ARG(config, "null config");
  return run_command(out, [&] { return thinlayer::run_curvature(config->config); });
}

tl_status tl_run_spectrum(const tl_config* config, tl_result** out) {
  TL_REQUIRE_ARG(config, "null config");
  return run_command(out, [&] { return thinlayer::run_spectrum(config->config); });
}

tl_status tl_run_sweep(const tl_config* config, tl_result** out) {
  TL_REQUIRE_ARG(config, "null config");
  return run_command(out, [&] { return thinlayer::run_sweep(config->config); });
}

tl_status tl_run_density(const tl_config* config, const double* energy, const int* mode,
                         tl_result** out) {
  TL_REQUIRE_ARG(config, "null config");
  return run_command(out, [&] { return thinlayer::run_density(config->config, energy, mode); });
}

tl_status tl_run_selftest(unsigned faults, tl_result** out) {
  return run_command(out, [&] { return thinlayer::run_selftest(faults); });
}

size_t tl_result_rows(const tl_result* r) { return r ? r->result.table.rows() : 0; }

size_t tl_result_columns(const tl_result* r) { return r ? r->result.table.cols() : 0; }

const char* tl_result_column_name(const tl_result* r, size_t column) {
  if (!r || column >= r->result.table.cols()) return nullptr;
  return r->result.table.columns[column].c_str();
}

const double* tl_result_data(const tl_result* r) {
  return r ? r->result.table.data.data() : nullptr;
}

const char* tl_result_summary_json(const tl_result* r) { return r ? r->summary.c_str() : nullptr; }

size_t tl_result_warning_count(const tl_result* r) { return r ? r->result.warnings.size() : 0; }

const char* tl_result_warning(const tl_result* r, size_t index) {
  if (!r || index >= r->result.warnings.size()) return nullptr;
  return r->result.warnings[index].c_str();
}

int tl_result_passed(const tl_result* r) { return r && r->result.passed ? 1 : 0; }

tl_status tl_result_write_csv(const tl_result* r, const char* path) {
  TL_REQUIRE_ARG(r && path, "null argument");
  return guard([&] { thinlayer::write_csv(r->result.table, std::string(path)); });
}

void tl_result_free(tl_result* r) { delete r; }

}  // extern "C"
