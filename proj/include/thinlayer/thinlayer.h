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

/* C interface to the thinlayer transport simulator.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every call that can fail returns a tl_status; on
 * failure tl_last_error() describes the problem for the calling thread until
 * that thread's next API call. */

#ifndef THINLAYER_H
#define THINLAYER_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(THINLAYER_BUILDING)
#define TL_API __declspec(dllexport)
#else
#define TL_API __declspec(dllimport)
#endif
#else
#define TL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_ERR_VALIDATION = 1,
  TL_ERR_DOMAIN = 2,
  TL_ERR_SINGULAR_CHART = 3,
  TL_ERR_STEP_SIZE = 4,
  TL_ERR_PERIODICITY = 5,
  TL_ERR_RESOLUTION = 6,
  TL_ERR_UNSUPPORTED_DOMAIN = 7,
  TL_ERR_CLOSED_CHANNEL = 8,
  TL_ERR_UNDEFINED_POLARIZATION = 9,
  TL_ERR_NUMERICAL = 10,
  TL_ERR_IO = 11,
  TL_ERR_INVALID_ARGUMENT = 12,
  TL_ERR_INTERNAL = 13
} tl_status;

/* Deliberate faults for run_selftest. */
enum {
  TL_FAULT_NONE = 0,
  TL_FAULT_FLIP_VG_SIGN = 1,
  TL_FAULT_PERTURB_VELOCITY = 2
};

typedef struct tl_config tl_config;
typedef struct tl_result tl_result;

TL_API const char* tl_version(void);
TL_API const char* tl_last_error(void);
TL_API const char* tl_status_name(tl_status status);
/* Nonzero when the status reports bad input rather than a failed computation. */
TL_API int tl_status_is_validation(tl_status status);

/* Configuration. */
TL_API tl_status tl_config_create(tl_config** out);
TL_API tl_status tl_config_load(const char* path, tl_config** out);
TL_API tl_status tl_config_parse(const char* json_text, tl_config** out);
/* key is "section.field"; value is JSON text, or a bare string. */
TL_API tl_status tl_config_set(tl_config* config, const char* key, const char* value);
TL_API tl_status tl_config_validate(const tl_config* config);
/* Returns a newly allocated JSON string; release it with tl_string_free. */
TL_API tl_status tl_config_to_json(const tl_config* config, char** out);
TL_API void tl_config_free(tl_config* config);
TL_API void tl_string_free(char* text);

/* Geometry of the configured chart at (q1, q2): out = {M, K, V_g, sqrt(g)}. */
TL_API tl_status tl_chart_evaluate(const tl_config* config, double q1, double q2, double out[4]);

/* Commands. Each returns a table plus a JSON summary. */
TL_API tl_status tl_run_curvature(const tl_config* config, tl_result** out);
TL_API tl_status tl_run_spectrum(const tl_config* config, tl_result** out);
TL_API tl_status tl_run_sweep(const tl_config* config, tl_result** out);
/* energy and mode may be NULL to use the config values. */
TL_API tl_status tl_run_density(const tl_config* config, const double* energy, const int* mode,
                                tl_result** out);
TL_API tl_status tl_run_selftest(unsigned faults, tl_result** out);

/* Results. Pointers stay valid until tl_result_free. */
TL_API size_t tl_result_rows(const tl_result* result);
TL_API size_t tl_result_columns(const tl_result* result);
TL_API const char* tl_result_column_name(const tl_result* result, size_t column);
/* Row-major rows x columns values. */
TL_API const double* tl_result_data(const tl_result* result);
TL_API const char* tl_result_summary_json(const tl_result* result);
TL_API size_t tl_result_warning_count(const tl_result* result);
TL_API const char* tl_result_warning(const tl_result* result, size_t index);
/* 1 unless the result is a selftest with failing checks. */
TL_API int tl_result_passed(const tl_result* result);
TL_API tl_status tl_result_write_csv(const tl_result* result, const char* path);
TL_API void tl_result_free(tl_result* result);

#ifdef __cplusplus
}
#endif

#endif /* THINLAYER_H */
