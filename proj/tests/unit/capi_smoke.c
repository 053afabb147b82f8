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

#include <stdio.h>

int main(void) {
  tl_config* config = NULL;
  tl_result* result = NULL;
  double geo[4];
  int ok = 1;

  if (tl_config_create(&config) != TL_OK) return 1;
  ok &= tl_chart_evaluate(config, 0.0, 0.5, geo) == TL_OK;
  ok &= geo[2] == -0.25;
  ok &= tl_config_set(config, "curvature.n1", "2") == TL_OK;
  ok &= tl_run_curvature(config, &result) == TL_OK;
  ok &= result != NULL && tl_result_rows(result) == 2 * 16;
  tl_result_free(result);
  ok &= tl_config_set(config, "profile.nope", "1") == TL_ERR_VALIDATION;
  tl_config_free(config);
  printf("%s %s\n", tl_version(), ok ? "ok" : "FAILED");
  return ok ? 0 : 1;
}
