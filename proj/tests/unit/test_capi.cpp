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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <thread>

namespace {

struct ConfigDeleter {
  void operator()(tl_config* c) const { tl_config_free(c); }
};
struct ResultDeleter {
  void operator()(tl_result* r) const { tl_result_free(r); }
};
using ConfigPtr = std::unique_ptr<tl_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<tl_result, ResultDeleter>;

ConfigPtr parse(const char* text) {
  tl_config* c = nullptr;
  EXPECT_EQ(tl_config_parse(text, &c), TL_OK) << tl_last_error();
  return ConfigPtr(c);
}

std::string last_error() { return tl_last_error(); }

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(tl_version(), "0.1.0");
  EXPECT_STREQ(tl_status_name(TL_OK), "ok");
  EXPECT_STREQ(tl_status_name(TL_ERR_CLOSED_CHANNEL), "closed_channel");
  EXPECT_STREQ(tl_status_name(TL_ERR_RESOLUTION), "resolution");
  EXPECT_TRUE(tl_status_is_validation(TL_ERR_VALIDATION));
  EXPECT_TRUE(tl_status_is_validation(TL_ERR_CLOSED_CHANNEL));
  EXPECT_FALSE(tl_status_is_validation(TL_ERR_NUMERICAL));
  EXPECT_FALSE(tl_status_is_validation(TL_OK));
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(tl_config_create(nullptr), TL_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tl_config_parse(nullptr, nullptr), TL_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tl_config_validate(nullptr), TL_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(tl_run_sweep(nullptr, nullptr), TL_ERR_INVALID_ARGUMENT);
  EXPECT_FALSE(last_error().empty());
  tl_config_free(nullptr);
  tl_result_free(nullptr);
  tl_string_free(nullptr);
}

TEST(CApi, ConfigErrorsCarryMessages) {
  tl_config* c = nullptr;
  EXPECT_EQ(tl_config_parse(R"({"profile": {"kapa": 1}})", &c), TL_ERR_VALIDATION);
  EXPECT_EQ(c, nullptr);
  EXPECT_NE(last_error().find("profile.kapa"), std::string::npos);

  EXPECT_EQ(tl_config_load("/nonexistent.json", &c), TL_ERR_IO);

  auto cfg = parse(R"({"sweep": {"e_min": 1.0, "e_max": 1.0}})");
  EXPECT_EQ(tl_config_validate(cfg.get()), TL_ERR_VALIDATION);
  EXPECT_NE(last_error().find("empty energy range"), std::string::npos);

  ASSERT_EQ(tl_config_set(cfg.get(), "sweep.e_max", "4.5"), TL_OK);
  EXPECT_EQ(tl_config_validate(cfg.get()), TL_OK);
  ASSERT_EQ(tl_config_set(cfg.get(), "numerics.dz", "0.5"), TL_OK);
  EXPECT_EQ(tl_config_validate(cfg.get()), TL_ERR_RESOLUTION);
  EXPECT_NE(last_error().find("dz <="), std::string::npos);
}

TEST(CApi, ConfigJsonRoundTrip) {
  auto cfg = parse(R"({"profile": {"kappa": 0.5}})");
  char* text = nullptr;
  ASSERT_EQ(tl_config_to_json(cfg.get(), &text), TL_OK);
  auto again = parse(text);
  char* text2 = nullptr;
  ASSERT_EQ(tl_config_to_json(again.get(), &text2), TL_OK);
  EXPECT_STREQ(text, text2);
  EXPECT_NE(std::strstr(text, "\"kappa\": 0.5"), nullptr);
  tl_string_free(text);
  tl_string_free(text2);
}

TEST(CApi, ChartEvaluation) {
  auto cyl = parse("{}");
  double out[4];
  ASSERT_EQ(tl_chart_evaluate(cyl.get(), 0.3, 0.7, out), TL_OK);
  EXPECT_NEAR(out[0], 0.5, 1e-14);
  EXPECT_NEAR(out[1], 0.0, 1e-14);
  EXPECT_NEAR(out[2], -0.25, 1e-14);
  EXPECT_NEAR(out[3], 1.0, 1e-14);

  auto sphere = parse(R"({"chart": {"kind": "sphere", "radius": 2.0}})");
  ASSERT_EQ(tl_chart_evaluate(sphere.get(), 1.0, 0.0, out), TL_OK);
  EXPECT_NEAR(std::abs(out[0]), 0.5, 1e-12);
  EXPECT_NEAR(out[1], 0.25, 1e-12);
  EXPECT_NEAR(out[2], 0.0, 1e-12);

  EXPECT_EQ(tl_chart_evaluate(sphere.get(), 0.0, 0.0, out), TL_ERR_SINGULAR_CHART);
  EXPECT_EQ(tl_chart_evaluate(cyl.get(), 0.0, 5.0, out), TL_ERR_DOMAIN);
}

TEST(CApi, SweepResultTable) {
  auto cfg = parse(R"({"profile": {"kind": "homogeneous"}, "numerics": {"region_length": 2.0},
                       "sweep": {"points": 20, "lmax_check": false}})");
  tl_result* raw = nullptr;
  ASSERT_EQ(tl_run_sweep(cfg.get(), &raw), TL_OK) << tl_last_error();
  ResultPtr r(raw);
  ASSERT_EQ(tl_result_rows(r.get()), 20u);
  const size_t cols = tl_result_columns(r.get());
  ASSERT_GT(cols, 4u);
  EXPECT_STREQ(tl_result_column_name(r.get(), 0), "E1[e0]");
  EXPECT_STREQ(tl_result_column_name(r.get(), 3), "sigma[sigma0]");
  EXPECT_EQ(tl_result_column_name(r.get(), cols), nullptr);
  const double* d = tl_result_data(r.get());
  EXPECT_NEAR(d[3], 1.0, 1e-10);                  // first row, below the l = 1 threshold
  EXPECT_NEAR(d[19 * cols + 3], 5.0, 1e-10);      // last row, above l = 2
  EXPECT_NE(std::strstr(tl_result_summary_json(r.get()), "\"plateaus\""), nullptr);
  EXPECT_EQ(tl_result_passed(r.get()), 1);

  const auto path = std::filesystem::temp_directory_path() / "thinlayer_capi_sweep.csv";
  ASSERT_EQ(tl_result_write_csv(r.get(), path.c_str()), TL_OK);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("E1[e0],E1_raw[e0],open_channels,sigma[sigma0]", 0), 0u);
  std::filesystem::remove(path);
  EXPECT_EQ(tl_result_write_csv(r.get(), "/nonexistent/dir/x.csv"), TL_ERR_IO);
}

TEST(CApi, DensityStatusCodes) {
  auto cfg = parse(R"({"profile": {"kappa": 0.5}})");
  const double e = 0.5;
  const int mode = 1;
  tl_result* raw = nullptr;
  EXPECT_EQ(tl_run_density(cfg.get(), &e, &mode, &raw), TL_ERR_CLOSED_CHANNEL);
  EXPECT_EQ(raw, nullptr);
  EXPECT_NE(last_error().find("threshold"), std::string::npos);
}

TEST(CApi, SelftestAndFaults) {
  tl_result* raw = nullptr;
  ASSERT_EQ(tl_run_selftest(TL_FAULT_NONE, &raw), TL_OK);
  EXPECT_EQ(tl_result_passed(raw), 1);
  tl_result_free(raw);
  ASSERT_EQ(tl_run_selftest(TL_FAULT_PERTURB_VELOCITY, &raw), TL_OK);
  EXPECT_EQ(tl_result_passed(raw), 0);
  tl_result_free(raw);
}

TEST(CApi, LastErrorIsPerThread) {
  tl_config* c = nullptr;
  ASSERT_EQ(tl_config_parse("{bad", &c), TL_ERR_VALIDATION);
  const std::string here = last_error();
  std::string there;
  std::thread([&] {
    tl_config* d = nullptr;
    EXPECT_EQ(tl_config_create(&d), TL_OK);
    there = tl_last_error();
    tl_config_free(d);
  }).join();
  EXPECT_TRUE(there.empty());
  EXPECT_EQ(last_error(), here);
}
