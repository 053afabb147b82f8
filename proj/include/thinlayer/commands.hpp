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

#ifndef THINLAYER_COMMANDS_HPP
#define THINLAYER_COMMANDS_HPP

#include "thinlayer/config.hpp"

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace thinlayer {

/// A rectangular numeric table with named columns, stored row-major.
struct Table {
  std::vector<std::string> columns;
  std::vector<double> data;

  size_t cols() const { return columns.size(); }
  size_t rows() const { return columns.empty() ? 0 : data.size() / columns.size(); }
  double at(size_t row, size_t col) const { return data[row * cols() + col]; }
  void add_row(const std::vector<double>& row);
};

/// Header line, then one line per row with every value printed as %.17g, so
/// identical tables give identical bytes.
void write_csv(const Table& table, std::ostream& out);
void write_csv(const Table& table, const std::string& path);

struct CommandResult {
  Table table;
  nlohmann::json summary;
  std::vector<std::string> warnings;
  /// False only for a selftest with failing checks.
  bool passed = true;
};

/// (q1, q2, M, K, V_g) on a cell-centred grid over the chart box.
CommandResult run_curvature(const RunConfig& config);

/// Lowest closed-system eigenvalues, either from the 2D real-space operator on
/// the configured chart or from a closed coupled-channel segment.
CommandResult run_spectrum(const RunConfig& config);

/// Conductance curve with plateau, threshold and window analysis in the summary.
CommandResult run_sweep(const RunConfig& config);

/// Scattering-state density in long format (theta, z, density). When energy or
/// mode are given they replace the config values.
CommandResult run_density(const RunConfig& config, const double* energy = nullptr,
                          const int* mode = nullptr);

enum Fault : std::uint32_t {
  kFaultNone = 0,
  kFaultFlipVgSign = 1u << 0,
  kFaultPerturbVelocity = 1u << 1,
};

/// Oracle suite: curvature analytics, square barrier, dense-inversion
/// equivalence and a unitarity battery. `faults` injects deliberate errors so
/// the suite can be shown to catch them.
CommandResult run_selftest(std::uint32_t faults = kFaultNone);

}  // namespace thinlayer

#endif  // THINLAYER_COMMANDS_HPP
