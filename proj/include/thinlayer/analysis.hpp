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

#ifndef THINLAYER_ANALYSIS_HPP
#define THINLAYER_ANALYSIS_HPP

#include "thinlayer/transport.hpp"

#include <vector>

namespace thinlayer {

/// A run of consecutive sweep points with |sigma - level| < tol.
struct Plateau {
  int level = 0;
  size_t first = 0;
  size_t last = 0;
  double e_begin = 0.0;
  double e_end = 0.0;
  double max_deviation = 0.0;

  size_t count() const { return last - first + 1; }
  double width() const { return e_end - e_begin; }
};

std::vector<Plateau> detect_plateaus(const ConductanceCurve& curve, double tol = 0.05,
                                     size_t min_points = 10);

struct ThresholdEstimate {
  /// Channel count just above the threshold.
  int channels = 0;
  /// Midpoint between the last sweep point below and the first above.
  double estimate = 0.0;
  /// Bracketing sweep energies.
  double below = 0.0;
  double above = 0.0;
};

/// Channel-opening thresholds seen along the sweep, in the curve's energy
/// reference.
std::vector<ThresholdEstimate> detect_thresholds(const ConductanceCurve& curve);

/// Exact lead thresholds l^2/r^2 (+ V_g for raw energies) inside [e_min, e_max].
std::vector<double> analytic_thresholds(const ConductanceCurve& curve, double radius,
                                        bool include_vg, double e_min, double e_max);

struct WindowCriteria {
  double level = 2.0;
  double level_tol = 0.15;
  double min_split = 0.2;
  double min_width = 0.5;
  /// Only points above this energy qualify (the +-pair threshold).
  double above = 0.0;
};

/// Longest run of consecutive points where sigma stays within level_tol of
/// level and the outgoing split sigma_{.,+p} - sigma_{.,-p} stays >= min_split.
struct PolarizedWindow {
  bool found = false;
  size_t first = 0;
  size_t last = 0;
  double e_begin = 0.0;
  double e_end = 0.0;
  double min_split = 0.0;
  double max_level_deviation = 0.0;

  double width() const { return e_end - e_begin; }
  double midpoint() const { return 0.5 * (e_begin + e_end); }
};

PolarizedWindow find_polarized_window(const ConductanceCurve& curve, const WindowCriteria& c);

struct ConvergenceSummary {
  double max_lmax_delta = SweepPoint::nan;
  double max_dz_delta = SweepPoint::nan;
  double max_unitarity = SweepPoint::nan;
  double max_flux = SweepPoint::nan;
  size_t failed_points = 0;
  size_t near_threshold_points = 0;
};

ConvergenceSummary summarize_convergence(const ConductanceCurve& curve);

}  // namespace thinlayer

#endif  // THINLAYER_ANALYSIS_HPP
