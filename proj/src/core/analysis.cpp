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

#include "thinlayer/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace thinlayer {

namespace {

// NaN-aware running maximum: NaN inputs are skipped, an all-NaN input stays NaN.
void fold_max(double& acc, double v) {
  if (std::isnan(v)) return;
  acc = std::isnan(acc) ? v : std::max(acc, v);
}

}  // namespace

std::vector<Plateau> detect_plateaus(const ConductanceCurve& curve, double tol,
                                     size_t min_points) {
  std::vector<Plateau> out;
  const auto& pts = curve.points;
  size_t i = 0;
  while (i < pts.size()) {
    if (!pts[i].ok) {
      ++i;
      continue;
    }
    const int level = static_cast<int>(std::lround(pts[i].total));
    if (std::abs(pts[i].total - level) >= tol) {
      ++i;
      continue;
    }
    size_t j = i;
    double worst = std::abs(pts[i].total - level);
    while (j + 1 < pts.size() && pts[j + 1].ok && std::abs(pts[j + 1].total - level) < tol) {
      ++j;
      worst = std::max(worst, std::abs(pts[j].total - level));
    }
    if (j - i + 1 >= min_points) {
      out.push_back({level, i, j, pts[i].energy, pts[j].energy, worst});
    }
    i = j + 1;
  }
  return out;
}

std::vector<ThresholdEstimate> detect_thresholds(const ConductanceCurve& curve) {
  std::vector<ThresholdEstimate> out;
  const SweepPoint* prev = nullptr;
  for (const auto& p : curve.points) {
    if (!p.ok) continue;
    if (prev && p.open_channels > prev->open_channels) {
      out.push_back({p.open_channels, 0.5 * (prev->energy + p.energy), prev->energy, p.energy});
    }
    prev = &p;
  }
  return out;
}

std::vector<double> analytic_thresholds(const ConductanceCurve& curve, double radius,
                                        bool include_vg, double e_min, double e_max) {
  std::vector<double> out;
  const double vg = include_vg ? cylinder_geometric_potential(radius) : 0.0;
  for (int l = 0;; ++l) {
    const double raw = l * l / (radius * radius) + vg;
    const double e = raw - curve.energy_shift;
    if (e > e_max) break;
    if (e >= e_min) out.push_back(e);
  }
  return out;
}

PolarizedWindow find_polarized_window(const ConductanceCurve& curve, const WindowCriteria& c) {
  const auto& pts = curve.points;
  const int p = curve.polarization_pair;
  auto good = [&](size_t i) {
    const auto& pt = pts[i];
    if (!pt.ok || pt.energy <= c.above) return false;
    const double split = curve.outgoing_into(i, p) - curve.outgoing_into(i, -p);
    return std::abs(pt.total - c.level) <= c.level_tol && split >= c.min_split;
  };

  PolarizedWindow best;
  size_t i = 0;
  while (i < pts.size()) {
    if (!good(i)) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < pts.size() && good(j + 1)) ++j;
    const double width = pts[j].energy - pts[i].energy;
    if (!best.found || width > best.width()) {
      best.found = true;
      best.first = i;
      best.last = j;
      best.e_begin = pts[i].energy;
      best.e_end = pts[j].energy;
      best.min_split = std::numeric_limits<double>::infinity();
      best.max_level_deviation = 0.0;
      for (size_t k = i; k <= j; ++k) {
        best.min_split = std::min(best.min_split,
                                  curve.outgoing_into(k, p) - curve.outgoing_into(k, -p));
        best.max_level_deviation =
            std::max(best.max_level_deviation, std::abs(pts[k].total - c.level));
      }
    }
    i = j + 1;
  }
  if (best.found && best.width() < c.min_width) best.found = false;
  return best;
}

ConvergenceSummary summarize_convergence(const ConductanceCurve& curve) {
  ConvergenceSummary s;
  for (const auto& p : curve.points) {
    if (!p.ok) {
      ++s.failed_points;
      continue;
    }
    if (p.near_threshold) ++s.near_threshold_points;
    fold_max(s.max_lmax_delta, p.lmax_delta);
    fold_max(s.max_dz_delta, p.dz_delta);
    fold_max(s.max_unitarity, p.unitarity);
    fold_max(s.max_flux, p.flux);
  }
  return s;
}

}  // namespace thinlayer
