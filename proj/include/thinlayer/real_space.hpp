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

#ifndef THINLAYER_REAL_SPACE_HPP
#define THINLAYER_REAL_SPACE_HPP

#include "thinlayer/confinement.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace thinlayer {

/// Node counts per axis. Periodic axes get n uniform nodes, Dirichlet axes n
/// interior nodes, Natural axes n cell centres.
struct RealSpaceGrid {
  int n1 = 64;
  int n2 = 64;
};

/// H_eff on a general chart as a real symmetric matrix acting on
/// (sqrt(g))^{1/2}-scaled nodal values, ordered index = i * n2 + j.
struct RealSpaceOperator {
  Eigen::SparseMatrix<double> matrix;
  std::vector<double> q1;
  std::vector<double> q2;
  /// sqrt(g) dq1 dq2 at each node.
  Eigen::VectorXd weight;
  /// V_g + (s - 1) E0 at each node.
  Eigen::VectorXd potential;

  double potential_min() const { return potential.minCoeff(); }
};

/// Flux-conservative Laplace-Beltrami stencil (5-point, 9-point when g12 != 0)
/// with metric coefficients at half-grid points, plus the effective potential.
RealSpaceOperator assemble_2d(const SurfaceChart& chart, const ConfinementProfile& profile,
                              const TransverseWell& well, RealSpaceGrid grid);

}  // namespace thinlayer

#endif  // THINLAYER_REAL_SPACE_HPP
