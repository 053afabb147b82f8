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

#ifndef THINLAYER_EIGENSOLVER_HPP
#define THINLAYER_EIGENSOLVER_HPP

#include <Eigen/Sparse>

#include <complex>
#include <vector>

namespace thinlayer {

/// Lowest `count` eigenvalues of a sparse Hermitian matrix, ascending.
///
/// Shift-invert block subspace iteration with Rayleigh-Ritz; the block is wider
/// than `count` so degenerate multiplets are resolved. `lower_bound` must not
/// exceed the smallest eigenvalue. Small matrices go to a dense solver.
std::vector<double> lowest_eigenvalues(const Eigen::SparseMatrix<double>& h, int count,
                                       double lower_bound, double tol = 1e-8);
std::vector<double> lowest_eigenvalues(const Eigen::SparseMatrix<std::complex<double>>& h,
                                       int count, double lower_bound, double tol = 1e-8);

}  // namespace thinlayer

#endif  // THINLAYER_EIGENSOLVER_HPP
