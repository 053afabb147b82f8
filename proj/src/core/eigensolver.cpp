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

#include "thinlayer/eigensolver.hpp"

#include "thinlayer/error.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>

namespace thinlayer {

namespace {

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> orthonormalize(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::HouseholderQR<Mat> qr(x);
  return qr.householderQ() * Mat::Identity(x.rows(), x.cols());
}

template <class Scalar>
void fill_random(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if constexpr (std::is_same_v<Scalar, double>) {
        x(i, j) = dist(rng);
      } else {
        const double re = dist(rng);
        x(i, j) = Scalar(re, dist(rng));
      }
    }
}

template <class Scalar>
std::vector<double> lowest_impl(const Eigen::SparseMatrix<Scalar>& h, int count,
                                double lower_bound, double tol) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(h.rows());
  require(h.rows() == h.cols(), ErrorCode::Validation, "eigensolver needs a square matrix");
  require(count >= 1 && count <= n, ErrorCode::Validation,
          "requested eigenvalue count must be between 1 and the matrix size");

  if (n <= 800) {
    Eigen::SelfAdjointEigenSolver<Mat> es{Mat(h)};
    require(es.info() == Eigen::Success, ErrorCode::Numerical, "dense eigensolver failed");
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + count);
  }

  const double shift = lower_bound - std::max(1.0, 1e-3 * std::abs(lower_bound));
  Eigen::SparseMatrix<Scalar> shifted = h;
  for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) -= shift;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<Scalar>> llt(shifted);
  require(llt.info() == Eigen::Success, ErrorCode::Numerical,
          "shift-invert factorization failed (lower bound above the spectrum?)");

  const int block = std::min(n, count + std::max(10, count));
  std::mt19937_64 rng(0x5eed);
  Mat x(n, block);
  fill_random(x, rng);
  x = orthonormalize<Scalar>(x);

  for (int iter = 0; iter < 1000; ++iter) {
    const Mat q = orthonormalize<Scalar>(llt.solve(x));
    const Mat hq = h * q;
    Mat t = q.adjoint() * hq;
    t = 0.5 * (t + t.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> ritz(t);
    const Mat v = ritz.eigenvectors();
    x = q * v;
    const Mat hx = hq * v;
    bool converged = true;
    for (int i = 0; i < count && converged; ++i) {
      const double theta = ritz.eigenvalues()[i];
      const double res = (hx.col(i) - theta * x.col(i)).norm();
      converged = res <= tol * std::max(1.0, std::abs(theta));
    }
    if (converged) {
      const auto& ev = ritz.eigenvalues();
      return std::vector<double>(ev.data(), ev.data() + count);
    }
  }
  raise(ErrorCode::Numerical, "eigensolver did not converge");
}

}  // namespace

std::vector<double> lowest_eigenvalues(const Eigen::SparseMatrix<double>& h, int count,
                                       double lower_bound, double tol) {
  return lowest_impl(h, count, lower_bound, tol);
}

std::vector<double> lowest_eigenvalues(const Eigen::SparseMatrix<std::complex<double>>& h,
                                       int count, double lower_bound, double tol) {
  return lowest_impl(h, count, lower_bound, tol);
}

}  // namespace thinlayer
