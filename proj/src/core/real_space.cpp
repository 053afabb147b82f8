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

#include "thinlayer/real_space.hpp"

#include "thinlayer/error.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace thinlayer {

namespace {

struct AxisGrid {
  Boundary boundary;
  int n = 0;
  double step = 0;
  double first = 0;  // coordinate of node 0
  std::vector<double> nodes;

  // Edge e joins nodes e and e + 1 and sits at first + (e + 1/2) step.
  int edge_begin() const { return boundary == Boundary::Dirichlet ? -1 : 0; }
  int edge_end() const { return boundary == Boundary::Natural ? n - 1 : n; }
  double edge_mid(int e) const { return first + (e + 0.5) * step; }

  std::optional<int> node(int k) const {
    if (boundary == Boundary::Periodic) return ((k % n) + n) % n;
    if (k < 0 || k >= n) return std::nullopt;
    return k;
  }
};

AxisGrid make_axis(const Axis& a, int n) {
  AxisGrid g;
  g.boundary = a.boundary;
  g.n = n;
  switch (a.boundary) {
    case Boundary::Periodic:
      require(n >= 3, ErrorCode::Validation, "periodic axis needs at least 3 nodes");
      g.step = a.extent() / n;
      g.first = a.min;
      break;
    case Boundary::Dirichlet:
      require(n >= 1, ErrorCode::Validation, "Dirichlet axis needs at least 1 node");
      g.step = a.extent() / (n + 1);
      g.first = a.min + g.step;
      break;
    case Boundary::Natural:
      require(n >= 2, ErrorCode::Validation, "natural-boundary axis needs at least 2 nodes");
      g.step = a.extent() / n;
      g.first = a.min + 0.5 * g.step;
      break;
  }
  for (int i = 0; i < n; ++i) g.nodes.push_back(g.first + i * g.step);
  return g;
}

// sqrt(g) g^{ab} at a point.
Mat2 flux_coefficients(const SurfaceChart& chart, SurfacePoint q) {
  const Mat2 g = metric(chart, q);
  const double root = std::sqrt(g.determinant());
  Mat2 a;
  a << g(1, 1) / root, -g(0, 1) / root, -g(1, 0) / root, g(0, 0) / root;
  return a;
}

}  // namespace

RealSpaceOperator assemble_2d(const SurfaceChart& chart, const ConfinementProfile& profile,
                              const TransverseWell& well, RealSpaceGrid grid) {
  const AxisGrid ax = make_axis(chart.axis(0), grid.n1);
  const AxisGrid ay = make_axis(chart.axis(1), grid.n2);
  const int n1 = ax.n, n2 = ay.n, total = n1 * n2;
  const double d1 = ax.step, d2 = ay.step;
  auto id = [n2](int i, int j) { return i * n2 + j; };

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(total) * 9);

  // Adds c * (psi_a - psi_b)^2 to the quadratic form; absent nodes are zero.
  auto add_edge = [&](std::optional<int> a, std::optional<int> b, double c) {
    if (a) trips.emplace_back(*a, *a, c);
    if (b) trips.emplace_back(*b, *b, c);
    if (a && b) {
      trips.emplace_back(*a, *b, -c);
      trips.emplace_back(*b, *a, -c);
    }
  };

  for (int e = ax.edge_begin(); e < ax.edge_end(); ++e) {
    for (int j = 0; j < n2; ++j) {
      const Mat2 a = flux_coefficients(chart, {ax.edge_mid(e), ay.nodes[j]});
      auto na = ax.node(e), nb = ax.node(e + 1);
      add_edge(na ? std::optional(id(*na, j)) : std::nullopt,
               nb ? std::optional(id(*nb, j)) : std::nullopt, a(0, 0) * d2 / d1);
    }
  }
  for (int i = 0; i < n1; ++i) {
    for (int f = ay.edge_begin(); f < ay.edge_end(); ++f) {
      const Mat2 a = flux_coefficients(chart, {ax.nodes[i], ay.edge_mid(f)});
      auto na = ay.node(f), nb = ay.node(f + 1);
      add_edge(na ? std::optional(id(i, *na)) : std::nullopt,
               nb ? std::optional(id(i, *nb)) : std::nullopt, a(1, 1) * d1 / d2);
    }
  }

  // Mixed terms from corner gradients: 2 a12 (d1 psi)(d2 psi) d1 d2.
  for (int e = ax.edge_begin(); e < ax.edge_end(); ++e) {
    for (int f = ay.edge_begin(); f < ay.edge_end(); ++f) {
      const Mat2 a = flux_coefficients(chart, {ax.edge_mid(e), ay.edge_mid(f)});
      const double a12 = a(0, 1);
      if (std::abs(a12) <= 1e-14 * (std::abs(a(0, 0)) + std::abs(a(1, 1)))) continue;
      struct Term {
        std::optional<int> node;
        double c1, c2;
      };
      std::array<Term, 4> terms;
      int k = 0;
      for (int di = 0; di < 2; ++di) {
        for (int dj = 0; dj < 2; ++dj) {
          auto ni = ax.node(e + di), nj = ay.node(f + dj);
          Term t;
          if (ni && nj) t.node = id(*ni, *nj);
          t.c1 = (di ? 1.0 : -1.0) / (2 * d1);
          t.c2 = (dj ? 1.0 : -1.0) / (2 * d2);
          terms[k++] = t;
        }
      }
      const double scale = a12 * d1 * d2;
      for (const auto& p : terms) {
        if (!p.node) continue;
        for (const auto& r : terms) {
          if (!r.node) continue;
          trips.emplace_back(*p.node, *r.node, scale * (p.c1 * r.c2 + p.c2 * r.c1));
        }
      }
    }
  }

  Eigen::SparseMatrix<double> stiffness(total, total);
  stiffness.setFromTriplets(trips.begin(), trips.end());

  RealSpaceOperator out;
  out.q1 = ax.nodes;
  out.q2 = ay.nodes;
  out.weight.resize(total);
  out.potential.resize(total);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const SurfacePoint q{ax.nodes[i], ay.nodes[j]};
      out.weight[id(i, j)] = area_element(chart, q) * d1 * d2;
      out.potential[id(i, j)] = effective_potential(profile, well, chart, q);
    }
  }

  const Eigen::VectorXd inv_root = out.weight.cwiseSqrt().cwiseInverse();
  out.matrix = inv_root.asDiagonal() * stiffness * inv_root.asDiagonal();
  Eigen::SparseMatrix<double> pot(total, total);
  pot.reserve(Eigen::VectorXi::Constant(total, 1));
  for (int k = 0; k < total; ++k) pot.insert(k, k) = out.potential[k];
  out.matrix += pot;
  out.matrix.makeCompressed();
  return out;
}

}  // namespace thinlayer
