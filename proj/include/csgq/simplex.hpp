// Copyright 2026 The csgq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Derivative-free Nelder-Mead minimization (reflection, expansion,
// contraction, shrink with the usual 1 / 2 / 0.5 / 0.5 coefficients).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace csgq {

struct SimplexOptions {
  int max_iterations = 500;
  /// Stop once every vertex lies within this max-norm distance of the best.
  double tolerance = 1e-8;
  double initial_step = 0.1;
};

struct SimplexStep {
  std::vector<double> point;
  double value = 0.0;
};

struct SimplexResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  /// Best vertex at the start and after every iteration; values never rise.
  std::vector<SimplexStep> trace;
};

template <typename Objective>
SimplexResult minimize_simplex(Objective&& objective, std::vector<double> start,
                               const SimplexOptions& options = {}) {
  const std::size_t dim = start.size();
  SimplexResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return objective(x);
  };

  std::vector<std::vector<double>> vertex(dim + 1, start);
  for (std::size_t k = 0; k < dim; ++k) vertex[k + 1][k] += options.initial_step;
  std::vector<double> value(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k) value[k] = eval(vertex[k]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
  };
  auto size = [&] {
    double widest = 0.0;
    const auto& best = vertex[order[0]];
    for (std::size_t k = 1; k <= dim; ++k) {
      for (std::size_t d = 0; d < dim; ++d) {
        widest = std::max(widest, std::fabs(vertex[order[k]][d] - best[d]));
      }
    }
    return widest;
  };
  auto along = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                   double t) {
    std::vector<double> x(dim);
    for (std::size_t d = 0; d < dim; ++d) x[d] = centroid[d] + t * (worst[d] - centroid[d]);
    return x;
  };

  sort_vertices();
  result.trace.push_back({vertex[order[0]], value[order[0]]});

  while (result.iterations < options.max_iterations) {
    if (size() < options.tolerance) {
      result.converged = true;
      break;
    }
    ++result.iterations;
    const std::size_t worst = order[dim];
    const std::size_t second = order[dim - 1];
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += vertex[order[k]][d] / double(dim);
    }

    auto reflected = along(centroid, vertex[worst], -1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < value[order[0]]) {
      auto expanded = along(centroid, vertex[worst], -2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        vertex[worst] = std::move(expanded);
        value[worst] = f_expanded;
      } else {
        vertex[worst] = std::move(reflected);
        value[worst] = f_reflected;
      }
    } else if (f_reflected < value[second]) {
      vertex[worst] = std::move(reflected);
      value[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < value[worst];
      auto contracted = along(centroid, vertex[worst], outside ? -0.5 : 0.5);
      const double f_contracted = eval(contracted);
      if (f_contracted < (outside ? f_reflected : value[worst])) {
        vertex[worst] = std::move(contracted);
        value[worst] = f_contracted;
      } else {
        const auto& best = vertex[order[0]];
        for (std::size_t k = 1; k <= dim; ++k) {
          auto& v = vertex[order[k]];
          for (std::size_t d = 0; d < dim; ++d) v[d] = best[d] + 0.5 * (v[d] - best[d]);
          value[order[k]] = eval(v);
        }
      }
    }
    sort_vertices();
    result.trace.push_back({vertex[order[0]], value[order[0]]});
  }
  if (!result.converged && size() < options.tolerance) result.converged = true;

  result.point = vertex[order[0]];
  result.value = value[order[0]];
  return result;
}

}  // namespace csgq
