// Copyright 2026 The rsaexh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rsaexh/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "rsaexh/errors.h"

namespace rsaexh::optim {

NelderMeadResult NelderMead(const Objective& f, std::vector<double> x0,
                            const NelderMeadOptions& options) {
  const int n = static_cast<int>(x0.size());
  if (n == 0) throw InvalidArgument("empty starting point");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evals;
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (int i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  for (int i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<int> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](double t, std::vector<double>& out) {
    // centroid + t * (centroid - worst)
    const auto& worst = simplex[order[n]];
    for (int j = 0; j < n; ++j) out[j] = centroid[j] + t * (centroid[j] - worst[j]);
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
    const double best = values[order[0]], worst = values[order[n]];
    if (std::isfinite(worst) && worst - best <= options.f_tol) {
      result.converged = true;
      break;
    }
    if (result.evals >= options.max_evals) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) centroid[j] += simplex[order[i]][j] / n;
    }
    point(kReflect, trial);
    const double f_r = eval(trial);
    if (f_r < best) {
      point(kExpand, trial2);
      const double f_e = eval(trial2);
      if (f_e < f_r) {
        simplex[order[n]] = trial2;
        values[order[n]] = f_e;
      } else {
        simplex[order[n]] = trial;
        values[order[n]] = f_r;
      }
      continue;
    }
    if (f_r < values[order[n - 1]]) {
      simplex[order[n]] = trial;
      values[order[n]] = f_r;
      continue;
    }
    const bool outside = f_r < worst;
    point(outside ? kContract : -kContract, trial2);
    const double f_c = eval(trial2);
    if (f_c < (outside ? f_r : worst)) {
      simplex[order[n]] = trial2;
      values[order[n]] = f_c;
      continue;
    }
    const auto& b = simplex[order[0]];
    for (int i = 1; i <= n; ++i) {
      auto& v = simplex[order[i]];
      for (int j = 0; j < n; ++j) v[j] = b[j] + kShrink * (v[j] - b[j]);
      values[order[i]] = eval(v);
    }
  }
  const int best = static_cast<int>(std::min_element(values.begin(), values.end()) -
                                    values.begin());
  result.x = simplex[best];
  result.fx = values[best];
  return result;
}

std::vector<std::vector<double>> LatinHypercube(int n, int dim, std::uint64_t seed) {
  if (n < 1 || dim < 1) throw InvalidArgument("hypercube needs n, dim >= 1");
  boost::random::mt19937_64 rng(seed);
  boost::random::uniform_01<double> unif;
  std::vector<std::vector<double>> points(n, std::vector<double>(dim));
  std::vector<int> perm(n);
  for (int d = 0; d < dim; ++d) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      boost::random::uniform_int_distribution<int> pick(0, i);
      std::swap(perm[i], perm[pick(rng)]);
    }
    for (int i = 0; i < n; ++i) points[i][d] = (perm[i] + unif(rng)) / n;
  }
  return points;
}

}  // namespace rsaexh::optim
