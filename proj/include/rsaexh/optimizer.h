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

// Derivative-free minimization and space-filling start points.

#ifndef RSAEXH_OPTIMIZER_H_
#define RSAEXH_OPTIMIZER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rsaexh::optim {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  int max_evals = 4000;
  // Stop once the objective values at the simplex vertices differ by less
  // than this.
  double f_tol = 1e-9;
  double initial_step = 1.0;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Minimizes f from x0. Non-finite objective values are treated as +inf.
NelderMeadResult NelderMead(const Objective& f, std::vector<double> x0,
                            const NelderMeadOptions& options = {});

// n points in [0,1)^dim with exactly one point per 1/n stratum in every
// coordinate. Deterministic given the seed.
std::vector<std::vector<double>> LatinHypercube(int n, int dim, std::uint64_t seed);

}  // namespace rsaexh::optim

#endif  // RSAEXH_OPTIMIZER_H_
