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

// Joint maximum-likelihood fits of production and comprehension data, and
// AIC model comparison.

#ifndef RSAEXH_FITTING_H_
#define RSAEXH_FITTING_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rsaexh/data_io.h"
#include "rsaexh/model_zoo.h"
#include "rsaexh/scenario.h"

namespace rsaexh {

inline constexpr double kMaxLambda = 1e3;
inline constexpr double kMaxDelta = 200.0;
inline constexpr double kMaxSigma = 5.0;

struct FitOptions {
  // Latin-hypercube starting points.
  int restarts = 32;
  std::uint64_t seed = 1;
  // Every start is run for screen_evals evaluations; the refine_top best are
  // then run to convergence and the winner is polished once more.
  int screen_evals = 300;
  int refine_top = 4;
  int max_evals = 6000;
  double f_tol = 1e-7;
};

struct FitResult {
  ModelId model = ModelId::kBaseRsa;
  ModelParams params;
  NoiseParams noise;
  double loglik = 0.0;
  int n_params = 0;
  double aic = 0.0;
  bool converged = false;
  int n_restarts_used = 0;
  bool equal_costs = false;
  // lambda ended within 0.1% of its upper bound.
  bool lambda_at_bound = false;
  // Set when the fit failed; the numeric fields are then meaningless.
  std::string error;
};

// Free model parameters plus the three noise parameters.
int ParameterCount(ModelId model, bool equal_costs);
double Aic(int n_params, double loglik);

// The dataset must be preprocessed. Deterministic given options.seed.
FitResult Fit(ModelId model, const Dataset& dataset, const FitOptions& options = {});
// Same with delta_ab = delta_anb.
FitResult FitEqualCosts(ModelId model, const Dataset& dataset,
                        const FitOptions& options = {});

// Fits every model and sorts by AIC (failed fits last, in input order).
std::vector<FitResult> Compare(std::span<const ModelId> models, const Dataset& dataset,
                               const FitOptions& options = {}, bool equal_costs = false);

// Columns: model, lambda, delta_ab, delta_anb, xi, sigma_a, sigma_ab,
// epsilon, loglik, n_params, aic, converged.
void WriteFitCsv(std::ostream& out, std::span<const FitResult> results);
void WriteFitJson(std::ostream& out, std::span<const FitResult> results);

}  // namespace rsaexh

#endif  // RSAEXH_FITTING_H_
