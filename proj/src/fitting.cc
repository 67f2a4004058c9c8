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

#include "rsaexh/fitting.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "rsaexh/errors.h"
#include "rsaexh/likelihood.h"
#include "rsaexh/log_math.h"
#include "rsaexh/optimizer.h"

namespace rsaexh {

namespace {

// Each coordinate maps the real line onto (lo, hi) through a scaled
// logistic. Starting points are drawn from [start_lo, start_hi], on a log
// scale when log_start is set.
struct Coordinate {
  double lo, hi;
  double start_lo, start_hi;
  bool log_start = false;

  double ToNatural(double z) const { return lo + (hi - lo) * Logistic(z); }
  double ToUnbounded(double x) const { return Logit((x - lo) / (hi - lo)); }
  double Start(double u) const {
    if (log_start) {
      return std::exp(std::log(start_lo) + u * (std::log(start_hi) - std::log(start_lo)));
    }
    return start_lo + u * (start_hi - start_lo);
  }
};

const Coordinate kLambda{0.0, kMaxLambda, 0.3, 30.0, true};
const Coordinate kDelta{0.0, kMaxDelta, 0.01, 3.0, false};
const Coordinate kXi{0.0, 1.0, 0.02, 0.98, false};
const Coordinate kSigma{0.0, kMaxSigma, 0.05, 0.8, true};
const Coordinate kEpsilon{0.0, 1.0, 0.002, 0.2, true};

struct Parametrization {
  ModelId model;
  bool equal_costs;
  bool xi;
  std::vector<Coordinate> coords;

  Parametrization(ModelId m, bool equal) : model(m), equal_costs(equal), xi(UsesXi(m)) {
    coords.push_back(kLambda);
    coords.push_back(kDelta);
    if (!equal_costs) coords.push_back(kDelta);
    if (xi) coords.push_back(kXi);
    coords.push_back(kSigma);
    coords.push_back(kSigma);
    coords.push_back(kEpsilon);
  }

  void Decode(std::span<const double> z, ModelParams& params, NoiseParams& noise) const {
    int k = 0;
    auto next = [&] {
      const double v = coords[k].ToNatural(z[k]);
      ++k;
      return v;
    };
    params = ModelParams{};
    params.lambda = next();
    params.delta_ab = next();
    params.delta_anb = equal_costs ? params.delta_ab : next();
    if (xi) params.xi = next();
    noise.sigma_a = next();
    noise.sigma_ab = next();
    noise.epsilon = next();
  }
};

FitResult RunFit(ModelId model, const Dataset& dataset, const FitOptions& options,
                 bool equal_costs) {
  if (options.restarts < 1 || options.refine_top < 1) {
    throw InvalidArgument("fit needs at least one restart");
  }
  const Parametrization param(model, equal_costs);
  const int dim = static_cast<int>(param.coords.size());

  auto objective = [&](std::span<const double> z) {
    ModelParams params;
    NoiseParams noise;
    param.Decode(z, params, noise);
    if (!(params.lambda > 0.0) || !(noise.sigma_a > 0.0) || !(noise.sigma_ab > 0.0)) {
      return std::numeric_limits<double>::infinity();
    }
    try {
      return -DatasetLoglik(model, params, noise, dataset);
    } catch (const NonfiniteLikelihood&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const auto starts = optim::LatinHypercube(options.restarts, dim, options.seed);
  struct Run {
    optim::NelderMeadResult nm;
    int index;
  };
  std::vector<Run> screened;
  optim::NelderMeadOptions screen;
  screen.max_evals = options.screen_evals;
  screen.f_tol = options.f_tol;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<double> z0(dim);
    for (int k = 0; k < dim; ++k) {
      z0[k] = param.coords[k].ToUnbounded(param.coords[k].Start(starts[r][k]));
    }
    screened.push_back({optim::NelderMead(objective, z0, screen), r});
  }
  std::stable_sort(screened.begin(), screened.end(),
                   [](const Run& a, const Run& b) { return a.nm.fx < b.nm.fx; });

  optim::NelderMeadOptions refine = screen;
  refine.max_evals = options.max_evals;
  std::optional<optim::NelderMeadResult> best;
  const int top = std::min(options.refine_top, options.restarts);
  for (int i = 0; i < top; ++i) {
    auto nm = optim::NelderMead(objective, screened[i].nm.x, refine);
    if (!best || nm.fx < best->fx) best = std::move(nm);
  }
  // A fresh simplex around the winner guards against premature collapse.
  refine.initial_step = 0.1;
  auto polished = optim::NelderMead(objective, best->x, refine);
  if (polished.fx <= best->fx) best = std::move(polished);

  FitResult result;
  result.model = model;
  result.equal_costs = equal_costs;
  result.n_restarts_used = options.restarts;
  result.n_params = ParameterCount(model, equal_costs);
  if (!std::isfinite(best->fx)) {
    result.error = "no starting point produced a finite likelihood";
    result.loglik = -std::numeric_limits<double>::infinity();
    result.aic = std::numeric_limits<double>::infinity();
    return result;
  }
  param.Decode(best->x, result.params, result.noise);
  result.loglik = -best->fx;
  result.aic = Aic(result.n_params, result.loglik);
  result.converged = best->converged;
  result.lambda_at_bound = result.params.lambda >= 0.999 * kMaxLambda;
  return result;
}

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

int ParameterCount(ModelId model, bool equal_costs) {
  return (equal_costs ? 2 : 3) + (UsesXi(model) ? 1 : 0) + 3;
}

double Aic(int n_params, double loglik) { return 2.0 * n_params - 2.0 * loglik; }

FitResult Fit(ModelId model, const Dataset& dataset, const FitOptions& options) {
  return RunFit(model, dataset, options, false);
}

FitResult FitEqualCosts(ModelId model, const Dataset& dataset, const FitOptions& options) {
  return RunFit(model, dataset, options, true);
}

std::vector<FitResult> Compare(std::span<const ModelId> models, const Dataset& dataset,
                               const FitOptions& options, bool equal_costs) {
  if (models.empty()) throw InvalidArgument("compare needs at least one model");
  std::vector<FitResult> results;
  for (ModelId m : models) {
    try {
      results.push_back(RunFit(m, dataset, options, equal_costs));
    } catch (const Error& e) {
      FitResult failed;
      failed.model = m;
      failed.equal_costs = equal_costs;
      failed.n_params = ParameterCount(m, equal_costs);
      failed.loglik = -std::numeric_limits<double>::infinity();
      failed.aic = std::numeric_limits<double>::infinity();
      failed.error = e.what();
      results.push_back(std::move(failed));
    }
  }
  std::stable_sort(results.begin(), results.end(), [](const FitResult& a, const FitResult& b) {
    if (a.error.empty() != b.error.empty()) return a.error.empty();
    return a.aic < b.aic;
  });
  return results;
}

void WriteFitCsv(std::ostream& out, std::span<const FitResult> results) {
  out << "model,lambda,delta_ab,delta_anb,xi,sigma_a,sigma_ab,epsilon,loglik,n_params,"
         "aic,converged\n";
  for (const FitResult& r : results) {
    out << ModelName(r.model);
    if (!r.error.empty()) {
      out << ",,,,,,,,," << r.n_params << ",,false\n";
      continue;
    }
    out << ',' << Num(r.params.lambda) << ',' << Num(r.params.delta_ab) << ','
        << Num(r.params.delta_anb) << ',' << (r.params.xi ? Num(*r.params.xi) : "") << ','
        << Num(r.noise.sigma_a) << ',' << Num(r.noise.sigma_ab) << ','
        << Num(r.noise.epsilon) << ',' << Num(r.loglik) << ',' << r.n_params << ','
        << Num(r.aic) << ',' << (r.converged ? "true" : "false") << '\n';
  }
}

void WriteFitJson(std::ostream& out, std::span<const FitResult> results) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const FitResult& r : results) {
    nlohmann::ordered_json j;
    j["model"] = ModelName(r.model);
    if (r.error.empty()) {
      j["lambda"] = r.params.lambda;
      j["delta_ab"] = r.params.delta_ab;
      j["delta_anb"] = r.params.delta_anb;
      j["xi"] = r.params.xi ? nlohmann::ordered_json(*r.params.xi) : nullptr;
      j["sigma_a"] = r.noise.sigma_a;
      j["sigma_ab"] = r.noise.sigma_ab;
      j["epsilon"] = r.noise.epsilon;
      j["loglik"] = r.loglik;
      j["n_params"] = r.n_params;
      j["aic"] = r.aic;
    } else {
      for (const char* k : {"lambda", "delta_ab", "delta_anb", "xi", "sigma_a", "sigma_ab",
                            "epsilon", "loglik"}) {
        j[k] = nullptr;
      }
      j["n_params"] = r.n_params;
      j["aic"] = nullptr;
    }
    j["converged"] = r.converged;
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace rsaexh
