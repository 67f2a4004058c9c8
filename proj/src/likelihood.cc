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

#include "rsaexh/likelihood.h"

#include <cmath>
#include <numbers>

#include "rsaexh/errors.h"

namespace rsaexh {

double LogNormalCdf(double x) {
  if (x > -30.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  // Asymptotic series of the Mills ratio.
  const double z = 1.0 / (x * x);
  double term = 1.0, series = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2.0 * k - 1.0) * z;
    series += term;
  }
  return LogNormalPdf(x) - std::log(-x) + std::log(series);
}

double LogNormalPdf(double x) {
  return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
}

double SmoothedProbability(const MessageDistribution& pred, Message u,
                           double epsilon) {
  return (pred[Index(u)] + epsilon) / (1.0 + kNumMessages * epsilon);
}

double ProductionLoglik(const MessageDistribution& pred, Message observed,
                        double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be nonnegative");
  const double prob = SmoothedProbability(pred, observed, epsilon);
  if (!(prob > 0.0)) {
    throw NonfiniteLikelihood("message " + std::string(ToString(observed)) +
                              " has probability 0");
  }
  return std::log(prob);
}

double ComprehensionLoglik(double pred, double observed, double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (observed <= 0.0) return LogNormalCdf((0.0 - pred) / sigma);
  if (observed >= 1.0) return LogNormalCdf((pred - 1.0) / sigma);
  return LogNormalPdf((observed - pred) / sigma) - std::log(sigma);
}

double DatasetLoglik(ModelId model, const ModelParams& params,
                     const NoiseParams& noise, const Dataset& dataset) {
  double total = 0.0;
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    const ObservationRow& row = dataset.rows[i];
    try {
      const Predictions pred = Predict(model, params, row.prior);
      double ll = 0.0;
      if (row.survey == Survey::kComprehension) {
        if (!row.posterior) throw InvalidArgument("comprehension row without posterior");
        const bool bare = row.condition == Condition::kUttA;
        ll = ComprehensionLoglik(bare ? pred.post_a : pred.post_ab, *row.posterior,
                                 bare ? noise.sigma_a : noise.sigma_ab);
      } else {
        const auto message = row.message ? ToMessage(*row.message) : std::nullopt;
        if (!message) {
          throw InvalidArgument("production row needs a merged message category");
        }
        const World world = row.condition == Condition::kWorldA ? World::kA : World::kAB;
        ll = ProductionLoglik(pred.Production(world), *message, noise.epsilon);
      }
      if (!std::isfinite(ll)) throw NonfiniteLikelihood("non-finite log-likelihood");
      total += ll;
    } catch (const Error& e) {
      const std::string what = "row " + std::to_string(i) + ": " + e.message();
      if (dynamic_cast<const NonfiniteLikelihood*>(&e)) throw NonfiniteLikelihood(what);
      if (dynamic_cast<const MissingParameter*>(&e)) throw MissingParameter(what);
      throw InvalidArgument(what);
    }
  }
  return total;
}

}  // namespace rsaexh
