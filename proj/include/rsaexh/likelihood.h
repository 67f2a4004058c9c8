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

// Observation models: epsilon-smoothed production and censored-normal
// (tobit) comprehension.

#ifndef RSAEXH_LIKELIHOOD_H_
#define RSAEXH_LIKELIHOOD_H_

#include "rsaexh/data_io.h"
#include "rsaexh/model_zoo.h"
#include "rsaexh/scenario.h"

namespace rsaexh {

// log of the standard normal CDF, accurate far into the lower tail.
double LogNormalCdf(double x);
// log of the standard normal density.
double LogNormalPdf(double x);

// (pred[u] + epsilon) / (1 + 3 epsilon).
double SmoothedProbability(const MessageDistribution& pred, Message u,
                           double epsilon);

// log of SmoothedProbability. Throws NonfiniteLikelihood when the observed
// message has probability 0 and epsilon is 0.
double ProductionLoglik(const MessageDistribution& pred, Message observed,
                        double epsilon);

// Normal around `pred` with standard deviation sigma, censored at 0 and 1.
double ComprehensionLoglik(double pred, double observed, double sigma);

// Sum over rows of a preprocessed dataset: production rows against the
// world's production distribution, comprehension rows against post_A
// (sigma_a) or post_AB (sigma_ab), all at the row's prior. Errors carry the
// row index.
double DatasetLoglik(ModelId model, const ModelParams& params,
                     const NoiseParams& noise, const Dataset& dataset);

}  // namespace rsaexh

#endif  // RSAEXH_LIKELIHOOD_H_
