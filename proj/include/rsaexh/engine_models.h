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

// Each model variant expressed as a generic scenario for the recursive
// engine. Used as a brute-force reference for the closed forms.

#ifndef RSAEXH_ENGINE_MODELS_H_
#define RSAEXH_ENGINE_MODELS_H_

#include "rsaexh/engine.h"
#include "rsaexh/model_zoo.h"
#include "rsaexh/scenario.h"

namespace rsaexh {

// Worlds, messages and lifted variables indexed as in scenario.h.
engine::GenericScenario BuildScenario(ModelId model, const ModelParams& params,
                                      double p);

// Runs the recursion to depth 2 and reads off the same quantities as Predict.
Predictions EnginePredict(ModelId model, const ModelParams& params, double p);

}  // namespace rsaexh

#endif  // RSAEXH_ENGINE_MODELS_H_
