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

// Closed-form predictions of the nine model variants for the canonical
// two-world scenario. Every model exposes the same outputs: the comprehension
// posteriors L_1(w_ab | A) and L_1(w_ab | A&B), and production distributions
// over the three messages in each world (S_2, or the marginal S_1 for RSA-LI1).
//
// Formulas are evaluated in log space. Priors are clamped to
// [1e-12, 1 - 1e-12]; at p in {0, 1} the posteriors of the Bayesian models are
// returned as their continuity limit p. The first-speaker functions BaseRsaS1
// and LiS1 take p unclamped and return their exact limits at the endpoints.

#ifndef RSAEXH_MODEL_ZOO_H_
#define RSAEXH_MODEL_ZOO_H_

#include <array>
#include <optional>
#include <string_view>

#include "rsaexh/scenario.h"

namespace rsaexh {

enum class ModelId {
  kBaseRsa,
  kWrsa,
  kBwrsa,
  kSvrsa1,
  kSvrsa2,
  kFreeLu,
  kExhLu,
  kRsaLi1,
  kRsaLi2,
};

inline constexpr std::array<ModelId, 9> kAllModels = {
    ModelId::kBaseRsa, ModelId::kWrsa,   ModelId::kBwrsa,
    ModelId::kSvrsa1,  ModelId::kSvrsa2, ModelId::kFreeLu,
    ModelId::kExhLu,   ModelId::kRsaLi1, ModelId::kRsaLi2};

// Lowercase CLI name: base, wrsa, bwrsa, svrsa1, svrsa2, free-lu, exh-lu,
// li1, li2.
std::string_view ModelName(ModelId model);
std::optional<ModelId> ParseModelId(std::string_view name);

// True for the models with the extra prior parameter xi.
bool UsesXi(ModelId model);

// Production distributions are indexed by Index(Message).
using MessageDistribution = std::array<double, kNumMessages>;

struct Predictions {
  double post_a = 0.0;   // L_1(w_ab | A)
  double post_ab = 0.0;  // L_1(w_ab | A&B)
  // logit(post_a) - logit(p), computed without cancellation; positive exactly
  // when A raises the probability of w_ab.
  double post_a_log_odds_shift = 0.0;
  MessageDistribution prod_wa{};
  MessageDistribution prod_wab{};

  const MessageDistribution& Production(World w) const {
    return w == World::kA ? prod_wa : prod_wab;
  }
};

// Dispatches to the closed forms below. Throws MissingParameter when xi is
// required but absent, InvalidArgument on invalid parameters or p outside
// [0,1]. The LU models use params.rho when set, otherwise their fixed priors.
Predictions Predict(ModelId model, const ModelParams& params, double p);

// Base RSA.
double BaseRsaL1(const ModelParams& params, double p);
MessageDistribution BaseRsaS1(const ModelParams& params, double p, World world);
MessageDistribution BaseRsaS2(const ModelParams& params, double p, World world);

// Baseline second-level speaker built on any first listener, given
// L_1(w_ab | A) as log-odds (+-inf allowed). A&B and A&~B are read literally.
MessageDistribution BaselineS2FromLogOdds(const ModelParams& params,
                                          double listener_log_odds, World world);

// Wonky-world models; params.xi is the wonkiness prior omega.
double WrsaL1(const ModelParams& params, double p);
double BwrsaL1(const ModelParams& params, double p);

// Supervaluationist model; params.xi is the total-QUD prior q, params.chi the
// exhaustification prior. Variant 1 mixes the partial- and total-QUD
// speakers for production; variant 2 uses the total-QUD speaker.
Predictions SvrsaPredict(const ModelParams& params, double p, int variant);

// First-level supervaluationist speaker S_1(. | w, Q).
MessageDistribution SvrsaS1(const ModelParams& params, double p, World world,
                            Qud qud);

// Lexical uncertainty with an arbitrary interpretation prior.
Predictions LuPredict(const ModelParams& params, double p,
                      const InterpretationPrior& rho);

// Lexical intentions; variant 1 produces with the marginal S_1, variant 2
// with a baseline S_2 on the marginal L_1.
Predictions LiPredict(const ModelParams& params, double p, int variant);
MessageDistribution LiS1(const ModelParams& params, double p, World world);

}  // namespace rsaexh

#endif  // RSAEXH_MODEL_ZOO_H_
