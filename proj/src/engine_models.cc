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

#include "rsaexh/engine_models.h"

#include <vector>

#include "rsaexh/errors.h"
#include "rsaexh/log_math.h"

namespace rsaexh {

namespace {

using engine::GenericScenario;
using engine::LiftedRole;
using engine::LiftedVariable;

std::vector<double> Costs(const ModelParams& params) {
  return {params.Cost(Message::kA), params.Cost(Message::kAandB),
          params.Cost(Message::kAandNotB)};
}

std::vector<double> WorldPrior(double p) { return {1.0 - p, p}; }

double RequireXi(const ModelParams& params) {
  if (!params.xi) throw MissingParameter("model requires xi");
  return *params.xi;
}

// Truth of the conjunctive messages, identical in every context.
void SetConjunctions(GenericScenario& s) {
  for (World w : kWorlds) {
    s.SetTruthAllContexts(Index(Message::kAandB), Index(w),
                          TruthValue(Message::kAandB, w, Interpretation::kLiteral));
    s.SetTruthAllContexts(Index(Message::kAandNotB), Index(w),
                          TruthValue(Message::kAandNotB, w, Interpretation::kLiteral));
  }
}

// A read under the interpretation given by `interp[value]` of variable `var`.
void SetAmbiguousA(GenericScenario& s, int var,
                   const std::vector<Interpretation>& interp) {
  for (int c = 0; c < s.num_contexts(); ++c) {
    const Interpretation i = interp[s.DecodeContext(c)[var]];
    for (World w : kWorlds) {
      s.SetTruth(Index(Message::kA), Index(w), c, TruthValue(Message::kA, w, i));
    }
  }
}

GenericScenario Base(const ModelParams& params, double p) {
  GenericScenario s(kNumWorlds, Costs(params), WorldPrior(p));
  SetConjunctions(s);
  for (World w : kWorlds) s.SetTruthAllContexts(Index(Message::kA), Index(w), true);
  return s;
}

GenericScenario Wonky(const ModelParams& params, double p, bool bayesian) {
  const double omega = RequireXi(params);
  LiftedVariable b;
  b.name = "b";
  b.prior = {1.0 - omega, omega};
  b.world_prior_by_value = {WorldPrior(p), {0.5, 0.5}};
  GenericScenario s(kNumWorlds, Costs(params), WorldPrior(p), {b});
  SetConjunctions(s);
  for (World w : kWorlds) s.SetTruthAllContexts(Index(Message::kA), Index(w), true);
  s.set_listener_prior(bayesian ? engine::ListenerPrior::kOwn
                                : engine::ListenerPrior::kLiteral);
  return s;
}

GenericScenario Supervaluation(const ModelParams& params, double p) {
  const double q = RequireXi(params);
  LiftedVariable qud;
  qud.name = "Q";
  qud.prior = {1.0 - q, q};
  qud.marginalize_at_first_listener = false;
  qud.cells = {{QudCell(Qud::kPartial, World::kA), QudCell(Qud::kPartial, World::kAB)},
               {QudCell(Qud::kTotal, World::kA), QudCell(Qud::kTotal, World::kAB)}};
  LiftedVariable interp;
  interp.name = "i";
  interp.prior = {1.0 - params.chi, params.chi};
  interp.role = LiftedRole::kExpectedUtility;
  GenericScenario s(kNumWorlds, Costs(params), WorldPrior(p), {qud, interp});
  SetConjunctions(s);
  SetAmbiguousA(s, 1, {Interpretation::kLiteral, Interpretation::kExhaustive});
  return s;
}

GenericScenario LexicalUncertainty(const ModelParams& params, double p,
                                   const InterpretationPrior& rho) {
  LiftedVariable interp;
  interp.name = "i";
  interp.prior = {rho[0], rho[1], rho[2]};
  GenericScenario s(kNumWorlds, Costs(params), WorldPrior(p), {interp});
  SetConjunctions(s);
  SetAmbiguousA(s, 0,
                {Interpretation::kLiteral, Interpretation::kExhaustive,
                 Interpretation::kAntiExhaustive});
  return s;
}

GenericScenario LexicalIntentions(const ModelParams& params, double p) {
  LiftedVariable interp;
  interp.name = "i";
  interp.prior = {0.5, 0.5};
  interp.role = LiftedRole::kSpeakerChoice;
  GenericScenario s(kNumWorlds, Costs(params), WorldPrior(p), {interp});
  SetConjunctions(s);
  SetAmbiguousA(s, 0, {Interpretation::kLiteral, Interpretation::kExhaustive});
  return s;
}

MessageDistribution ToMessages(const engine::Distribution& d) {
  MessageDistribution out{};
  for (int u = 0; u < kNumMessages; ++u) out[u] = d[u];
  return out;
}

}  // namespace

GenericScenario BuildScenario(ModelId model, const ModelParams& params, double p) {
  params.Validate();
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("prior must lie in [0,1]");
  switch (model) {
    case ModelId::kBaseRsa:
      return Base(params, p);
    case ModelId::kWrsa:
      return Wonky(params, p, false);
    case ModelId::kBwrsa:
      return Wonky(params, p, true);
    case ModelId::kSvrsa1:
    case ModelId::kSvrsa2:
      return Supervaluation(params, p);
    case ModelId::kFreeLu:
      return LexicalUncertainty(params, p, params.rho.value_or(kFreeLuPrior));
    case ModelId::kExhLu:
      return LexicalUncertainty(params, p, params.rho.value_or(kExhLuPrior));
    case ModelId::kRsaLi1:
    case ModelId::kRsaLi2:
      return LexicalIntentions(params, p);
  }
  throw InvalidArgument("unknown model");
}

Predictions EnginePredict(ModelId model, const ModelParams& params, double p) {
  const GenericScenario scenario = BuildScenario(model, params, p);
  const engine::Recursion rec = engine::Iterate(scenario, params.lambda, 2);
  const auto& l1 = rec.levels[0].listener;
  const auto& s1 = rec.levels[0].speaker;
  const auto& s2 = rec.levels[1].speaker;
  const int wa = Index(World::kA), wab = Index(World::kAB);

  Predictions out;
  out.post_a = l1.WorldMarginal(Index(Message::kA))[wab];
  out.post_ab = l1.WorldMarginal(Index(Message::kAandB))[wab];
  out.post_a_log_odds_shift = Logit(out.post_a) - Logit(p);
  switch (model) {
    case ModelId::kSvrsa1: {
      // Production averages the QUD-specific speakers under the QUD prior.
      const double q = *params.xi;
      for (World w : kWorlds) {
        MessageDistribution& row = w == World::kA ? out.prod_wa : out.prod_wab;
        for (int u = 0; u < kNumMessages; ++u) {
          row[u] = (1.0 - q) * s2.Row(Index(w), Index(Qud::kPartial))[u] +
                   q * s2.Row(Index(w), Index(Qud::kTotal))[u];
        }
      }
      break;
    }
    case ModelId::kSvrsa2:
      out.prod_wa = ToMessages(s2.Row(wa, Index(Qud::kTotal)));
      out.prod_wab = ToMessages(s2.Row(wab, Index(Qud::kTotal)));
      break;
    case ModelId::kRsaLi1:
      out.prod_wa = ToMessages(s1.MessageMarginal(wa, 0));
      out.prod_wab = ToMessages(s1.MessageMarginal(wab, 0));
      break;
    default:
      out.prod_wa = ToMessages(s2.Row(wa, 0));
      out.prod_wab = ToMessages(s2.Row(wab, 0));
      break;
  }
  return out;
}

}  // namespace rsaexh
