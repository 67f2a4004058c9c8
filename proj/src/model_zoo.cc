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

#include "rsaexh/model_zoo.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rsaexh/errors.h"
#include "rsaexh/log_math.h"

namespace rsaexh {

namespace {

constexpr double kPriorClamp = 1e-12;
constexpr double kLog2 = std::numbers::ln2;

constexpr int kA = Index(Message::kA);
constexpr int kAB = Index(Message::kAandB);
constexpr int kANB = Index(Message::kAandNotB);

double ClampPrior(double p) {
  return std::clamp(p, kPriorClamp, 1.0 - kPriorClamp);
}

void CheckPrior(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("prior must lie in [0,1]");
}

double RequireXi(const ModelParams& params, std::string_view model) {
  if (!params.xi) {
    throw MissingParameter(std::string(model) + " requires xi");
  }
  return *params.xi;
}

// log S_1(A | w) of the baseline speaker choosing between A (utility
// log_prior) and the explicit message (utility -cost).
double BaseLogS1A(double lambda, double log_prior, double cost) {
  return LogLogistic(lambda * (log_prior + cost));
}

// Two-message logistic choice between A and the explicit message, given A's
// utility advantage.
MessageDistribution TwoWay(double lambda, double advantage, Message explicit_msg) {
  MessageDistribution out{};
  out[kA] = Logistic(lambda * advantage);
  out[Index(explicit_msg)] = Logistic(-lambda * advantage);
  return out;
}

MessageDistribution SoftmaxOfLogs(double lambda,
                                  const std::array<double, kNumMessages>& values) {
  double m = kNegInf;
  for (double v : values) m = std::max(m, v);
  MessageDistribution out{};
  double total = 0.0;
  for (int u = 0; u < kNumMessages; ++u) {
    out[u] = values[u] == kNegInf ? 0.0 : std::exp(lambda * (values[u] - m));
    total += out[u];
  }
  for (double& v : out) v /= total;
  return out;
}

// Posterior whose log-odds exceed those of p by `shift`, written as p plus
// an increment carrying the sign of the shift.
double PosteriorFromShift(double p, double shift) {
  if (shift > 30.0) return Logistic(Logit(p) + shift);
  const double e = std::expm1(shift);
  if (shift < -1.0) return p * std::exp(shift) / (1.0 + p * e);
  return p + p * (1.0 - p) * e / (1.0 + p * e);
}

// The listener's log-odds for w_ab after A are the prior log-odds plus
// `shift`.
Predictions FromShift(const ModelParams& params, double p, double shift) {
  const double log_odds = Logit(p) + shift;
  Predictions out;
  out.post_a = PosteriorFromShift(p, shift);
  out.post_a_log_odds_shift = shift;
  out.post_ab = 1.0;
  out.prod_wa = BaselineS2FromLogOdds(params, log_odds, World::kA);
  out.prod_wab = BaselineS2FromLogOdds(params, log_odds, World::kAB);
  return out;
}

double BaseShift(const ModelParams& params, double p) {
  const double lp = std::log(p), lq = std::log1p(-p);
  return BaseLogS1A(params.lambda, lp, params.delta_ab) -
         BaseLogS1A(params.lambda, lq, params.delta_anb);
}

double WrsaShift(const ModelParams& params, double p, bool bayesian) {
  const double omega = *params.xi;
  const double lam = params.lambda;
  const double lp = std::log(p), lq = std::log1p(-p);
  const double l_usual = SafeLog(1.0 - omega), l_wonky = SafeLog(omega);
  // Usual speaker: base S_1. Wonky speaker: base S_1 under a uniform prior.
  const double s_ab_usual = BaseLogS1A(lam, lp, params.delta_ab);
  const double s_a_usual = BaseLogS1A(lam, lq, params.delta_anb);
  const double s_ab_wonky = BaseLogS1A(lam, -kLog2, params.delta_ab);
  const double s_a_wonky = BaseLogS1A(lam, -kLog2, params.delta_anb);
  if (bayesian) {
    const double mix_ab = LogAddExp(l_usual + s_ab_usual, l_wonky + s_ab_wonky);
    const double mix_a = LogAddExp(l_usual + s_a_usual, l_wonky + s_a_wonky);
    return mix_ab - mix_a;
  }
  // Non-Bayesian: under b_1 the listener also uses the uniform world prior.
  const double num = LogAddExp(lp + l_usual + s_ab_usual, -kLog2 + l_wonky + s_ab_wonky);
  const double den = LogAddExp(lq + l_usual + s_a_usual, -kLog2 + l_wonky + s_a_wonky);
  return num - den - (lp - lq);
}

struct SvrsaTerms {
  double la, lab, lanb;      // log S_1(u | w, Q_partial)
  double lt, ltn;            // log S_1(A | w_a, Q_total), log S_1(A&~B | w_a, Q_total)
  double log_da, log_dab, log_danb;  // normalizers of L_1(. | u)
};

SvrsaTerms ComputeSvrsaTerms(const ModelParams& params, double p) {
  const double lam = params.lambda;
  const double q = *params.xi;
  const double lp = std::log(p), lq = std::log1p(-p);
  const double l_partial = SafeLog(1.0 - q), l_total = SafeLog(q);
  SvrsaTerms t;
  const std::array<double, 3> partial = {0.0, -lam * params.delta_anb,
                                         -lam * params.delta_ab};
  t.la = -LogSumExp(partial);
  t.lanb = t.la - lam * params.delta_anb;
  t.lab = t.la - lam * params.delta_ab;
  const double x = lam * ((1.0 - params.chi) * lq + params.delta_anb);
  t.lt = LogLogistic(x);
  t.ltn = LogLogistic(-x);
  t.log_da = LogAddExp(l_partial + t.la, l_total + lq + t.lt);
  t.log_dab = LogAddExp(l_partial + t.lab, l_total + lp);
  t.log_danb = LogAddExp(l_partial + t.lanb, l_total + lq + t.ltn);
  return t;
}

}  // namespace

std::string_view ModelName(ModelId model) {
  switch (model) {
    case ModelId::kBaseRsa:
      return "base";
    case ModelId::kWrsa:
      return "wrsa";
    case ModelId::kBwrsa:
      return "bwrsa";
    case ModelId::kSvrsa1:
      return "svrsa1";
    case ModelId::kSvrsa2:
      return "svrsa2";
    case ModelId::kFreeLu:
      return "free-lu";
    case ModelId::kExhLu:
      return "exh-lu";
    case ModelId::kRsaLi1:
      return "li1";
    case ModelId::kRsaLi2:
      return "li2";
  }
  return "?";
}

std::optional<ModelId> ParseModelId(std::string_view name) {
  for (ModelId m : kAllModels) {
    if (ModelName(m) == name) return m;
  }
  return std::nullopt;
}

bool UsesXi(ModelId model) {
  return model == ModelId::kWrsa || model == ModelId::kBwrsa ||
         model == ModelId::kSvrsa1 || model == ModelId::kSvrsa2;
}

MessageDistribution BaselineS2FromLogOdds(const ModelParams& params,
                                          double listener_log_odds, World world) {
  const double log_l1 = LogLogistic(listener_log_odds);
  const double log_l0 = LogLogistic(-listener_log_odds);
  if (world == World::kA) {
    return TwoWay(params.lambda, log_l0 + params.delta_anb, Message::kAandNotB);
  }
  return TwoWay(params.lambda, log_l1 + params.delta_ab, Message::kAandB);
}

double BaseRsaL1(const ModelParams& params, double p) {
  CheckPrior(p);
  if (p == 0.0 || p == 1.0) return p;
  return PosteriorFromShift(p, BaseShift(params, p));
}

MessageDistribution BaseRsaS1(const ModelParams& params, double p, World world) {
  CheckPrior(p);
  if (world == World::kA) {
    return TwoWay(params.lambda, std::log1p(-p) + params.delta_anb,
                  Message::kAandNotB);
  }
  return TwoWay(params.lambda, std::log(p) + params.delta_ab, Message::kAandB);
}

MessageDistribution BaseRsaS2(const ModelParams& params, double p, World world) {
  CheckPrior(p);
  const double pc = ClampPrior(p);
  return BaselineS2FromLogOdds(params, Logit(pc) + BaseShift(params, pc), world);
}

double WrsaL1(const ModelParams& params, double p) {
  CheckPrior(p);
  RequireXi(params, "wrsa");
  const double pc = ClampPrior(p);
  return PosteriorFromShift(pc, WrsaShift(params, pc, false));
}

double BwrsaL1(const ModelParams& params, double p) {
  CheckPrior(p);
  RequireXi(params, "bwrsa");
  if (p == 0.0 || p == 1.0) return p;
  return PosteriorFromShift(p, WrsaShift(params, p, true));
}

MessageDistribution SvrsaS1(const ModelParams& params, double p, World world,
                            Qud qud) {
  CheckPrior(p);
  const double pc = ClampPrior(p);
  const double lam = params.lambda;
  if (qud == Qud::kPartial) {
    return SoftmaxOfLogs(1.0, {0.0, -lam * params.delta_ab, -lam * params.delta_anb});
  }
  if (world == World::kAB) return {0.0, 1.0, 0.0};
  return TwoWay(lam, (1.0 - params.chi) * std::log1p(-pc) + params.delta_anb,
                Message::kAandNotB);
}

Predictions SvrsaPredict(const ModelParams& params, double p, int variant) {
  CheckPrior(p);
  const double q = RequireXi(params, "svrsa");
  if (!(params.chi > 0.0)) {
    throw InvalidArgument("svrsa requires a positive exhaustification prior");
  }
  if (variant != 1 && variant != 2) throw InvalidArgument("svrsa variant is 1 or 2");
  const double pc = ClampPrior(p);
  const double lp = std::log(pc);
  const SvrsaTerms t = ComputeSvrsaTerms(params, pc);
  const double l_partial = SafeLog(1.0 - q), l_total = SafeLog(q);

  Predictions out;
  out.post_a_log_odds_shift = -Softplus(l_total + t.lt - (l_partial + t.la));
  out.post_a = PosteriorFromShift(pc, out.post_a_log_odds_shift);
  out.post_ab = std::exp(lp + LogAddExp(l_partial + t.lab, l_total) - t.log_dab);
  if (p == 0.0 || p == 1.0) out.post_a = p;

  // S_2 utilities use log L_1 with the QUD prior factored out; the factor is
  // constant across messages and cancels in the softmax.
  const MessageDistribution partial = SoftmaxOfLogs(
      params.lambda, {t.la - t.log_da, t.lab - t.log_dab - params.delta_ab,
                      t.lanb - t.log_danb - params.delta_anb});
  const MessageDistribution total_wa = TwoWay(
      params.lambda,
      (t.lt - t.log_da) - (t.ltn - t.log_danb) + params.delta_anb,
      Message::kAandNotB);
  const MessageDistribution total_wab = {0.0, 1.0, 0.0};

  if (variant == 2) {
    out.prod_wa = total_wa;
    out.prod_wab = total_wab;
  } else {
    for (int u = 0; u < kNumMessages; ++u) {
      out.prod_wa[u] = (1.0 - q) * partial[u] + q * total_wa[u];
      out.prod_wab[u] = (1.0 - q) * partial[u] + q * total_wab[u];
    }
  }
  return out;
}

Predictions LuPredict(const ModelParams& params, double p,
                      const InterpretationPrior& rho) {
  CheckPrior(p);
  const double pc = ClampPrior(p);
  const double lam = params.lambda;
  const double lp = std::log(pc), lq = std::log1p(-pc);
  const double rl = SafeLog(rho[Index(Interpretation::kLiteral)]);
  const double re = SafeLog(rho[Index(Interpretation::kExhaustive)]);
  const double ra = SafeLog(rho[Index(Interpretation::kAntiExhaustive)]);
  // S_1(A | w, i); A is false in w_ab under exh and in w_a under anti-exh.
  const double wa_lit = BaseLogS1A(lam, lq, params.delta_anb);
  const double wab_lit = BaseLogS1A(lam, lp, params.delta_ab);
  const double wa_exh = BaseLogS1A(lam, 0.0, params.delta_anb);
  const double wab_anti = BaseLogS1A(lam, 0.0, params.delta_ab);
  const double num = LogAddExp(rl + wab_lit, ra + wab_anti);
  const double den = LogAddExp(rl + wa_lit, re + wa_exh);
  Predictions out = FromShift(params, pc, num - den);
  if (p == 0.0 || p == 1.0) out.post_a = p;
  return out;
}

MessageDistribution LiS1(const ModelParams& params, double p, World world) {
  CheckPrior(p);
  const double lam = params.lambda;
  MessageDistribution out{};
  if (world == World::kA) {
    // (A, lit), (A, exh), and A&~B counted once per interpretation.
    const double a = LogAddExp(0.0, lam * std::log1p(-p));
    const double explicit_msg = kLog2 - lam * params.delta_anb;
    const double z = LogAddExp(a, explicit_msg);
    out[kA] = std::exp(a - z);
    out[kANB] = std::exp(explicit_msg - z);
  } else {
    const double x = lam * (std::log(p) + params.delta_ab);
    out[kA] = std::exp(-Softplus(kLog2 - x));
    out[kAB] = std::exp(-Softplus(x - kLog2));
  }
  return out;
}

Predictions LiPredict(const ModelParams& params, double p, int variant) {
  CheckPrior(p);
  if (variant != 1 && variant != 2) throw InvalidArgument("li variant is 1 or 2");
  const double pc = ClampPrior(p);
  const double lam = params.lambda;
  const double lp = std::log(pc), lq = std::log1p(-pc);
  const double a = LogAddExp(0.0, lam * lq);
  const double log_s1_a_wa = a - LogAddExp(a, kLog2 - lam * params.delta_anb);
  const double log_s1_a_wab = -Softplus(kLog2 - lam * (lp + params.delta_ab));
  Predictions out = FromShift(params, pc, log_s1_a_wab - log_s1_a_wa);
  if (p == 0.0 || p == 1.0) out.post_a = p;
  if (variant == 1) {
    out.prod_wa = LiS1(params, p, World::kA);
    out.prod_wab = LiS1(params, p, World::kAB);
  }
  return out;
}

Predictions Predict(ModelId model, const ModelParams& params, double p) {
  CheckPrior(p);
  params.Validate();
  if (UsesXi(model)) RequireXi(params, ModelName(model));
  const double pc = ClampPrior(p);
  switch (model) {
    case ModelId::kBaseRsa: {
      Predictions out = FromShift(params, pc, BaseShift(params, pc));
      if (p == 0.0 || p == 1.0) out.post_a = p;
      return out;
    }
    case ModelId::kWrsa:
      return FromShift(params, pc, WrsaShift(params, pc, false));
    case ModelId::kBwrsa: {
      Predictions out = FromShift(params, pc, WrsaShift(params, pc, true));
      if (p == 0.0 || p == 1.0) out.post_a = p;
      return out;
    }
    case ModelId::kSvrsa1:
      return SvrsaPredict(params, p, 1);
    case ModelId::kSvrsa2:
      return SvrsaPredict(params, p, 2);
    case ModelId::kFreeLu:
      return LuPredict(params, p, params.rho.value_or(kFreeLuPrior));
    case ModelId::kExhLu:
      return LuPredict(params, p, params.rho.value_or(kExhLuPrior));
    case ModelId::kRsaLi1:
      return LiPredict(params, p, 1);
    case ModelId::kRsaLi2:
      return LiPredict(params, p, 2);
  }
  throw InvalidArgument("unknown model");
}

}  // namespace rsaexh
