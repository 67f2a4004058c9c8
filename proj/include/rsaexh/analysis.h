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

// Analytic anti-exhaustivity conditions, region scans over the prior, and
// prediction sweeps.

#ifndef RSAEXH_ANALYSIS_H_
#define RSAEXH_ANALYSIS_H_

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsaexh/model_zoo.h"
#include "rsaexh/scenario.h"

namespace rsaexh {

enum class Predicate {
  kListenerAntiExh,            // L_1(w_ab | A) > p
  kSpeakerAntiExh,             // P(A | w_ab) > P(A&B | w_ab)
  kProductionExplicitPreferred,  // P(A&~B | w_a) > P(A | w_a)
};

inline constexpr std::array<Predicate, 3> kAllPredicates = {
    Predicate::kListenerAntiExh, Predicate::kSpeakerAntiExh,
    Predicate::kProductionExplicitPreferred};

// listener-anti-exh, speaker-anti-exh, explicit-preferred.
std::string_view ToString(Predicate predicate);
std::optional<Predicate> ParsePredicate(std::string_view name);

// Base RSA conditions in closed form, for p in (0,1).
// log p - log(1-p) > delta_anb - delta_ab.
bool CheckListenerAntiExhBase(const ModelParams& params, double p);
// -log p < delta_ab.
bool CheckSpeakerAntiExhBase(const ModelParams& params, double p);
// -log(1-p) > delta_anb.
bool CheckExplicitPreferred(const ModelParams& params, double p);

// Largest wonkiness prior for which the Bayesian wonky-world listener shows
// anti-exhaustivity somewhere in p: f(c_ab) / (f(c_ab) - f(c_ab - log 2) +
// f(c_anb - log 2)), f the logistic scaled by lambda.
double BwrsaAntiExhThreshold(const ModelParams& params);

// Direct evaluation of a predicate on the model's comprehension posterior or
// production distributions. p = 0 and p = 1 are evaluated at 1e-9 and
// 1 - 1e-9.
bool EvaluatePredicate(ModelId model, const ModelParams& params,
                       Predicate predicate, double p);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct RegionReport {
  ModelId model = ModelId::kBaseRsa;
  ModelParams params;
  Predicate predicate = Predicate::kListenerAntiExh;
  std::vector<Interval> intervals;  // disjoint, sorted, within [0,1]
};

inline constexpr double kBisectionTolerance = 1e-6;

// Evaluates the predicate on a grid over [0,1] and refines every sign change
// by bisection. grid_step must lie in (0, 0.01].
RegionReport ScanRegions(ModelId model, const ModelParams& params,
                         Predicate predicate, double grid_step = 0.01);

struct SweepRow {
  double p = 0.0;
  Predictions predictions;
  std::array<bool, 3> predicates{};  // ordered as kAllPredicates
};

// n interior points i / (n + 1), i = 1..n.
std::vector<double> UniformGrid(int n);

std::vector<SweepRow> Sweep(ModelId model, const ModelParams& params,
                            std::span<const double> grid);

// Shortest round-trippable rendering with 9 significant digits.
std::string FormatNumber(double x);

void WriteSweepCsv(std::ostream& out, ModelId model,
                   std::span<const SweepRow> rows);
void WriteSweepJson(std::ostream& out, ModelId model,
                    std::span<const SweepRow> rows);

}  // namespace rsaexh

#endif  // RSAEXH_ANALYSIS_H_
