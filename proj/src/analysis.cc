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

#include "rsaexh/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "json.hpp"
#include "rsaexh/errors.h"
#include "rsaexh/log_math.h"

namespace rsaexh {

namespace {

constexpr double kEndpointOffset = 1e-9;

void RequireInterior(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("prior must lie in (0,1)");
}

}  // namespace

std::string_view ToString(Predicate predicate) {
  switch (predicate) {
    case Predicate::kListenerAntiExh:
      return "listener-anti-exh";
    case Predicate::kSpeakerAntiExh:
      return "speaker-anti-exh";
    case Predicate::kProductionExplicitPreferred:
      return "explicit-preferred";
  }
  return "?";
}

std::optional<Predicate> ParsePredicate(std::string_view name) {
  for (Predicate p : kAllPredicates) {
    if (ToString(p) == name) return p;
  }
  return std::nullopt;
}

bool CheckListenerAntiExhBase(const ModelParams& params, double p) {
  RequireInterior(p);
  return std::log(p) - std::log1p(-p) > params.delta_anb - params.delta_ab;
}

bool CheckSpeakerAntiExhBase(const ModelParams& params, double p) {
  RequireInterior(p);
  return -std::log(p) < params.delta_ab;
}

bool CheckExplicitPreferred(const ModelParams& params, double p) {
  RequireInterior(p);
  return -std::log1p(-p) > params.delta_anb;
}

double BwrsaAntiExhThreshold(const ModelParams& params) {
  params.Validate();
  auto f = [&](double x) { return Logistic(params.lambda * x); };
  const double ln2 = std::numbers::ln2;
  const double num = f(params.delta_ab);
  return num / (num - f(params.delta_ab - ln2) + f(params.delta_anb - ln2));
}

bool EvaluatePredicate(ModelId model, const ModelParams& params,
                       Predicate predicate, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("prior must lie in [0,1]");
  const double pe = std::clamp(p, kEndpointOffset, 1.0 - kEndpointOffset);
  const Predictions pred = Predict(model, params, pe);
  const int a = Index(Message::kA);
  switch (predicate) {
    case Predicate::kListenerAntiExh:
      return pred.post_a_log_odds_shift > 0.0;
    case Predicate::kSpeakerAntiExh:
      return pred.prod_wab[a] > pred.prod_wab[Index(Message::kAandB)];
    case Predicate::kProductionExplicitPreferred:
      return pred.prod_wa[Index(Message::kAandNotB)] > pred.prod_wa[a];
  }
  return false;
}

RegionReport ScanRegions(ModelId model, const ModelParams& params,
                         Predicate predicate, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.01)) {
    throw InvalidArgument("grid step must lie in (0, 0.01]");
  }
  RegionReport report{model, params, predicate, {}};
  const int n = static_cast<int>(std::ceil(1.0 / grid_step - 1e-9));
  auto at = [&](int i) { return i == n ? 1.0 : i * (1.0 / n); };
  auto eval = [&](double p) { return EvaluatePredicate(model, params, predicate, p); };
  // Boundary between a point where the predicate is `left` and one where it
  // is not.
  auto refine = [&](double lo, double hi, bool left) {
    while (hi - lo > kBisectionTolerance) {
      const double mid = 0.5 * (lo + hi);
      (eval(mid) == left ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  bool prev = eval(0.0);
  double start = 0.0;
  for (int i = 1; i <= n; ++i) {
    const bool cur = eval(at(i));
    if (cur != prev) {
      const double edge = refine(at(i - 1), at(i), prev);
      if (cur) {
        start = edge;
      } else {
        report.intervals.push_back({start, edge});
      }
      prev = cur;
    }
  }
  if (prev) report.intervals.push_back({start, 1.0});
  return report;
}

std::vector<double> UniformGrid(int n) {
  if (n < 1) throw InvalidArgument("grid must have at least one point");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = static_cast<double>(i + 1) / (n + 1);
  return grid;
}

std::vector<SweepRow> Sweep(ModelId model, const ModelParams& params,
                            std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("grid must not be empty");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    SweepRow row;
    row.p = p;
    row.predictions = Predict(model, params, p);
    for (std::size_t k = 0; k < kAllPredicates.size(); ++k) {
      row.predicates[k] = EvaluatePredicate(model, params, kAllPredicates[k], p);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

void WriteSweepCsv(std::ostream& out, ModelId model,
                   std::span<const SweepRow> rows) {
  out << "model,p";
  for (Predicate p : kAllPredicates) out << ',' << ToString(p);
  out << ",post_A,post_AB,prod_wa_A,prod_wa_AB,prod_wa_AnB,prod_wab_A,"
         "prod_wab_AB,prod_wab_AnB\n";
  for (const SweepRow& row : rows) {
    out << ModelName(model) << ',' << FormatNumber(row.p);
    for (bool b : row.predicates) out << ',' << (b ? 1 : 0);
    const Predictions& pr = row.predictions;
    out << ',' << FormatNumber(pr.post_a) << ',' << FormatNumber(pr.post_ab);
    for (double v : pr.prod_wa) out << ',' << FormatNumber(v);
    for (double v : pr.prod_wab) out << ',' << FormatNumber(v);
    out << '\n';
  }
}

void WriteSweepJson(std::ostream& out, ModelId model,
                    std::span<const SweepRow> rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows) {
    nlohmann::ordered_json j;
    j["model"] = ModelName(model);
    j["p"] = row.p;
    for (std::size_t k = 0; k < kAllPredicates.size(); ++k) {
      j[std::string(ToString(kAllPredicates[k]))] = row.predicates[k];
    }
    const Predictions& pr = row.predictions;
    j["post_A"] = pr.post_a;
    j["post_AB"] = pr.post_ab;
    j["prod_wa_A"] = pr.prod_wa[0];
    j["prod_wa_AB"] = pr.prod_wa[1];
    j["prod_wa_AnB"] = pr.prod_wa[2];
    j["prod_wab_A"] = pr.prod_wab[0];
    j["prod_wab_AB"] = pr.prod_wab[1];
    j["prod_wab_AnB"] = pr.prod_wab[2];
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace rsaexh
