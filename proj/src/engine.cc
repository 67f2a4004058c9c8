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

#include "rsaexh/engine.h"

#include <cmath>
#include <numeric>
#include <optional>

#include "rsaexh/errors.h"
#include "rsaexh/log_math.h"

namespace rsaexh::engine {

namespace {

constexpr double kSumTolerance = 1e-12;

void RequireDistribution(std::span<const double> probs, const std::string& what) {
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidArgument(what + " has a negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidArgument(what + " does not sum to 1");
  }
}

}  // namespace

GenericScenario::GenericScenario(int num_worlds, std::vector<double> costs,
                                 std::vector<double> world_prior,
                                 std::vector<LiftedVariable> lifted)
    : num_worlds_(num_worlds),
      costs_(std::move(costs)),
      world_prior_(std::move(world_prior)),
      lifted_(std::move(lifted)) {
  if (num_worlds_ < 1 || costs_.empty()) {
    throw InvalidArgument("scenario needs at least one world and one message");
  }
  if (static_cast<int>(world_prior_.size()) != num_worlds_) {
    throw InvalidArgument("world prior size does not match the world count");
  }
  radix_stride_.assign(lifted_.size(), 1);
  for (int v = static_cast<int>(lifted_.size()) - 1; v >= 0; --v) {
    const auto& var = lifted_[v];
    if (var.prior.empty()) {
      throw InvalidArgument("lifted variable '" + var.name + "' has no values");
    }
    radix_stride_[v] = num_contexts_;
    num_contexts_ *= static_cast<int>(var.prior.size());
    if (!var.cells.empty()) {
      if (qud_var_ >= 0) throw InvalidArgument("at most one QUD variable");
      if (var.role != LiftedRole::kListenerInferred) {
        throw InvalidArgument("QUD variable must be listener-inferred");
      }
      qud_var_ = v;
    }
    if (!var.world_prior_by_value.empty()) {
      if (wonky_var_ >= 0) {
        throw InvalidArgument("at most one variable may carry world priors");
      }
      if (var.role != LiftedRole::kListenerInferred) {
        throw InvalidArgument("world-prior variable must be listener-inferred");
      }
      wonky_var_ = v;
    }
  }
  truth_.assign(static_cast<std::size_t>(num_messages()) * num_worlds_ *
                    num_contexts_,
                0);
}

int GenericScenario::EncodeContext(std::span<const int> values) const {
  int c = 0;
  for (std::size_t v = 0; v < lifted_.size(); ++v) c += values[v] * radix_stride_[v];
  return c;
}

std::vector<int> GenericScenario::DecodeContext(int context) const {
  std::vector<int> values(lifted_.size());
  for (std::size_t v = 0; v < lifted_.size(); ++v) {
    values[v] = (context / radix_stride_[v]) %
                static_cast<int>(lifted_[v].prior.size());
  }
  return values;
}

double GenericScenario::ContextPrior(int context) const {
  double prior = 1.0;
  const auto values = DecodeContext(context);
  for (std::size_t v = 0; v < lifted_.size(); ++v) {
    if (lifted_[v].role == LiftedRole::kSpeakerChoice) continue;
    prior *= lifted_[v].prior[values[v]];
  }
  return prior;
}

void GenericScenario::SetTruth(int message, int world, int context, bool value) {
  truth_[(message * num_worlds_ + world) * num_contexts_ + context] = value;
}

void GenericScenario::SetTruthAllContexts(int message, int world, bool value) {
  for (int c = 0; c < num_contexts_; ++c) SetTruth(message, world, c, value);
}

std::span<const double> GenericScenario::LiteralPrior(int context) const {
  if (wonky_var_ < 0) return world_prior_;
  const int value = DecodeContext(context)[wonky_var_];
  return lifted_[wonky_var_].world_prior_by_value[value];
}

int GenericScenario::Cell(int world, int context) const {
  if (qud_var_ < 0) return world;
  const int value = DecodeContext(context)[qud_var_];
  return lifted_[qud_var_].cells[value][world];
}

void GenericScenario::Validate() const {
  RequireDistribution(world_prior_, "world prior");
  for (double c : costs_) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw InvalidArgument("message costs must be nonnegative and finite");
    }
  }
  for (const auto& var : lifted_) {
    if (var.role != LiftedRole::kSpeakerChoice) {
      RequireDistribution(var.prior, "prior of '" + var.name + "'");
    }
    const std::size_t n = var.prior.size();
    if (!var.cells.empty()) {
      if (var.cells.size() != n) throw InvalidArgument("QUD cells size mismatch");
      for (const auto& row : var.cells) {
        if (static_cast<int>(row.size()) != num_worlds_) {
          throw InvalidArgument("QUD cell row size mismatch");
        }
      }
    }
    if (!var.world_prior_by_value.empty()) {
      if (var.world_prior_by_value.size() != n) {
        throw InvalidArgument("per-value world prior count mismatch");
      }
      for (const auto& prior : var.world_prior_by_value) {
        if (static_cast<int>(prior.size()) != num_worlds_) {
          throw InvalidArgument("per-value world prior size mismatch");
        }
        RequireDistribution(prior, "world prior of '" + var.name + "'");
      }
    }
  }
  for (int m = 0; m < num_messages(); ++m) {
    bool usable = false;
    for (int w = 0; w < num_worlds_ && !usable; ++w) {
      for (int c = 0; c < num_contexts_ && !usable; ++c) usable = Truth(m, w, c);
    }
    if (!usable) {
      throw InvalidArgument("message " + std::to_string(m) +
                            " is false everywhere");
    }
  }
}

namespace {

std::optional<Distribution> TryLiteralListener(const GenericScenario& scenario,
                                               int message, int context) {
  const int n = scenario.num_worlds();
  const auto prior = scenario.LiteralPrior(context);
  Distribution out{std::vector<double>(n, 0.0), false};
  double mass = 0.0;
  int true_count = 0;
  for (int w = 0; w < n; ++w) {
    if (scenario.Truth(message, w, context)) {
      out.probs[w] = prior[w];
      mass += prior[w];
      ++true_count;
    }
  }
  if (true_count == 0) return std::nullopt;
  for (int w = 0; w < n; ++w) {
    if (mass > 0.0) {
      out.probs[w] /= mass;
    } else {
      out.probs[w] = scenario.Truth(message, w, context) ? 1.0 / true_count : 0.0;
    }
  }
  return out;
}

// Normalizes lambda * utilities; nullopt when every utility is -inf.
std::optional<Distribution> TrySoftmax(std::span<const double> utilities,
                                       double lambda) {
  double m = kNegInf;
  for (double u : utilities) m = std::max(m, u);
  if (m == kNegInf) return std::nullopt;
  Distribution out{std::vector<double>(utilities.size(), 0.0), false};
  double total = 0.0;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    out.probs[i] = utilities[i] == kNegInf ? 0.0 : std::exp(lambda * (utilities[i] - m));
    total += out.probs[i];
  }
  for (double& p : out.probs) p /= total;
  return out;
}

}  // namespace

Distribution LiteralListener(const GenericScenario& scenario, int message,
                             int context) {
  auto out = TryLiteralListener(scenario, message, context);
  if (!out) {
    throw DegenerateMessage("message " + std::to_string(message) +
                            " is false in every world under context " +
                            std::to_string(context));
  }
  return *std::move(out);
}

double Utility(const Distribution& listener, int target_world, double cost) {
  return SafeLog(listener[target_world]) - cost;
}

Distribution SoftmaxSpeaker(std::span<const double> utilities, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  auto out = TrySoftmax(utilities, lambda);
  if (!out) throw AllMessagesUnusable("every utility is -inf");
  return *std::move(out);
}

Distribution PragmaticListener(std::span<const double> joint_prior,
                               std::span<const double> likelihood) {
  if (joint_prior.size() != likelihood.size()) {
    throw InvalidArgument("prior and likelihood sizes differ");
  }
  Distribution out{std::vector<double>(joint_prior.size(), 0.0), false};
  double total = 0.0;
  for (std::size_t i = 0; i < joint_prior.size(); ++i) {
    out.probs[i] = joint_prior[i] * likelihood[i];
    total += out.probs[i];
  }
  if (!(total > 0.0)) {
    throw UnreachableMessage("no state gives the message positive probability");
  }
  for (double& p : out.probs) p /= total;
  return out;
}

namespace {

// Partition of the lifted variables by the role they play in the recursion.
struct Layout {
  // Groups are lists of variable indices; index spaces are mixed-radix over
  // the group's variables.
  std::vector<int> inferred, averaged, chosen, carried, dropped;
  int num_inferred = 1, num_averaged = 1, num_chosen = 1, num_carried = 1;

  // Per full context.
  std::vector<int> inferred_of, averaged_of, chosen_of;
  // compose[(s * E + e) * T + t] -> context
  std::vector<int> compose;
  // Per inferred state s.
  std::vector<int> carried_of;
  std::vector<double> inferred_prior, dropped_prior;  // P_S(s), P_M(m(s))
  std::vector<double> carried_prior;                  // P_R(r)
  std::vector<double> averaged_prior;                 // P_E(e)
  std::vector<int> carried_qud_value;                 // per r, -1 if none
  int qud_var = -1;
  int wonky_var = -1;
  std::vector<int> wonky_value_of_inferred;  // per s
};

int GroupIndex(const std::vector<int>& group, const std::vector<int>& values,
               const std::vector<LiftedVariable>& vars) {
  int idx = 0;
  for (int v : group) idx = idx * static_cast<int>(vars[v].prior.size()) + values[v];
  return idx;
}

double GroupPrior(const std::vector<int>& group, const std::vector<int>& values,
                  const std::vector<LiftedVariable>& vars) {
  double p = 1.0;
  for (int v : group) p *= vars[v].prior[values[v]];
  return p;
}

Layout MakeLayout(const GenericScenario& scenario) {
  const auto& vars = scenario.lifted();
  Layout layout;
  for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
    const int n = static_cast<int>(vars[v].prior.size());
    switch (vars[v].role) {
      case LiftedRole::kListenerInferred:
        layout.inferred.push_back(v);
        layout.num_inferred *= n;
        if (vars[v].marginalize_at_first_listener) {
          layout.dropped.push_back(v);
        } else {
          layout.carried.push_back(v);
          layout.num_carried *= n;
        }
        break;
      case LiftedRole::kExpectedUtility:
        layout.averaged.push_back(v);
        layout.num_averaged *= n;
        break;
      case LiftedRole::kSpeakerChoice:
        layout.chosen.push_back(v);
        layout.num_chosen *= n;
        break;
    }
    if (!vars[v].cells.empty()) layout.qud_var = v;
    if (!vars[v].world_prior_by_value.empty()) layout.wonky_var = v;
  }

  const int num_contexts = scenario.num_contexts();
  layout.inferred_of.resize(num_contexts);
  layout.averaged_of.resize(num_contexts);
  layout.chosen_of.resize(num_contexts);
  layout.compose.assign(
      static_cast<std::size_t>(layout.num_inferred) * layout.num_averaged *
          layout.num_chosen,
      -1);
  layout.carried_of.assign(layout.num_inferred, 0);
  layout.inferred_prior.assign(layout.num_inferred, 0.0);
  layout.dropped_prior.assign(layout.num_inferred, 0.0);
  layout.wonky_value_of_inferred.assign(layout.num_inferred, -1);
  layout.carried_prior.assign(layout.num_carried, 0.0);
  layout.carried_qud_value.assign(layout.num_carried, -1);
  layout.averaged_prior.assign(layout.num_averaged, 0.0);

  for (int c = 0; c < num_contexts; ++c) {
    const auto values = scenario.DecodeContext(c);
    const int s = GroupIndex(layout.inferred, values, vars);
    const int e = GroupIndex(layout.averaged, values, vars);
    const int t = GroupIndex(layout.chosen, values, vars);
    const int r = GroupIndex(layout.carried, values, vars);
    layout.inferred_of[c] = s;
    layout.averaged_of[c] = e;
    layout.chosen_of[c] = t;
    layout.compose[(static_cast<std::size_t>(s) * layout.num_averaged + e) *
                       layout.num_chosen +
                   t] = c;
    layout.carried_of[s] = r;
    layout.inferred_prior[s] = GroupPrior(layout.inferred, values, vars);
    layout.dropped_prior[s] = GroupPrior(layout.dropped, values, vars);
    layout.carried_prior[r] = GroupPrior(layout.carried, values, vars);
    layout.averaged_prior[e] = GroupPrior(layout.averaged, values, vars);
    if (layout.wonky_var >= 0) {
      layout.wonky_value_of_inferred[s] = values[layout.wonky_var];
    }
    if (layout.qud_var >= 0 && !vars[layout.qud_var].marginalize_at_first_listener) {
      layout.carried_qud_value[r] = values[layout.qud_var];
    }
  }
  return layout;
}

// Unnormalized listener weights with the listener's own lifted-state prior
// factored out: CW(w, r | u) = L(w, r | u) / P_R(r). Speaker utilities only
// need CW because log P_R(r) is constant across messages; keeping it out
// makes zero-prior states (e.g. a QUD with prior 0) well defined by continuity.
struct ListenerWeights {
  int num_worlds = 0;
  int num_states = 0;
  std::vector<std::vector<double>> by_message;  // [u][r * W + w]
};

void FinishListener(const std::vector<std::vector<double>>& weighted,
                    const std::vector<std::vector<double>>& conditional,
                    ListenerTable& table, ListenerWeights& weights) {
  const int num_messages = static_cast<int>(weighted.size());
  table.rows.resize(num_messages);
  weights.by_message.resize(num_messages);
  for (int u = 0; u < num_messages; ++u) {
    const double z = std::accumulate(weighted[u].begin(), weighted[u].end(), 0.0);
    if (!(z > 0.0)) {
      table.rows[u] = Distribution::Degenerate(weighted[u].size());
      weights.by_message[u].assign(conditional[u].size(), 0.0);
      continue;
    }
    Distribution row{weighted[u], false};
    for (double& p : row.probs) p /= z;
    table.rows[u] = std::move(row);
    weights.by_message[u] = conditional[u];
    for (double& p : weights.by_message[u]) p /= z;
  }
}

}  // namespace

double ExpectedUtilityOverInterpretations(const GenericScenario& scenario,
                                          int message, int world, int context) {
  const auto& vars = scenario.lifted();
  auto values = scenario.DecodeContext(context);
  std::vector<int> averaged;
  int num_averaged = 1;
  for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
    if (vars[v].role == LiftedRole::kExpectedUtility) {
      averaged.push_back(v);
      num_averaged *= static_cast<int>(vars[v].prior.size());
    }
  }
  double total = 0.0;
  for (int e = 0; e < num_averaged; ++e) {
    int rest = e;
    double weight = 1.0;
    for (auto it = averaged.rbegin(); it != averaged.rend(); ++it) {
      const int n = static_cast<int>(vars[*it].prior.size());
      values[*it] = rest % n;
      rest /= n;
      weight *= vars[*it].prior[values[*it]];
    }
    if (weight == 0.0) continue;
    const int c = scenario.EncodeContext(values);
    const auto l0 = TryLiteralListener(scenario, message, c);
    if (!l0) return kNegInf;
    double cell_mass = 0.0;
    const int cell = scenario.Cell(world, c);
    for (int v = 0; v < scenario.num_worlds(); ++v) {
      if (scenario.Cell(v, c) == cell) cell_mass += l0->probs[v];
    }
    if (!(cell_mass > 0.0)) return kNegInf;
    total += weight * std::log(cell_mass);
  }
  return total - scenario.cost(message);
}

double SpeakerTable::MessageProb(int world, int state, int message) const {
  const auto& row = Row(world, state);
  double p = 0.0;
  for (int t = 0; t < num_intentions; ++t) p += row.probs[message * num_intentions + t];
  return p;
}

Distribution SpeakerTable::MessageMarginal(int world, int state) const {
  const auto& row = Row(world, state);
  if (row.degenerate) return Distribution::Degenerate(num_messages);
  Distribution out{std::vector<double>(num_messages, 0.0), false};
  for (int u = 0; u < num_messages; ++u) out.probs[u] = MessageProb(world, state, u);
  return out;
}

Distribution ListenerTable::WorldMarginal(int message) const {
  const auto& row = rows[message];
  if (row.degenerate) return Distribution::Degenerate(num_worlds);
  Distribution out{std::vector<double>(num_worlds, 0.0), false};
  for (int s = 0; s < num_states; ++s) {
    for (int w = 0; w < num_worlds; ++w) out.probs[w] += row.probs[s * num_worlds + w];
  }
  return out;
}

Distribution ListenerTable::StateMarginal(int message) const {
  const auto& row = rows[message];
  if (row.degenerate) return Distribution::Degenerate(num_states);
  Distribution out{std::vector<double>(num_states, 0.0), false};
  for (int s = 0; s < num_states; ++s) {
    for (int w = 0; w < num_worlds; ++w) out.probs[s] += row.probs[s * num_worlds + w];
  }
  return out;
}

Recursion Iterate(const GenericScenario& scenario, double lambda, int depth) {
  if (depth < 1) throw InvalidArgument("recursion depth must be at least 1");
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  scenario.Validate();

  const Layout layout = MakeLayout(scenario);
  const auto& vars = scenario.lifted();
  const int W = scenario.num_worlds();
  const int U = scenario.num_messages();
  const int S = layout.num_inferred;
  const int E = layout.num_averaged;
  const int T = layout.num_chosen;
  const int R = layout.num_carried;

  Recursion out;

  // Level 1 speaker: rows (s, w), columns (u, t).
  RecursionLevel level1;
  level1.depth = 1;
  level1.speaker.num_worlds = W;
  level1.speaker.num_states = S;
  level1.speaker.num_messages = U;
  level1.speaker.num_intentions = T;
  level1.speaker.rows.resize(static_cast<std::size_t>(S) * W);

  std::vector<std::optional<Distribution>> literal(
      static_cast<std::size_t>(U) * scenario.num_contexts());
  for (int u = 0; u < U; ++u) {
    for (int c = 0; c < scenario.num_contexts(); ++c) {
      literal[u * scenario.num_contexts() + c] = TryLiteralListener(scenario, u, c);
    }
  }

  std::vector<double> utilities(static_cast<std::size_t>(U) * T);
  for (int s = 0; s < S; ++s) {
    for (int w = 0; w < W; ++w) {
      for (int u = 0; u < U; ++u) {
        for (int t = 0; t < T; ++t) {
          double value = 0.0;
          for (int e = 0; e < E; ++e) {
            const double weight = layout.averaged_prior[e];
            if (weight == 0.0) continue;
            const int c = layout.compose[(static_cast<std::size_t>(s) * E + e) * T + t];
            const auto& l0 = literal[u * scenario.num_contexts() + c];
            double cell_mass = 0.0;
            if (l0) {
              const int cell = scenario.Cell(w, c);
              for (int v = 0; v < W; ++v) {
                if (scenario.Cell(v, c) == cell) cell_mass += l0->probs[v];
              }
            }
            if (!(cell_mass > 0.0)) {
              value = kNegInf;
              break;
            }
            value += weight * std::log(cell_mass);
          }
          utilities[u * T + t] = value == kNegInf ? kNegInf : value - scenario.cost(u);
        }
      }
      auto row = TrySoftmax(utilities, lambda);
      level1.speaker.rows[s * W + w] =
          row ? *std::move(row) : Distribution::Degenerate(utilities.size());
    }
  }

  // Level 1 listener over (s, t, w), then summed down to (r, w).
  const bool literal_prior_listener =
      scenario.listener_prior() == ListenerPrior::kLiteral && layout.wonky_var >= 0;
  auto listener_world_prior = [&](int s, int w) {
    if (literal_prior_listener) {
      return vars[layout.wonky_var]
          .world_prior_by_value[layout.wonky_value_of_inferred[s]][w];
    }
    return scenario.world_prior()[w];
  };

  std::vector<std::vector<double>> full(U, std::vector<double>(
                                               static_cast<std::size_t>(S) * T * W, 0.0));
  std::vector<std::vector<double>> reduced(
      U, std::vector<double>(static_cast<std::size_t>(R) * W, 0.0));
  std::vector<std::vector<double>> reduced_conditional = reduced;
  for (int u = 0; u < U; ++u) {
    for (int s = 0; s < S; ++s) {
      const int r = layout.carried_of[s];
      for (int w = 0; w < W; ++w) {
        const auto& row = level1.speaker.rows[s * W + w];
        for (int t = 0; t < T; ++t) {
          const double k = listener_world_prior(s, w) * row.probs[u * T + t];
          full[u][(static_cast<std::size_t>(s) * T + t) * W + w] = layout.inferred_prior[s] * k;
          reduced[u][r * W + w] += layout.inferred_prior[s] * k;
          reduced_conditional[u][r * W + w] += layout.dropped_prior[s] * k;
        }
      }
    }
  }
  {
    out.first_listener_full.num_worlds = W;
    out.first_listener_full.num_states = S * T;
    ListenerWeights unused;
    FinishListener(full, full, out.first_listener_full, unused);
  }
  ListenerWeights weights;
  level1.listener.num_worlds = W;
  level1.listener.num_states = R;
  FinishListener(reduced, reduced_conditional, level1.listener, weights);
  out.levels.push_back(std::move(level1));

  // Levels 2..depth: speaker conditioned on the carried state only.
  auto carried_cell = [&](int world, int r) {
    const int q = layout.carried_qud_value[r];
    return q < 0 ? world : vars[layout.qud_var].cells[q][world];
  };
  for (int n = 2; n <= depth; ++n) {
    RecursionLevel level;
    level.depth = n;
    level.speaker.num_worlds = W;
    level.speaker.num_states = R;
    level.speaker.num_messages = U;
    level.speaker.num_intentions = 1;
    level.speaker.rows.resize(static_cast<std::size_t>(R) * W);
    std::vector<double> u_row(U);
    for (int r = 0; r < R; ++r) {
      for (int w = 0; w < W; ++w) {
        const int cell = carried_cell(w, r);
        for (int u = 0; u < U; ++u) {
          double mass = 0.0;
          for (int v = 0; v < W; ++v) {
            if (carried_cell(v, r) == cell) mass += weights.by_message[u][r * W + v];
          }
          u_row[u] = mass > 0.0 ? std::log(mass) - scenario.cost(u) : kNegInf;
        }
        auto row = TrySoftmax(u_row, lambda);
        level.speaker.rows[r * W + w] = row ? *std::move(row) : Distribution::Degenerate(U);
      }
    }
    std::vector<std::vector<double>> joint(
        U, std::vector<double>(static_cast<std::size_t>(R) * W, 0.0));
    std::vector<std::vector<double>> conditional = joint;
    for (int u = 0; u < U; ++u) {
      for (int r = 0; r < R; ++r) {
        for (int w = 0; w < W; ++w) {
          const double k = scenario.world_prior()[w] * level.speaker.rows[r * W + w].probs[u];
          joint[u][r * W + w] = layout.carried_prior[r] * k;
          conditional[u][r * W + w] = k;
        }
      }
    }
    level.listener.num_worlds = W;
    level.listener.num_states = R;
    weights = ListenerWeights{};
    FinishListener(joint, conditional, level.listener, weights);
    out.levels.push_back(std::move(level));
  }
  return out;
}

}  // namespace rsaexh::engine
