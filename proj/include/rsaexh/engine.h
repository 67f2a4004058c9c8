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

// Exact, enumeration-based evaluator of the speaker/listener recursion over
// arbitrary finite scenarios. Lifted variables (background assumptions,
// interpretation functions, QUDs, intended meanings) are declared with a role
// that fixes where in the recursion they enter and where they are summed out.
//
// All arithmetic is in log space with max-subtraction; -inf utilities become
// exactly zero probability.

#ifndef RSAEXH_ENGINE_H_
#define RSAEXH_ENGINE_H_

#include <span>
#include <string>
#include <vector>

namespace rsaexh::engine {

struct Distribution {
  std::vector<double> probs;
  // Set when no outcome has positive mass (e.g. a speaker row where every
  // message is unusable); probs are then all zero.
  bool degenerate = false;

  static Distribution Degenerate(std::size_t n) {
    return Distribution{std::vector<double>(n, 0.0), true};
  }
  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }
};

enum class LiftedRole {
  // The speaker is conditioned on the value; the pragmatic listener infers it
  // jointly with the world.
  kListenerInferred,
  // The first speaker averages her log-informativity over the value with the
  // variable's prior (supervaluationist interpretations).
  kExpectedUtility,
  // The first speaker picks the value jointly with the message (intended
  // meanings). Always summed out at the first pragmatic listener.
  kSpeakerChoice,
};

struct LiftedVariable {
  std::string name;
  std::vector<double> prior;
  LiftedRole role = LiftedRole::kListenerInferred;
  // kListenerInferred only: sum the variable out at L1 (true) or carry it
  // through every level (false).
  bool marginalize_at_first_listener = true;
  // Optional QUD partition: cells[value][world] is the cell id of `world`.
  std::vector<std::vector<int>> cells;
  // Optional literal-listener world prior for each value (wonky priors).
  std::vector<std::vector<double>> world_prior_by_value;
};

// Which world prior the first pragmatic listener combines with S_1.
enum class ListenerPrior {
  kOwn,      // the scenario's world_prior for every context
  kLiteral,  // the context's literal prior (world_prior_by_value if set)
};

class GenericScenario {
 public:
  GenericScenario(int num_worlds, std::vector<double> costs,
                  std::vector<double> world_prior,
                  std::vector<LiftedVariable> lifted = {});

  int num_worlds() const { return num_worlds_; }
  int num_messages() const { return static_cast<int>(costs_.size()); }
  int num_contexts() const { return num_contexts_; }
  const std::vector<LiftedVariable>& lifted() const { return lifted_; }
  const std::vector<double>& world_prior() const { return world_prior_; }
  double cost(int message) const { return costs_[message]; }

  // Contexts index the product of all lifted-variable values; the first
  // variable varies slowest.
  int EncodeContext(std::span<const int> values) const;
  std::vector<int> DecodeContext(int context) const;
  double ContextPrior(int context) const;

  bool Truth(int message, int world, int context) const {
    return truth_[(message * num_worlds_ + world) * num_contexts_ + context];
  }
  void SetTruth(int message, int world, int context, bool value);
  void SetTruthAllContexts(int message, int world, bool value);

  // World prior seen by the literal listener in `context`.
  std::span<const double> LiteralPrior(int context) const;

  // Cell id of `world` under the QUD variable's value in `context`; the world
  // itself when no QUD variable is present.
  int Cell(int world, int context) const;

  ListenerPrior listener_prior() const { return listener_prior_; }
  void set_listener_prior(ListenerPrior mode) { listener_prior_ = mode; }

  // Probability vectors sum to 1 within 1e-12 and every message is true in
  // at least one (world, context) pair. Throws InvalidArgument otherwise.
  void Validate() const;

 private:
  int num_worlds_;
  std::vector<double> costs_;
  std::vector<double> world_prior_;
  std::vector<LiftedVariable> lifted_;
  std::vector<int> radix_stride_;
  int num_contexts_ = 1;
  int qud_var_ = -1;
  int wonky_var_ = -1;
  std::vector<char> truth_;
  ListenerPrior listener_prior_ = ListenerPrior::kOwn;
};

// L_0(w | u, c) ∝ P_c(w) [[u]]^c(w). When the message's truth set has zero
// prior mass the posterior is uniform over the truth set (the continuity
// limit for singleton truth sets). Throws DegenerateMessage when the message
// is false in every world under `context`.
Distribution LiteralListener(const GenericScenario& scenario, int message,
                             int context);

// log(listener[target]) - cost; -inf when the target has zero probability.
double Utility(const Distribution& listener, int target_world, double cost);

// exp(lambda * u) normalized. Throws AllMessagesUnusable if every utility is
// -inf.
Distribution SoftmaxSpeaker(std::span<const double> utilities, double lambda);

// Posterior ∝ prior × likelihood over any joint state space. Throws
// UnreachableMessage when no state has positive posterior mass.
Distribution PragmaticListener(std::span<const double> joint_prior,
                               std::span<const double> likelihood);

// Expected utility of `message` for a first-level speaker in `world` whose
// non-averaged lifted values are read from `context`: the prior-weighted mean
// over the kExpectedUtility variables of log L_0(cell(world) | message), minus
// the message cost. -inf as soon as one positive-prior value gives the cell
// zero probability.
double ExpectedUtilityOverInterpretations(const GenericScenario& scenario,
                                          int message, int world, int context);

// Speaker rows are indexed by (state, world); columns are the speaker's
// choices. At level 1 a choice is a (message, intended-value) pair; at deeper
// levels it is a message.
struct SpeakerTable {
  int num_worlds = 0;
  int num_states = 0;
  int num_messages = 0;
  int num_intentions = 1;
  std::vector<Distribution> rows;

  const Distribution& Row(int world, int state) const {
    return rows[state * num_worlds + world];
  }
  // Probability of choosing `message` (summed over intended values).
  double MessageProb(int world, int state, int message) const;
  Distribution MessageMarginal(int world, int state) const;
};

// Listener rows are indexed by message; each row is a joint distribution over
// (state, world) laid out as state * num_worlds + world.
struct ListenerTable {
  int num_worlds = 0;
  int num_states = 0;
  std::vector<Distribution> rows;

  double Joint(int message, int world, int state) const {
    return rows[message].probs[state * num_worlds + world];
  }
  Distribution WorldMarginal(int message) const;
  Distribution StateMarginal(int message) const;
};

struct RecursionLevel {
  int depth = 0;
  SpeakerTable speaker;
  // L_n after the lifted variables scheduled for removal at this level have
  // been summed out; states range over the carried variables.
  ListenerTable listener;
};

struct Recursion {
  std::vector<RecursionLevel> levels;  // levels[n - 1] holds S_n and L_n
  // L_1 before marginalization: states range over every kListenerInferred
  // and kSpeakerChoice variable.
  ListenerTable first_listener_full;
};

// Runs S_1, L_1, ..., S_depth, L_depth. Throws InvalidArgument for depth < 1
// or lambda <= 0. Speaker rows where no message is usable and listener rows
// for unreachable messages are flagged degenerate instead of throwing.
Recursion Iterate(const GenericScenario& scenario, double lambda, int depth);

}  // namespace rsaexh::engine

#endif  // RSAEXH_ENGINE_H_
