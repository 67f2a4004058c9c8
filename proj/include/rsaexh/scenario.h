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

// The canonical two-world / three-message universe shared by every model:
// worlds w_a ("A, not B") and w_ab ("A and B"), messages A, A&B, A&~B, the
// three readings of A, the two QUDs, and the per-model parameters.

#ifndef RSAEXH_SCENARIO_H_
#define RSAEXH_SCENARIO_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsaexh {

enum class World { kA = 0, kAB = 1 };
enum class Message { kA = 0, kAandB = 1, kAandNotB = 2 };
enum class Interpretation { kLiteral = 0, kExhaustive = 1, kAntiExhaustive = 2 };
enum class Qud { kPartial = 0, kTotal = 1 };

inline constexpr int kNumWorlds = 2;
inline constexpr int kNumMessages = 3;
inline constexpr int kNumInterpretations = 3;
inline constexpr int kNumQuds = 2;

inline constexpr std::array<World, kNumWorlds> kWorlds = {World::kA, World::kAB};
inline constexpr std::array<Message, kNumMessages> kMessages = {
    Message::kA, Message::kAandB, Message::kAandNotB};
inline constexpr std::array<Interpretation, kNumInterpretations>
    kInterpretations = {Interpretation::kLiteral, Interpretation::kExhaustive,
                        Interpretation::kAntiExhaustive};
inline constexpr std::array<Qud, kNumQuds> kQuds = {Qud::kPartial, Qud::kTotal};

inline constexpr int Index(World w) { return static_cast<int>(w); }
inline constexpr int Index(Message m) { return static_cast<int>(m); }
inline constexpr int Index(Interpretation i) { return static_cast<int>(i); }
inline constexpr int Index(Qud q) { return static_cast<int>(q); }

std::string_view ToString(World w);
std::string_view ToString(Message m);
std::string_view ToString(Interpretation i);
std::string_view ToString(Qud q);

// Truth of `message` in `world` under `interpretation`. Only A is ambiguous.
bool TruthValue(Message message, World world, Interpretation interpretation);

// Cell id of `world` under `qud`. Worlds sharing an id are indistinguishable
// to a speaker addressing that QUD.
int QudCell(Qud qud, World world);
std::vector<std::vector<World>> QudCells(Qud qud);

// P(w_ab | {w_a, w_ab}).
class Prior {
 public:
  explicit Prior(double p);

  double p() const { return p_; }
  double Of(World w) const { return w == World::kAB ? p_ : 1.0 - p_; }

 private:
  double p_;
};

// Prior over (literal, exhaustive, anti-exhaustive) readings of A.
using InterpretationPrior = std::array<double, kNumInterpretations>;

inline constexpr InterpretationPrior kFreeLuPrior = {1.0 / 3, 1.0 / 3, 1.0 / 3};
inline constexpr InterpretationPrior kExhLuPrior = {0.5, 0.5, 0.0};
inline constexpr InterpretationPrior kLiteralOnlyPrior = {1.0, 0.0, 0.0};

struct ModelParams {
  double lambda = 1.0;
  // Costs of A&B and A&~B relative to A (whose cost is 0).
  double delta_ab = 0.0;
  double delta_anb = 0.0;
  // Wonkiness prior (wRSA/BwRSA) or total-QUD prior (svRSA).
  std::optional<double> xi;
  // Prior on the exhaustive reading of A (svRSA).
  double chi = 0.5;
  // LU-family interpretation prior; when unset the model's fixed prior is used.
  std::optional<InterpretationPrior> rho;

  double Cost(Message m) const;

  // Throws InvalidArgument on any out-of-range field.
  void Validate() const;

  // Flat JSON object with keys lambda, delta_ab, delta_anb and optional xi
  // (plus chi when it differs from 0.5).
  std::string ToJson() const;
  static ModelParams FromJson(std::string_view text);
  static ModelParams FromFile(const std::string& path);
};

}  // namespace rsaexh

#endif  // RSAEXH_SCENARIO_H_
