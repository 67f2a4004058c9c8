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

// Experimental observations: CSV ingestion, preprocessing, and synthetic
// generation from a model.

#ifndef RSAEXH_DATA_IO_H_
#define RSAEXH_DATA_IO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rsaexh/model_zoo.h"
#include "rsaexh/scenario.h"

namespace rsaexh {

enum class Survey { kComprehension, kProduction };
enum class Condition { kUttA, kUttAB, kWorldA, kWorldAB };
// Pre-coded production categories; B and NOT_B are merged into the
// conjunctions by Preprocess, OTHER_NA rows are dropped.
enum class Response { kA, kAandB, kAandNotB, kB, kNotB, kOtherNa };

std::string_view ToString(Survey s);
std::string_view ToString(Condition c);
std::string_view ToString(Response r);
std::optional<Survey> ParseSurvey(std::string_view text);
std::optional<Condition> ParseCondition(std::string_view text);
std::optional<Response> ParseResponse(std::string_view text);

// The canonical message of a response, if it has one.
std::optional<Message> ToMessage(Response r);

struct ObservationRow {
  std::string participant_id;
  Survey survey = Survey::kComprehension;
  double prior = 0.0;  // in [0,1]
  Condition condition = Condition::kUttA;
  std::optional<double> posterior;  // comprehension only
  std::optional<Response> message;  // production only
  std::optional<int> length;
};

struct Dataset {
  std::vector<ObservationRow> rows;
  bool priors_compressed = false;
  bool messages_merged = false;

  int CountSurvey(Survey s) const;
};

struct RowError {
  int line = 0;  // 1-based, header is line 1
  std::string message;
};

struct ParseResult {
  Dataset dataset;
  std::vector<RowError> errors;
};

// Maps a native file layout onto the canonical columns. Read from a
// key-value file with lines of the form
//   column.<canonical> = <native header>
//   value.<survey|condition|message>.<native token> = <canonical token>
//   slider_scale = 100
// Blank lines and lines starting with '#' are ignored.
struct ColumnMapping {
  std::map<std::string, std::string> columns;
  std::map<std::string, std::map<std::string, std::string>> values;
  // Divides the prior and posterior columns (e.g. 100 for percentages).
  double slider_scale = 1.0;

  static ColumnMapping FromText(std::string_view text);
  static ColumnMapping FromFile(const std::string& path);
};

inline constexpr std::string_view kCanonicalColumns[] = {
    "participant_id", "survey", "prior", "condition", "posterior", "message",
    "length"};

// Throws SchemaError when a required column is missing. Row-level problems
// are collected in ParseResult::errors and the row is skipped.
ParseResult ParseDataset(std::string_view text,
                         const ColumnMapping& mapping = ColumnMapping{});
ParseResult ReadDatasetFile(const std::string& path,
                            const ColumnMapping& mapping = ColumnMapping{});

void WriteDatasetCsv(std::ostream& out, const Dataset& dataset);

// Affine prior compression into [.005, .995].
double CompressPrior(double x);

// Compresses priors, merges B / NOT_B into the conjunctions and drops
// OTHER_NA production rows. Idempotent.
Dataset Preprocess(const Dataset& dataset);

struct SynthDesign {
  int levels = 8;
  int utt_a = 20;
  int utt_ab = 10;
  int world_a = 20;
  int world_ab = 10;
  // Beta distribution of raw priors.
  double beta_alpha = 0.0;
  double beta_beta = 0.0;

  // Eight price levels of 20/10/20/10 participants, priors moment-matched to
  // mean .70, sd .27.
  static SynthDesign Default();
};

// Beta parameters with the given mean and standard deviation.
std::pair<double, double> BetaFromMoments(double mean, double sd);

struct NoiseParams {
  double sigma_a = 0.3;
  double sigma_ab = 0.3;
  double epsilon = 0.02;
};

// Raw (unpreprocessed) dataset. Predictions use the compressed prior;
// comprehension responses are the prediction plus normal noise clipped to
// [0,1], production responses are drawn from the epsilon-smoothed
// distribution over the three messages. Deterministic given the seed.
Dataset SynthGenerate(ModelId model, const ModelParams& params,
                      const NoiseParams& noise, const SynthDesign& design,
                      std::uint64_t seed);

}  // namespace rsaexh

#endif  // RSAEXH_DATA_IO_H_
