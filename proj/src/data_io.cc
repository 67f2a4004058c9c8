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

#include "rsaexh/data_io.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/random/beta_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/tokenizer.hpp>

#include "rsaexh/errors.h"

namespace rsaexh {

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::optional<double> ParseDouble(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> ParseInt(const std::string& s) {
  int v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  using Separator = boost::escaped_list_separator<char>;
  boost::tokenizer<Separator> tok(line, Separator('\\', ',', '"'));
  std::vector<std::string> fields;
  for (const auto& f : tok) fields.push_back(Trim(f));
  return fields;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

std::string_view ToString(Survey s) {
  return s == Survey::kComprehension ? "COMPREHENSION" : "PRODUCTION";
}

std::string_view ToString(Condition c) {
  switch (c) {
    case Condition::kUttA:
      return "UTT_A";
    case Condition::kUttAB:
      return "UTT_AB";
    case Condition::kWorldA:
      return "WORLD_A";
    case Condition::kWorldAB:
      return "WORLD_AB";
  }
  return "?";
}

std::string_view ToString(Response r) {
  switch (r) {
    case Response::kA:
      return "A";
    case Response::kAandB:
      return "A_AND_B";
    case Response::kAandNotB:
      return "A_AND_NOT_B";
    case Response::kB:
      return "B";
    case Response::kNotB:
      return "NOT_B";
    case Response::kOtherNa:
      return "OTHER_NA";
  }
  return "?";
}

std::optional<Survey> ParseSurvey(std::string_view text) {
  const std::string u = Upper(text);
  if (u == "COMPREHENSION") return Survey::kComprehension;
  if (u == "PRODUCTION") return Survey::kProduction;
  return std::nullopt;
}

std::optional<Condition> ParseCondition(std::string_view text) {
  const std::string u = Upper(text);
  for (Condition c : {Condition::kUttA, Condition::kUttAB, Condition::kWorldA,
                      Condition::kWorldAB}) {
    if (ToString(c) == u) return c;
  }
  return std::nullopt;
}

std::optional<Response> ParseResponse(std::string_view text) {
  const std::string u = Upper(text);
  for (Response r : {Response::kA, Response::kAandB, Response::kAandNotB,
                     Response::kB, Response::kNotB, Response::kOtherNa}) {
    if (ToString(r) == u) return r;
  }
  return std::nullopt;
}

std::optional<Message> ToMessage(Response r) {
  switch (r) {
    case Response::kA:
      return Message::kA;
    case Response::kAandB:
      return Message::kAandB;
    case Response::kAandNotB:
      return Message::kAandNotB;
    default:
      return std::nullopt;
  }
}

int Dataset::CountSurvey(Survey s) const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [&](const auto& r) { return r.survey == s; }));
}

ColumnMapping ColumnMapping::FromText(std::string_view text) {
  ColumnMapping mapping;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError("mapping line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = Trim(t.substr(0, eq));
    const std::string value = Trim(t.substr(eq + 1));
    if (key == "slider_scale") {
      const auto v = ParseDouble(value);
      if (!v || !(*v > 0.0)) {
        throw ParseError("mapping line " + std::to_string(line_no) +
                         ": slider_scale must be a positive number");
      }
      mapping.slider_scale = *v;
    } else if (key.rfind("column.", 0) == 0) {
      const std::string canonical = key.substr(7);
      if (std::find(std::begin(kCanonicalColumns), std::end(kCanonicalColumns),
                    canonical) == std::end(kCanonicalColumns)) {
        throw ParseError("mapping line " + std::to_string(line_no) +
                         ": unknown column '" + canonical + "'");
      }
      mapping.columns[canonical] = value;
    } else if (key.rfind("value.", 0) == 0) {
      const std::string rest = key.substr(6);
      const auto dot = rest.find('.');
      const std::string field = rest.substr(0, dot);
      if (dot == std::string::npos ||
          (field != "survey" && field != "condition" && field != "message")) {
        throw ParseError("mapping line " + std::to_string(line_no) +
                         ": expected value.<survey|condition|message>.<token>");
      }
      mapping.values[field][rest.substr(dot + 1)] = value;
    } else {
      throw ParseError("mapping line " + std::to_string(line_no) + ": unknown key '" +
                       key + "'");
    }
  }
  return mapping;
}

ColumnMapping ColumnMapping::FromFile(const std::string& path) {
  return FromText(ReadFile(path));
}

ParseResult ParseDataset(std::string_view text, const ColumnMapping& mapping) {
  ParseResult result;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;

  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (!Trim(line).empty()) header = SplitCsvLine(line);
  }
  if (header.empty()) throw SchemaError("missing header row");

  std::map<std::string, int> index;
  for (std::string_view canonical : kCanonicalColumns) {
    const std::string key(canonical);
    const auto it = mapping.columns.find(key);
    const std::string& native = it == mapping.columns.end() ? key : it->second;
    const auto pos = std::find(header.begin(), header.end(), native);
    if (pos == header.end()) {
      throw SchemaError("missing column '" + native + "'");
    }
    index[key] = static_cast<int>(pos - header.begin());
  }
  auto translate = [&](const char* field, const std::string& token) {
    const auto f = mapping.values.find(field);
    if (f == mapping.values.end()) return token;
    const auto v = f->second.find(token);
    return v == f->second.end() ? token : v->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    auto fail = [&](const std::string& msg) {
      result.errors.push_back({line_no, msg});
    };
    std::vector<std::string> fields;
    try {
      fields = SplitCsvLine(line);
    } catch (const boost::escaped_list_error& e) {
      fail(std::string("malformed CSV: ") + e.what());
      continue;
    }
    if (fields.size() != header.size()) {
      fail("expected " + std::to_string(header.size()) + " fields, found " +
           std::to_string(fields.size()));
      continue;
    }
    auto field = [&](const char* name) -> const std::string& {
      return fields[index.at(name)];
    };

    ObservationRow row;
    row.participant_id = field("participant_id");
    const auto survey = ParseSurvey(translate("survey", field("survey")));
    if (!survey) {
      fail("unknown survey '" + field("survey") + "'");
      continue;
    }
    row.survey = *survey;
    const auto prior = ParseDouble(field("prior"));
    if (!prior) {
      fail("prior is not a number");
      continue;
    }
    row.prior = *prior / mapping.slider_scale;
    if (!(row.prior >= 0.0 && row.prior <= 1.0)) {
      fail("prior outside [0,1]");
      continue;
    }
    const auto condition = ParseCondition(translate("condition", field("condition")));
    if (!condition) {
      fail("unknown condition '" + field("condition") + "'");
      continue;
    }
    row.condition = *condition;
    const bool utterance_condition =
        row.condition == Condition::kUttA || row.condition == Condition::kUttAB;
    if (row.survey == Survey::kComprehension) {
      if (!utterance_condition) {
        fail("comprehension row needs an UTT_A or UTT_AB condition");
        continue;
      }
      if (!field("message").empty()) {
        fail("comprehension row carries a message");
        continue;
      }
      const auto posterior = ParseDouble(field("posterior"));
      if (!posterior) {
        fail("comprehension row needs a numeric posterior");
        continue;
      }
      row.posterior = *posterior / mapping.slider_scale;
      if (!(*row.posterior >= 0.0 && *row.posterior <= 1.0)) {
        fail("posterior outside [0,1]");
        continue;
      }
    } else {
      if (utterance_condition) {
        fail("production row needs a WORLD_A or WORLD_AB condition");
        continue;
      }
      if (!field("posterior").empty()) {
        fail("production row carries a posterior");
        continue;
      }
      const auto message = ParseResponse(translate("message", field("message")));
      if (!message) {
        fail("unknown message '" + field("message") + "'");
        continue;
      }
      row.message = *message;
    }
    if (!field("length").empty()) {
      const auto length = ParseInt(field("length"));
      if (!length || *length < 0) {
        fail("length is not a nonnegative integer");
        continue;
      }
      row.length = *length;
    }
    result.dataset.rows.push_back(std::move(row));
  }
  return result;
}

ParseResult ReadDatasetFile(const std::string& path, const ColumnMapping& mapping) {
  return ParseDataset(ReadFile(path), mapping);
}

void WriteDatasetCsv(std::ostream& out, const Dataset& dataset) {
  out << "participant_id,survey,prior,condition,posterior,message,length\n";
  for (const auto& r : dataset.rows) {
    out << r.participant_id << ',' << ToString(r.survey) << ',' << Fmt(r.prior) << ','
        << ToString(r.condition) << ',';
    if (r.posterior) out << Fmt(*r.posterior);
    out << ',';
    if (r.message) out << ToString(*r.message);
    out << ',';
    if (r.length) out << *r.length;
    out << '\n';
  }
}

double CompressPrior(double x) { return 0.005 + 0.99 * x; }

Dataset Preprocess(const Dataset& dataset) {
  Dataset out;
  out.priors_compressed = true;
  out.messages_merged = true;
  for (ObservationRow row : dataset.rows) {
    if (!dataset.priors_compressed) row.prior = CompressPrior(row.prior);
    if (row.message) {
      if (*row.message == Response::kOtherNa) continue;
      if (*row.message == Response::kB) row.message = Response::kAandB;
      if (*row.message == Response::kNotB) row.message = Response::kAandNotB;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::pair<double, double> BetaFromMoments(double mean, double sd) {
  const double var = sd * sd;
  if (!(mean > 0.0 && mean < 1.0) || !(var > 0.0) || var >= mean * (1.0 - mean)) {
    throw InvalidArgument("no beta distribution has these moments");
  }
  const double k = mean * (1.0 - mean) / var - 1.0;
  return {mean * k, (1.0 - mean) * k};
}

SynthDesign SynthDesign::Default() {
  SynthDesign d;
  std::tie(d.beta_alpha, d.beta_beta) = BetaFromMoments(0.70, 0.27);
  return d;
}

Dataset SynthGenerate(ModelId model, const ModelParams& params,
                      const NoiseParams& noise, const SynthDesign& design,
                      std::uint64_t seed) {
  if (!(design.beta_alpha > 0.0 && design.beta_beta > 0.0)) {
    throw InvalidArgument("design needs positive beta parameters");
  }
  if (design.levels < 0 || design.utt_a < 0 || design.utt_ab < 0 ||
      design.world_a < 0 || design.world_ab < 0) {
    throw InvalidArgument("design counts must be nonnegative");
  }
  if (!(noise.sigma_a >= 0.0 && noise.sigma_ab >= 0.0 && noise.epsilon >= 0.0)) {
    throw InvalidArgument("noise parameters must be nonnegative");
  }
  boost::random::mt19937_64 rng(seed);
  boost::random::beta_distribution<double> prior_dist(design.beta_alpha, design.beta_beta);
  boost::random::normal_distribution<double> normal(0.0, 1.0);

  Dataset out;
  int next_id = 0;
  auto add = [&](Condition condition, int count) {
    for (int i = 0; i < count; ++i) {
      ObservationRow row;
      char id[16];
      std::snprintf(id, sizeof(id), "s%05d", ++next_id);
      row.participant_id = id;
      row.condition = condition;
      row.prior = prior_dist(rng);
      const Predictions pred = Predict(model, params, CompressPrior(row.prior));
      if (condition == Condition::kUttA || condition == Condition::kUttAB) {
        row.survey = Survey::kComprehension;
        const bool bare = condition == Condition::kUttA;
        const double mean = bare ? pred.post_a : pred.post_ab;
        const double sigma = bare ? noise.sigma_a : noise.sigma_ab;
        row.posterior = std::clamp(mean + sigma * normal(rng), 0.0, 1.0);
      } else {
        row.survey = Survey::kProduction;
        const auto& dist = pred.Production(condition == Condition::kWorldA ? World::kA
                                                                           : World::kAB);
        std::array<double, kNumMessages> w{};
        for (int u = 0; u < kNumMessages; ++u) w[u] = dist[u] + noise.epsilon;
        boost::random::discrete_distribution<int, double> pick(w.begin(), w.end());
        row.message = static_cast<Response>(pick(rng));
      }
      out.rows.push_back(std::move(row));
    }
  };
  for (int level = 0; level < design.levels; ++level) {
    add(Condition::kUttA, design.utt_a);
    add(Condition::kUttAB, design.utt_ab);
    add(Condition::kWorldA, design.world_a);
    add(Condition::kWorldAB, design.world_ab);
  }
  return out;
}

}  // namespace rsaexh
