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

#include "rsaexh/scenario.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rsaexh/errors.h"

namespace rsaexh {

std::string_view ToString(World w) {
  return w == World::kA ? "w_a" : "w_ab";
}

std::string_view ToString(Message m) {
  switch (m) {
    case Message::kA:
      return "A";
    case Message::kAandB:
      return "A_AND_B";
    case Message::kAandNotB:
      return "A_AND_NOT_B";
  }
  return "?";
}

std::string_view ToString(Interpretation i) {
  switch (i) {
    case Interpretation::kLiteral:
      return "literal";
    case Interpretation::kExhaustive:
      return "exhaustive";
    case Interpretation::kAntiExhaustive:
      return "anti-exhaustive";
  }
  return "?";
}

std::string_view ToString(Qud q) {
  return q == Qud::kPartial ? "partial" : "total";
}

bool TruthValue(Message message, World world, Interpretation interpretation) {
  switch (message) {
    case Message::kAandB:
      return world == World::kAB;
    case Message::kAandNotB:
      return world == World::kA;
    case Message::kA:
      switch (interpretation) {
        case Interpretation::kLiteral:
          return true;
        case Interpretation::kExhaustive:
          return world == World::kA;
        case Interpretation::kAntiExhaustive:
          return world == World::kAB;
      }
  }
  return false;
}

int QudCell(Qud qud, World world) {
  return qud == Qud::kPartial ? 0 : Index(world);
}

std::vector<std::vector<World>> QudCells(Qud qud) {
  if (qud == Qud::kPartial) return {{World::kA, World::kAB}};
  return {{World::kA}, {World::kAB}};
}

Prior::Prior(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("prior must lie in [0,1], got " + std::to_string(p));
  }
}

double ModelParams::Cost(Message m) const {
  switch (m) {
    case Message::kA:
      return 0.0;
    case Message::kAandB:
      return delta_ab;
    case Message::kAandNotB:
      return delta_anb;
  }
  return 0.0;
}

namespace {

void RequireUnit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

void ModelParams::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be a positive finite number");
  }
  if (!(delta_ab >= 0.0) || !std::isfinite(delta_ab) || !(delta_anb >= 0.0) ||
      !std::isfinite(delta_anb)) {
    throw InvalidArgument("cost deltas must be nonnegative and finite");
  }
  if (xi) RequireUnit(*xi, "xi");
  RequireUnit(chi, "chi");
  if (rho) {
    double total = 0.0;
    for (double r : *rho) {
      RequireUnit(r, "rho entries");
      total += r;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw InvalidArgument("rho entries must sum to 1");
    }
  }
}

std::string ModelParams::ToJson() const {
  nlohmann::ordered_json j;
  j["lambda"] = lambda;
  j["delta_ab"] = delta_ab;
  j["delta_anb"] = delta_anb;
  if (xi) j["xi"] = *xi;
  if (chi != 0.5) j["chi"] = chi;
  return j.dump();
}

ModelParams ModelParams::FromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model parameters: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model parameters must be an object");
  ModelParams params;
  auto number = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_number()) {
      throw ParseError(std::string("model parameter '") + key +
                       "' must be a number");
    }
    return j[key].get<double>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key != "lambda" && key != "delta_ab" && key != "delta_anb" &&
        key != "xi" && key != "chi") {
      throw ParseError("unknown model parameter '" + key + "'");
    }
  }
  auto required = [&](const char* key) {
    if (auto v = number(key)) return *v;
    throw MissingParameter(key);
  };
  params.lambda = required("lambda");
  params.delta_ab = required("delta_ab");
  params.delta_anb = required("delta_anb");
  params.xi = number("xi");
  params.chi = number("chi").value_or(0.5);
  params.Validate();
  return params;
}

ModelParams ModelParams::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open parameter file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJson(ss.str());
}

}  // namespace rsaexh
