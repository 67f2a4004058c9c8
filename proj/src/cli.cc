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

#include "rsaexh/cli.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsaexh/analysis.h"
#include "rsaexh/data_io.h"
#include "rsaexh/engine_models.h"
#include "rsaexh/errors.h"
#include "rsaexh/fitting.h"
#include "rsaexh/model_zoo.h"

namespace rsaexh {

namespace {

using Json = nlohmann::ordered_json;

// Raised for argument combinations CLI11 cannot validate on its own.
struct UsageError {
  std::string message;
  std::string remedy;
};

struct ParamFlags {
  std::string params_file;
  double lambda = 0, cost_ab = 0, cost_anb = 0, xi = 0, chi = 0.5;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* cost_ab_opt = nullptr;
  CLI::Option* cost_anb_opt = nullptr;
  CLI::Option* xi_opt = nullptr;
  CLI::Option* chi_opt = nullptr;

  void Register(CLI::App* cmd) {
    cmd->add_option("--params", params_file, "JSON file with lambda, delta_ab, delta_anb, xi")
        ->check(CLI::ExistingFile);
    lambda_opt = cmd->add_option("--lambda", lambda, "rationality");
    cost_ab_opt = cmd->add_option("--cost-ab", cost_ab, "cost of A&B relative to A");
    cost_anb_opt = cmd->add_option("--cost-anb", cost_anb, "cost of A&~B relative to A");
    xi_opt = cmd->add_option("--xi", xi, "wonkiness prior (wrsa, bwrsa) or total-QUD prior (svrsa)");
    chi_opt = cmd->add_option("--chi", chi, "exhaustification prior (svrsa)");
  }

  ModelParams Build(ModelId model, bool require_xi = true) const {
    ModelParams p;
    bool have_lambda = false, have_ab = false, have_anb = false;
    if (!params_file.empty()) {
      p = ModelParams::FromFile(params_file);
      have_lambda = have_ab = have_anb = true;
    }
    if (lambda_opt->count()) p.lambda = lambda, have_lambda = true;
    if (cost_ab_opt->count()) p.delta_ab = cost_ab, have_ab = true;
    if (cost_anb_opt->count()) p.delta_anb = cost_anb, have_anb = true;
    if (xi_opt->count()) p.xi = xi;
    if (chi_opt->count()) p.chi = chi;
    if (!have_lambda || !have_ab || !have_anb) {
      throw UsageError{"missing model parameters",
                       "pass --lambda, --cost-ab and --cost-anb, or --params FILE"};
    }
    if (require_xi && UsesXi(model) && !p.xi) {
      throw UsageError{"model " + std::string(ModelName(model)) + " needs xi",
                       "pass --xi VALUE"};
    }
    p.Validate();
    return p;
  }
};

ModelId ParseModelOrThrow(const std::string& name) {
  if (auto m = ParseModelId(name)) return *m;
  throw UsageError{"unknown model '" + name + "'",
                   "use one of base, wrsa, bwrsa, svrsa1, svrsa2, free-lu, exh-lu, li1, li2"};
}

std::vector<ModelId> ParseModelList(const std::string& text) {
  if (text == "all") return {kAllModels.begin(), kAllModels.end()};
  std::vector<ModelId> models;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) models.push_back(ParseModelOrThrow(item));
  if (models.empty()) throw UsageError{"empty model list", "pass --models all or a comma list"};
  return models;
}

std::string Num(double x) { return FormatNumber(x); }

void WriteRegions(std::ostream& out, bool json, const std::vector<RegionReport>& reports) {
  if (json) {
    Json arr = Json::array();
    for (const auto& r : reports) {
      Json j;
      j["model"] = ModelName(r.model);
      j["predicate"] = ToString(r.predicate);
      Json iv = Json::array();
      for (const auto& i : r.intervals) iv.push_back({i.lo, i.hi});
      j["intervals"] = iv;
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
    return;
  }
  out << "model,predicate,lo,hi\n";
  for (const auto& r : reports) {
    for (const auto& i : r.intervals) {
      out << ModelName(r.model) << ',' << ToString(r.predicate) << ',' << Num(i.lo) << ','
          << Num(i.hi) << '\n';
    }
  }
}

void WriteThreshold(std::ostream& out, bool json, const ModelParams& p, double t) {
  if (json) {
    Json j;
    j["lambda"] = p.lambda;
    j["delta_ab"] = p.delta_ab;
    j["delta_anb"] = p.delta_anb;
    j["bwrsa_threshold"] = t;
    out << j.dump(2) << '\n';
    return;
  }
  out << "lambda,delta_ab,delta_anb,bwrsa_threshold\n"
      << Num(p.lambda) << ',' << Num(p.delta_ab) << ',' << Num(p.delta_anb) << ',' << Num(t)
      << '\n';
}

void WriteRecursion(std::ostream& out, bool json, const engine::Recursion& rec) {
  struct Entry {
    int depth;
    const char* agent;
    int state, world, message, intention;
    double prob;
  };
  std::vector<Entry> entries;
  for (const auto& level : rec.levels) {
    const auto& s = level.speaker;
    for (int st = 0; st < s.num_states; ++st) {
      for (int w = 0; w < s.num_worlds; ++w) {
        const auto& row = s.Row(w, st);
        for (int u = 0; u < s.num_messages; ++u) {
          for (int t = 0; t < s.num_intentions; ++t) {
            entries.push_back({level.depth, "speaker", st, w, u, t,
                               row.probs[u * s.num_intentions + t]});
          }
        }
      }
    }
    const auto& l = level.listener;
    for (int u = 0; u < static_cast<int>(l.rows.size()); ++u) {
      for (int st = 0; st < l.num_states; ++st) {
        for (int w = 0; w < l.num_worlds; ++w) {
          entries.push_back({level.depth, "listener", st, w, u, 0, l.Joint(u, w, st)});
        }
      }
    }
  }
  if (json) {
    Json arr = Json::array();
    for (const auto& e : entries) {
      Json j;
      j["depth"] = e.depth;
      j["agent"] = e.agent;
      j["state"] = e.state;
      j["world"] = ToString(static_cast<World>(e.world));
      j["message"] = ToString(static_cast<Message>(e.message));
      j["intention"] = e.intention;
      j["probability"] = e.prob;
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
    return;
  }
  out << "depth,agent,state,world,message,intention,probability\n";
  for (const auto& e : entries) {
    out << e.depth << ',' << e.agent << ',' << e.state << ','
        << ToString(static_cast<World>(e.world)) << ','
        << ToString(static_cast<Message>(e.message)) << ',' << e.intention << ','
        << Num(e.prob) << '\n';
  }
}

void WriteDatasetJson(std::ostream& out, const Dataset& d) {
  Json arr = Json::array();
  for (const auto& r : d.rows) {
    Json j;
    j["participant_id"] = r.participant_id;
    j["survey"] = ToString(r.survey);
    j["prior"] = r.prior;
    j["condition"] = ToString(r.condition);
    j["posterior"] = r.posterior ? Json(*r.posterior) : Json(nullptr);
    j["message"] = r.message ? Json(ToString(*r.message)) : Json(nullptr);
    j["length"] = r.length ? Json(*r.length) : Json(nullptr);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

Dataset LoadData(const std::string& path, const std::string& mapping_path,
                 std::ostream& err) {
  ColumnMapping mapping;
  if (!mapping_path.empty()) mapping = ColumnMapping::FromFile(mapping_path);
  ParseResult parsed = ReadDatasetFile(path, mapping);
  for (const auto& e : parsed.errors) {
    err << "warning: " << path << ":" << e.line << ": " << e.message << " (row skipped)\n";
  }
  return Preprocess(parsed.dataset);
}

void ReportFits(const std::vector<FitResult>& results, std::ostream& err) {
  for (const auto& r : results) {
    if (!r.error.empty()) {
      err << "warning: " << ModelName(r.model) << ": fit failed: " << r.error << '\n';
    } else {
      if (r.lambda_at_bound) {
        err << "note: " << ModelName(r.model) << ": lambda at its upper bound "
            << kMaxLambda << '\n';
      }
      if (!r.converged) {
        err << "note: " << ModelName(r.model) << ": simplex did not meet the tolerance\n";
      }
    }
  }
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational Speech Act models of (anti-)exhaustivity"};
  app.name("rsaexh");
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "write results to this file instead of stdout");
  };

  std::string model_name;
  ParamFlags sweep_params, check_params, simulate_params, synth_params;

  auto* sweep = app.add_subcommand("sweep", "predictions over a grid of priors");
  int grid = 99;
  common(sweep);
  sweep->add_option("--model", model_name, "model name")->required();
  sweep->add_option("--grid", grid, "number of interior grid points")
      ->check(CLI::PositiveNumber);
  sweep_params.Register(sweep);

  auto* check = app.add_subcommand("check", "regions of the prior where a predicate holds");
  std::string predicate_name = "listener-anti-exh";
  double grid_step = 0.01;
  bool threshold = false;
  common(check);
  check->add_option("--model", model_name, "model name")->required();
  check->add_option("--predicate", predicate_name,
                    "listener-anti-exh, speaker-anti-exh, explicit-preferred or all");
  check->add_option("--grid-step", grid_step, "scan resolution, at most 0.01");
  check->add_flag("--threshold", threshold,
                  "print the wonkiness threshold for Bayesian wonky-world anti-exhaustivity");
  check_params.Register(check);

  std::string data_path, mapping_path, models_text = "all";
  bool equal_costs = false;
  FitOptions fit_options;
  auto fit_flags = [&](CLI::App* cmd) {
    cmd->add_option("--data", data_path, "observation CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--mapping", mapping_path, "column-mapping file")->check(CLI::ExistingFile);
    cmd->add_flag("--equal-costs", equal_costs, "constrain delta_ab = delta_anb");
    cmd->add_option("--restarts", fit_options.restarts, "Latin-hypercube starts")
        ->check(CLI::Range(1, 100000));
    cmd->add_option("--seed", fit_options.seed, "seed for the starting points");
  };
  auto* fit = app.add_subcommand("fit", "maximum-likelihood fit of one model");
  common(fit);
  fit->add_option("--model", model_name, "model name")->required();
  fit_flags(fit);

  auto* compare = app.add_subcommand("compare", "fit several models and rank them by AIC");
  common(compare);
  compare->add_option("--models", models_text, "'all' or a comma-separated list");
  fit_flags(compare);

  auto* simulate = app.add_subcommand("simulate", "speaker and listener tables of the recursion");
  double prior = 0.5;
  int depth = 2;
  common(simulate);
  simulate->add_option("--model", model_name, "model name")->required();
  simulate->add_option("--p", prior, "prior of w_ab")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--depth", depth, "recursion depth")->check(CLI::PositiveNumber);
  simulate_params.Register(simulate);

  auto* synth = app.add_subcommand("synth", "synthetic dataset generated from a model");
  NoiseParams noise;
  std::uint64_t seed = 1;
  SynthDesign design = SynthDesign::Default();
  common(synth);
  synth->add_option("--model", model_name, "model name")->required();
  synth->add_option("--sigma-a", noise.sigma_a, "comprehension noise after A");
  synth->add_option("--sigma-ab", noise.sigma_ab, "comprehension noise after A&B");
  synth->add_option("--epsilon", noise.epsilon, "production error rate");
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--levels", design.levels, "number of prior levels");
  synth_params.Register(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nrun 'rsaexh --help' for the list of options\n";
    return kExitUsage;
  }

  std::ostringstream buffer;
  const bool json = format == "json";
  try {
    if (sweep->parsed()) {
      const ModelId model = ParseModelOrThrow(model_name);
      const ModelParams params = sweep_params.Build(model);
      const auto rows = Sweep(model, params, UniformGrid(grid));
      json ? WriteSweepJson(buffer, model, rows) : WriteSweepCsv(buffer, model, rows);
    } else if (check->parsed()) {
      const ModelId model = ParseModelOrThrow(model_name);
      const ModelParams params = check_params.Build(model, !threshold);
      if (threshold) {
        WriteThreshold(buffer, json, params, BwrsaAntiExhThreshold(params));
      } else {
        std::vector<Predicate> predicates;
        if (predicate_name == "all") {
          predicates.assign(kAllPredicates.begin(), kAllPredicates.end());
        } else if (auto p = ParsePredicate(predicate_name)) {
          predicates.push_back(*p);
        } else {
          throw UsageError{"unknown predicate '" + predicate_name + "'",
                           "use listener-anti-exh, speaker-anti-exh, explicit-preferred or all"};
        }
        if (!(grid_step > 0.0 && grid_step <= 0.01)) {
          throw UsageError{"--grid-step must lie in (0, 0.01]", "pass e.g. --grid-step 0.005"};
        }
        std::vector<RegionReport> reports;
        for (Predicate p : predicates) reports.push_back(ScanRegions(model, params, p, grid_step));
        WriteRegions(buffer, json, reports);
      }
    } else if (fit->parsed() || compare->parsed()) {
      std::vector<ModelId> models = fit->parsed()
                                        ? std::vector<ModelId>{ParseModelOrThrow(model_name)}
                                        : ParseModelList(models_text);
      const Dataset data = LoadData(data_path, mapping_path, err);
      std::vector<FitResult> results;
      if (fit->parsed()) {
        results.push_back(equal_costs ? FitEqualCosts(models[0], data, fit_options)
                                      : Fit(models[0], data, fit_options));
      } else {
        results = Compare(models, data, fit_options, equal_costs);
      }
      ReportFits(results, err);
      json ? WriteFitJson(buffer, results) : WriteFitCsv(buffer, results);
    } else if (simulate->parsed()) {
      const ModelId model = ParseModelOrThrow(model_name);
      const ModelParams params = simulate_params.Build(model);
      const auto scenario = BuildScenario(model, params, prior);
      WriteRecursion(buffer, json, engine::Iterate(scenario, params.lambda, depth));
    } else if (synth->parsed()) {
      const ModelId model = ParseModelOrThrow(model_name);
      const ModelParams params = synth_params.Build(model);
      const Dataset d = SynthGenerate(model, params, noise, design, seed);
      json ? WriteDatasetJson(buffer, d) : WriteDatasetCsv(buffer, d);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << "\n" << e.remedy << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }

  if (out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << buffer.str())) {
      err << "error: cannot write " << out_path << '\n';
      return kExitRuntimeError;
    }
  }
  return kExitOk;
}

}  // namespace rsaexh
