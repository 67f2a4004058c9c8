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

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "rsaexh/cli.h"

namespace rsaexh {
namespace {

int Invoke(const std::vector<std::string>& args, std::string* out) {
  std::vector<std::string> storage = {"rsaexh"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream o, e;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

TEST_CASE("compare ranks the generating model first on its own data") {
  const auto path = std::filesystem::temp_directory_path() / "rsaexh_self_consistency.csv";
  int wins = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    REQUIRE(Invoke({"synth", "--model", "wrsa", "--lambda", "3.9", "--cost-ab", "0", "--cost-anb",
                    "0.37", "--xi", "0.86", "--sigma-a", "0.33", "--sigma-ab", "0.22", "--epsilon",
                    "0.022", "--seed", std::to_string(seed), "--out", path.string()},
                   nullptr) == kExitOk);
    std::string table;
    REQUIRE(Invoke({"compare", "--models", "all", "--data", path.string()}, &table) == kExitOk);
    const auto first_row = table.substr(table.find('\n') + 1);
    const bool win = first_row.rfind("wrsa,", 0) == 0;
    MESSAGE("seed " << seed << ": top row " << first_row.substr(0, first_row.find(',')));
    wins += win;
  }
  std::filesystem::remove(path);
  CHECK(wins >= 16);
}

}  // namespace
}  // namespace rsaexh
