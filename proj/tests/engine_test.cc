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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "rsaexh/engine.h"
#include "rsaexh/engine_models.h"
#include "rsaexh/errors.h"
#include "rsaexh/model_zoo.h"

namespace rsaexh::engine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Sum(const Distribution& d) {
  double s = 0.0;
  for (double p : d.probs) s += p;
  return s;
}

// Two worlds; message 0 true in both, message 1 true only in world 1.
GenericScenario TwoWorld(std::vector<double> prior, std::vector<double> costs = {0, 0}) {
  GenericScenario s(2, std::move(costs), std::move(prior));
  s.SetTruthAllContexts(0, 0, true);
  s.SetTruthAllContexts(0, 1, true);
  s.SetTruthAllContexts(1, 1, true);
  return s;
}

TEST_CASE("literal listener examples") {
  const auto s = TwoWorld({0.5, 0.5});
  const auto l = LiteralListener(s, 0, 0);
  CHECK(l[0] == doctest::Approx(0.5));
  CHECK(l[1] == doctest::Approx(0.5));

  const auto s2 = TwoWorld({0.3, 0.7});
  const auto singleton = LiteralListener(s2, 1, 0);
  CHECK(singleton[0] == 0.0);
  CHECK(singleton[1] == 1.0);

  const auto s3 = TwoWorld({0.25, 0.75});
  const auto taut = LiteralListener(s3, 0, 0);
  CHECK(taut[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(taut[1] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("literal listener on a zero-mass truth set is uniform over it") {
  const auto s = TwoWorld({1.0, 0.0});
  const auto l = LiteralListener(s, 1, 0);
  CHECK(l[1] == 1.0);
}

TEST_CASE("literal listener rejects a message false everywhere") {
  LiftedVariable v;
  v.name = "i";
  v.prior = {0.5, 0.5};
  GenericScenario s(2, {0, 0}, {0.5, 0.5}, {v});
  s.SetTruthAllContexts(0, 0, true);
  s.SetTruth(1, 1, 0, true);  // message 1 false in every world under context 1
  CHECK_THROWS_AS(LiteralListener(s, 1, 1), DegenerateMessage);
  CHECK_NOTHROW(LiteralListener(s, 1, 0));
}

TEST_CASE("utility examples") {
  CHECK(Utility(Distribution{{1.0, 0.0}}, 0, 0.0) == 0.0);
  CHECK(Utility(Distribution{{0.5, 0.5}}, 0, 0.5) ==
        doctest::Approx(std::log(0.5) - 0.5).epsilon(1e-15));
  CHECK(Utility(Distribution{{0.5, 0.5}}, 0, 0.5) == doctest::Approx(-1.1931).epsilon(1e-4));
  CHECK(Utility(Distribution{{0.0, 1.0}}, 0, 3.0) == -kInf);
}

TEST_CASE("softmax speaker examples") {
  const std::vector<double> sym = {0.0, 0.0};
  const auto a = SoftmaxSpeaker(sym, 3.0);
  CHECK(a[0] == doctest::Approx(0.5));
  CHECK(a[1] == doctest::Approx(0.5));

  const std::vector<double> one = {0.0, -kInf};
  const auto b = SoftmaxSpeaker(one, 1.0);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == 0.0);

  // 0.5 / (0.5 + exp(-0.5)) by hand.
  const std::vector<double> mixed = {std::log(0.5), -0.5};
  const auto c = SoftmaxSpeaker(mixed, 1.0);
  CHECK(c[0] == doctest::Approx(0.451863).epsilon(1e-6));
  CHECK(c[1] == doctest::Approx(0.548137).epsilon(1e-6));

  const std::vector<double> none = {-kInf, -kInf};
  CHECK_THROWS_AS(SoftmaxSpeaker(none, 1.0), AllMessagesUnusable);
}

TEST_CASE("softmax is shift invariant and stable for large utilities") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50, 50), shift(-1e3, 1e3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x = {u(rng), u(rng), u(rng)};
    const double c = shift(rng);
    std::vector<double> y = {x[0] + c, x[1] + c, x[2] + c};
    const auto a = SoftmaxSpeaker(x, 3.0), b = SoftmaxSpeaker(y, 3.0);
    CHECK(Sum(a) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
  }
  const std::vector<double> huge = {0.0, -1.0};
  const auto d = SoftmaxSpeaker(huge, 1e3);
  CHECK(d[0] == 1.0);
  CHECK(std::isfinite(d[1]));
}

TEST_CASE("pragmatic listener examples") {
  const std::vector<double> prior = {0.5, 0.5};
  const std::vector<double> lik = {0.2, 0.6};
  const auto post = PragmaticListener(prior, lik);
  CHECK(post[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(post[1] == doctest::Approx(0.75).epsilon(1e-15));

  const std::vector<double> prior2 = {0.4, 0.6};
  const std::vector<double> det = {1.0, 0.0};
  const auto d = PragmaticListener(prior2, det);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == 0.0);

  const std::vector<double> flat = {1.0 / 3, 1.0 / 3};
  const auto f = PragmaticListener(prior2, flat);
  CHECK(f[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(f[1] == doctest::Approx(0.6).epsilon(1e-15));

  const std::vector<double> zero = {0.0, 0.0};
  CHECK_THROWS_AS(PragmaticListener(prior2, zero), UnreachableMessage);
}

TEST_CASE("world-independent speaker leaves the prior unchanged") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng), s = u(rng);
    const std::vector<double> prior = {a / (a + b + c), b / (a + b + c), c / (a + b + c)};
    const std::vector<double> lik = {s, s, s};
    const auto post = PragmaticListener(prior, lik);
    for (int i = 0; i < 3; ++i) CHECK(post[i] == doctest::Approx(prior[i]).epsilon(1e-14));
  }
}

TEST_CASE("depth 1 is the composition of the building blocks") {
  const auto s = TwoWorld({0.35, 0.65}, {0.0, 0.7});
  const double lambda = 2.5;
  const auto rec = Iterate(s, lambda, 1);
  REQUIRE(rec.levels.size() == 1);
  std::vector<std::vector<double>> s1(2);
  for (int w = 0; w < 2; ++w) {
    std::vector<double> utils;
    for (int u = 0; u < 2; ++u) {
      utils.push_back(s.Truth(u, w, 0) ? Utility(LiteralListener(s, u, 0), w, s.cost(u)) : -kInf);
    }
    s1[w] = SoftmaxSpeaker(utils, lambda).probs;
    for (int u = 0; u < 2; ++u) CHECK(rec.levels[0].speaker.Row(w, 0)[u] == doctest::Approx(s1[w][u]));
  }
  for (int u = 0; u < 2; ++u) {
    const std::vector<double> lik = {s1[0][u], s1[1][u]};
    const auto post = PragmaticListener(s.world_prior(), lik);
    for (int w = 0; w < 2; ++w) {
      CHECK(rec.levels[0].listener.Joint(u, w, 0) == doctest::Approx(post[w]).epsilon(1e-14));
    }
  }
}

TEST_CASE("large rationality picks the most informative true message") {
  // Three worlds; message 0 true everywhere, 1 true in {1, 2}, 2 true in {2}.
  GenericScenario s(3, {0, 0, 0}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  for (int w = 0; w < 3; ++w) s.SetTruthAllContexts(0, w, true);
  s.SetTruthAllContexts(1, 1, true);
  s.SetTruthAllContexts(1, 2, true);
  s.SetTruthAllContexts(2, 2, true);
  const auto rec = Iterate(s, 200.0, 1);
  CHECK(rec.levels[0].speaker.Row(2, 0)[2] > 1 - 1e-12);
  CHECK(rec.levels[0].speaker.Row(1, 0)[1] > 1 - 1e-12);
  CHECK(rec.levels[0].speaker.Row(0, 0)[0] == 1.0);
}

TEST_CASE("every returned distribution sums to one") {
  ModelParams p;
  p.lambda = 3;
  p.delta_ab = 0.5;
  p.delta_anb = 1.0;
  p.xi = 0.4;
  for (ModelId m : kAllModels) {
    const auto rec = Iterate(BuildScenario(m, p, 0.37), p.lambda, 3);
    for (const auto& level : rec.levels) {
      for (const auto& row : level.speaker.rows) {
        if (!row.degenerate) CHECK(Sum(row) == doctest::Approx(1.0).epsilon(1e-12));
      }
      for (const auto& row : level.listener.rows) {
        if (!row.degenerate) CHECK(Sum(row) == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
    for (const auto& row : rec.first_listener_full.rows) {
      if (!row.degenerate) CHECK(Sum(row) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("iterate argument checks") {
  const auto s = TwoWorld({0.5, 0.5});
  CHECK_THROWS_AS(Iterate(s, 1.0, 0), InvalidArgument);
  CHECK_THROWS_AS(Iterate(s, 0.0, 1), InvalidArgument);
  GenericScenario bad(2, {0, 0}, {0.5, 0.6});
  bad.SetTruthAllContexts(0, 0, true);
  bad.SetTruthAllContexts(1, 1, true);
  CHECK_THROWS_AS(bad.Validate(), InvalidArgument);
  GenericScenario unused(2, {0, 0}, {0.5, 0.5});
  unused.SetTruthAllContexts(0, 0, true);
  CHECK_THROWS_AS(unused.Validate(), InvalidArgument);
}

TEST_CASE("unreachable messages are flagged inside the recursion") {
  // Message 1 is true only in a zero-prior world.
  GenericScenario s(2, {0, 0}, {1.0, 0.0});
  s.SetTruthAllContexts(0, 0, true);
  s.SetTruthAllContexts(0, 1, true);
  s.SetTruthAllContexts(1, 1, true);
  const auto rec = Iterate(s, 1.0, 1);
  CHECK(rec.levels[0].listener.rows[1].degenerate);
  CHECK_FALSE(rec.levels[0].listener.rows[0].degenerate);
}

TEST_CASE("context encoding round-trips") {
  LiftedVariable a, b;
  a.prior = {0.2, 0.3, 0.5};
  b.prior = {0.5, 0.5};
  GenericScenario s(2, {0}, {0.5, 0.5}, {a, b});
  CHECK(s.num_contexts() == 6);
  for (int c = 0; c < 6; ++c) {
    const auto v = s.DecodeContext(c);
    CHECK(s.EncodeContext(v) == c);
  }
  const std::vector<int> v = {2, 1};
  CHECK(s.ContextPrior(s.EncodeContext(v)) == doctest::Approx(0.25));
  CHECK(s.DecodeContext(1)[1] == 1);  // the last variable varies fastest
}

TEST_CASE("expected utility over interpretations") {
  ModelParams p;
  p.lambda = 1;
  p.xi = 0.5;
  const auto s = BuildScenario(ModelId::kSvrsa1, p, 0.5);
  const int total = 1;  // QUD value; interpretation value is averaged over
  const std::vector<int> ctx = {total, 0};
  const int c = s.EncodeContext(ctx);
  CHECK(ExpectedUtilityOverInterpretations(s, Index(Message::kA), Index(World::kAB), c) == -kInf);
  CHECK(ExpectedUtilityOverInterpretations(s, Index(Message::kA), Index(World::kA), c) ==
        doctest::Approx(0.5 * std::log(0.5)).epsilon(1e-15));
  CHECK(ExpectedUtilityOverInterpretations(s, Index(Message::kA), Index(World::kA), c) ==
        doctest::Approx(-0.3466).epsilon(1e-4));
  // A&B means the same under both readings, so averaging changes nothing.
  CHECK(ExpectedUtilityOverInterpretations(s, Index(Message::kAandB), Index(World::kAB), c) ==
        doctest::Approx(std::log(1.0)).epsilon(1e-15));
  const std::vector<int> partial = {0, 0};
  CHECK(ExpectedUtilityOverInterpretations(s, Index(Message::kA), Index(World::kAB),
                                           s.EncodeContext(partial)) == 0.0);
}

TEST_CASE("base listener crosses the prior once, at the cost difference") {
  for (double lambda : {0.5, 1.0, 3.0, 10.0}) {
    for (auto [dab, danb] : {std::pair{0.5, 1.0}, {1.0, 0.2}, {0.0, 2.0}, {1.0, 1.0}}) {
      ModelParams p;
      p.lambda = lambda;
      p.delta_ab = dab;
      p.delta_anb = danb;
      int changes = 0;
      bool prev = false;
      for (int i = 1; i <= 199; ++i) {
        const double q = i / 200.0;
        const auto rec = Iterate(BuildScenario(ModelId::kBaseRsa, p, q), lambda, 1);
        const double post = rec.levels[0].listener.WorldMarginal(0)[1];
        const bool above = post > q;
        if (i > 1 && above != prev) {
          ++changes;
          const double crossing = 1.0 / (1.0 + std::exp(-(danb - dab)));
          CHECK(std::abs(q - crossing) <= 0.005 + 1e-12);
        }
        CHECK(above == (std::log(q / (1 - q)) > danb - dab));
        prev = above;
      }
      CHECK(changes <= 1);
    }
  }
}

}  // namespace
}  // namespace rsaexh::engine
