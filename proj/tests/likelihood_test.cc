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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "rsaexh/data_io.h"
#include "rsaexh/errors.h"
#include "rsaexh/likelihood.h"

namespace rsaexh {
namespace {

// Point masses at both censoring points plus the interior density.
double TobitMass(double pred, double sigma) {
  const double lower = std::exp(ComprehensionLoglik(pred, 0.0, sigma));
  const double upper = std::exp(ComprehensionLoglik(pred, 1.0, sigma));
  auto density = [&](double x) { return std::exp(ComprehensionLoglik(pred, x, sigma)); };
  double err = 0.0;
  const double interior =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, 1.0, 15, 1e-13, &err);
  return lower + upper + interior;
}

TEST_CASE("normal tail functions") {
  CHECK(LogNormalCdf(0.0) == doctest::Approx(-std::numbers::ln2).epsilon(1e-15));
  CHECK(LogNormalCdf(3.0) == doctest::Approx(-0.001350809964748193798).epsilon(1e-13));
  CHECK(LogNormalCdf(-10.0) == doctest::Approx(-53.23128515051247057).epsilon(1e-13));
  CHECK(LogNormalCdf(-30.5) == doctest::Approx(-469.4627373229121144).epsilon(1e-12));
  CHECK(LogNormalCdf(-40.0) == doctest::Approx(-804.6084420137537882).epsilon(1e-12));
  CHECK(LogNormalCdf(40.0) == 0.0);
  CHECK(LogNormalPdf(0.0) == doctest::Approx(-0.5 * std::log(2 * std::numbers::pi)).epsilon(1e-15));
  // Continuous across the switch to the asymptotic series.
  CHECK(LogNormalCdf(std::nextafter(-30.0, 0.0)) == doctest::Approx(-454.3212439563432).epsilon(1e-13));
  CHECK(LogNormalCdf(std::nextafter(-30.0, -31.0)) == doctest::Approx(-454.3212439563432).epsilon(1e-13));
}

TEST_CASE("production likelihood examples") {
  const MessageDistribution certain = {1.0, 0.0, 0.0};
  CHECK(ProductionLoglik(certain, Message::kA, 0.0) == 0.0);
  CHECK(ProductionLoglik(certain, Message::kAandB, 0.022) ==
        doctest::Approx(-3.880626151367474).epsilon(1e-13));
  CHECK(ProductionLoglik(certain, Message::kAandB, 0.022) == doctest::Approx(-3.881).epsilon(1e-3));
  CHECK_THROWS_AS(ProductionLoglik(certain, Message::kAandB, 0.0), NonfiniteLikelihood);
}

TEST_CASE("smoothed production probabilities sum to one") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (trial % 3 == 0) c = 0.0;
    const double s = a + b + c;
    const MessageDistribution pred = {a / s, b / s, c / s};
    const double eps = trial % 5 == 0 ? 0.0 : u(rng);
    double total = 0.0;
    for (Message m : kMessages) total += SmoothedProbability(pred, m, eps);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("comprehension likelihood examples") {
  for (double sigma : {0.05, 0.33, 2.0}) {
    CHECK(ComprehensionLoglik(1.0, 1.0, sigma) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
    CHECK(ComprehensionLoglik(0.0, 0.0, sigma) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  }
  CHECK(ComprehensionLoglik(0.5, 0.5, 0.33) == doctest::Approx(0.18972409131693834).epsilon(1e-14));
  CHECK(ComprehensionLoglik(0.9, 0.0, 0.01) == doctest::Approx(std::log(0.5) - 4049.0).epsilon(0.01));
  CHECK(std::isfinite(ComprehensionLoglik(0.999, 0.0, 0.01)));
  CHECK_THROWS_AS(ComprehensionLoglik(0.5, 0.5, 0.0), InvalidArgument);
}

TEST_CASE("tobit density integrates to one") {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0, 1), logsig(std::log(0.02), std::log(5.0));
  for (int trial = 0; trial < 100; ++trial) {
    const double pred = u(rng), sigma = std::exp(logsig(rng));
    CAPTURE(pred);
    CAPTURE(sigma);
    CHECK(std::abs(TobitMass(pred, sigma) - 1.0) <= 1e-6);
  }
}

TEST_CASE("dataset likelihood") {
  ModelParams params;
  params.lambda = 3;
  params.delta_ab = 0.5;
  params.delta_anb = 1.0;
  const NoiseParams noise{0.3, 0.2, 0.02};
  Dataset empty;
  CHECK(DatasetLoglik(ModelId::kBaseRsa, params, noise, empty) == 0.0);

  const double p = 0.6;
  const auto pred = Predict(ModelId::kBaseRsa, params, p);
  ObservationRow comp;
  comp.participant_id = "s1";
  comp.survey = Survey::kComprehension;
  comp.prior = p;
  comp.condition = Condition::kUttA;
  comp.posterior = pred.post_a;
  Dataset one;
  one.rows = {comp};
  CHECK(DatasetLoglik(ModelId::kBaseRsa, params, noise, one) ==
        ComprehensionLoglik(pred.post_a, pred.post_a, noise.sigma_a));

  ObservationRow ab = comp;
  ab.condition = Condition::kUttAB;
  ab.posterior = 0.9;
  ObservationRow prod;
  prod.participant_id = "s2";
  prod.survey = Survey::kProduction;
  prod.prior = 0.3;
  prod.condition = Condition::kWorldA;
  prod.message = Response::kAandNotB;
  ObservationRow prod2 = prod;
  prod2.condition = Condition::kWorldAB;
  prod2.message = Response::kA;
  Dataset all;
  all.rows = {comp, ab, prod, prod2};
  const double expected =
      ComprehensionLoglik(pred.post_a, pred.post_a, 0.3) + ComprehensionLoglik(1.0, 0.9, 0.2) +
      ProductionLoglik(Predict(ModelId::kBaseRsa, params, 0.3).prod_wa, Message::kAandNotB, 0.02) +
      ProductionLoglik(Predict(ModelId::kBaseRsa, params, 0.3).prod_wab, Message::kA, 0.02);
  CHECK(DatasetLoglik(ModelId::kBaseRsa, params, noise, all) == doctest::Approx(expected).epsilon(1e-14));

  Dataset reversed = all;
  std::reverse(reversed.rows.begin(), reversed.rows.end());
  CHECK(DatasetLoglik(ModelId::kBaseRsa, params, noise, reversed) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("dataset likelihood errors name the row") {
  ModelParams params;
  params.lambda = 3;
  ObservationRow prod;
  prod.survey = Survey::kProduction;
  prod.prior = 0.5;
  prod.condition = Condition::kWorldAB;
  prod.message = Response::kAandNotB;
  Dataset d;
  d.rows = {prod};
  const NoiseParams no_error{0.3, 0.3, 0.0};
  try {
    DatasetLoglik(ModelId::kBaseRsa, params, no_error, d);
    FAIL("expected an exception");
  } catch (const NonfiniteLikelihood& e) {
    CHECK(std::string(e.what()).find("row 0") != std::string::npos);
  }
  CHECK_THROWS_AS(DatasetLoglik(ModelId::kWrsa, params, no_error, d), MissingParameter);
  d.rows[0].message = Response::kOtherNa;
  CHECK_THROWS_AS(DatasetLoglik(ModelId::kBaseRsa, params, NoiseParams{}, d), InvalidArgument);
}

}  // namespace
}  // namespace rsaexh
