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

#ifndef RSAEXH_LOG_MATH_H_
#define RSAEXH_LOG_MATH_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace rsaexh {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Logarithm with log(0) == kNegInf and no floating-point exception noise.
inline double SafeLog(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

// exp() that maps kNegInf to exactly 0.
inline double SafeExp(double x) { return x == kNegInf ? 0.0 : std::exp(x); }

// log(1 + exp(x)).
inline double Softplus(double x) {
  if (x == kNegInf) return 0.0;
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// log(1 / (1 + exp(-x))): log of the standard logistic function.
inline double LogLogistic(double x) { return -Softplus(-x); }

inline double Logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double Logit(double p) { return std::log(p) - std::log1p(-p); }

inline double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

inline double LogSumExp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += SafeExp(x - m);
  return m + std::log(s);
}

}  // namespace rsaexh

#endif  // RSAEXH_LOG_MATH_H_
