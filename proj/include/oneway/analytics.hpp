// Copyright 2026 The Oneway Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef ONEWAY_ANALYTICS_HPP_
#define ONEWAY_ANALYTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oneway/game.hpp"

namespace oneway {

// One-dimensional distribution with a closed-form CDF and quantile.
// power(beta, scale): F(x) = (x / scale)^beta on [0, scale].
// degenerate(v): point mass, used for zero-variance checks.
struct ContinuousSpec {
  enum class Kind { kUniform, kPower, kDegenerate };
  Kind kind = Kind::kUniform;
  double a = 0.0;
  double b = 1.0;
  double beta = 1.0;
  double scale = 1.0;

  static ContinuousSpec uniform(double lo, double hi);
  static ContinuousSpec power(double beta, double scale);
  static ContinuousSpec degenerate(double v);

  double cdf(double x) const;
  double quantile(double u) const;
  double lower() const;
  double upper() const;
};

// Two-action bargaining family behind the worked examples. A's default
// action pays `default_payoff_a`; the action B wants costs A a random loss
// Delta_A ~ `loss`. B earns payoff_b_accept when A complies and
// payoff_b_reject otherwise.
struct BargainingModel {
  ContinuousSpec loss;
  double default_payoff_a = 1.0;
  double payoff_b_accept = 1.0;
  double payoff_b_reject = 0.0;

  double delta_b() const { return payoff_b_accept - payoff_b_reject; }
};

BargainingModel example1b_model(double x);
BargainingModel example2_model(double mu1);
BargainingModel corollary_model(double beta);

// gamma maximizing payoff_b_reject + F(gamma Delta_B)(1 - gamma) Delta_B.
// Closed form for power losses with scale = Delta_B and for uniform losses
// starting at 0; otherwise a 10^4-point grid polished by golden section.
double optimal_gamma(const BargainingModel& model);

struct Example1bResult {
  double x = 0.0;
  double c_star = 0.0;
  double expected_sw = 0.0;  // closed form as published
  double poa = 0.0;          // ratio of expectations, closed form
  double optimum = 0.0;      // 50 + x above x = 50, else 100
  double mechanism_sw = 0.0; // E[SW] of the mechanism actually run
  double nash_poa = 0.0;     // without payments
};

Example1bResult example1b(double x);

struct Example2Result {
  double mu1 = 0.0;
  double c_star = 0.0;
  double expected_sw = 0.0;
  double poa = 0.0;
  double optimum = 0.0;
  double mechanism_sw = 0.0;
};

// Limit regime n -> infinity.
Example2Result example2(double mu1);

struct Argmax {
  double arg = 0.0;
  double value = 0.0;
};

// Golden-section maximum of example2(mu1).poa on [1/2, 2].
Argmax example2_max_poa();

double expected_max_uniform(std::size_t n);

// (c n - c^n) / (n - 1).
double acceptance_prob_example2(double c, double n);

struct Estimate {
  double mean = 0.0;
  double half_width = 0.0;  // 99% normal interval
  std::uint64_t samples = 0;
};

inline constexpr double kZ99 = 2.5758293035489004;

Estimate mc_expected_max_uniform(std::size_t n, std::uint64_t samples, std::uint64_t seed);

struct SingleOfferMonteCarlo {
  std::uint64_t seed = 0;
  double gamma = 0.0;
  Estimate payoff_a;
  Estimate payoff_b;
  Estimate welfare;
  Estimate optimum;
  Estimate acceptance;
  Estimate poa_of_sample;  // mean of per-sample opt / SW
  double poa_ratio_of_means = 0.0;
};

// Runs the single offer gamma * Delta_B against losses drawn from the model.
SingleOfferMonteCarlo mc_single_offer(const BargainingModel& model, double gamma,
                                      std::uint64_t samples, std::uint64_t seed);

// Uses optimal_gamma(model).
SingleOfferMonteCarlo mc_single_offer(const BargainingModel& model, std::uint64_t samples,
                                      std::uint64_t seed);

struct DiscreteDistribution {
  std::vector<double> values;
  std::vector<double> weights;
};

// Quantile midpoints F^{-1}((i + 1/2) / k) with weights 1/k.
DiscreteDistribution discretize(const ContinuousSpec& spec, std::size_t k);

// Finite game for the discrete engine: A-types are the k loss points,
// actions {comply, default}; B has one type and one action.
OneWayGame bargaining_game(const BargainingModel& model, std::size_t k);

}  // namespace oneway

#endif  // ONEWAY_ANALYTICS_HPP_
