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

#ifndef ONEWAY_EQUILIBRIUM_HPP_
#define ONEWAY_EQUILIBRIUM_HPP_

#include <cstddef>
#include <vector>

#include "oneway/game.hpp"

namespace oneway {

// No-payment Nash outcome: A plays her own argmax, B best-responds in
// expectation over A's types.
struct NashOutcome {
  std::vector<std::size_t> a_action_by_type;  // indexed by theta_A
  std::vector<std::size_t> b_action_by_type;  // indexed by theta_B
  double expected_welfare = 0.0;
};

// A welfare ratio opt / achieved. `unbounded` is set when the achieved
// welfare is zero but the optimum is positive; value is then +infinity.
// 0/0 is reported as 1.
struct WelfareRatio {
  double value = 1.0;
  bool unbounded = false;
};

WelfareRatio welfare_ratio(double optimum, double achieved);

struct TypePoA {
  TypeProfile theta;
  double prob = 0.0;  // f_A(theta_A) * f_B(theta_B)
  double optimal_welfare = 0.0;
  double nash_welfare = 0.0;
  double max_u_a = 0.0;      // max_s u_A(s, theta_A)
  double max_u_b = 0.0;      // max_s u_B(s, theta_B)
  double u_b_at_nash = 0.0;  // u_B(s^N(theta), theta_B)
  WelfareRatio poa;
  WelfareRatio prop1_lower;  // max u_B / (max u_A + u_B(s^N))
  WelfareRatio prop1_upper;  // 1 + max u_B / max u_A
};

struct PoAReport {
  std::vector<TypePoA> per_type;  // theta_A-major enumeration order
  // Expectation of per-type ratios E_theta[PoA(theta)].
  WelfareRatio bayes_nash_poa;
  // Ratio of expectations E[opt] / E[SW(s^N)].
  WelfareRatio welfare_ratio_poa;
};

std::size_t nash_action_a(const OneWayGame& game, std::size_t theta_a);

// argmax_{s_B} E_{theta_A}[u_B((s_A^N(theta_A), s_B), theta_B)].
std::size_t nash_action_b(const OneWayGame& game, std::size_t theta_b);

NashOutcome nash_outcome(const OneWayGame& game);

StrategyProfile nash_profile(const OneWayGame& game, const TypeProfile& theta);

WelfareRatio poa_of_type(const OneWayGame& game, const TypeProfile& theta);

PoAReport poa_metrics(const OneWayGame& game);

// Checks lower <= PoA(theta) <= upper by cross-multiplication, which is
// exact when the payoff tables hold moderately sized integers.
bool prop1_sandwich_holds(const TypePoA& entry);

// s'(theta) = argmax_s max(u_A(s, theta_A), u_B(s, theta_B)); when A's term
// attains the maximum, B's coordinate is her best response to s_A.
StrategyProfile joint_max_strategy(const OneWayGame& game, const TypeProfile& theta);

}  // namespace oneway

#endif  // ONEWAY_EQUILIBRIUM_HPP_
