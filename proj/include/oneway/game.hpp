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

#ifndef ONEWAY_GAME_HPP_
#define ONEWAY_GAME_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace oneway {

// Priors must sum to one within this tolerance.
inline constexpr double kPriorTolerance = 1e-12;

// Absolute tolerance used by optimizers and by the acceptance test of
// player A (indifference counts as acceptance).
inline constexpr double kOptimizerTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TypeInfo {
  std::string id;
  double prob = 0.0;
};

struct StrategyProfile {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

struct TypeProfile {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const TypeProfile&, const TypeProfile&) = default;
};

// A two-player one-way game with finite action and type sets.
//
// Player A's payoff depends only on her own action and type. Tables are
// stored in the on-disk dimension order:
//   payoff_a[theta_a][s_a]
//   payoff_b[theta_b][s_a][s_b]
// Identifiers are kept for reporting; everything else works on dense indices.
// Operations assume the game passed `validate`.
struct OneWayGame {
  std::vector<std::string> actions_a;
  std::vector<std::string> actions_b;
  std::vector<TypeInfo> types_a;
  std::vector<TypeInfo> types_b;
  std::vector<std::vector<double>> payoff_a;
  std::vector<std::vector<std::vector<double>>> payoff_b;

  std::size_t num_actions_a() const { return actions_a.size(); }
  std::size_t num_actions_b() const { return actions_b.size(); }
  std::size_t num_types_a() const { return types_a.size(); }
  std::size_t num_types_b() const { return types_b.size(); }

  double u_a(std::size_t s_a, std::size_t theta_a) const {
    return payoff_a[theta_a][s_a];
  }
  double u_b(std::size_t s_a, std::size_t s_b, std::size_t theta_b) const {
    return payoff_b[theta_b][s_a][s_b];
  }
  double prob_a(std::size_t theta_a) const { return types_a[theta_a].prob; }
  double prob_b(std::size_t theta_b) const { return types_b[theta_b].prob; }
};

// Returns every invariant violation; an empty list means the game is valid.
std::vector<std::string> validate(const OneWayGame& game);

// Throws Error listing all violations when the game is invalid.
void require_valid(const OneWayGame& game);

// argmax_{s_B} u_B((s_A, s_B), theta_B), lowest index on ties.
std::size_t best_response_b(const OneWayGame& game, std::size_t s_a,
                            std::size_t theta_b);

double social_welfare(const OneWayGame& game, const StrategyProfile& s,
                      const TypeProfile& theta);

struct WelfareOptimum {
  StrategyProfile profile;
  double value = 0.0;
};

// Exhaustive maximum of SW over S_A x S_B, lowest (s_A, s_B) index on ties.
WelfareOptimum optimal_welfare(const OneWayGame& game, const TypeProfile& theta);

// max_{s_A} u_A(s_A, theta_A).
double max_payoff_a(const OneWayGame& game, std::size_t theta_a);

// max_{s} u_B(s, theta_B) over all joint profiles.
double max_payoff_b(const OneWayGame& game, std::size_t theta_b);

// Index lookups by identifier; throw Error on unknown ids.
std::size_t action_a_index(const OneWayGame& game, const std::string& id);
std::size_t action_b_index(const OneWayGame& game, const std::string& id);
std::size_t type_a_index(const OneWayGame& game, const std::string& id);
std::size_t type_b_index(const OneWayGame& game, const std::string& id);

}  // namespace oneway

#endif  // ONEWAY_GAME_HPP_
