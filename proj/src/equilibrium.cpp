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

#include "oneway/equilibrium.hpp"

#include <algorithm>
#include <limits>

namespace oneway {

WelfareRatio welfare_ratio(double optimum, double achieved) {
  if (achieved > 0.0) return {optimum / achieved, false};
  if (optimum > 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {1.0, false};
}

std::size_t nash_action_a(const OneWayGame& game, std::size_t theta_a) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < game.num_actions_a(); ++a) {
    if (game.u_a(a, theta_a) > game.u_a(best, theta_a)) best = a;
  }
  return best;
}

std::size_t nash_action_b(const OneWayGame& game, std::size_t theta_b) {
  std::vector<std::size_t> a_actions(game.num_types_a());
  for (std::size_t t = 0; t < game.num_types_a(); ++t) a_actions[t] = nash_action_a(game, t);

  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < game.num_actions_b(); ++b) {
    double v = 0.0;
    for (std::size_t t = 0; t < game.num_types_a(); ++t) {
      v += game.prob_a(t) * game.u_b(a_actions[t], b, theta_b);
    }
    if (v > best_value) {
      best_value = v;
      best = b;
    }
  }
  return best;
}

NashOutcome nash_outcome(const OneWayGame& game) {
  NashOutcome out;
  out.a_action_by_type.resize(game.num_types_a());
  out.b_action_by_type.resize(game.num_types_b());
  for (std::size_t t = 0; t < game.num_types_a(); ++t) {
    out.a_action_by_type[t] = nash_action_a(game, t);
  }
  for (std::size_t t = 0; t < game.num_types_b(); ++t) {
    out.b_action_by_type[t] = nash_action_b(game, t);
  }
  for (std::size_t ta = 0; ta < game.num_types_a(); ++ta) {
    for (std::size_t tb = 0; tb < game.num_types_b(); ++tb) {
      const StrategyProfile s{out.a_action_by_type[ta], out.b_action_by_type[tb]};
      out.expected_welfare +=
          game.prob_a(ta) * game.prob_b(tb) * social_welfare(game, s, {ta, tb});
    }
  }
  return out;
}

StrategyProfile nash_profile(const OneWayGame& game, const TypeProfile& theta) {
  return {nash_action_a(game, theta.a), nash_action_b(game, theta.b)};
}

WelfareRatio poa_of_type(const OneWayGame& game, const TypeProfile& theta) {
  const double opt = optimal_welfare(game, theta).value;
  const double nash = social_welfare(game, nash_profile(game, theta), theta);
  return welfare_ratio(opt, nash);
}

PoAReport poa_metrics(const OneWayGame& game) {
  const NashOutcome nash = nash_outcome(game);
  PoAReport report;
  report.per_type.reserve(game.num_types_a() * game.num_types_b());

  double expected_ratio = 0.0;
  bool ratio_unbounded = false;
  double expected_opt = 0.0;
  double expected_nash = 0.0;

  for (std::size_t ta = 0; ta < game.num_types_a(); ++ta) {
    const double max_a = max_payoff_a(game, ta);
    for (std::size_t tb = 0; tb < game.num_types_b(); ++tb) {
      TypePoA e;
      e.theta = {ta, tb};
      e.prob = game.prob_a(ta) * game.prob_b(tb);
      const StrategyProfile s{nash.a_action_by_type[ta], nash.b_action_by_type[tb]};
      e.optimal_welfare = optimal_welfare(game, e.theta).value;
      e.nash_welfare = social_welfare(game, s, e.theta);
      e.max_u_a = max_a;
      e.max_u_b = max_payoff_b(game, tb);
      e.u_b_at_nash = game.u_b(s.a, s.b, tb);
      e.poa = welfare_ratio(e.optimal_welfare, e.nash_welfare);
      e.prop1_lower = welfare_ratio(e.max_u_b, e.max_u_a + e.u_b_at_nash);
      if (e.max_u_b == 0.0) e.prop1_lower = {0.0, false};
      const WelfareRatio tail = welfare_ratio(e.max_u_b, e.max_u_a);
      e.prop1_upper = e.max_u_b == 0.0 ? WelfareRatio{1.0, false}
                                        : WelfareRatio{1.0 + tail.value, tail.unbounded};

      if (e.prob > 0.0) {
        if (e.poa.unbounded) {
          ratio_unbounded = true;
        } else {
          expected_ratio += e.prob * e.poa.value;
        }
      }
      expected_opt += e.prob * e.optimal_welfare;
      expected_nash += e.prob * e.nash_welfare;
      report.per_type.push_back(e);
    }
  }
  report.bayes_nash_poa =
      ratio_unbounded ? WelfareRatio{std::numeric_limits<double>::infinity(), true}
                      : WelfareRatio{expected_ratio, false};
  report.welfare_ratio_poa = welfare_ratio(expected_opt, expected_nash);
  return report;
}

bool prop1_sandwich_holds(const TypePoA& e) {
  const double opt = e.optimal_welfare;
  const double nash = e.nash_welfare;  // = max_u_a + u_b_at_nash
  const double den_lower = e.max_u_a + e.u_b_at_nash;

  // lower <= poa  <=>  max_u_b * nash <= opt * den_lower
  bool lower_ok;
  if (e.max_u_b == 0.0) {
    lower_ok = true;
  } else if (den_lower == 0.0) {
    lower_ok = e.poa.unbounded;
  } else {
    lower_ok = e.max_u_b * nash <= opt * den_lower;
  }

  // poa <= 1 + max_u_b / max_u_a  <=>  opt * max_u_a <= (max_u_a + max_u_b) * nash
  bool upper_ok;
  if (e.max_u_a == 0.0) {
    upper_ok = e.max_u_b > 0.0 || !e.poa.unbounded;
  } else if (nash == 0.0) {
    upper_ok = !e.poa.unbounded;
  } else {
    upper_ok = opt * e.max_u_a <= (e.max_u_a + e.max_u_b) * nash;
  }
  return lower_ok && upper_ok;
}

StrategyProfile joint_max_strategy(const OneWayGame& game, const TypeProfile& theta) {
  StrategyProfile best{0, 0};
  double best_value = -1.0;
  for (std::size_t a = 0; a < game.num_actions_a(); ++a) {
    for (std::size_t b = 0; b < game.num_actions_b(); ++b) {
      const double v = std::max(game.u_a(a, theta.a), game.u_b(a, b, theta.b));
      if (v > best_value) {
        best_value = v;
        best = {a, b};
      }
    }
  }
  if (game.u_a(best.a, theta.a) >= game.u_b(best.a, best.b, theta.b)) {
    best.b = best_response_b(game, best.a, theta.b);
  }
  return best;
}

}  // namespace oneway
