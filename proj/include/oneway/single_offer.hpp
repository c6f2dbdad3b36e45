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

#ifndef ONEWAY_SINGLE_OFFER_HPP_
#define ONEWAY_SINGLE_OFFER_HPP_

#include <cstddef>
#include <vector>

#include "oneway/equilibrium.hpp"
#include "oneway/game.hpp"

namespace oneway {

// B proposes action `proposed_action` to A together with the money amount
// gamma * Delta_B(s_A, theta_B).
struct Offer {
  std::size_t proposed_action = 0;
  double gamma = 0.0;
};

// A-types for which the proposed action is not among A's maximizers, with
// prior weights renormalized over the set. Zero-probability types are kept
// out of the set since they cannot shift a conditional expectation.
struct RestrictedTypes {
  std::vector<std::size_t> types;
  std::vector<double> weights;
  bool empty() const { return types.empty(); }
};

struct OutsideOption {
  std::size_t action_b = 0;
  double expected_payoff = 0.0;
  RestrictedTypes restricted;
  // Set when the restricted set is empty; rejection then has probability
  // zero and the outside option falls back to B's best response.
  bool empty_restriction = false;
};

// Everything B needs to price proposal s_A when she has type theta_B.
struct ProposalContext {
  std::size_t proposed_action = 0;
  std::size_t theta_b = 0;
  std::size_t best_response = 0;  // s_B(s_A, theta_B)
  double u_b_accept = 0.0;        // u_B(s_B(s_A, theta_B), theta_B)
  OutsideOption outside;
  double delta_b = 0.0;                 // u_b_accept - u_B^O
  std::vector<double> delta_a;          // Delta_A(s_A, theta_A) per A-type
  std::vector<double> prob_a;           // f_A
  std::vector<std::size_t> nash_a;      // s_A^N(theta_A)

  // A with Delta_A accepts gamma (indifference accepts).
  bool accepts(double delta_a_value, double gamma) const {
    return delta_a_value <= gamma * delta_b + kOptimizerTolerance;
  }
  // P(s_A, gamma, theta_B).
  double acceptance_prob(double gamma) const;
  // Distinct values Delta_A / Delta_B inside [0, 1] over positive-probability
  // types, plus 0, ascending. Empty when Delta_B <= 0.
  std::vector<double> gamma_candidates() const;
};

ProposalContext make_proposal_context(const OneWayGame& game, std::size_t s_a,
                                      std::size_t theta_b);

RestrictedTypes restricted_types(const OneWayGame& game, std::size_t s_a);

OutsideOption outside_option(const OneWayGame& game, std::size_t s_a, std::size_t theta_b);

// u_A(s_A^N(theta_A), theta_A) - u_A(s_A, theta_A).
double delta_a(const OneWayGame& game, std::size_t s_a, std::size_t theta_a);

// Throws Error when gamma is outside [0, 1].
double acceptance_prob(const OneWayGame& game, std::size_t s_a, double gamma,
                       std::size_t theta_b);

struct OfferEvaluation {
  Offer offer;
  OutsideOption outside;
  double acceptance_prob = 0.0;
  double delta_b = 0.0;
  double expected_u_a = 0.0;
  double expected_u_b = 0.0;
  double expected_sw = 0.0;
  bool negative_delta_b = false;  // B would never make this proposal
};

OfferEvaluation evaluate_offer(const OneWayGame& game, const Offer& offer,
                               std::size_t theta_b);
OfferEvaluation evaluate_offer(const ProposalContext& ctx, const OneWayGame& game,
                               double gamma);

struct OfferChoice {
  Offer offer;
  OfferEvaluation evaluation;
  // No proposal has Delta_B > 0 (optimal) or the simplified proposal has
  // Delta_B <= 0 (simplified). For `optimal_offer` the evaluation then holds
  // B's no-payment equilibrium values.
  bool null_offer = false;
};

// Maximizes E[U_B] over s_A and gamma by enumerating acceptance thresholds.
OfferChoice optimal_offer(const OneWayGame& game, std::size_t theta_b);

// Proposes s_A' = argmax_{s_A} u_B(s_B(s_A, theta_B), theta_B) and optimizes
// gamma only.
OfferChoice simplified_offer(const OneWayGame& game, std::size_t theta_b);

struct SingleOfferOutcome {
  bool accepted = false;
  StrategyProfile profile;
  double transfer_to_a = 0.0;
  double transfer_to_b = 0.0;  // always -transfer_to_a
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  double welfare = 0.0;
};

SingleOfferOutcome run_single_offer(const OneWayGame& game, const TypeProfile& theta,
                                    const Offer& offer);
SingleOfferOutcome run_single_offer(const ProposalContext& ctx, const OneWayGame& game,
                                    std::size_t theta_a, double gamma);

struct AcceptRejectPoA {
  double accept = 0.0;  // 1 + gamma
  WelfareRatio reject;  // 1 + 1/gamma, unbounded at gamma = 0
};

AcceptRejectPoA accept_reject_poa(double gamma);

// ((g + 1) / g) * (1 - P(s_A', g, theta_B) * (1 - g)) at the simplified
// offer g = gamma'. Unbounded when gamma' = 0.
WelfareRatio bayes_poa_bound(const OneWayGame& game, std::size_t theta_b);
WelfareRatio bayes_poa_bound(double gamma, double acceptance);

struct CorollaryBound {
  double gamma = 0.0;
  double poa_bound = 0.0;
};

// Power-law acceptance F(x) = (x / Delta_B)^beta, 0 < beta <= 1.
CorollaryBound corollary_bound(double beta);

}  // namespace oneway

#endif  // ONEWAY_SINGLE_OFFER_HPP_
