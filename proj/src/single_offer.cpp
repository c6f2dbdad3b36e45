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

#include "oneway/single_offer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace oneway {

double ProposalContext::acceptance_prob(double gamma) const {
  double p = 0.0;
  for (std::size_t t = 0; t < delta_a.size(); ++t) {
    if (accepts(delta_a[t], gamma)) p += prob_a[t];
  }
  return std::min(p, 1.0);
}

std::vector<double> ProposalContext::gamma_candidates() const {
  std::vector<double> out;
  if (!(delta_b > 0.0)) return out;
  out.push_back(0.0);
  for (std::size_t t = 0; t < delta_a.size(); ++t) {
    if (prob_a[t] <= 0.0) continue;
    const double g = delta_a[t] / delta_b;
    if (g >= 0.0 && g <= 1.0) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RestrictedTypes restricted_types(const OneWayGame& game, std::size_t s_a) {
  RestrictedTypes out;
  double total = 0.0;
  for (std::size_t t = 0; t < game.num_types_a(); ++t) {
    if (game.prob_a(t) <= 0.0) continue;
    // Set membership: t is dropped whenever s_a attains the maximum.
    if (game.u_a(s_a, t) < max_payoff_a(game, t)) {
      out.types.push_back(t);
      out.weights.push_back(game.prob_a(t));
      total += game.prob_a(t);
    }
  }
  if (total <= 0.0) return {};
  for (double& w : out.weights) w /= total;
  return out;
}

OutsideOption outside_option(const OneWayGame& game, std::size_t s_a, std::size_t theta_b) {
  OutsideOption out;
  out.restricted = restricted_types(game, s_a);
  if (out.restricted.empty()) {
    out.empty_restriction = true;
    out.action_b = best_response_b(game, s_a, theta_b);
    out.expected_payoff = game.u_b(s_a, out.action_b, theta_b);
    return out;
  }
  std::vector<std::size_t> nash_a;
  nash_a.reserve(out.restricted.types.size());
  for (std::size_t t : out.restricted.types) nash_a.push_back(nash_action_a(game, t));

  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < game.num_actions_b(); ++b) {
    double v = 0.0;
    for (std::size_t i = 0; i < nash_a.size(); ++i) {
      v += out.restricted.weights[i] * game.u_b(nash_a[i], b, theta_b);
    }
    if (v > best_value) {
      best_value = v;
      out.action_b = b;
    }
  }
  out.expected_payoff = best_value;
  return out;
}

double delta_a(const OneWayGame& game, std::size_t s_a, std::size_t theta_a) {
  return max_payoff_a(game, theta_a) - game.u_a(s_a, theta_a);
}

ProposalContext make_proposal_context(const OneWayGame& game, std::size_t s_a,
                                      std::size_t theta_b) {
  ProposalContext ctx;
  ctx.proposed_action = s_a;
  ctx.theta_b = theta_b;
  ctx.best_response = best_response_b(game, s_a, theta_b);
  ctx.u_b_accept = game.u_b(s_a, ctx.best_response, theta_b);
  ctx.outside = outside_option(game, s_a, theta_b);
  ctx.delta_b = ctx.u_b_accept - ctx.outside.expected_payoff;
  const std::size_t n = game.num_types_a();
  ctx.delta_a.resize(n);
  ctx.prob_a.resize(n);
  ctx.nash_a.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    ctx.delta_a[t] = delta_a(game, s_a, t);
    ctx.prob_a[t] = game.prob_a(t);
    ctx.nash_a[t] = nash_action_a(game, t);
  }
  return ctx;
}

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
}

}  // namespace

double acceptance_prob(const OneWayGame& game, std::size_t s_a, double gamma,
                       std::size_t theta_b) {
  check_gamma(gamma);
  return make_proposal_context(game, s_a, theta_b).acceptance_prob(gamma);
}

OfferEvaluation evaluate_offer(const ProposalContext& ctx, const OneWayGame& game,
                               double gamma) {
  check_gamma(gamma);
  OfferEvaluation ev;
  ev.offer = {ctx.proposed_action, gamma};
  ev.outside = ctx.outside;
  ev.delta_b = ctx.delta_b;
  ev.negative_delta_b = ctx.delta_b < 0.0;
  ev.acceptance_prob = ctx.acceptance_prob(gamma);
  ev.expected_u_b =
      ctx.outside.expected_payoff + ev.acceptance_prob * (1.0 - gamma) * ctx.delta_b;

  // A's payoff and welfare are exact expectations over the discrete prior,
  // i.e. they condition on which types actually accept.
  for (std::size_t t = 0; t < ctx.delta_a.size(); ++t) {
    const double f = ctx.prob_a[t];
    if (f <= 0.0) continue;
    const SingleOfferOutcome o = run_single_offer(ctx, game, t, gamma);
    ev.expected_u_a += f * o.payoff_a;
    ev.expected_sw += f * o.welfare;
  }
  return ev;
}

OfferEvaluation evaluate_offer(const OneWayGame& game, const Offer& offer,
                               std::size_t theta_b) {
  return evaluate_offer(make_proposal_context(game, offer.proposed_action, theta_b), game,
                        offer.gamma);
}

namespace {

// B's values when she does not bargain at all.
OfferChoice null_choice(const OneWayGame& game, std::size_t theta_b) {
  OfferChoice c;
  c.null_offer = true;
  c.offer = {0, 0.0};
  c.evaluation.offer = c.offer;
  const std::size_t b = nash_action_b(game, theta_b);
  for (std::size_t t = 0; t < game.num_types_a(); ++t) {
    const double f = game.prob_a(t);
    const std::size_t a = nash_action_a(game, t);
    c.evaluation.expected_u_a += f * game.u_a(a, t);
    c.evaluation.expected_u_b += f * game.u_b(a, b, theta_b);
  }
  c.evaluation.expected_sw = c.evaluation.expected_u_a + c.evaluation.expected_u_b;
  return c;
}

struct Candidate {
  std::size_t action;
  double gamma;
  double value;
};

// Highest value; within tolerance prefer smaller gamma, then lower action.
const Candidate& pick_best(const std::vector<Candidate>& cands) {
  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best_value = std::max(best_value, c.value);
  const Candidate* best = nullptr;
  for (const auto& c : cands) {
    if (c.value < best_value - kOptimizerTolerance) continue;
    if (best == nullptr || c.gamma < best->gamma ||
        (c.gamma == best->gamma && c.action < best->action)) {
      best = &c;
    }
  }
  return *best;
}

std::vector<Candidate> enumerate_gammas(const ProposalContext& ctx) {
  std::vector<Candidate> out;
  for (double g : ctx.gamma_candidates()) {
    const double value =
        ctx.outside.expected_payoff + ctx.acceptance_prob(g) * (1.0 - g) * ctx.delta_b;
    out.push_back({ctx.proposed_action, g, value});
  }
  return out;
}

}  // namespace

OfferChoice optimal_offer(const OneWayGame& game, std::size_t theta_b) {
  std::vector<Candidate> cands;
  std::vector<ProposalContext> contexts;
  for (std::size_t a = 0; a < game.num_actions_a(); ++a) {
    contexts.push_back(make_proposal_context(game, a, theta_b));
    if (!(contexts.back().delta_b > 0.0)) continue;
    const auto more = enumerate_gammas(contexts.back());
    cands.insert(cands.end(), more.begin(), more.end());
  }
  if (cands.empty()) return null_choice(game, theta_b);
  const Candidate& best = pick_best(cands);
  OfferChoice c;
  c.offer = {best.action, best.gamma};
  c.evaluation = evaluate_offer(contexts[best.action], game, best.gamma);
  return c;
}

OfferChoice simplified_offer(const OneWayGame& game, std::size_t theta_b) {
  std::size_t s_prime = 0;
  double best_u_b = -1.0;
  for (std::size_t a = 0; a < game.num_actions_a(); ++a) {
    const double v = game.u_b(a, best_response_b(game, a, theta_b), theta_b);
    if (v > best_u_b) {
      best_u_b = v;
      s_prime = a;
    }
  }
  const ProposalContext ctx = make_proposal_context(game, s_prime, theta_b);
  OfferChoice c;
  if (!(ctx.delta_b > 0.0)) {
    c.null_offer = true;
    c.offer = {s_prime, 0.0};
    c.evaluation = evaluate_offer(ctx, game, 0.0);
    return c;
  }
  const Candidate best = pick_best(enumerate_gammas(ctx));
  c.offer = {s_prime, best.gamma};
  c.evaluation = evaluate_offer(ctx, game, best.gamma);
  return c;
}

SingleOfferOutcome run_single_offer(const ProposalContext& ctx, const OneWayGame& game,
                                    std::size_t theta_a, double gamma) {
  SingleOfferOutcome o;
  const std::size_t theta_b = ctx.theta_b;
  o.accepted = ctx.accepts(ctx.delta_a[theta_a], gamma);
  if (o.accepted) {
    o.profile = {ctx.proposed_action, ctx.best_response};
    o.transfer_to_a = gamma * ctx.delta_b;
  } else {
    o.profile = {ctx.nash_a[theta_a], ctx.outside.action_b};
    o.transfer_to_a = 0.0;
  }
  o.transfer_to_b = -o.transfer_to_a;
  o.payoff_a = game.u_a(o.profile.a, theta_a) + o.transfer_to_a;
  o.payoff_b = game.u_b(o.profile.a, o.profile.b, theta_b) + o.transfer_to_b;
  o.welfare = social_welfare(game, o.profile, {theta_a, theta_b});
  return o;
}

SingleOfferOutcome run_single_offer(const OneWayGame& game, const TypeProfile& theta,
                                    const Offer& offer) {
  check_gamma(offer.gamma);
  const ProposalContext ctx = make_proposal_context(game, offer.proposed_action, theta.b);
  return run_single_offer(ctx, game, theta.a, offer.gamma);
}

AcceptRejectPoA accept_reject_poa(double gamma) {
  check_gamma(gamma);
  AcceptRejectPoA out;
  out.accept = 1.0 + gamma;
  if (gamma > 0.0) {
    out.reject = {1.0 + 1.0 / gamma, false};
  } else {
    out.reject = {std::numeric_limits<double>::infinity(), true};
  }
  return out;
}

WelfareRatio bayes_poa_bound(double gamma, double acceptance) {
  if (!(gamma > 0.0)) return {std::numeric_limits<double>::infinity(), true};
  return {(gamma + 1.0) / gamma * (1.0 - acceptance * (1.0 - gamma)), false};
}

WelfareRatio bayes_poa_bound(const OneWayGame& game, std::size_t theta_b) {
  const OfferChoice c = simplified_offer(game, theta_b);
  return bayes_poa_bound(c.offer.gamma, c.evaluation.acceptance_prob);
}

CorollaryBound corollary_bound(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw Error("beta must lie in (0, 1], got " + std::to_string(beta));
  }
  CorollaryBound out;
  out.gamma = beta / (beta + 1.0);
  out.poa_bound =
      (2.0 + 1.0 / beta) * (1.0 - std::pow(beta, beta) * std::pow(1.0 + beta, -(beta + 1.0)));
  return out;
}

}  // namespace oneway
