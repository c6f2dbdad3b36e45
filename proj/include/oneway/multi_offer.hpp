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

#ifndef ONEWAY_MULTI_OFFER_HPP_
#define ONEWAY_MULTI_OFFER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "oneway/game.hpp"
#include "oneway/random.hpp"
#include "oneway/single_offer.hpp"

namespace oneway {

// A committed offer schedule for one proposed action. Step i (1-based)
// offers gammas[i-1] * Delta_B; after a rejection at step i the process
// continues to step i+1 with probability continue_probs[i].
struct Schedule {
  std::size_t proposed_action = 0;
  std::vector<double> gammas;
  std::vector<double> continue_probs;  // continue_probs[0] == 1

  std::size_t n() const { return gammas.size(); }
};

// Throws Error unless: n >= 1, sizes match, gammas in [0, 1] and strictly
// increasing, continue_probs in [0, 1] with continue_probs[0] == 1.
void validate_schedule(const Schedule& schedule);

// Acceptance thresholds S_0..S_n. S_0 = 0, S_n = gamma_n and
// S_i = (gamma_i - p_{i+1} gamma_{i+1}) / (1 - p_{i+1}) in between.
struct SValues {
  std::vector<double> s;
};

// Throws Error for invalid schedules and for p_{i+1} = 1 with i < n.
SValues s_values(const Schedule& schedule);

// Smallest step i with Delta_A <= S_i * Delta_B, or nullopt.
std::optional<std::size_t> acceptance_step(const OneWayGame& game, const Schedule& schedule,
                                           const TypeProfile& theta);

struct MultiOfferOutcome {
  std::optional<std::size_t> accepted_step;
  bool stopped_by_chance = false;
  std::size_t offers_made = 0;
  StrategyProfile profile;
  double transfer_to_a = 0.0;
  double transfer_to_b = 0.0;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  double welfare = 0.0;
};

// Simulates one run; the continuation coin flips come from stream
// `run_index` of `seed`.
MultiOfferOutcome run_multi_offer(const OneWayGame& game, const Schedule& schedule,
                                  const TypeProfile& theta, std::uint64_t seed,
                                  std::uint64_t run_index = 0);

// B's expected utility: u_B^O + Delta_B * sum_i reach_i * m_i * (1 - gamma_i)
// where m_i is the prior mass of A-types accepting at step i.
double expected_utility_b(const OneWayGame& game, const Schedule& schedule,
                          std::size_t theta_b);

// Same quantity through the regrouped objective
//   sum_{i<n} reach_i (1 - p_{i+1}) P(S_i)(1 - S_i) + reach_n P(S_n)(1 - S_n).
// Agrees with expected_utility_b for schedules with S_1 <= ... <= S_n.
double regrouped_utility_b(const OneWayGame& game, const Schedule& schedule,
                           std::size_t theta_b);

struct ScheduleOptimum {
  Schedule schedule;
  SValues s;
  double value = 0.0;
  bool null_offer = false;
  // No admissible neighbour on the final p-grid or the S candidate list
  // improves the value by more than 1e-12.
  bool locally_optimal = false;
};

struct ScheduleSearchOptions {
  double p_step = 0.01;
  double refine_step = 0.001;
  // Skip S sequences whose largest P(S_i)(1 - S_i) term cannot beat the
  // incumbent (the objective is a weighted average of those terms). Off
  // means every sequence is scored.
  bool prune = true;
};

ScheduleOptimum optimize_schedule(const OneWayGame& game, std::size_t theta_b, std::size_t n,
                                  const ScheduleSearchOptions& options = {});

// Single-offer optimum minus the optimized n-offer value.
double equivalence_gap(const OneWayGame& game, std::size_t theta_b, std::size_t n);

struct MultiOfferMonteCarlo {
  MeanAccumulator payoff_a;
  MeanAccumulator payoff_b;
  MeanAccumulator welfare;
  MeanAccumulator accepted;

  void merge(const MultiOfferMonteCarlo& o) {
    payoff_a.merge(o.payoff_a);
    payoff_b.merge(o.payoff_b);
    welfare.merge(o.welfare);
    accepted.merge(o.accepted);
  }
};

// Draws theta_A from the prior for each run (stream = run index) and runs
// the schedule against fixed theta_B.
MultiOfferMonteCarlo mc_multi_offer(const OneWayGame& game, const Schedule& schedule,
                                    std::size_t theta_b, std::uint64_t samples,
                                    std::uint64_t seed);

}  // namespace oneway

#endif  // ONEWAY_MULTI_OFFER_HPP_
