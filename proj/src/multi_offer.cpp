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

#include "oneway/multi_offer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace oneway {

void validate_schedule(const Schedule& schedule) {
  const std::size_t n = schedule.n();
  if (n == 0) throw Error("schedule must contain at least one offer");
  if (schedule.continue_probs.size() != n) {
    throw Error("schedule has " + std::to_string(n) + " gammas but " +
                std::to_string(schedule.continue_probs.size()) + " continuation probabilities");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double g = schedule.gammas[i];
    const double p = schedule.continue_probs[i];
    if (!(g >= 0.0 && g <= 1.0)) throw Error("gamma_" + std::to_string(i + 1) + " outside [0, 1]");
    if (!(p >= 0.0 && p <= 1.0)) throw Error("p_" + std::to_string(i + 1) + " outside [0, 1]");
    if (i > 0 && !(g > schedule.gammas[i - 1])) {
      throw Error("gammas must be strictly increasing (gamma_" + std::to_string(i + 1) +
                  " <= gamma_" + std::to_string(i) + ")");
    }
  }
  if (schedule.continue_probs[0] != 1.0) throw Error("p_1 must equal 1");
}

SValues s_values(const Schedule& schedule) {
  validate_schedule(schedule);
  const std::size_t n = schedule.n();
  SValues out;
  out.s.assign(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double p_next = schedule.continue_probs[i];  // p_{i+1}
    if (p_next >= 1.0) {
      throw Error("degenerate continuation: p_" + std::to_string(i + 1) + " = 1 makes S_" +
                  std::to_string(i) + " undefined");
    }
    out.s[i] = (schedule.gammas[i - 1] - p_next * schedule.gammas[i]) / (1.0 - p_next);
  }
  out.s[n] = schedule.gammas[n - 1];
  return out;
}

namespace {

std::optional<std::size_t> first_step(const ProposalContext& ctx, const SValues& s,
                                      double delta_a_value) {
  for (std::size_t i = 1; i < s.s.size(); ++i) {
    if (ctx.accepts(delta_a_value, s.s[i])) return i;
  }
  return std::nullopt;
}

void fill_payoffs(const ProposalContext& ctx, const OneWayGame& game, const Schedule& schedule,
                  std::size_t theta_a, MultiOfferOutcome& o) {
  if (o.accepted_step) {
    o.profile = {ctx.proposed_action, ctx.best_response};
    o.transfer_to_a = schedule.gammas[*o.accepted_step - 1] * ctx.delta_b;
  } else {
    o.profile = {ctx.nash_a[theta_a], ctx.outside.action_b};
    o.transfer_to_a = 0.0;
  }
  o.transfer_to_b = -o.transfer_to_a;
  o.payoff_a = game.u_a(o.profile.a, theta_a) + o.transfer_to_a;
  o.payoff_b = game.u_b(o.profile.a, o.profile.b, ctx.theta_b) + o.transfer_to_b;
  o.welfare = social_welfare(game, o.profile, {theta_a, ctx.theta_b});
}

MultiOfferOutcome simulate(const ProposalContext& ctx, const OneWayGame& game,
                           const Schedule& schedule, const SValues& s, std::size_t theta_a,
                           CounterRng& rng) {
  MultiOfferOutcome o;
  const auto step = first_step(ctx, s, ctx.delta_a[theta_a]);
  o.offers_made = 1;
  bool accepted = step && *step == 1;
  for (std::size_t i = 2; !accepted && i <= schedule.n(); ++i) {
    // p_i gates step i.
    if (!(rng.uniform() < schedule.continue_probs[i - 1])) {
      o.stopped_by_chance = true;
      break;
    }
    ++o.offers_made;
    accepted = step && *step == i;
  }
  if (accepted) o.accepted_step = step;
  fill_payoffs(ctx, game, schedule, theta_a, o);
  return o;
}

}  // namespace

std::optional<std::size_t> acceptance_step(const OneWayGame& game, const Schedule& schedule,
                                           const TypeProfile& theta) {
  const SValues s = s_values(schedule);
  const ProposalContext ctx = make_proposal_context(game, schedule.proposed_action, theta.b);
  return first_step(ctx, s, ctx.delta_a[theta.a]);
}

MultiOfferOutcome run_multi_offer(const OneWayGame& game, const Schedule& schedule,
                                  const TypeProfile& theta, std::uint64_t seed,
                                  std::uint64_t run_index) {
  const SValues s = s_values(schedule);
  const ProposalContext ctx = make_proposal_context(game, schedule.proposed_action, theta.b);
  CounterRng rng(seed, run_index);
  return simulate(ctx, game, schedule, s, theta.a, rng);
}

double expected_utility_b(const OneWayGame& game, const Schedule& schedule,
                          std::size_t theta_b) {
  const SValues s = s_values(schedule);
  const ProposalContext ctx = make_proposal_context(game, schedule.proposed_action, theta_b);
  const std::size_t n = schedule.n();
  std::vector<double> mass(n + 1, 0.0);
  for (std::size_t t = 0; t < ctx.delta_a.size(); ++t) {
    if (const auto step = first_step(ctx, s, ctx.delta_a[t])) mass[*step] += ctx.prob_a[t];
  }
  double reach = 1.0;
  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    reach *= schedule.continue_probs[i - 1];
    total += reach * mass[i] * (1.0 - schedule.gammas[i - 1]);
  }
  return ctx.outside.expected_payoff + ctx.delta_b * total;
}

double regrouped_utility_b(const OneWayGame& game, const Schedule& schedule,
                           std::size_t theta_b) {
  const SValues s = s_values(schedule);
  const ProposalContext ctx = make_proposal_context(game, schedule.proposed_action, theta_b);
  const std::size_t n = schedule.n();
  double reach = 1.0;
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double p_next = schedule.continue_probs[i];
    total += reach * (1.0 - p_next) * ctx.acceptance_prob(s.s[i]) * (1.0 - s.s[i]);
    reach *= p_next;
  }
  total += reach * ctx.acceptance_prob(s.s[n]) * (1.0 - s.s[n]);
  return ctx.outside.expected_payoff + ctx.delta_b * total;
}

namespace {

constexpr double kStrictGap = 1e-12;

// The objective depends on a schedule only through (p, S); gammas are
// recovered backwards from gamma_n = S_n.
struct ScheduleSearch {
  const ProposalContext& ctx;
  std::size_t n;
  std::vector<double> levels;  // candidate S values, ascending
  std::vector<double> payoff;  // P(level) * (1 - level)

  ScheduleSearch(const ProposalContext& c, std::size_t steps) : ctx(c), n(steps) {
    const std::vector<double> thresholds = ctx.gamma_candidates();
    if (thresholds.empty()) return;
    // Thresholds carry the optimum of every P(x)(1 - x) term; the points in
    // between only serve to make later gammas strictly larger.
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      levels.push_back(thresholds[i]);
      const double next = i + 1 < thresholds.size() ? thresholds[i + 1] : 1.0;
      if (next > thresholds[i]) levels.push_back(0.5 * (thresholds[i] + next));
    }
    if (levels.back() < 1.0) levels.push_back(1.0);
    for (double x : levels) payoff.push_back(ctx.acceptance_prob(x) * (1.0 - x));
  }

  // Returns the bracketed objective, or nullopt when the implied gammas
  // are not strictly increasing.
  std::optional<double> evaluate(const std::vector<std::size_t>& idx,
                                 const std::vector<double>& p) const {
    double gamma_next = levels[idx[n - 1]];
    double r = payoff[idx[n - 1]];
    for (std::size_t k = n - 1; k-- > 0;) {
      const double s = levels[idx[k]];
      const double q = p[k + 1];
      if (!(gamma_next - s > kStrictGap)) return std::nullopt;
      r = (1.0 - q) * payoff[idx[k]] + q * r;
      gamma_next = (1.0 - q) * s + q * gamma_next;
    }
    return r;
  }

  std::vector<double> gammas(const std::vector<std::size_t>& idx,
                             const std::vector<double>& p) const {
    std::vector<double> g(n);
    g[n - 1] = levels[idx[n - 1]];
    for (std::size_t k = n - 1; k-- > 0;) {
      g[k] = (1.0 - p[k + 1]) * levels[idx[k]] + p[k + 1] * g[k + 1];
    }
    return g;
  }
};

struct FrontPoint {
  double r;
  double gamma;
  std::vector<double> p;  // p[k+1..n-1] filled for the suffix
};

// Exact maximum over the p-grid for a fixed S sequence. Works backwards
// keeping the Pareto front of (suffix objective, suffix gamma): a larger
// suffix gamma only loosens the strictness constraint of earlier steps.
std::optional<std::pair<double, std::vector<double>>> best_p_on_grid(
    const ScheduleSearch& search, const std::vector<std::size_t>& idx,
    const std::vector<double>& grid) {
  const std::size_t n = search.n;
  std::vector<double> p0(n, 0.0);
  p0[0] = 1.0;
  if (n == 1) return std::make_pair(search.payoff[idx[0]], p0);

  std::vector<FrontPoint> front{{search.payoff[idx[n - 1]], search.levels[idx[n - 1]], p0}};
  for (std::size_t k = n - 1; k-- > 0;) {
    const double s = search.levels[idx[k]];
    const double c = search.payoff[idx[k]];
    std::vector<FrontPoint> next;
    for (const auto& fp : front) {
      if (!(fp.gamma - s > kStrictGap)) continue;
      for (double q : grid) {
        FrontPoint np{(1.0 - q) * c + q * fp.r, (1.0 - q) * s + q * fp.gamma, fp.p};
        np.p[k + 1] = q;
        next.push_back(std::move(np));
      }
    }
    if (next.empty()) return std::nullopt;
    if (k == 0) {
      const FrontPoint* best = &next[0];
      for (const auto& fp : next) {
        if (fp.r > best->r) best = &fp;
      }
      return std::make_pair(best->r, best->p);
    }
    std::stable_sort(next.begin(), next.end(), [](const FrontPoint& a, const FrontPoint& b) {
      return a.r > b.r || (a.r == b.r && a.gamma > b.gamma);
    });
    front.clear();
    double best_gamma = -std::numeric_limits<double>::infinity();
    for (auto& fp : next) {
      if (fp.gamma > best_gamma) {
        best_gamma = fp.gamma;
        front.push_back(std::move(fp));
      }
    }
  }
  return std::nullopt;
}

// Visits non-decreasing index sequences. `bound(pos, last)` may cut a
// prefix off when no completion can matter.
// The first position is visited in `first_order` so good incumbents turn
// up early.
template <typename Visit, typename Bound>
void for_each_sequence(std::size_t n, std::size_t levels, std::vector<std::size_t>& idx,
                       std::size_t pos, const std::vector<std::size_t>& first_order,
                       const Visit& visit, const Bound& bound) {
  if (pos == n) {
    visit(idx);
    return;
  }
  const std::size_t start = pos == 0 ? 0 : idx[pos - 1];
  for (std::size_t step = start; step < levels; ++step) {
    const std::size_t j = pos == 0 ? first_order[step] : step;
    idx[pos] = j;
    if (bound(pos, j)) continue;
    for_each_sequence(n, levels, idx, pos + 1, first_order, visit, bound);
  }
}

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t action = 0;
  std::vector<std::size_t> idx;
  std::vector<double> p;
};

}  // namespace

ScheduleOptimum optimize_schedule(const OneWayGame& game, std::size_t theta_b, std::size_t n,
                                  const ScheduleSearchOptions& options) {
  if (n == 0 || n > 6) throw Error("optimize_schedule supports 1 <= n <= 6");
  std::vector<double> grid;
  const auto grid_points = static_cast<std::size_t>(std::llround(1.0 / options.p_step));
  for (std::size_t i = 0; i < grid_points; ++i) grid.push_back(static_cast<double>(i) * options.p_step);

  Best best;
  std::vector<ProposalContext> contexts;
  std::vector<ScheduleSearch> searches;
  contexts.reserve(game.num_actions_a());
  searches.reserve(game.num_actions_a());
  for (std::size_t a = 0; a < game.num_actions_a(); ++a) {
    contexts.push_back(make_proposal_context(game, a, theta_b));
  }
  for (std::size_t a = 0; a < game.num_actions_a(); ++a) {
    searches.emplace_back(contexts[a], n);
    const ProposalContext& ctx = contexts[a];
    if (!(ctx.delta_b > 0.0)) continue;
    const ScheduleSearch& search = searches.back();
    std::vector<std::size_t> idx(n);
    // suffix_max[j] = max payoff over levels j.., prefix_max[pos] over idx[0..pos].
    std::vector<double> suffix_max(search.payoff.size() + 1, 0.0);
    for (std::size_t j = search.payoff.size(); j-- > 0;) {
      suffix_max[j] = std::max(search.payoff[j], suffix_max[j + 1]);
    }
    std::vector<double> prefix_max(n, 0.0);
    auto bound = [&](std::size_t pos, std::size_t j) {
      prefix_max[pos] = std::max(pos == 0 ? 0.0 : prefix_max[pos - 1], search.payoff[j]);
      if (!options.prune) return false;
      const double cap = std::max(prefix_max[pos], suffix_max[j]);
      return ctx.outside.expected_payoff + ctx.delta_b * cap <= best.value;
    };
    auto visit = [&](const std::vector<std::size_t>& seq) {
      const auto found = best_p_on_grid(search, seq, grid);
      if (!found) return;
      const double value = ctx.outside.expected_payoff + ctx.delta_b * found->first;
      if (value > best.value) best = {value, a, seq, found->second};
    };
    std::vector<std::size_t> order(search.levels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return search.payoff[x] > search.payoff[y];
    });
    for_each_sequence(n, search.levels.size(), idx, 0, order, visit, bound);
  }

  ScheduleOptimum out;
  if (best.idx.empty()) {
    const OfferChoice null = optimal_offer(game, theta_b);
    out.null_offer = true;
    out.value = null.evaluation.expected_u_b;
    out.schedule.proposed_action = 0;
    for (std::size_t i = 0; i < n; ++i) {
      out.schedule.gammas.push_back(static_cast<double>(i) / static_cast<double>(n));
      out.schedule.continue_probs.push_back(i == 0 ? 1.0 : 0.0);
    }
    out.s = s_values(out.schedule);
    out.locally_optimal = true;
    return out;
  }

  const ScheduleSearch& search = searches[best.action];
  const ProposalContext& ctx = contexts[best.action];
  auto score = [&](const std::vector<std::size_t>& idx, const std::vector<double>& p) {
    const auto r = search.evaluate(idx, p);
    return r ? std::optional<double>(ctx.outside.expected_payoff + ctx.delta_b * *r)
             : std::nullopt;
  };

  // Local refinement of the continuation probabilities.
  const double p_max = 1.0 - options.refine_step;
  bool improved = true;
  for (int sweep = 0; improved && sweep < 50; ++sweep) {
    improved = false;
    for (std::size_t j = 1; j < n; ++j) {
      for (int m = -10; m <= 10; ++m) {
        if (m == 0) continue;
        std::vector<double> p = best.p;
        p[j] = std::clamp(p[j] + m * options.refine_step, 0.0, p_max);
        const auto v = score(best.idx, p);
        if (v && *v > best.value + 1e-15) {
          best.value = *v;
          best.p = p;
          improved = true;
        }
      }
    }
  }

  // First-order certificate on the refined grid and the level list.
  out.locally_optimal = true;
  for (std::size_t j = 1; j < n && out.locally_optimal; ++j) {
    for (double d : {-options.refine_step, options.refine_step}) {
      std::vector<double> p = best.p;
      p[j] = std::clamp(p[j] + d, 0.0, p_max);
      const auto v = score(best.idx, p);
      if (v && *v > best.value + 1e-12) out.locally_optimal = false;
    }
  }
  for (std::size_t i = 0; i < n && out.locally_optimal; ++i) {
    for (int d : {-1, 1}) {
      std::vector<std::size_t> idx = best.idx;
      if (d < 0 && idx[i] == 0) continue;
      idx[i] = static_cast<std::size_t>(static_cast<long>(idx[i]) + d);
      if (idx[i] >= search.levels.size()) continue;
      if (i > 0 && idx[i] < idx[i - 1]) continue;
      if (i + 1 < n && idx[i] > idx[i + 1]) continue;
      const auto v = score(idx, best.p);
      if (v && *v > best.value + 1e-12) out.locally_optimal = false;
    }
  }

  out.schedule.proposed_action = best.action;
  out.schedule.gammas = search.gammas(best.idx, best.p);
  out.schedule.continue_probs = best.p;
  out.s = s_values(out.schedule);
  out.value = expected_utility_b(game, out.schedule, theta_b);
  return out;
}

double equivalence_gap(const OneWayGame& game, std::size_t theta_b, std::size_t n) {
  const double single = optimal_offer(game, theta_b).evaluation.expected_u_b;
  return single - optimize_schedule(game, theta_b, n).value;
}

MultiOfferMonteCarlo mc_multi_offer(const OneWayGame& game, const Schedule& schedule,
                                    std::size_t theta_b, std::uint64_t samples,
                                    std::uint64_t seed) {
  const SValues s = s_values(schedule);
  const ProposalContext ctx = make_proposal_context(game, schedule.proposed_action, theta_b);
  std::vector<double> cdf;
  double acc = 0.0;
  for (std::size_t t = 0; t < game.num_types_a(); ++t) {
    acc += game.prob_a(t);
    cdf.push_back(acc);
  }
  return parallel_blocks<MultiOfferMonteCarlo>(
      samples, 1u << 14, [&](std::uint64_t begin, std::uint64_t end) {
        MultiOfferMonteCarlo part;
        for (std::uint64_t r = begin; r < end; ++r) {
          CounterRng rng(seed, r);
          const double u = rng.uniform() * acc;
          std::size_t theta_a = 0;
          while (theta_a + 1 < cdf.size() && !(u < cdf[theta_a])) ++theta_a;
          const MultiOfferOutcome o = simulate(ctx, game, schedule, s, theta_a, rng);
          part.payoff_a.add(o.payoff_a);
          part.payoff_b.add(o.payoff_b);
          part.welfare.add(o.welfare);
          part.accepted.add(o.accepted_step ? 1.0 : 0.0);
        }
        return part;
      });
}

}  // namespace oneway
