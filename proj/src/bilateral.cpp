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


#include "oneway/bilateral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oneway/equilibrium.hpp"

namespace oneway {

std::vector<std::string> validate_instance(const BilateralTradeInstance& inst,
                                           bool allow_unsorted) {
  std::vector<std::string> errors;
  auto check = [&](const ValueGrid& g, const std::string& who) {
    if (g.values.empty()) errors.push_back(who + ": empty grid");
    if (g.values.size() != g.probs.size()) {
      errors.push_back(who + ": " + std::to_string(g.values.size()) + " values but " +
                       std::to_string(g.probs.size()) + " probs");
      return;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(g.values[i] >= 0.0)) errors.push_back(who + ": negative value at index " + std::to_string(i));
      if (!(g.probs[i] >= 0.0)) errors.push_back(who + ": negative probability at index " + std::to_string(i));
      if (!allow_unsorted && i > 0 && g.values[i] < g.values[i - 1]) {
        errors.push_back(who + ": values not sorted at index " + std::to_string(i));
      }
      total += g.probs[i];
    }
    if (!g.values.empty() && std::abs(total - 1.0) > kPriorTolerance) {
      errors.push_back(who + ": prior not normalized");
    }
  };
  check(inst.seller, "seller");
  check(inst.buyer, "buyer");
  return errors;
}

namespace {

void require_valid_instance(const BilateralTradeInstance& inst, bool allow_unsorted) {
  const auto errors = validate_instance(inst, allow_unsorted);
  if (errors.empty()) return;
  std::string msg = "invalid bilateral instance:";
  for (const auto& e : errors) msg += " " + e + ";";
  throw Error(msg);
}

}  // namespace

BilateralTradeInstance uniform_grid_instance(std::size_t k, double lo, double hi) {
  if (k == 0) throw Error("grid size must be at least 1");
  ValueGrid g;
  for (std::size_t i = 0; i < k; ++i) {
    g.values.push_back(k == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1));
    g.probs.push_back(1.0 / static_cast<double>(k));
  }
  return {g, g};
}

DirectMechanism efficient_allocation(const BilateralTradeInstance& inst) {
  DirectMechanism m(inst.seller.size(), inst.buyer.size());
  for (std::size_t i = 0; i < m.n_seller; ++i) {
    for (std::size_t j = 0; j < m.n_buyer; ++j) {
      m.sigma[m.at(i, j)] = inst.seller.values[i] < inst.buyer.values[j] ? 1.0 : 0.0;
    }
  }
  return m;
}

OneWayGame to_one_way(const BilateralTradeInstance& inst) {
  OneWayGame g;
  g.actions_a = {"keep", "sell"};
  g.actions_b = {"buy"};
  for (std::size_t i = 0; i < inst.seller.size(); ++i) {
    g.types_a.push_back({"v1_" + std::to_string(i), inst.seller.probs[i]});
    g.payoff_a.push_back({inst.seller.values[i], 0.0});
  }
  for (std::size_t j = 0; j < inst.buyer.size(); ++j) {
    g.types_b.push_back({"v2_" + std::to_string(j), inst.buyer.probs[j]});
    g.payoff_b.push_back({{0.0}, {inst.buyer.values[j]}});
  }
  return g;
}

DirectMechanism from_one_way_mechanism(const OneWayMechanism& m) {
  const std::size_t n = m.n_a * m.n_b;
  if (m.k.size() != n || m.t_a.size() != n || m.t_b.size() != n) {
    throw Error("one-way mechanism tables do not match " + std::to_string(m.n_a) + "x" +
                std::to_string(m.n_b) + " type profiles");
  }
  DirectMechanism d(m.n_a, m.n_b);
  for (std::size_t x = 0; x < n; ++x) {
    const StrategyProfile& s = m.k[x];
    if (s.b != 0 || s.a > 1) {
      throw Error("allocation at type profile (" + std::to_string(x / m.n_b) + ", " +
                  std::to_string(x % m.n_b) + ") is not (s_A^1, s_B) or (s_A^2, s_B)");
    }
    d.sigma[x] = s.a == 1 ? 1.0 : 0.0;
    d.t_seller[x] = m.t_a[x];
    d.t_buyer[x] = m.t_b[x];
  }
  return d;
}

const char* property_name(Property p) {
  switch (p) {
    case Property::kEfficient: return "efficient";
    case Property::kBudgetBalanced: return "budget_balanced";
    case Property::kIncentiveCompatible: return "bayes_nash_ic";
    case Property::kIndividuallyRational: return "interim_ir";
  }
  return "?";
}

const PropertyCheck& PropertyVerdict::get(Property p) const {
  switch (p) {
    case Property::kEfficient: return efficient;
    case Property::kBudgetBalanced: return budget_balanced;
    case Property::kIncentiveCompatible: return bayes_nash_ic;
    default: return interim_ir;
  }
}

namespace {

// Interim utility of `player` with true type `truth` reporting `report`.
double interim(const BilateralTradeInstance& inst, const DirectMechanism& m, int player,
               std::size_t truth, std::size_t report) {
  double u = 0.0;
  if (player == 0) {
    const double v1 = inst.seller.values[truth];
    for (std::size_t j = 0; j < m.n_buyer; ++j) {
      const std::size_t x = m.at(report, j);
      u += inst.buyer.probs[j] * (v1 * (1.0 - m.sigma[x]) + m.t_seller[x]);
    }
  } else {
    const double v2 = inst.buyer.values[truth];
    for (std::size_t i = 0; i < m.n_seller; ++i) {
      const std::size_t x = m.at(i, report);
      u += inst.seller.probs[i] * (v2 * m.sigma[x] + m.t_buyer[x]);
    }
  }
  return u;
}

double violation(const BilateralTradeInstance& inst, const DirectMechanism& m, Property p,
                 const Witness& w) {
  switch (p) {
    case Property::kEfficient: {
      const std::size_t x = m.at(w.first, w.second);
      const double v1 = inst.seller.values[w.first];
      const double v2 = inst.buyer.values[w.second];
      if (v1 < v2) return 1.0 - m.sigma[x];
      if (v1 > v2) return m.sigma[x];
      return 0.0;
    }
    case Property::kBudgetBalanced: {
      const std::size_t x = m.at(w.first, w.second);
      return std::abs(m.t_seller[x] + m.t_buyer[x]);
    }
    case Property::kIncentiveCompatible:
      return interim(inst, m, w.player, w.first, w.second) -
             interim(inst, m, w.player, w.first, w.first);
    case Property::kIndividuallyRational: {
      const double outside = w.player == 0 ? inst.seller.values[w.first] : 0.0;
      return outside - interim(inst, m, w.player, w.first, w.first);
    }
  }
  return 0.0;
}

void record(PropertyCheck& c, const Witness& w) {
  if (w.amount > kPropertyTolerance && c.pass) {
    c.pass = false;
    c.witness = w;
  }
}

}  // namespace

PropertyVerdict check_properties(const BilateralTradeInstance& inst, const DirectMechanism& m) {
  if (m.n_seller != inst.seller.size() || m.n_buyer != inst.buyer.size()) {
    throw Error("mechanism is not defined on the full grid");
  }
  PropertyVerdict v;
  for (std::size_t i = 0; i < m.n_seller; ++i) {
    for (std::size_t j = 0; j < m.n_buyer; ++j) {
      Witness w{0, i, j, 0.0};
      w.amount = violation(inst, m, Property::kEfficient, w);
      record(v.efficient, w);
      w.amount = violation(inst, m, Property::kBudgetBalanced, w);
      record(v.budget_balanced, w);
    }
  }
  for (int player = 0; player < 2; ++player) {
    const std::size_t n = player == 0 ? m.n_seller : m.n_buyer;
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t r = 0; r < n; ++r) {
        if (r == t) continue;
        Witness w{player, t, r, 0.0};
        w.amount = violation(inst, m, Property::kIncentiveCompatible, w);
        record(v.bayes_nash_ic, w);
      }
      Witness w{player, t, t, 0.0};
      w.amount = violation(inst, m, Property::kIndividuallyRational, w);
      record(v.interim_ir, w);
    }
  }
  return v;
}

bool witness_holds(const BilateralTradeInstance& inst, const DirectMechanism& m, Property p,
                   const Witness& w) {
  return violation(inst, m, p, w) > kPropertyTolerance;
}

PropertyVerdict check_one_way_properties(const OneWayGame& game, const OneWayMechanism& m) {
  const std::size_t na = game.num_types_a();
  const std::size_t nb = game.num_types_b();
  if (m.n_a != na || m.n_b != nb || m.k.size() != na * nb) {
    throw Error("one-way mechanism does not cover every type profile");
  }
  auto idx = [&](std::size_t ta, std::size_t tb) { return ta * nb + tb; };
  PropertyVerdict v;
  for (std::size_t ta = 0; ta < na; ++ta) {
    for (std::size_t tb = 0; tb < nb; ++tb) {
      const std::size_t x = idx(ta, tb);
      const double best = optimal_welfare(game, {ta, tb}).value;
      record(v.efficient, {0, ta, tb, best - social_welfare(game, m.k[x], {ta, tb})});
      record(v.budget_balanced, {0, ta, tb, std::abs(m.t_a[x] + m.t_b[x])});
    }
  }
  auto u_a = [&](std::size_t truth, std::size_t report) {
    double u = 0.0;
    for (std::size_t tb = 0; tb < nb; ++tb) {
      const std::size_t x = idx(report, tb);
      u += game.prob_b(tb) * (game.u_a(m.k[x].a, truth) + m.t_a[x]);
    }
    return u;
  };
  auto u_b = [&](std::size_t truth, std::size_t report) {
    double u = 0.0;
    for (std::size_t ta = 0; ta < na; ++ta) {
      const std::size_t x = idx(ta, report);
      u += game.prob_a(ta) * (game.u_b(m.k[x].a, m.k[x].b, truth) + m.t_b[x]);
    }
    return u;
  };
  for (std::size_t t = 0; t < na; ++t) {
    for (std::size_t r = 0; r < na; ++r) {
      if (r != t) record(v.bayes_nash_ic, {0, t, r, u_a(t, r) - u_a(t, t)});
    }
    const double outside = game.u_a(nash_action_a(game, t), t);
    record(v.interim_ir, {0, t, t, outside - u_a(t, t)});
  }
  for (std::size_t t = 0; t < nb; ++t) {
    for (std::size_t r = 0; r < nb; ++r) {
      if (r != t) record(v.bayes_nash_ic, {1, t, r, u_b(t, r) - u_b(t, t)});
    }
    const std::size_t sb = nash_action_b(game, t);
    double outside = 0.0;
    for (std::size_t ta = 0; ta < na; ++ta) {
      outside += game.prob_a(ta) * game.u_b(nash_action_a(game, ta), sb, t);
    }
    record(v.interim_ir, {1, t, t, outside - u_b(t, t)});
  }
  return v;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasible: return "infeasible";
    case Verdict::kMarginal: return "marginal";
  }
  return "?";
}

namespace {

// Variables: t_seller(x) = 2x, t_buyer(x) = 2x + 1 for profile x, all free.
void add_incentive_rows(const BilateralTradeInstance& inst, const DirectMechanism& sigma,
                        bool with_ir, LinearProgram& lp) {
  const std::size_t n1 = inst.seller.size();
  const std::size_t n2 = inst.buyer.size();
  auto ts = [&](std::size_t i, std::size_t j) { return 2 * (i * n2 + j); };
  auto tb = [&](std::size_t i, std::size_t j) { return 2 * (i * n2 + j) + 1; };
  // Expected trade probability given one side's report.
  std::vector<double> q1(n1, 0.0), q2(n2, 0.0);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      q1[i] += inst.buyer.probs[j] * sigma.sigma[sigma.at(i, j)];
      q2[j] += inst.seller.probs[i] * sigma.sigma[sigma.at(i, j)];
    }
  }
  for (std::size_t i = 0; i < n1; ++i) {
    const double v1 = inst.seller.values[i];
    for (std::size_t r = 0; r < n1; ++r) {
      if (r == i) continue;
      LpRow row;
      row.sense = RowSense::kGreaterEqual;
      row.rhs = v1 * (q1[i] - q1[r]);
      row.label = "ic seller " + std::to_string(i) + "->" + std::to_string(r);
      for (std::size_t j = 0; j < n2; ++j) {
        row.terms.emplace_back(ts(i, j), inst.buyer.probs[j]);
        row.terms.emplace_back(ts(r, j), -inst.buyer.probs[j]);
      }
      lp.rows.push_back(std::move(row));
    }
  }
  for (std::size_t j = 0; j < n2; ++j) {
    const double v2 = inst.buyer.values[j];
    for (std::size_t r = 0; r < n2; ++r) {
      if (r == j) continue;
      LpRow row;
      row.sense = RowSense::kGreaterEqual;
      row.rhs = v2 * (q2[r] - q2[j]);
      row.label = "ic buyer " + std::to_string(j) + "->" + std::to_string(r);
      for (std::size_t i = 0; i < n1; ++i) {
        row.terms.emplace_back(tb(i, j), inst.seller.probs[i]);
        row.terms.emplace_back(tb(i, r), -inst.seller.probs[i]);
      }
      lp.rows.push_back(std::move(row));
    }
  }
  if (!with_ir) return;
  for (std::size_t i = 0; i < n1; ++i) {
    LpRow row;
    row.sense = RowSense::kGreaterEqual;
    row.rhs = inst.seller.values[i] * q1[i];
    row.label = "ir seller " + std::to_string(i);
    for (std::size_t j = 0; j < n2; ++j) row.terms.emplace_back(ts(i, j), inst.buyer.probs[j]);
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n2; ++j) {
    LpRow row;
    row.sense = RowSense::kGreaterEqual;
    row.rhs = -inst.buyer.values[j] * q2[j];
    row.label = "ir buyer " + std::to_string(j);
    for (std::size_t i = 0; i < n1; ++i) row.terms.emplace_back(tb(i, j), inst.seller.probs[i]);
    lp.rows.push_back(std::move(row));
  }
}

void check_size(const BilateralTradeInstance& inst) {
  const std::size_t profiles = inst.seller.size() * inst.buyer.size();
  if (profiles > kMaxGridProfiles) {
    throw Error("grid has " + std::to_string(profiles) + " type profiles, limit is " +
                std::to_string(kMaxGridProfiles));
  }
}

DirectMechanism read_transfers(const DirectMechanism& sigma, const std::vector<double>& x) {
  DirectMechanism m = sigma;
  for (std::size_t p = 0; p < m.sigma.size(); ++p) {
    m.t_seller[p] = x[2 * p];
    m.t_buyer[p] = x[2 * p + 1];
  }
  return m;
}

}  // namespace

FeasibilityResult feasibility_lp(const BilateralTradeInstance& inst,
                                 const FeasibilityOptions& options) {
  require_valid_instance(inst, options.allow_unsorted);
  check_size(inst);
  const DirectMechanism sigma = efficient_allocation(inst);
  FeasibilityResult res;
  LinearProgram& lp = res.lp;
  const std::size_t profiles = sigma.sigma.size();
  for (std::size_t v = 0; v < 2 * profiles; ++v) lp.add_variable(true);
  for (std::size_t p = 0; p < profiles; ++p) {
    lp.rows.push_back({{{2 * p, 1.0}, {2 * p + 1, 1.0}},
                       RowSense::kEqual,
                       0.0,
                       "bb " + std::to_string(p / sigma.n_buyer) + "," +
                           std::to_string(p % sigma.n_buyer)});
  }
  add_incentive_rows(inst, sigma, !options.drop_ir, lp);

  const LpSolution sol = solve_lp(lp);
  res.infeasibility = sol.infeasibility;
  if (sol.status == LpStatus::kOptimal) {
    res.verdict = Verdict::kFeasible;
    res.mechanism = read_transfers(sigma, sol.x);
  } else if (sol.status == LpStatus::kInfeasible) {
    res.verdict = sol.infeasibility <= kMarginalTolerance ? Verdict::kMarginal : Verdict::kInfeasible;
    res.certificate = sol.farkas;
    res.certificate_check = verify_certificate(lp, sol.farkas, kMarginalTolerance);
  } else {
    throw Error("feasibility LP did not terminate");
  }
  return res;
}

SubsidyResult min_subsidy(const BilateralTradeInstance& inst, const FeasibilityOptions& options) {
  require_valid_instance(inst, options.allow_unsorted);
  check_size(inst);
  const DirectMechanism sigma = efficient_allocation(inst);
  LinearProgram lp;
  const std::size_t profiles = sigma.sigma.size();
  for (std::size_t v = 0; v < 2 * profiles; ++v) lp.add_variable(true);
  const std::size_t z = lp.add_variable(false, 1.0);
  for (std::size_t p = 0; p < profiles; ++p) {
    lp.rows.push_back({{{2 * p, 1.0}, {2 * p + 1, 1.0}, {z, -1.0}},
                       RowSense::kLessEqual,
                       0.0,
                       "deficit " + std::to_string(p)});
  }
  add_incentive_rows(inst, sigma, !options.drop_ir, lp);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) throw Error("subsidy LP did not reach an optimum");
  SubsidyResult res;
  res.value = std::max(0.0, sol.x[z]);
  res.mechanism = read_transfers(sigma, sol.x);
  return res;
}

}  // namespace oneway
