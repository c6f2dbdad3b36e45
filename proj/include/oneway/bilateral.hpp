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


#ifndef ONEWAY_BILATERAL_HPP_
#define ONEWAY_BILATERAL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oneway/game.hpp"
#include "oneway/lp.hpp"

namespace oneway {

struct ValueGrid {
  std::vector<double> values;
  std::vector<double> probs;
  std::size_t size() const { return values.size(); }
};

// Seller owns the object (value v1), buyer values it at v2.
struct BilateralTradeInstance {
  ValueGrid seller;
  ValueGrid buyer;
};

// Empty list means valid. Grids must be sorted unless allow_unsorted.
std::vector<std::string> validate_instance(const BilateralTradeInstance& inst,
                                           bool allow_unsorted = false);

// k evenly spaced values lo + (hi - lo) i / (k - 1) with uniform priors on
// both sides (k = 1 puts the single point at lo).
BilateralTradeInstance uniform_grid_instance(std::size_t k, double lo = 0.0, double hi = 1.0);

// Allocation and transfers over the grid, row-major [seller][buyer].
// Transfers are paid to the agents: t_seller + t_buyer > 0 is a deficit.
struct DirectMechanism {
  std::size_t n_seller = 0;
  std::size_t n_buyer = 0;
  std::vector<double> sigma;
  std::vector<double> t_seller;
  std::vector<double> t_buyer;

  DirectMechanism() = default;
  DirectMechanism(std::size_t n1, std::size_t n2)
      : n_seller(n1), n_buyer(n2), sigma(n1 * n2, 0.0), t_seller(n1 * n2, 0.0),
        t_buyer(n1 * n2, 0.0) {}
  std::size_t at(std::size_t i1, std::size_t i2) const { return i1 * n_buyer + i2; }
};

// Trade iff v1 < v2; ties do not trade.
DirectMechanism efficient_allocation(const BilateralTradeInstance& inst);

// A = seller with actions {keep, sell}, B = buyer with a single action.
// u_A(keep, v1) = v1, u_A(sell, v1) = 0, u_B(keep) = 0, u_B(sell) = v2.
OneWayGame to_one_way(const BilateralTradeInstance& inst);

// Mechanism over the one-way game: profile and transfers per type profile,
// row-major [theta_A][theta_B]. transfers are (to A, to B).
struct OneWayMechanism {
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::vector<StrategyProfile> k;
  std::vector<double> t_a;
  std::vector<double> t_b;
};

// Throws Error when k selects a profile outside {(s_A^1, s_B), (s_A^2, s_B)}
// or sizes disagree.
DirectMechanism from_one_way_mechanism(const OneWayMechanism& m);

enum class Property { kEfficient, kBudgetBalanced, kIncentiveCompatible, kIndividuallyRational };
const char* property_name(Property p);

// For efficiency and budget balance the witness is a type profile
// (first, second). For IC it is (true type, reported type) of `player`,
// for IR the violating type of `player`. player 0 = seller / A, 1 = buyer / B.
struct Witness {
  int player = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  double amount = 0.0;  // size of the violation
};

struct PropertyCheck {
  bool pass = true;
  std::optional<Witness> witness;
};

struct PropertyVerdict {
  PropertyCheck efficient;
  PropertyCheck budget_balanced;
  PropertyCheck bayes_nash_ic;
  PropertyCheck interim_ir;

  const PropertyCheck& get(Property p) const;
};

inline constexpr double kPropertyTolerance = 1e-9;

PropertyVerdict check_properties(const BilateralTradeInstance& inst, const DirectMechanism& m);

// Recomputes the violation named by `w` from scratch; true when it is real.
bool witness_holds(const BilateralTradeInstance& inst, const DirectMechanism& m, Property p,
                   const Witness& w);

// The same four properties evaluated directly on a one-way game and a
// mechanism over it: efficiency as welfare maximization (ties free), IC on
// interim utilities, IR against the no-payment equilibrium payoffs.
PropertyVerdict check_one_way_properties(const OneWayGame& game, const OneWayMechanism& m);

enum class Verdict { kFeasible, kInfeasible, kMarginal };
const char* verdict_name(Verdict v);

// Phase-one residual above this (but below marginal_tol) is "marginal".
inline constexpr double kMarginalTolerance = 1e-7;

struct FeasibilityOptions {
  bool drop_ir = false;
  bool allow_unsorted = false;
};

struct FeasibilityResult {
  Verdict verdict = Verdict::kInfeasible;
  double infeasibility = 0.0;
  std::optional<DirectMechanism> mechanism;
  std::vector<double> certificate;  // Farkas multipliers over lp.rows
  CertificateCheck certificate_check;
  LinearProgram lp;
};

inline constexpr std::size_t kMaxGridProfiles = 10000;

// Transfers t(v1, v2) for the efficient allocation subject to budget
// balance, interim IC and (unless dropped) interim IR.
FeasibilityResult feasibility_lp(const BilateralTradeInstance& inst,
                                 const FeasibilityOptions& options = {});

struct SubsidyResult {
  double value = 0.0;  // max over profiles of t_seller + t_buyer, at least 0
  DirectMechanism mechanism;
};

// Smallest worst-case deficit of an efficient, IC, IR mechanism.
SubsidyResult min_subsidy(const BilateralTradeInstance& inst,
                          const FeasibilityOptions& options = {});

}  // namespace oneway

#endif  // ONEWAY_BILATERAL_HPP_
