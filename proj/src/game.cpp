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

#include "oneway/game.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace oneway {
namespace {

void check_ids(const std::vector<std::string>& ids, const char* what,
               std::vector<std::string>& errors) {
  if (ids.empty()) errors.push_back(std::string("empty set: ") + what);
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      errors.push_back(std::string("duplicate identifier in ") + what + ": " + id);
    }
  }
}

void check_prior(const std::vector<TypeInfo>& types, const char* what,
                 std::vector<std::string>& errors) {
  if (types.empty()) {
    errors.push_back(std::string("empty set: ") + what);
    return;
  }
  std::vector<std::string> ids;
  double total = 0.0;
  for (const auto& t : types) {
    ids.push_back(t.id);
    if (!(t.prob >= 0.0) || !std::isfinite(t.prob)) {
      errors.push_back(std::string("negative prior weight in ") + what + ": " + t.id);
    }
    total += t.prob;
  }
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      errors.push_back(std::string("duplicate identifier in ") + what + ": " + id);
    }
  }
  if (std::abs(total - 1.0) > kPriorTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "prior not normalized: " << what << " sums to " << total;
    errors.push_back(os.str());
  }
}

void check_payoff(double v, const std::string& where,
                  std::vector<std::string>& errors) {
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "negative payoff at " << where << ": " << v;
    errors.push_back(os.str());
  }
}

}  // namespace

std::vector<std::string> validate(const OneWayGame& game) {
  std::vector<std::string> errors;
  check_ids(game.actions_a, "actions_A", errors);
  check_ids(game.actions_b, "actions_B", errors);
  check_prior(game.types_a, "types_A", errors);
  check_prior(game.types_b, "types_B", errors);

  const std::size_t na = game.num_actions_a();
  const std::size_t nb = game.num_actions_b();

  if (game.payoff_a.size() != game.num_types_a()) {
    errors.push_back("ragged table payoff_A: axis theta_A has " +
                     std::to_string(game.payoff_a.size()) + " entries, expected " +
                     std::to_string(game.num_types_a()));
  }
  for (std::size_t t = 0; t < game.payoff_a.size(); ++t) {
    const auto& row = game.payoff_a[t];
    if (row.size() != na) {
      errors.push_back("ragged table payoff_A[" + std::to_string(t) +
                       "]: axis s_A has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(na));
    }
    for (std::size_t s = 0; s < row.size(); ++s) {
      check_payoff(row[s], "payoff_A[" + std::to_string(t) + "][" + std::to_string(s) + "]",
                   errors);
    }
  }

  if (game.payoff_b.size() != game.num_types_b()) {
    errors.push_back("ragged table payoff_B: axis theta_B has " +
                     std::to_string(game.payoff_b.size()) + " entries, expected " +
                     std::to_string(game.num_types_b()));
  }
  for (std::size_t t = 0; t < game.payoff_b.size(); ++t) {
    const auto& plane = game.payoff_b[t];
    if (plane.size() != na) {
      errors.push_back("ragged table payoff_B[" + std::to_string(t) +
                       "]: axis s_A has " + std::to_string(plane.size()) +
                       " entries, expected " + std::to_string(na));
    }
    for (std::size_t sa = 0; sa < plane.size(); ++sa) {
      const auto& row = plane[sa];
      if (row.size() != nb) {
        errors.push_back("ragged table payoff_B[" + std::to_string(t) + "][" +
                         std::to_string(sa) + "]: axis s_B has " +
                         std::to_string(row.size()) + " entries, expected " +
                         std::to_string(nb));
      }
      for (std::size_t sb = 0; sb < row.size(); ++sb) {
        check_payoff(row[sb],
                     "payoff_B[" + std::to_string(t) + "][" + std::to_string(sa) +
                         "][" + std::to_string(sb) + "]",
                     errors);
      }
    }
  }
  return errors;
}

void require_valid(const OneWayGame& game) {
  const auto errors = validate(game);
  if (errors.empty()) return;
  std::string msg = "invalid game:";
  for (const auto& e : errors) msg += " " + e + ";";
  throw Error(msg);
}

std::size_t best_response_b(const OneWayGame& game, std::size_t s_a,
                            std::size_t theta_b) {
  std::size_t best = 0;
  double best_value = game.u_b(s_a, 0, theta_b);
  for (std::size_t s_b = 1; s_b < game.num_actions_b(); ++s_b) {
    const double v = game.u_b(s_a, s_b, theta_b);
    if (v > best_value) {
      best_value = v;
      best = s_b;
    }
  }
  return best;
}

double social_welfare(const OneWayGame& game, const StrategyProfile& s,
                      const TypeProfile& theta) {
  return game.u_a(s.a, theta.a) + game.u_b(s.a, s.b, theta.b);
}

WelfareOptimum optimal_welfare(const OneWayGame& game, const TypeProfile& theta) {
  WelfareOptimum best{{0, 0}, social_welfare(game, {0, 0}, theta)};
  for (std::size_t a = 0; a < game.num_actions_a(); ++a) {
    for (std::size_t b = 0; b < game.num_actions_b(); ++b) {
      const double v = social_welfare(game, {a, b}, theta);
      if (v > best.value) best = {{a, b}, v};
    }
  }
  return best;
}

double max_payoff_a(const OneWayGame& game, std::size_t theta_a) {
  double m = game.u_a(0, theta_a);
  for (std::size_t a = 1; a < game.num_actions_a(); ++a) m = std::max(m, game.u_a(a, theta_a));
  return m;
}

double max_payoff_b(const OneWayGame& game, std::size_t theta_b) {
  double m = game.u_b(0, 0, theta_b);
  for (std::size_t a = 0; a < game.num_actions_a(); ++a) {
    for (std::size_t b = 0; b < game.num_actions_b(); ++b) {
      m = std::max(m, game.u_b(a, b, theta_b));
    }
  }
  return m;
}

namespace {

template <typename Range, typename Key>
std::size_t find_index(const Range& range, const std::string& id, Key key,
                       const char* what) {
  for (std::size_t i = 0; i < range.size(); ++i) {
    if (key(range[i]) == id) return i;
  }
  throw Error(std::string("unknown ") + what + " identifier: " + id);
}

}  // namespace

std::size_t action_a_index(const OneWayGame& game, const std::string& id) {
  return find_index(game.actions_a, id, [](const std::string& s) { return s; }, "action_A");
}
std::size_t action_b_index(const OneWayGame& game, const std::string& id) {
  return find_index(game.actions_b, id, [](const std::string& s) { return s; }, "action_B");
}
std::size_t type_a_index(const OneWayGame& game, const std::string& id) {
  return find_index(game.types_a, id, [](const TypeInfo& t) { return t.id; }, "type_A");
}
std::size_t type_b_index(const OneWayGame& game, const std::string& id) {
  return find_index(game.types_b, id, [](const TypeInfo& t) { return t.id; }, "type_B");
}

}  // namespace oneway
