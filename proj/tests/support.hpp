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


// Shared fixtures and brute-force oracles for the test binaries. The
// oracles deliberately avoid the library's helpers so that agreement is
// evidence rather than tautology.

#ifndef ONEWAY_TESTS_SUPPORT_HPP_
#define ONEWAY_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "oneway/game.hpp"
#include "oneway/generator.hpp"
#include "oneway/random.hpp"

namespace oneway::testing {

// S_A={a1,a2}, S_B={b1}, two equally likely A-types, one B-type.
inline OneWayGame g1() {
  OneWayGame g;
  g.actions_a = {"a1", "a2"};
  g.actions_b = {"b1"};
  g.types_a = {{"t1", 0.5}, {"t2", 0.5}};
  g.types_b = {{"phi", 1.0}};
  g.payoff_a = {{2.0, 1.0}, {0.0, 1.0}};
  g.payoff_b = {{{4.0}, {0.0}}};
  return g;
}

// G1 plus b2 with u_B((a1, b2)) = ub2.
inline OneWayGame g2(double ub2 = 4.0) {
  OneWayGame g = g1();
  g.actions_b.push_back("b2");
  g.payoff_b = {{{4.0, ub2}, {0.0, 0.0}}};
  return g;
}

// Sizes drawn in 1..max_size from `seed`; payoffs from the generator.
inline GeneratorConfig random_config(std::uint64_t seed, std::size_t max_size, double a_scale,
                                     double b_scale, std::uint32_t integer_max) {
  CounterRng rng(seed, 991);
  GeneratorConfig c;
  c.actions_a = 1 + rng.below(max_size);
  c.actions_b = 1 + rng.below(max_size);
  c.types_a = 1 + rng.below(max_size);
  c.types_b = 1 + rng.below(max_size);
  c.a_scale = a_scale;
  c.b_scale = b_scale;
  c.integer_max = integer_max;
  c.random_priors = rng.below(2) == 1;
  c.seed = seed;
  return c;
}

inline OneWayGame random_game(std::uint64_t seed, std::size_t max_size = 4, double a_scale = 1.0,
                              double b_scale = 1.0, std::uint32_t integer_max = 0) {
  return generate_game(random_config(seed, max_size, a_scale, b_scale, integer_max));
}

// ---- oracles -------------------------------------------------------------

inline std::size_t oracle_argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

struct OracleNash {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
};

inline OracleNash oracle_nash(const OneWayGame& g) {
  OracleNash ne;
  for (std::size_t ta = 0; ta < g.types_a.size(); ++ta) ne.a.push_back(oracle_argmax(g.payoff_a[ta]));
  for (std::size_t tb = 0; tb < g.types_b.size(); ++tb) {
    std::vector<double> ev(g.actions_b.size(), 0.0);
    for (std::size_t sb = 0; sb < ev.size(); ++sb) {
      for (std::size_t ta = 0; ta < g.types_a.size(); ++ta) {
        ev[sb] += g.types_a[ta].prob * g.payoff_b[tb][ne.a[ta]][sb];
      }
    }
    ne.b.push_back(oracle_argmax(ev));
  }
  return ne;
}

// Per-type opt / SW(s^N) in theta_A-major order, +inf for x/0 with x > 0.
inline std::vector<double> oracle_poa(const OneWayGame& g) {
  const OracleNash ne = oracle_nash(g);
  std::vector<double> out;
  for (std::size_t ta = 0; ta < g.types_a.size(); ++ta) {
    for (std::size_t tb = 0; tb < g.types_b.size(); ++tb) {
      double opt = -1.0;
      for (std::size_t sa = 0; sa < g.actions_a.size(); ++sa) {
        for (std::size_t sb = 0; sb < g.actions_b.size(); ++sb) {
          opt = std::max(opt, g.payoff_a[ta][sa] + g.payoff_b[tb][sa][sb]);
        }
      }
      const double sw = g.payoff_a[ta][ne.a[ta]] + g.payoff_b[tb][ne.a[ta]][ne.b[tb]];
      if (sw == 0.0) {
        out.push_back(opt == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
      } else {
        out.push_back(opt / sw);
      }
    }
  }
  return out;
}

// Best value of B's single offer when gamma is restricted to the grid
// i / (points - 1). Exact comparisons, no tolerances.
inline double oracle_grid_offer_value(const OneWayGame& g, std::size_t tb, std::size_t points) {
  const OracleNash ne = oracle_nash(g);
  const std::size_t na = g.actions_a.size(), nb = g.actions_b.size(), nt = g.types_a.size();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t sa = 0; sa < na; ++sa) {
    std::vector<double> row(nb);
    for (std::size_t sb = 0; sb < nb; ++sb) row[sb] = g.payoff_b[tb][sa][sb];
    const double accept_value = row[oracle_argmax(row)];
    // Rejecting types: sa is not among their maximizers.
    std::vector<double> w(nt, 0.0);
    double mass = 0.0;
    for (std::size_t ta = 0; ta < nt; ++ta) {
      const double top = *std::max_element(g.payoff_a[ta].begin(), g.payoff_a[ta].end());
      if (g.payoff_a[ta][sa] < top && g.types_a[ta].prob > 0.0) {
        w[ta] = g.types_a[ta].prob;
        mass += w[ta];
      }
    }
    double outside = accept_value;
    if (mass > 0.0) {
      std::vector<double> ev(nb, 0.0);
      for (std::size_t sb = 0; sb < nb; ++sb) {
        for (std::size_t ta = 0; ta < nt; ++ta) ev[sb] += w[ta] / mass * g.payoff_b[tb][ne.a[ta]][sb];
      }
      outside = ev[oracle_argmax(ev)];
    }
    const double db = accept_value - outside;
    if (!(db > 0.0)) continue;
    for (std::size_t i = 0; i < points; ++i) {
      const double gamma = static_cast<double>(i) / static_cast<double>(points - 1);
      double p = 0.0;
      for (std::size_t ta = 0; ta < nt; ++ta) {
        const double da = g.payoff_a[ta][ne.a[ta]] - g.payoff_a[ta][sa];
        if (da <= gamma * db) p += g.types_a[ta].prob;
      }
      best = std::max(best, outside + p * (1.0 - gamma) * db);
    }
  }
  if (best == -std::numeric_limits<double>::infinity()) {
    best = 0.0;
    for (std::size_t ta = 0; ta < nt; ++ta) {
      best += g.types_a[ta].prob * g.payoff_b[tb][ne.a[ta]][ne.b[tb]];
    }
  }
  return best;
}

}  // namespace oneway::testing

#endif  // ONEWAY_TESTS_SUPPORT_HPP_
