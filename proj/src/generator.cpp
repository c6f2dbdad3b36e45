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


#include "oneway/generator.hpp"

#include <string>
#include <vector>

#include "oneway/random.hpp"

namespace oneway {
namespace {

std::vector<double> draw_prior(std::size_t n, bool random, CounterRng& rng) {
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  if (!random) return p;
  double total = 0.0;
  for (auto& x : p) {
    x = 0.05 + rng.uniform();
    total += x;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    p[i] /= total;
    acc += p[i];
  }
  p[n - 1] = 1.0 - acc;
  return p;
}

}  // namespace

OneWayGame generate_game(const GeneratorConfig& c) {
  if (c.actions_a == 0 || c.actions_b == 0 || c.types_a == 0 || c.types_b == 0) {
    throw Error("generator sizes must be at least 1");
  }
  if (!(c.a_scale >= 0.0) || !(c.b_scale >= 0.0)) throw Error("generator scales must be >= 0");
  CounterRng rng(c.seed, 0);
  auto draw = [&](double scale) {
    if (c.integer_max > 0) return scale * static_cast<double>(rng.below(c.integer_max + 1ULL));
    return scale * rng.uniform();
  };
  OneWayGame g;
  for (std::size_t i = 0; i < c.actions_a; ++i) g.actions_a.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < c.actions_b; ++i) g.actions_b.push_back("b" + std::to_string(i + 1));
  const auto pa = draw_prior(c.types_a, c.random_priors, rng);
  const auto pb = draw_prior(c.types_b, c.random_priors, rng);
  for (std::size_t t = 0; t < c.types_a; ++t) g.types_a.push_back({"ta" + std::to_string(t + 1), pa[t]});
  for (std::size_t t = 0; t < c.types_b; ++t) g.types_b.push_back({"tb" + std::to_string(t + 1), pb[t]});
  g.payoff_a.assign(c.types_a, std::vector<double>(c.actions_a));
  for (auto& row : g.payoff_a) {
    for (auto& v : row) v = draw(c.a_scale);
  }
  g.payoff_b.assign(c.types_b, std::vector<std::vector<double>>(c.actions_a, std::vector<double>(c.actions_b)));
  for (auto& table : g.payoff_b) {
    for (auto& row : table) {
      for (auto& v : row) v = draw(c.b_scale);
    }
  }
  return g;
}

}  // namespace oneway
