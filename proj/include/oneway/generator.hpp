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


#ifndef ONEWAY_GENERATOR_HPP_
#define ONEWAY_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>

#include "oneway/game.hpp"

namespace oneway {

struct GeneratorConfig {
  std::size_t actions_a = 3;
  std::size_t actions_b = 3;
  std::size_t types_a = 3;
  std::size_t types_b = 3;
  double a_scale = 1.0;
  double b_scale = 1.0;
  // 0 draws payoffs uniformly on [0, 1); k > 0 draws integers 0..k (then
  // multiplied by the scale), which keeps ratio checks exact.
  std::uint32_t integer_max = 0;
  // Uniform priors unless set; random priors come from normalized draws.
  bool random_priors = false;
  std::uint64_t seed = 42;
};

// Reproducible per config: all draws come from stream 0 of `seed`.
OneWayGame generate_game(const GeneratorConfig& config);

}  // namespace oneway

#endif  // ONEWAY_GENERATOR_HPP_
