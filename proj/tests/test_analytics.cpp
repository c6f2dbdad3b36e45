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


#include <cmath>

#include "doctest.h"
#include "oneway/analytics.hpp"
#include "oneway/equilibrium.hpp"
#include "oneway/single_offer.hpp"

using namespace oneway;

namespace {

// Discrete-engine welfare of B's optimal single offer on a k-point game.
double discrete_sw(const BargainingModel& model, std::size_t k) {
  const OneWayGame g = bargaining_game(model, k);
  return optimal_offer(g, 0).evaluation.expected_sw;
}

}  // namespace

TEST_SUITE("analytics") {
  TEST_CASE("distributions") {
    const auto u = ContinuousSpec::uniform(0.0, 100.0);
    CHECK(u.cdf(-1.0) == 0.0);
    CHECK(u.cdf(25.0) == 0.25);
    CHECK(u.cdf(200.0) == 1.0);
    CHECK(u.quantile(0.75) == 75.0);
    const auto p = ContinuousSpec::power(0.5, 4.0);
    CHECK(p.cdf(1.0) == doctest::Approx(0.5));
    CHECK(p.quantile(0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ContinuousSpec::power(0.0, 1.0), Error);
    CHECK_THROWS_AS(ContinuousSpec::power(1.5, 1.0), Error);
    CHECK_THROWS_AS(ContinuousSpec::uniform(1.0, 1.0), Error);
    const auto d = ContinuousSpec::degenerate(0.3);
    CHECK(d.cdf(0.29) == 0.0);
    CHECK(d.cdf(0.3) == 1.0);
    CHECK(d.quantile(0.9) == 0.3);
  }

  TEST_CASE("first example") {
    const Example1bResult r = example1b(100.0);
    CHECK(r.c_star == 50.0);
    CHECK(r.expected_sw == 125.0);
    CHECK(std::abs(r.poa - 1.2) <= 1e-9);
    CHECK(r.optimum == 150.0);
    CHECK(r.mechanism_sw == 137.5);
    const Example1bResult hi = example1b(300.0);
    CHECK(hi.c_star == 100.0);
    CHECK(hi.expected_sw == 350.0);
    CHECK(hi.poa == 1.0);
    double worst = 0.0;
    for (int x = 0; x <= 400; ++x) worst = std::max(worst, example1b(x).poa);
    CHECK(worst <= 1.21);
    CHECK_THROWS_AS(example1b(-1.0), Error);
  }

  TEST_CASE("second example") {
    CHECK(example2(3.0).poa == 1.0);
    CHECK(example2(0.0).poa == 1.0);
    CHECK(example2(1.0).c_star == 0.5);
    CHECK(example2(2.5).c_star == 1.0);
    const Argmax m = example2_max_poa();
    CHECK(std::abs(m.value - (4.0 / 31.0) * (3.0 + 2.0 * std::sqrt(10.0))) <= 1e-9);
    CHECK(m.arg == doctest::Approx((std::sqrt(10.0) - 1.0) / 2.0).epsilon(1e-6));
  }

  TEST_CASE("branches join continuously") {
    for (double x : {50.0, 200.0}) {
      CHECK(std::abs(example1b(x - 1e-10).poa - example1b(x + 1e-10).poa) <= 1e-9);
      CHECK(std::abs(example1b(x - 1e-10).expected_sw - example1b(x + 1e-10).expected_sw) <= 1e-7);
    }
    for (double mu : {0.5, 2.0}) {
      CHECK(std::abs(example2(mu - 1e-12).poa - example2(mu + 1e-12).poa) <= 1e-9);
    }
  }

  TEST_CASE("optimal gamma") {
    CHECK(optimal_gamma(example1b_model(100.0)) == 0.5);
    CHECK(optimal_gamma(example1b_model(300.0)) * 300.0 == doctest::Approx(100.0));
    CHECK(optimal_gamma(example2_model(1.0)) == 0.5);
    CHECK(optimal_gamma(corollary_model(0.5)) == doctest::Approx(1.0 / 3.0));
    // Generic path: power loss whose scale differs from Delta_B.
    BargainingModel m{ContinuousSpec::power(0.5, 2.0), 1.0, 1.0, 0.0};
    const double g = optimal_gamma(m);
    // maximize sqrt(g / 2)(1 - g): g = 1/3
    CHECK(g == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  }

  TEST_CASE("expected maximum") {
    CHECK(expected_max_uniform(1) == 0.5);
    CHECK(expected_max_uniform(9) == 0.9);
    const Estimate e = mc_expected_max_uniform(9, 1000000, 42);
    const double sigma = e.half_width / kZ99;
    CHECK(std::abs(e.mean - 0.9) <= 3.0 * sigma);
  }

  TEST_CASE("finite acceptance formula") {
    CHECK(acceptance_prob_example2(1.0, 5.0) == 1.0);
    CHECK(acceptance_prob_example2(0.5, 2.0) == 0.75);
    CHECK(std::abs(acceptance_prob_example2(0.5, 1e6) - 0.5) <= 1e-5);
    CHECK_THROWS_AS(acceptance_prob_example2(0.5, 1.0), Error);
  }

  TEST_CASE("Monte Carlo") {
    const auto m = example1b_model(100.0);
    const auto mc = mc_single_offer(m, 1000000, 42);
    CHECK(std::abs(mc.welfare.mean - example1b(100.0).mechanism_sw) <= mc.welfare.half_width);
    CHECK(std::abs(mc.optimum.mean - 150.0) <= mc.optimum.half_width);

    const auto pw = mc_single_offer(corollary_model(1.0), 0.5, 100000, 42);
    CHECK(std::abs(pw.acceptance.mean - 0.5) <= pw.acceptance.half_width);

    BargainingModel flat{ContinuousSpec::degenerate(0.2), 1.0, 1.0, 0.0};
    const auto z = mc_single_offer(flat, 0.5, 10000, 1);
    CHECK(z.welfare.half_width == 0.0);
    CHECK(z.acceptance.mean == 1.0);
  }

  TEST_CASE("Monte Carlo is deterministic and thread independent") {
    const auto m = example2_model(1.0);
    const auto a = mc_single_offer(m, 100000, 9);
    setenv("ONEWAY_THREADS", "1", 1);
    const auto b = mc_single_offer(m, 100000, 9);
    setenv("ONEWAY_THREADS", "3", 1);
    const auto c = mc_single_offer(m, 100000, 9);
    unsetenv("ONEWAY_THREADS");
    CHECK(a.welfare.mean == b.welfare.mean);
    CHECK(a.welfare.mean == c.welfare.mean);
    CHECK(a.welfare.half_width == c.welfare.half_width);
    CHECK(mc_single_offer(m, 100000, 10).welfare.mean != a.welfare.mean);
  }

  TEST_CASE("interval shrinks like one over root n") {
    const auto m = example1b_model(100.0);
    const double w1 = mc_single_offer(m, 10000, 3).welfare.half_width;
    const double w2 = mc_single_offer(m, 100000, 3).welfare.half_width;
    const double w3 = mc_single_offer(m, 1000000, 3).welfare.half_width;
    CHECK(w1 / w2 == doctest::Approx(std::sqrt(10.0)).epsilon(0.1));
    CHECK(w2 / w3 == doctest::Approx(std::sqrt(10.0)).epsilon(0.1));
  }

  TEST_CASE("discretization") {
    const auto d = discretize(ContinuousSpec::uniform(0.0, 100.0), 2);
    CHECK(d.values == std::vector<double>{25.0, 75.0});
    CHECK(d.weights == std::vector<double>{0.5, 0.5});
    const auto a = discretize(ContinuousSpec::power(1.0, 1.0), 50);
    const auto b = discretize(ContinuousSpec::uniform(0.0, 1.0), 50);
    CHECK(a.values == b.values);
    CHECK_THROWS_AS(discretize(ContinuousSpec::uniform(0.0, 1.0), 1), Error);
  }

  TEST_CASE("discrete engine converges to the mechanism value") {
    const auto m = example1b_model(100.0);
    const double exact = example1b(100.0).mechanism_sw;
    CHECK(std::abs(discrete_sw(m, 200) - exact) <= 0.01 * exact);
    // x = 133 puts the optimal cutoff between grid points.
    const auto m130 = example1b_model(133.0);
    const double exact130 = example1b(133.0).mechanism_sw;
    double prev_err = 1e300;
    for (std::size_t k : {10u, 40u, 160u, 640u}) {
      const double err = std::abs(discrete_sw(m130, k) - exact130);
      CHECK(err * static_cast<double>(k) <= 100.0);
      CHECK(err <= prev_err + 1e-12);
      prev_err = err;
      MESSAGE("k=" << k << " |SW error| = " << err);
    }
    const double ex2 = example2(1.0).mechanism_sw;
    CHECK(std::abs(discrete_sw(example2_model(1.0), 400) - ex2) <= 1.0 / 400.0);
  }

  TEST_CASE("discrete engine agrees on the no-payment PoA") {
    const OneWayGame g = bargaining_game(example1b_model(150.0), 400);
    const PoAReport r = poa_metrics(g);
    CHECK(r.welfare_ratio_poa.value == doctest::Approx(example1b(150.0).nash_poa).epsilon(1e-9));
  }
}
