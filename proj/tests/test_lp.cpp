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
#include "oneway/lp.hpp"

using namespace oneway;

namespace {

LpRow row(std::vector<std::pair<std::size_t, double>> terms, RowSense sense, double rhs) {
  LpRow r;
  r.terms = std::move(terms);
  r.sense = sense;
  r.rhs = rhs;
  return r;
}

}  // namespace

TEST_SUITE("lp") {
  TEST_CASE("small optimum") {
    // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0. Optimum at (1.6, 1.2).
    LinearProgram lp;
    const auto x = lp.add_variable(false, -1.0);
    const auto y = lp.add_variable(false, -1.0);
    lp.rows.push_back(row({{x, 1.0}, {y, 2.0}}, RowSense::kLessEqual, 4.0));
    lp.rows.push_back(row({{x, 3.0}, {y, 1.0}}, RowSense::kLessEqual, 6.0));
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.x[x] == doctest::Approx(1.6));
    CHECK(s.x[y] == doctest::Approx(1.2));
    CHECK(s.objective == doctest::Approx(-2.8));
  }

  TEST_CASE("free variables and equalities") {
    // min x  s.t. x - y = -3, y >= 1 with x free.
    LinearProgram lp;
    const auto x = lp.add_variable(true, 1.0);
    const auto y = lp.add_variable(false, 0.0);
    lp.rows.push_back(row({{x, 1.0}, {y, -1.0}}, RowSense::kEqual, -3.0));
    lp.rows.push_back(row({{y, 1.0}}, RowSense::kGreaterEqual, 1.0));
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.x[x] == doctest::Approx(-2.0));
  }

  TEST_CASE("unbounded") {
    LinearProgram lp;
    const auto x = lp.add_variable(false, -1.0);
    lp.rows.push_back(row({{x, 1.0}}, RowSense::kGreaterEqual, 1.0));
    CHECK(solve_lp(lp).status == LpStatus::kUnbounded);
  }

  TEST_CASE("infeasible with a certificate") {
    // x + y <= 1, x + y >= 3.
    LinearProgram lp;
    const auto x = lp.add_variable(false);
    const auto y = lp.add_variable(false);
    lp.rows.push_back(row({{x, 1.0}, {y, 1.0}}, RowSense::kLessEqual, 1.0));
    lp.rows.push_back(row({{x, 1.0}, {y, 1.0}}, RowSense::kGreaterEqual, 3.0));
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::kInfeasible);
    CHECK(s.infeasibility == doctest::Approx(2.0));
    const CertificateCheck c = verify_certificate(lp, s.farkas);
    CHECK(c.valid);
    CHECK(c.aggregate_rhs < 0.0);
  }

  TEST_CASE("infeasible free system") {
    // x = 1, x = 2 with x free.
    LinearProgram lp;
    const auto x = lp.add_variable(true);
    lp.rows.push_back(row({{x, 1.0}}, RowSense::kEqual, 1.0));
    lp.rows.push_back(row({{x, 1.0}}, RowSense::kEqual, 2.0));
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::kInfeasible);
    CHECK(verify_certificate(lp, s.farkas).valid);
  }

  TEST_CASE("bad certificates are rejected") {
    LinearProgram lp;
    const auto x = lp.add_variable(false);
    lp.rows.push_back(row({{x, 1.0}}, RowSense::kLessEqual, 1.0));
    lp.rows.push_back(row({{x, 1.0}}, RowSense::kGreaterEqual, 3.0));
    CHECK_FALSE(verify_certificate(lp, {0.0, 0.0}).valid);
    CHECK_FALSE(verify_certificate(lp, {-1.0, 1.0}).valid);
    CHECK_FALSE(verify_certificate(lp, {1.0}).valid);
    CHECK(verify_certificate(lp, {1.0, -1.0}).valid);
  }

  TEST_CASE("degenerate cycling example") {
    // Beale's classic degenerate instance; optimum -0.05.
    LinearProgram lp;
    std::vector<double> c = {-0.75, 150.0, -0.02, 6.0};
    for (double ci : c) lp.add_variable(false, ci);
    lp.rows.push_back(row({{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, RowSense::kLessEqual, 0.0));
    lp.rows.push_back(row({{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, RowSense::kLessEqual, 0.0));
    lp.rows.push_back(row({{2, 1.0}}, RowSense::kLessEqual, 1.0));
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::kOptimal);
    CHECK(s.objective == doctest::Approx(-0.05));
  }
}
