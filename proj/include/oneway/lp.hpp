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


#ifndef ONEWAY_LP_HPP_
#define ONEWAY_LP_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace oneway {

// Small dense simplex solver for the feasibility systems of the bilateral
// trade module. Minimizes cost.x subject to linear rows, with each variable
// either free or non-negative.
enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LpRow {
  std::vector<std::pair<std::size_t, double>> terms;
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
  std::string label;
};

struct LinearProgram {
  std::vector<bool> free_var;
  std::vector<double> cost;
  std::vector<LpRow> rows;

  std::size_t add_variable(bool is_free, double c = 0.0) {
    free_var.push_back(is_free);
    cost.push_back(c);
    return free_var.size() - 1;
  }
  std::size_t num_vars() const { return free_var.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  // Optimal phase-one value: total constraint violation that could not be
  // removed. Zero (up to rounding) for feasible systems.
  double infeasibility = 0.0;
  // Farkas multipliers, one per row, set when status is kInfeasible:
  // y >= 0 on <= rows, y <= 0 on >= rows, free on equalities, with
  // y.A = 0 on free columns, y.A >= 0 on non-negative columns, y.b < 0.
  std::vector<double> farkas;
  std::size_t iterations = 0;
};

struct LpOptions {
  // Phase-one value below this counts as feasible.
  double feasibility_tol = 1e-9;
  std::size_t max_iterations = 200000;
};

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

struct CertificateCheck {
  bool valid = false;
  double max_violation = 0.0;  // worst sign or column violation, after scaling
  double aggregate_rhs = 0.0;  // y.b after scaling max |y| to 1
};

// Re-derives the contradiction 0 <= y.A x <= y.b < 0 from the multipliers.
CertificateCheck verify_certificate(const LinearProgram& lp, const std::vector<double>& y,
                                    double tol = 1e-7);

}  // namespace oneway

#endif  // ONEWAY_LP_HPP_
