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


#include "oneway/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oneway/game.hpp"

namespace oneway {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr std::size_t kDegenerateStreak = 50;

// Dense tableau over [structural | slack | artificial | rhs]. Row m holds
// the reduced costs and minus the objective value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), stride_(cols + 1), data_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double* row(std::size_t i) { return data_.data() + i * stride_; }
  double& at(std::size_t i, std::size_t j) { return data_[i * stride_ + j]; }
  double& rhs(std::size_t i) { return data_[i * stride_ + n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    double* pr = row(r);
    const double inv = 1.0 / pr[c];
    nz_.clear();
    for (std::size_t j = 0; j <= n_; ++j) {
      if (pr[j] != 0.0) {
        pr[j] *= inv;
        nz_.push_back(j);
      }
    }
    pr[c] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* pi = row(i);
      const double f = pi[c];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) pi[j] -= f * pr[j];
      pi[c] = 0.0;
    }
    basis_[r] = c;
  }

 private:
  std::size_t m_, n_, stride_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;
};

enum class Outcome { kDone, kUnbounded, kLimit };

// Minimizes with the cost row already priced out. Columns at or beyond
// `enter_limit` never enter.
Outcome run_simplex(Tableau& t, std::size_t enter_limit, std::size_t max_iter,
                    std::size_t& iterations) {
  const std::size_t m = t.rows();
  std::size_t degenerate = 0;
  while (iterations < max_iter) {
    double* cost = t.row(m);
    const bool bland = degenerate >= kDegenerateStreak;
    std::size_t enter = enter_limit;
    double best = -kCostTol;
    for (std::size_t j = 0; j < enter_limit; ++j) {
      if (cost[j] < best) {
        enter = j;
        if (bland) break;
        best = cost[j];
      }
    }
    if (enter == enter_limit) return Outcome::kDone;

    std::size_t leave = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotTol) continue;
      const double r = std::max(0.0, t.rhs(i)) / a;
      if (leave == m || r < ratio - 1e-12) {
        leave = i;
        ratio = r;
      } else if (r <= ratio + 1e-12) {
        const bool take = bland ? t.basis()[i] < t.basis()[leave] : a > t.at(leave, enter);
        if (take) {
          leave = i;
          ratio = std::min(ratio, r);
        }
      }
    }
    if (leave == m) return Outcome::kUnbounded;
    degenerate = ratio <= 1e-12 ? degenerate + 1 : 0;
    t.pivot(leave, enter);
    ++iterations;
  }
  return Outcome::kLimit;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  const std::size_t m = lp.rows.size();
  const std::size_t nv = lp.num_vars();
  if (lp.cost.size() != nv) throw Error("lp: cost vector size mismatch");

  // Column layout.
  std::vector<std::size_t> pos_col(nv), neg_col(nv, SIZE_MAX);
  std::size_t ncol = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    pos_col[j] = ncol++;
    if (lp.free_var[j]) neg_col[j] = ncol++;
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rows[i].sense != RowSense::kEqual) slack_col[i] = ncol++;
  }
  const std::size_t art0 = ncol;
  ncol += m;

  Tableau t(m, ncol);
  std::vector<double> flip(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& r = lp.rows[i];
    flip[i] = r.rhs < 0.0 ? -1.0 : 1.0;
    for (const auto& [j, a] : r.terms) {
      if (j >= nv) throw Error("lp: row '" + r.label + "' references unknown variable");
      t.at(i, pos_col[j]) += flip[i] * a;
      if (neg_col[j] != SIZE_MAX) t.at(i, neg_col[j]) -= flip[i] * a;
    }
    if (slack_col[i] != SIZE_MAX) {
      t.at(i, slack_col[i]) = flip[i] * (r.sense == RowSense::kLessEqual ? 1.0 : -1.0);
    }
    t.at(i, art0 + i) = 1.0;
    t.rhs(i) = flip[i] * r.rhs;
    t.basis()[i] = art0 + i;
  }
  // Phase one: minimize the sum of artificials.
  double* cost = t.row(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double* ri = t.row(i);
    for (std::size_t j = 0; j < art0; ++j) cost[j] -= ri[j];
    cost[ncol] -= ri[ncol];
  }

  LpSolution sol;
  if (run_simplex(t, art0, options.max_iterations, sol.iterations) == Outcome::kLimit) {
    return sol;
  }
  sol.infeasibility = std::max(0.0, -t.rhs(m));
  if (sol.infeasibility > options.feasibility_tol) {
    sol.status = LpStatus::kInfeasible;
    sol.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double y = 1.0 - t.at(m, art0 + i);  // phase-one dual of row i
      sol.farkas[i] = -flip[i] * y;
    }
    return sol;
  }

  // Pivot any artificial still basic (at zero) out of the basis.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis()[i] < art0) continue;
    std::size_t best = art0;
    double mag = kPivotTol;
    for (std::size_t j = 0; j < art0; ++j) {
      if (std::abs(t.at(i, j)) > mag) {
        mag = std::abs(t.at(i, j));
        best = j;
      }
    }
    if (best != art0) t.pivot(i, best);
  }

  // Phase two.
  std::vector<double> c(ncol + 1, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    c[pos_col[j]] = lp.cost[j];
    if (neg_col[j] != SIZE_MAX) c[neg_col[j]] = -lp.cost[j];
  }
  cost = t.row(m);
  std::copy(c.begin(), c.end(), cost);
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = c[t.basis()[i]];
    if (cb == 0.0) continue;
    const double* ri = t.row(i);
    for (std::size_t j = 0; j <= ncol; ++j) cost[j] -= cb * ri[j];
  }
  const Outcome out = run_simplex(t, art0, options.max_iterations, sol.iterations);
  if (out == Outcome::kLimit) return sol;
  if (out == Outcome::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  std::vector<double> value(ncol, 0.0);
  for (std::size_t i = 0; i < m; ++i) value[t.basis()[i]] = t.rhs(i);
  sol.x.assign(nv, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    sol.x[j] = value[pos_col[j]] - (neg_col[j] != SIZE_MAX ? value[neg_col[j]] : 0.0);
    sol.objective += lp.cost[j] * sol.x[j];
  }
  sol.status = LpStatus::kOptimal;
  return sol;
}

CertificateCheck verify_certificate(const LinearProgram& lp, const std::vector<double>& y,
                                    double tol) {
  CertificateCheck check;
  if (y.size() != lp.rows.size()) return check;
  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return check;

  double worst = 0.0;
  std::vector<long double> col(lp.num_vars(), 0.0L);
  long double agg = 0.0L;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const double yi = y[i] / scale;
    const LpRow& r = lp.rows[i];
    if (r.sense == RowSense::kLessEqual) worst = std::max(worst, -yi);
    if (r.sense == RowSense::kGreaterEqual) worst = std::max(worst, yi);
    for (const auto& [j, a] : r.terms) col[j] += static_cast<long double>(yi) * a;
    agg += static_cast<long double>(yi) * r.rhs;
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const double v = static_cast<double>(col[j]);
    worst = std::max(worst, lp.free_var[j] ? std::abs(v) : -v);
  }
  check.max_violation = worst;
  check.aggregate_rhs = static_cast<double>(agg);
  check.valid = worst <= tol && check.aggregate_rhs < -tol;
  return check;
}

}  // namespace oneway
