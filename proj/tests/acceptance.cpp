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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "oneway/analytics.hpp"
#include "oneway/bilateral.hpp"
#include "oneway/cli.hpp"
#include "oneway/equilibrium.hpp"
#include "oneway/io.hpp"
#include "oneway/multi_offer.hpp"
#include "oneway/single_offer.hpp"
#include "support.hpp"

using namespace oneway;

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "oneway");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// CSV body without '#' header lines, split into fields.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    rows.push_back(f);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& head, const std::string& name) {
  const auto it = std::find(head.begin(), head.end(), name);
  if (it == head.end()) throw Error("missing column " + name);
  return static_cast<std::size_t>(it - head.begin());
}

// Independent transcription of the published closed forms.
double paper_sw_1b(double x) { return x <= 200.0 ? 100.0 + x * (x / 200.0 - 0.25) : 50.0 + x; }
double paper_poa_1b(double x) {
  if (x <= 50.0) return 100.0 / paper_sw_1b(x);
  if (x <= 200.0) return (50.0 + x) / paper_sw_1b(x);
  return 1.0;
}

int failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<void(Check&)>& body) {
  Check v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream budget;
  budget << "runtime " << secs << "s > " << budget_s << "s";
  if (secs > budget_s) v.require(false, budget.str());
  if (!v.pass) ++failures;
  std::printf("%s %s (%.2fs):%s\n", v.pass ? "PASS" : "FAIL", name.c_str(), secs,
              v.detail.str().c_str());
  std::fflush(stdout);
}

// Instances shared by the bound and sandwich criteria: up to 6 actions and
// types, with B's payoffs scaled up on a third of them.
std::vector<OneWayGame> bound_instances() {
  std::vector<OneWayGame> out;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const double b_scale = seed % 3 == 0 ? 100.0 : (seed % 3 == 1 ? 1.0 : 10.0);
    const std::uint32_t integer_max = seed % 2 == 0 ? 10 : 0;
    out.push_back(testing::random_game(1000 + seed, 6, 1.0, b_scale, integer_max));
  }
  return out;
}

void example1b_criterion(Check& v) {
  const CliRun sweep = cli({"examples", "--which", "1b", "--sweep", "--from", "0", "--to", "400", "--step", "1"});
  v.require(sweep.code == kExitOk, "sweep exit code");
  const auto rows = csv_rows(sweep.out);
  const auto& head = rows.at(0);
  const std::size_t cx = column(head, "parameter"), csw = column(head, "SW"), cpoa = column(head, "PoA");
  double worst_formula = 0.0, max_poa = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][cx]);
    const double sw = std::stod(rows[i][csw]), poa = std::stod(rows[i][cpoa]);
    worst_formula = std::max({worst_formula, std::abs(sw - paper_sw_1b(x)) / paper_sw_1b(x),
                              std::abs(poa - paper_poa_1b(x))});
    max_poa = std::max(max_poa, poa);
  }
  v.require(rows.size() == 402, "401 sweep rows");
  v.require(worst_formula <= 1e-12, "sweep matches the closed forms");
  v.require(max_poa <= 1.21, "max PoA <= 1.21");
  const double at100 = example1b(100.0).poa;
  v.require(std::abs(at100 - 1.2) <= 1e-9, "analytic PoA(100) = 1.2");

  const CliRun point = cli({"examples", "--which", "1b", "--at", "100", "--samples", "1000000"});
  const auto prow = csv_rows(point.out);
  const double mc_poa = std::stod(prow.at(1).at(column(prow[0], "mc_PoA_ratio_of_means")));
  const double mc_sw = std::stod(prow.at(1).at(column(prow[0], "mc_SW")));
  v.detail << " max PoA " << max_poa << ", closed-form error " << worst_formula << ", PoA(100) "
           << at100 << ", MC PoA(100) " << mc_poa << " (MC SW " << mc_sw << ")";
  v.require(std::abs(mc_poa - 1.2) <= 0.012, "Monte Carlo PoA(100) within 1% of 1.2");
}

void example2_criterion(Check& v) {
  const Argmax m = example2_max_poa();
  const double target = (4.0 / 31.0) * (3.0 + 2.0 * std::sqrt(10.0));
  const double limit = acceptance_prob_example2(0.5, 1e6);
  v.detail << " max PoA " << m.value << " at mu1 = " << m.arg << " (closed form " << target
           << "), P(0.5, 1e6) = " << limit;
  v.require(std::abs(m.value - target) <= 1e-6, "max PoA matches (4/31)(3+2 sqrt 10)");
  bool limits_ok = true;
  for (double c : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    limits_ok = limits_ok && std::abs(acceptance_prob_example2(c, 1e6) - c) <= 1e-5;
  }
  v.require(limits_ok, "finite-n acceptance within 1e-5 of c at n = 1e6");
}

void corollary_criterion(Check& v) {
  const CorollaryBound b1 = corollary_bound(1.0);
  v.require(b1.gamma == 0.5 && b1.poa_bound == 2.25, "corollary_bound(1) == (0.5, 2.25)");
  for (double beta : {0.25, 0.5, 0.75, 1.0}) {
    const CorollaryBound b = corollary_bound(beta);
    const auto mc = mc_single_offer(corollary_model(beta), b.gamma, 100000, 42);
    const double poa = mc.poa_of_sample.mean;
    v.detail << " beta " << beta << ": MC " << poa << " (ratio of means " << mc.poa_ratio_of_means
             << ") <= " << b.poa_bound << ";";
    v.require(poa + mc.poa_of_sample.half_width <= b.poa_bound, "MC PoA below bound");
    v.require(mc.poa_ratio_of_means <= b.poa_bound, "MC ratio of means below bound");
  }
}

void bound_criterion(Check& v, const std::vector<OneWayGame>& games) {
  std::size_t checks = 0, outcome_checks = 0, bayes_fail = 0, accept_fail = 0, reject_fail = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (const OneWayGame& g : games) {
    for (std::size_t tb = 0; tb < g.num_types_b(); ++tb) {
      const OfferChoice c = simplified_offer(g, tb);
      const WelfareRatio bound = bayes_poa_bound(g, tb);
      const AcceptRejectPoA per = accept_reject_poa(c.offer.gamma);
      double expected = 0.0;
      bool unbounded = false;
      for (std::size_t ta = 0; ta < g.num_types_a(); ++ta) {
        const SingleOfferOutcome o = run_single_offer(g, {ta, tb}, c.offer);
        const double opt = optimal_welfare(g, {ta, tb}).value;
        const WelfareRatio r = welfare_ratio(opt, o.welfare);
        if (r.unbounded) {
          unbounded = true;
        } else {
          expected += g.types_a[ta].prob * r.value;
        }
        if (c.null_offer) continue;
        ++outcome_checks;
        if (o.accepted) {
          if (r.unbounded || r.value > per.accept + 1e-9) ++accept_fail;
        } else if (!per.reject.unbounded) {
          if (r.unbounded || r.value > per.reject.value + 1e-9) ++reject_fail;
        }
      }
      ++checks;
      if (bound.unbounded) continue;
      if (unbounded) {
        ++bayes_fail;
        continue;
      }
      worst_gap = std::max(worst_gap, expected - bound.value);
      if (expected > bound.value + 1e-9) ++bayes_fail;
    }
  }
  v.detail << " " << checks << " (instance, theta_B) pairs, " << outcome_checks
           << " per-outcome checks; largest E[PoA] - bound = " << worst_gap << "; violations: bayes "
           << bayes_fail << ", accept " << accept_fail << ", reject " << reject_fail;
  v.require(bayes_fail == 0, "E[PoA] <= bound");
  v.require(accept_fail == 0, "PoA <= 1 + gamma on acceptance");
  v.require(reject_fail == 0, "PoA <= 1 + 1/gamma on rejection");
}

void sandwich_criterion(Check& v, const std::vector<OneWayGame>& games) {
  std::size_t profiles = 0, misses = 0;
  for (const OneWayGame& g : games) {
    for (const TypePoA& t : poa_metrics(g).per_type) {
      ++profiles;
      if (!prop1_sandwich_holds(t)) ++misses;
    }
  }
  v.detail << " " << profiles << " type profiles, " << misses << " outside the sandwich";
  v.require(misses == 0, "sandwich holds everywhere");
}

void equivalence_criterion(Check& v) {
  std::size_t checks = 0, bad = 0;
  double lo = 0.0, hi = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const OneWayGame g = testing::random_game(5000 + seed, 6);
    for (std::size_t tb = 0; tb < g.num_types_b(); ++tb) {
      for (std::size_t n : {2u, 3u}) {
        const double gap = equivalence_gap(g, tb, n);
        lo = std::min(lo, gap);
        hi = std::max(hi, gap);
        ++checks;
        if (std::abs(gap) > 1e-6) {
          ++bad;
          std::fprintf(stderr, "equivalence violation: seed %llu theta_B %zu n %zu gap %.3e\n",
                       static_cast<unsigned long long>(5000 + seed), tb, n, gap);
        }
      }
    }
  }
  v.detail << " " << checks << " gaps in [" << lo << ", " << hi << "]";
  v.require(bad == 0, "|gap| <= 1e-6");
}

void oracle_criterion(Check& v) {
  double worst = 0.0;
  std::size_t offers = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    // Payoffs on [0, 0.1]: the grid step 1e-5 then moves B's value by at
    // most 1e-6.
    const OneWayGame g = testing::random_game(7000 + seed, 3, 0.1, 0.1);
    for (std::size_t tb = 0; tb < g.num_types_b(); ++tb) {
      const double lib = optimal_offer(g, tb).evaluation.expected_u_b;
      const double grid = testing::oracle_grid_offer_value(g, tb, 100001);
      worst = std::max(worst, std::abs(lib - grid));
      ++offers;
    }
  }
  std::size_t profiles = 0, mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const OneWayGame g = testing::random_game(9000 + seed, 4, 1.0, 1.0 + static_cast<double>(seed % 4),
                                              seed % 2 == 0 ? 5 : 0);
    const auto oracle = testing::oracle_poa(g);
    const PoAReport r = poa_metrics(g);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      ++profiles;
      const double got = r.per_type[i].poa.unbounded ? std::numeric_limits<double>::infinity()
                                                     : r.per_type[i].poa.value;
      if (got != oracle[i]) ++mismatches;
    }
  }
  v.detail << " " << offers << " offers, max |library - grid| = " << worst << "; " << profiles
           << " PoA profiles, " << mismatches << " mismatches";
  v.require(worst <= 1e-6, "optimal offer within 1e-6 of the grid oracle");
  v.require(mismatches == 0, "PoA equals exhaustive enumeration");
}

void impossibility_criterion(Check& v) {
  BilateralTradeInstance single;
  single.seller = {{0.0}, {1.0}};
  single.buyer = {{1.0}, {1.0}};
  const FeasibilityResult one = feasibility_lp(single);
  v.require(one.verdict == Verdict::kFeasible, "single-type instance feasible");
  FeasibilityOptions no_ir;
  no_ir.drop_ir = true;
  v.require(feasibility_lp(uniform_grid_instance(10), no_ir).verdict == Verdict::kFeasible,
            "10-point grid feasible without IR");

  const CliRun sweep = cli({"ms-check", "--refine", "20"});
  v.require(sweep.code == kExitOk, "ms-check exit code");
  const auto rows = csv_rows(sweep.out);
  const auto& head = rows.at(0);
  const std::size_t ck = column(head, "grid_size"), cv = column(head, "verdict"),
                    cz = column(head, "min_subsidy"), cc = column(head, "certificate_valid"),
                    cw = column(head, "certificate_violation");
  std::size_t infeasible = 0, bad_cert = 0;
  std::string first_infeasible = "none";
  v.detail << " trend:";
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    v.detail << " " << r[ck] << "=" << r[cv] << "/" << r[cz];
    if (r[cv] == "infeasible") {
      if (infeasible++ == 0) first_infeasible = r[ck];
      if (r[cc] != "1" || std::stod(r[cw]) > 1e-7) ++bad_cert;
    }
  }
  v.detail << "; first infeasible grid " << first_infeasible << ", " << bad_cert
           << " certificates failing re-verification";
  v.require(rows.size() == 20, "19 sweep rows");
  v.require(bad_cert == 0, "certificates re-verify within 1e-7");
}

void determinism_criterion(Check& v) {
  const std::string dir = "/tmp/oneway_acceptance";
  std::filesystem::create_directories(dir);
  const std::string game = dir + "/game.json";
  {
    const CliRun g = cli({"gen", "--seed", "3", "--actions-a", "4", "--types-a", "4", "--b-scale", "5", "-o", game});
    v.require(g.code == kExitOk, "gen to file");
  }
  const std::string sched = dir + "/schedule.json";
  std::FILE* f = std::fopen(sched.c_str(), "w");
  std::fputs(R"({"action": "a1", "gammas": [0.2, 0.4, 0.7], "probs": [1, 0.6, 0.3]})", f);
  std::fclose(f);
  const std::string bt = dir + "/bilateral.json";
  f = std::fopen(bt.c_str(), "w");
  std::fputs(R"({"seller": {"values": [0, 0.5, 1], "probs": [0.3, 0.3, 0.4]}, "buyer": {"values": [0, 0.5, 1], "probs": [0.2, 0.5, 0.3]}})", f);
  std::fclose(f);

  const std::vector<std::vector<std::string>> commands = {
      {"validate", "--instance", game, "--schedule", sched, "--bilateral", bt},
      {"nash", "--instance", game},
      {"poa", "--instance", game},
      {"single-offer", "--instance", game, "--offer-strategy", "optimal"},
      {"single-offer", "--instance", game, "--offer-strategy", "simplified"},
      {"multi-offer", "--instance", game, "--n", "2", "--optimize"},
      {"multi-offer", "--instance", game, "--schedule", sched, "--samples", "200000"},
      {"ms-check", "--refine", "8"},
      {"ms-check", "--instance", bt},
      {"examples", "--which", "1b", "--sweep"},
      {"examples", "--which", "2", "--sweep"},
      {"examples", "--which", "corollary", "--sweep", "--samples", "20000"},
      {"examples", "--which", "1b", "--at", "100", "--samples", "300000"},
      {"examples", "--which", "2", "--at", "1.2"},
      {"examples", "--which", "corollary", "--at", "0.5"},
      {"gen", "--seed", "11", "--types-b", "2", "--random-priors"},
      {"sweep", "--param", "x"},
      {"sweep", "--param", "mu1"},
      {"sweep", "--param", "beta", "--samples", "20000"},
      {"sweep", "--param", "grid", "--to", "6"},
  };
  std::size_t identical = 0;
  for (const auto& cmd : commands) {
    std::string label;
    for (const auto& a : cmd) label += a + " ";
    setenv("ONEWAY_THREADS", "1", 1);
    const CliRun a = cli(cmd);
    setenv("ONEWAY_THREADS", "4", 1);
    const CliRun b = cli(cmd);
    unsetenv("ONEWAY_THREADS");
    const CliRun c = cli(cmd);
    const bool ok = a.code == kExitOk && a.out == b.out && a.out == c.out && a.err == c.err;
    if (ok) {
      ++identical;
    } else {
      v.require(false, "differs: " + label);
    }
  }
  // Output files too.
  const std::string o1 = dir + "/run1.csv", o2 = dir + "/run2.csv";
  cli({"examples", "--which", "corollary", "--at", "0.75", "-o", o1});
  cli({"examples", "--which", "corollary", "--at", "0.75", "-o", o2});
  v.require(read_file(o1) == read_file(o2) && !read_file(o1).empty(), "output files identical");
  v.detail << " " << identical << "/" << commands.size()
           << " commands byte-identical across reruns and thread counts";
}

}  // namespace

int main() {
  criterion("example-1b-reproduction", 30.0, example1b_criterion);
  criterion("example-2-reproduction", 10.0, example2_criterion);
  criterion("power-law-bound", 60.0, corollary_criterion);
  const std::vector<OneWayGame> games = bound_instances();
  criterion("bayes-bound-soundness", 60.0, [&](Check& v) { bound_criterion(v, games); });
  criterion("welfare-sandwich", 60.0, [&](Check& v) { sandwich_criterion(v, games); });
  criterion("multi-offer-equivalence", 300.0, equivalence_criterion);
  criterion("oracle-equivalence", 300.0, oracle_criterion);
  criterion("impossibility-companion", 300.0, impossibility_criterion);
  criterion("determinism", 300.0, determinism_criterion);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
