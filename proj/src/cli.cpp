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


#include "oneway/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oneway/analytics.hpp"
#include "oneway/bilateral.hpp"
#include "oneway/equilibrium.hpp"
#include "oneway/generator.hpp"
#include "oneway/io.hpp"
#include "oneway/multi_offer.hpp"
#include "oneway/report.hpp"
#include "oneway/single_offer.hpp"

namespace oneway {
namespace {

struct Common {
  std::uint64_t seed = 42;
  std::uint64_t samples = 100000;
  double tol = 1e-9;
  std::string output;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(const WelfareRatio& r) { return r.unbounded ? "inf" : format_double(r.value); }

RunHeader header(const std::string& sub, const Common& c) {
  RunHeader h;
  h.subcommand = sub;
  h.add("seed", std::to_string(c.seed));
  h.add("samples", std::to_string(c.samples));
  h.add("tolerance", fmt(c.tol));
  return h;
}

// Inclusive arithmetic range from + i * step.
std::vector<double> range(double from, double to, double step) {
  if (!(step > 0.0) || to < from) throw CLI::ValidationError("range", "need step > 0 and to >= from");
  const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(from + static_cast<double>(i) * step);
  return v;
}

WelfareRatio model_bound(const BargainingModel& m) {
  const double g = optimal_gamma(m);
  return bayes_poa_bound(g, m.loss.cdf(g * m.delta_b()));
}

// ---- subcommand bodies -------------------------------------------------

void cmd_nash(const OneWayGame& g, CsvWriter& csv) {
  csv.row({"type_A", "type_B", "prob", "s_A", "s_B", "welfare"});
  const NashOutcome ne = nash_outcome(g);
  for (std::size_t ta = 0; ta < g.num_types_a(); ++ta) {
    for (std::size_t tb = 0; tb < g.num_types_b(); ++tb) {
      const StrategyProfile s{ne.a_action_by_type[ta], ne.b_action_by_type[tb]};
      csv.row({g.types_a[ta].id, g.types_b[tb].id, fmt(g.prob_a(ta) * g.prob_b(tb)),
               g.actions_a[s.a], g.actions_b[s.b], fmt(social_welfare(g, s, {ta, tb}))});
    }
  }
  csv.row({"ALL", "ALL", "1", "", "", fmt(ne.expected_welfare)});
}

void cmd_poa(const OneWayGame& g, CsvWriter& csv) {
  const PoAReport r = poa_metrics(g);
  csv.row({"type_A", "type_B", "poa", "prop1_lower", "prop1_upper", "bayes_nash_poa",
           "welfare_ratio_poa"});
  for (const auto& t : r.per_type) {
    csv.row({g.types_a[t.theta.a].id, g.types_b[t.theta.b].id, fmt(t.poa), fmt(t.prop1_lower),
             fmt(t.prop1_upper), "", ""});
  }
  csv.row({"ALL", "ALL", "", "", "", fmt(r.bayes_nash_poa), fmt(r.welfare_ratio_poa)});
}

void cmd_single(const OneWayGame& g, const std::string& strategy, CsvWriter& csv) {
  csv.row({"type_B", "proposed_action", "gamma", "acceptance_prob", "expected_U_A",
           "expected_U_B", "expected_SW", "bound", "null_offer"});
  for (std::size_t tb = 0; tb < g.num_types_b(); ++tb) {
    const OfferChoice c = strategy == "simplified" ? simplified_offer(g, tb) : optimal_offer(g, tb);
    const OfferEvaluation& e = c.evaluation;
    csv.row({g.types_b[tb].id, g.actions_a[c.offer.proposed_action], fmt(c.offer.gamma),
             fmt(e.acceptance_prob), fmt(e.expected_u_a), fmt(e.expected_u_b), fmt(e.expected_sw),
             fmt(bayes_poa_bound(c.offer.gamma, e.acceptance_prob)), c.null_offer ? "1" : "0"});
  }
}

std::vector<std::size_t> selected_types_b(const OneWayGame& g, const std::string& id) {
  if (!id.empty()) return {type_b_index(g, id)};
  std::vector<std::size_t> all(g.num_types_b());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

void cmd_multi_optimize(const OneWayGame& g, std::size_t n, const std::vector<std::size_t>& types,
                        double p_step, double tol, CsvWriter& csv) {
  csv.row({"type_B", "proposed_action", "n", "gammas", "probs", "s_values", "value",
           "single_offer_value", "equivalence_gap", "equivalent", "locally_optimal", "null_offer"});
  ScheduleSearchOptions opts;
  opts.p_step = p_step;
  for (std::size_t tb : types) {
    const ScheduleOptimum o = optimize_schedule(g, tb, n, opts);
    const double single = optimal_offer(g, tb).evaluation.expected_u_b;
    const double gap = single - o.value;
    csv.row({g.types_b[tb].id, g.actions_a[o.schedule.proposed_action], std::to_string(n),
             join(o.schedule.gammas), join(o.schedule.continue_probs), join(o.s.s), fmt(o.value),
             fmt(single), fmt(gap), std::abs(gap) <= tol ? "1" : "0", o.locally_optimal ? "1" : "0",
             o.null_offer ? "1" : "0"});
  }
}

void cmd_multi_schedule(const OneWayGame& g, const Schedule& s, const std::vector<std::size_t>& types,
                        const Common& c, CsvWriter& csv) {
  csv.row({"type_B", "proposed_action", "n", "gammas", "probs", "s_values", "expected_U_B",
           "regrouped_U_B", "mc_U_B", "mc_U_B_half_width", "mc_SW", "mc_acceptance", "seed"});
  const SValues sv = s_values(s);
  for (std::size_t tb : types) {
    const MultiOfferMonteCarlo mc = mc_multi_offer(g, s, tb, c.samples, c.seed);
    csv.row({g.types_b[tb].id, g.actions_a[s.proposed_action], std::to_string(s.n()),
             join(s.gammas), join(s.continue_probs), join(sv.s), fmt(expected_utility_b(g, s, tb)),
             fmt(regrouped_utility_b(g, s, tb)), fmt(mc.payoff_b.mean),
             fmt(kZ99 * mc.payoff_b.std_error()), fmt(mc.welfare.mean), fmt(mc.accepted.mean),
             std::to_string(c.seed)});
  }
}

void ms_row(const std::string& label, const BilateralTradeInstance& inst, bool drop_ir, CsvWriter& csv) {
  FeasibilityOptions o;
  o.drop_ir = drop_ir;
  const FeasibilityResult f = feasibility_lp(inst, o);
  const SubsidyResult s = min_subsidy(inst, o);
  const bool has_cert = f.verdict != Verdict::kFeasible;
  csv.row({label, verdict_name(f.verdict), fmt(s.value), fmt(f.infeasibility),
           has_cert ? (f.certificate_check.valid ? "1" : "0") : "",
           has_cert ? fmt(f.certificate_check.max_violation) : ""});
}

void ms_columns(CsvWriter& csv) {
  csv.row({"grid_size", "verdict", "min_subsidy", "phase1_residual", "certificate_valid",
           "certificate_violation"});
}

void cmd_ms_refine(std::size_t k, bool drop_ir, CsvWriter& csv) {
  ms_columns(csv);
  for (std::size_t n = 2; n <= k; ++n) ms_row(std::to_string(n), uniform_grid_instance(n), drop_ir, csv);
}

void cmd_examples_sweep(const std::string& which, const std::vector<double>& params, const Common& c,
                        CsvWriter& csv) {
  if (which == "corollary") {
    csv.row({"parameter", "c_star", "SW", "PoA", "analytic_bound", "SW_half_width", "seed"});
    for (double beta : params) {
      const CorollaryBound b = corollary_bound(beta);
      const SingleOfferMonteCarlo mc = mc_single_offer(corollary_model(beta), b.gamma, c.samples, c.seed);
      csv.row({fmt(beta), fmt(b.gamma), fmt(mc.welfare.mean), fmt(mc.poa_of_sample.mean),
               fmt(b.poa_bound), fmt(mc.welfare.half_width), std::to_string(c.seed)});
    }
    return;
  }
  csv.row({"parameter", "c_star", "SW", "PoA", "analytic_bound", "mechanism_SW", "optimum"});
  for (double p : params) {
    if (which == "1b") {
      const Example1bResult r = example1b(p);
      csv.row({fmt(p), fmt(r.c_star), fmt(r.expected_sw), fmt(r.poa), fmt(model_bound(example1b_model(p))),
               fmt(r.mechanism_sw), fmt(r.optimum)});
    } else {
      const Example2Result r = example2(p);
      csv.row({fmt(p), fmt(r.c_star), fmt(r.expected_sw), fmt(r.poa), fmt(model_bound(example2_model(p))),
               fmt(r.mechanism_sw), fmt(r.optimum)});
    }
  }
}

void cmd_examples_point(const std::string& which, double param, const Common& c, CsvWriter& csv) {
  csv.row({"parameter", "c_star", "SW", "PoA", "analytic_bound", "mechanism_SW", "mc_SW",
           "mc_SW_half_width", "mc_PoA_ratio_of_means", "mc_PoA_mean_of_ratios", "mc_acceptance", "seed"});
  BargainingModel m;
  std::string c_star, sw, poa, bound, mech;
  if (which == "1b") {
    const Example1bResult r = example1b(param);
    m = example1b_model(param);
    c_star = fmt(r.c_star);
    sw = fmt(r.expected_sw);
    poa = fmt(r.poa);
    mech = fmt(r.mechanism_sw);
    bound = fmt(model_bound(m));
  } else if (which == "2") {
    const Example2Result r = example2(param);
    m = example2_model(param);
    c_star = fmt(r.c_star);
    sw = fmt(r.expected_sw);
    poa = fmt(r.poa);
    mech = fmt(r.mechanism_sw);
    bound = fmt(model_bound(m));
  } else {
    const CorollaryBound b = corollary_bound(param);
    m = corollary_model(param);
    c_star = fmt(b.gamma);
    bound = fmt(b.poa_bound);
  }
  const SingleOfferMonteCarlo mc = mc_single_offer(m, c.samples, c.seed);
  csv.row({fmt(param), c_star, sw, poa, bound, mech, fmt(mc.welfare.mean), fmt(mc.welfare.half_width),
           fmt(mc.poa_ratio_of_means), fmt(mc.poa_of_sample.mean), fmt(mc.acceptance.mean),
           std::to_string(c.seed)});
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
  sub->add_option("--samples", c.samples, "Monte Carlo samples")->capture_default_str();
  sub->add_option("--tol", c.tol, "tolerance for reported checks")->capture_default_str();
  sub->add_option("-o,--output", c.output, "write results to this file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-way games: equilibria, price of anarchy and bargaining mechanisms", "oneway"};
  app.require_subcommand(1);
  Common c;
  std::string instance, schedule_path, bilateral_path, strategy = "optimal", which, param, type_b;
  std::size_t n = 2, refine = 0;
  bool optimize = false, sweep = false, drop_ir = false;
  double from = NAN, to = NAN, step = NAN, point = NAN, p_step = 0.01;
  GeneratorConfig gen;

  auto* validate_cmd = app.add_subcommand("validate", "check an instance file");
  validate_cmd->add_option("--instance", instance, "game instance (JSON)");
  validate_cmd->add_option("--schedule", schedule_path, "schedule file, checked against --instance");
  validate_cmd->add_option("--bilateral", bilateral_path, "bilateral trade instance (JSON)");

  auto* nash_cmd = app.add_subcommand("nash", "no-payment equilibrium per type profile");
  nash_cmd->add_option("--instance", instance)->required();

  auto* poa_cmd = app.add_subcommand("poa", "price of anarchy of the no-payment equilibrium");
  poa_cmd->add_option("--instance", instance)->required();

  auto* single_cmd = app.add_subcommand("single-offer", "B's single take-it-or-leave-it offer");
  single_cmd->add_option("--instance", instance)->required();
  single_cmd->add_option("--offer-strategy", strategy)
      ->check(CLI::IsMember({"optimal", "simplified"}))
      ->capture_default_str();

  auto* multi_cmd = app.add_subcommand("multi-offer", "committed multi-offer schedules");
  multi_cmd->add_option("--instance", instance)->required();
  multi_cmd->add_option("--n", n, "number of offers")->check(CLI::Range(1, 6))->capture_default_str();
  multi_cmd->add_flag("--optimize", optimize, "search for B's best schedule");
  multi_cmd->add_option("--schedule", schedule_path, "evaluate this schedule file");
  multi_cmd->add_option("--type-b", type_b, "restrict to one B-type");
  multi_cmd->add_option("--p-step", p_step, "continuation grid step")->capture_default_str();

  auto* ms_cmd = app.add_subcommand("ms-check", "bilateral trade feasibility on discrete grids");
  ms_cmd->add_option("--refine", refine, "uniform grids of sizes 2..k on [0, 1]");
  ms_cmd->add_option("--instance", bilateral_path, "bilateral trade instance (JSON)");
  ms_cmd->add_flag("--drop-ir", drop_ir, "omit interim IR constraints");

  auto* ex_cmd = app.add_subcommand("examples", "worked examples: closed forms and Monte Carlo");
  ex_cmd->add_option("--which", which)->required()->check(CLI::IsMember({"1b", "2", "corollary"}));
  ex_cmd->add_flag("--sweep", sweep, "sweep the example parameter");
  ex_cmd->add_option("--at", point, "parameter value (x, mu1 or beta)");

  auto* gen_cmd = app.add_subcommand("gen", "random game instance");
  gen_cmd->add_option("--actions-a", gen.actions_a)->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--actions-b", gen.actions_b)->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--types-a", gen.types_a)->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--types-b", gen.types_b)->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--a-scale", gen.a_scale)->check(CLI::NonNegativeNumber)->capture_default_str();
  gen_cmd->add_option("--b-scale", gen.b_scale)->check(CLI::NonNegativeNumber)->capture_default_str();
  gen_cmd->add_option("--integer-max", gen.integer_max, "integer payoffs 0..k (0 = continuous)");
  gen_cmd->add_flag("--random-priors", gen.random_priors);

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps");
  sweep_cmd->add_option("--param", param)->required()->check(CLI::IsMember({"x", "mu1", "beta", "grid"}));
  sweep_cmd->add_flag("--drop-ir", drop_ir, "grid sweep without IR");

  for (auto* sub : {validate_cmd, nash_cmd, poa_cmd, single_cmd, multi_cmd, ms_cmd, ex_cmd, gen_cmd, sweep_cmd}) {
    add_common(sub, c);
  }
  for (auto* sub : {ex_cmd, sweep_cmd}) {
    sub->add_option("--from", from);
    sub->add_option("--to", to);
    sub->add_option("--step", step);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::ostringstream body;
  CsvWriter csv(body);
  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    RunHeader h = header(name, c);

    if (name == "validate") {
      if (instance.empty() && bilateral_path.empty()) {
        err << "validate: give --instance and/or --bilateral\n";
        return kExitUsage;
      }
      if (!instance.empty()) {
        const OneWayGame g = load_game(instance);
        body << instance << ": ok (" << g.num_actions_a() << "x" << g.num_actions_b() << " actions, "
             << g.num_types_a() << "x" << g.num_types_b() << " types)\n";
        if (!schedule_path.empty()) {
          load_schedule(schedule_path, g);
          body << schedule_path << ": ok\n";
        }
      }
      if (!bilateral_path.empty()) {
        load_bilateral(bilateral_path);
        body << bilateral_path << ": ok\n";
      }
    } else if (name == "gen") {
      gen.seed = c.seed;
      RunHeader gh;
      gh.subcommand = "gen";
      gh.add("seed", std::to_string(gen.seed));
      gh.add("actions_a", std::to_string(gen.actions_a));
      gh.add("actions_b", std::to_string(gen.actions_b));
      gh.add("types_a", std::to_string(gen.types_a));
      gh.add("types_b", std::to_string(gen.types_b));
      gh.add("a_scale", fmt(gen.a_scale));
      gh.add("b_scale", fmt(gen.b_scale));
      gh.add("integer_max", std::to_string(gen.integer_max));
      gh.add("random_priors", gen.random_priors ? "1" : "0");
      std::string meta = "{\"version\": \"" + std::string(kVersion) + "\", \"subcommand\": \"gen\", \"seed\": " +
                         std::to_string(gen.seed) + ", \"config_hash\": \"" + gh.hash_hex() + "\"}";
      body << game_to_json(generate_game(gen), meta);
    } else if (name == "nash" || name == "poa" || name == "single-offer" || name == "multi-offer") {
      const OneWayGame g = load_game(instance);
      h.add("instance", instance);
      if (name == "nash") {
        h.write(body);
        cmd_nash(g, csv);
      } else if (name == "poa") {
        h.add("poa_metrics", "bayes_nash_poa=E[opt/SW]; welfare_ratio_poa=E[opt]/E[SW]");
        h.write(body);
        cmd_poa(g, csv);
      } else if (name == "single-offer") {
        h.add("offer_strategy", strategy);
        h.write(body);
        cmd_single(g, strategy, csv);
      } else {
        const auto types = selected_types_b(g, type_b);
        h.add("n", std::to_string(n));
        if (!type_b.empty()) h.add("type_b", type_b);
        if (!schedule_path.empty()) {
          const Schedule s = load_schedule(schedule_path, g);
          h.add("schedule", schedule_path);
          h.write(body);
          cmd_multi_schedule(g, s, types, c, csv);
        } else if (optimize) {
          h.add("p_step", fmt(p_step));
          h.write(body);
          cmd_multi_optimize(g, n, types, p_step, c.tol, csv);
        } else {
          err << "multi-offer: give --optimize or --schedule\n";
          return kExitUsage;
        }
      }
    } else if (name == "ms-check") {
      if (refine == 0 && bilateral_path.empty()) {
        err << "ms-check: give --refine k or --instance\n";
        return kExitUsage;
      }
      h.add("drop_ir", drop_ir ? "1" : "0");
      if (refine > 0) {
        if (refine < 2) {
          err << "ms-check: --refine needs k >= 2\n";
          return kExitUsage;
        }
        h.add("refine", std::to_string(refine));
        h.write(body);
        cmd_ms_refine(refine, drop_ir, csv);
      } else {
        const BilateralTradeInstance inst = load_bilateral(bilateral_path);
        h.add("instance", bilateral_path);
        h.write(body);
        ms_columns(csv);
        ms_row(std::to_string(inst.seller.size()) + "x" + std::to_string(inst.buyer.size()), inst, drop_ir, csv);
      }
    } else if (name == "examples" || name == "sweep") {
      std::string w = which;
      if (name == "sweep") {
        if (param == "grid") {
          const std::size_t k = std::isnan(to) ? 20 : static_cast<std::size_t>(to);
          h.add("param", "grid");
          h.add("drop_ir", drop_ir ? "1" : "0");
          h.add("to", std::to_string(k));
          h.write(body);
          cmd_ms_refine(k, drop_ir, csv);
          sweep = false;
          w.clear();
        } else {
          w = param == "x" ? "1b" : param == "mu1" ? "2" : "corollary";
          sweep = true;
        }
      }
      if (!w.empty()) {
        h.add("which", w);
        h.add("poa_metric", w == "corollary" ? "mean_of_ratios" : "ratio_of_expectations");
        if (sweep) {
          const double f0 = w == "1b" ? 0.0 : w == "2" ? 0.0 : 0.05;
          const double t0 = w == "1b" ? 400.0 : w == "2" ? 4.0 : 1.0;
          const double s0 = w == "1b" ? 1.0 : w == "2" ? 0.01 : 0.05;
          const auto params = range(std::isnan(from) ? f0 : from, std::isnan(to) ? t0 : to,
                                    std::isnan(step) ? s0 : step);
          h.add("from", fmt(params.front()));
          h.add("to", fmt(params.back()));
          h.add("step", fmt(std::isnan(step) ? s0 : step));
          h.write(body);
          cmd_examples_sweep(w, params, c, csv);
        } else {
          const double at = !std::isnan(point) ? point : w == "1b" ? 100.0 : 1.0;
          h.add("at", fmt(at));
          h.write(body);
          cmd_examples_point(w, at, c, csv);
        }
      }
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitValidation;
  }

  if (c.output.empty()) {
    out << body.str();
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
      err << c.output << ": cannot open for writing\n";
      return kExitValidation;
    }
    f << body.str();
  }
  return kExitOk;
}

}  // namespace oneway
