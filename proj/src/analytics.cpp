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


#include "oneway/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oneway/random.hpp"

namespace oneway {

ContinuousSpec ContinuousSpec::uniform(double lo, double hi) {
  if (!(lo < hi)) throw Error("uniform spec needs a < b");
  ContinuousSpec s;
  s.kind = Kind::kUniform;
  s.a = lo;
  s.b = hi;
  return s;
}

ContinuousSpec ContinuousSpec::power(double beta, double scale) {
  if (!(beta > 0.0 && beta <= 1.0)) throw Error("power spec needs 0 < beta <= 1");
  if (!(scale > 0.0)) throw Error("power spec needs scale > 0");
  ContinuousSpec s;
  s.kind = Kind::kPower;
  s.beta = beta;
  s.scale = scale;
  return s;
}

ContinuousSpec ContinuousSpec::degenerate(double v) {
  ContinuousSpec s;
  s.kind = Kind::kDegenerate;
  s.a = s.b = v;
  return s;
}

double ContinuousSpec::cdf(double x) const {
  switch (kind) {
    case Kind::kUniform: return std::clamp((x - a) / (b - a), 0.0, 1.0);
    case Kind::kPower: return x <= 0.0 ? 0.0 : x >= scale ? 1.0 : std::pow(x / scale, beta);
    case Kind::kDegenerate: return x >= a ? 1.0 : 0.0;
  }
  return 0.0;
}

double ContinuousSpec::quantile(double u) const {
  switch (kind) {
    case Kind::kUniform: return a + (b - a) * u;
    case Kind::kPower: return scale * std::pow(u, 1.0 / beta);
    case Kind::kDegenerate: return a;
  }
  return 0.0;
}

double ContinuousSpec::lower() const { return kind == Kind::kPower ? 0.0 : a; }
double ContinuousSpec::upper() const { return kind == Kind::kPower ? scale : b; }

BargainingModel example1b_model(double x) {
  return {ContinuousSpec::uniform(0.0, 100.0), 100.0, x, 0.0};
}

BargainingModel example2_model(double mu1) {
  return {ContinuousSpec::uniform(0.0, 1.0), 1.0, mu1, 0.0};
}

BargainingModel corollary_model(double beta) {
  return {ContinuousSpec::power(beta, 1.0), 1.0, 1.0, 0.0};
}

double optimal_gamma(const BargainingModel& model) {
  const double db = model.delta_b();
  if (!(db > 0.0)) return 0.0;
  const ContinuousSpec& f = model.loss;
  if (f.kind == ContinuousSpec::Kind::kPower && std::abs(f.scale - db) <= 1e-12 * db) {
    return f.beta / (f.beta + 1.0);
  }
  if (f.kind == ContinuousSpec::Kind::kUniform && f.a == 0.0) {
    return db <= 2.0 * f.b ? 0.5 : f.b / db;
  }
  auto value = [&](double g) { return f.cdf(g * db) * (1.0 - g); };
  constexpr int kGrid = 10000;
  int best = 0;
  for (int i = 1; i <= kGrid; ++i) {
    if (value(static_cast<double>(i) / kGrid) > value(static_cast<double>(best) / kGrid)) best = i;
  }
  double lo = std::max(0, best - 1) / static_cast<double>(kGrid);
  double hi = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double m1 = hi - r * (hi - lo);
    const double m2 = lo + r * (hi - lo);
    if (value(m1) < value(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double g = 0.5 * (lo + hi);
  return value(g) >= value(static_cast<double>(best) / kGrid) ? g : static_cast<double>(best) / kGrid;
}

Example1bResult example1b(double x) {
  if (!(x >= 0.0)) throw Error("example 1b needs x >= 0");
  Example1bResult r;
  r.x = x;
  r.c_star = x <= 200.0 ? x / 2.0 : 100.0;
  r.expected_sw = x <= 200.0 ? 100.0 + x * (x / 200.0 - 0.25) : 50.0 + x;
  r.optimum = x >= 50.0 ? 50.0 + x : 100.0;
  if (x <= 50.0) {
    r.poa = 100.0 / r.expected_sw;
  } else if (x <= 200.0) {
    r.poa = (50.0 + x) / r.expected_sw;
  } else {
    r.poa = (50.0 + x) / (50.0 + x);
  }
  // Accepting types have u_A(s1) uniform on [100 - c, 100].
  r.mechanism_sw = 100.0 + (r.c_star / 100.0) * (x - r.c_star / 2.0);
  r.nash_poa = r.optimum / 100.0;
  return r;
}

Example2Result example2(double mu1) {
  if (!(mu1 >= 0.0)) throw Error("example 2 needs mu1 >= 0");
  Example2Result r;
  r.mu1 = mu1;
  r.c_star = mu1 <= 2.0 ? mu1 / 2.0 : 1.0;
  const double c = r.c_star;
  r.expected_sw = c * (mu1 + 0.5) + (1.0 - c) * (0.0 + 1.0);
  r.optimum = mu1 >= 0.5 ? 0.5 + mu1 : 1.0;
  const double denom = (mu1 / 2.0) * (mu1 + 0.5) + (1.0 - mu1 / 2.0);
  if (mu1 <= 0.5) {
    r.poa = 1.0 / denom;
  } else if (mu1 <= 2.0) {
    r.poa = (0.5 + mu1) / denom;
  } else {
    r.poa = 1.0;
  }
  r.mechanism_sw = c * (mu1 + 1.0 - c / 2.0) + (1.0 - c);
  return r;
}

Argmax example2_max_poa() {
  double lo = 0.5;
  double hi = 2.0;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double m1 = hi - r * (hi - lo);
    const double m2 = lo + r * (hi - lo);
    if (example2(m1).poa < example2(m2).poa) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double arg = 0.5 * (lo + hi);
  return {arg, example2(arg).poa};
}

double expected_max_uniform(std::size_t n) {
  if (n == 0) throw Error("expected_max_uniform needs n >= 1");
  return static_cast<double>(n) / static_cast<double>(n + 1);
}

double acceptance_prob_example2(double c, double n) {
  if (!(c >= 0.0 && c <= 1.0)) throw Error("acceptance_prob_example2 needs 0 <= c <= 1");
  if (!(n >= 2.0)) throw Error("acceptance_prob_example2 needs n >= 2");
  return (c * n - std::pow(c, n)) / (n - 1.0);
}

namespace {

Estimate summarize(const MeanAccumulator& acc) {
  return {acc.mean, kZ99 * acc.std_error(), acc.count};
}

struct OfferAccumulators {
  MeanAccumulator pa, pb, sw, opt, acc, ratio;
  void merge(const OfferAccumulators& o) {
    pa.merge(o.pa);
    pb.merge(o.pb);
    sw.merge(o.sw);
    opt.merge(o.opt);
    acc.merge(o.acc);
    ratio.merge(o.ratio);
  }
};

constexpr std::uint64_t kBlock = 1u << 14;

}  // namespace

Estimate mc_expected_max_uniform(std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  const auto acc = parallel_blocks<MeanAccumulator>(
      samples, kBlock, [&](std::uint64_t begin, std::uint64_t end) {
        MeanAccumulator part;
        for (std::uint64_t r = begin; r < end; ++r) {
          CounterRng rng(seed, r);
          double m = 0.0;
          for (std::size_t i = 0; i < n; ++i) m = std::max(m, rng.uniform());
          part.add(m);
        }
        return part;
      });
  return summarize(acc);
}

SingleOfferMonteCarlo mc_single_offer(const BargainingModel& model, double gamma,
                                      std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error("mc_single_offer needs samples >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error("gamma outside [0, 1]");
  const double db = model.delta_b();
  const double pay = gamma * db;
  const double d = model.default_payoff_a;
  const auto acc = parallel_blocks<OfferAccumulators>(
      samples, kBlock, [&](std::uint64_t begin, std::uint64_t end) {
        OfferAccumulators part;
        for (std::uint64_t r = begin; r < end; ++r) {
          CounterRng rng(seed, r);
          const double loss = model.loss.quantile(rng.uniform());
          const bool accept = loss <= pay;
          const double sw_accept = d - loss + model.payoff_b_accept;
          const double sw_reject = d + model.payoff_b_reject;
          const double sw = accept ? sw_accept : sw_reject;
          const double opt = std::max(sw_accept, sw_reject);
          part.pa.add(accept ? d - loss + pay : d);
          part.pb.add(accept ? model.payoff_b_accept - pay : model.payoff_b_reject);
          part.sw.add(sw);
          part.opt.add(opt);
          part.acc.add(accept ? 1.0 : 0.0);
          part.ratio.add(sw > 0.0 ? opt / sw : 1.0);
        }
        return part;
      });
  SingleOfferMonteCarlo out;
  out.seed = seed;
  out.gamma = gamma;
  out.payoff_a = summarize(acc.pa);
  out.payoff_b = summarize(acc.pb);
  out.welfare = summarize(acc.sw);
  out.optimum = summarize(acc.opt);
  out.acceptance = summarize(acc.acc);
  out.poa_of_sample = summarize(acc.ratio);
  out.poa_ratio_of_means = acc.opt.mean / acc.sw.mean;
  return out;
}

SingleOfferMonteCarlo mc_single_offer(const BargainingModel& model, std::uint64_t samples,
                                      std::uint64_t seed) {
  return mc_single_offer(model, optimal_gamma(model), samples, seed);
}

DiscreteDistribution discretize(const ContinuousSpec& spec, std::size_t k) {
  if (k < 2) throw Error("discretize needs k >= 2");
  DiscreteDistribution out;
  for (std::size_t i = 0; i < k; ++i) {
    out.values.push_back(spec.quantile((static_cast<double>(i) + 0.5) / static_cast<double>(k)));
    out.weights.push_back(1.0 / static_cast<double>(k));
  }
  return out;
}

OneWayGame bargaining_game(const BargainingModel& model, std::size_t k) {
  const DiscreteDistribution dist = discretize(model.loss, k);
  OneWayGame g;
  g.actions_a = {"comply", "default"};
  g.actions_b = {"b"};
  for (std::size_t i = 0; i < k; ++i) {
    g.types_a.push_back({"loss_" + std::to_string(i), dist.weights[i]});
    g.payoff_a.push_back({model.default_payoff_a - dist.values[i], model.default_payoff_a});
  }
  g.types_b.push_back({"b", 1.0});
  g.payoff_b.push_back({{model.payoff_b_accept}, {model.payoff_b_reject}});
  return g;
}

}  // namespace oneway
