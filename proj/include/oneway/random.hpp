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

#ifndef ONEWAY_RANDOM_HPP_
#define ONEWAY_RANDOM_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace oneway {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: draw k of stream s under master seed m is a pure
// function of (m, s, k), so runs can be evaluated in any order or in
// parallel and still reproduce bit for bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed + 0x9e3779b97f4a7c15ULL * (mix64(stream) | 1ULL))) {}

  std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Worker count: ONEWAY_THREADS when set and positive, else hardware threads.
inline unsigned worker_count() {
  if (const char* env = std::getenv("ONEWAY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Mergeable mean/variance accumulator.
struct MeanAccumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  void merge(const MeanAccumulator& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / n;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

// Runs `body(begin, end)` over fixed-size blocks of [0, n) on worker
// threads and merges the per-block results pairwise in block order. The
// result depends only on n and block_size, never on the thread count.
template <typename Acc, typename Body>
Acc parallel_blocks(std::uint64_t n, std::uint64_t block_size, Body body) {
  const std::uint64_t blocks = n == 0 ? 0 : (n + block_size - 1) / block_size;
  std::vector<Acc> partial(blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      const std::uint64_t begin = b * block_size;
      partial[b] = body(begin, std::min(n, begin + block_size));
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(blocks, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (blocks == 0) return Acc{};
  for (std::uint64_t stride = 1; stride < blocks; stride *= 2) {
    for (std::uint64_t i = 0; i + stride < blocks; i += 2 * stride) {
      partial[i].merge(partial[i + stride]);
    }
  }
  return partial[0];
}

}  // namespace oneway

#endif  // ONEWAY_RANDOM_HPP_
