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


#ifndef ONEWAY_REPORT_HPP_
#define ONEWAY_REPORT_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oneway {

inline constexpr const char* kVersion = "1.0.0";

// Shortest decimal that round-trips; "inf", "-inf", "nan" otherwise.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view data);

// Header block written at the top of every CSV: version, subcommand and
// every effective option, plus a hash of the canonical option string.
struct RunHeader {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;

  void add(std::string key, std::string value) { config.emplace_back(std::move(key), std::move(value)); }
  std::string canonical() const;
  std::string hash_hex() const;
  void write(std::ostream& out) const;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

std::string join(const std::vector<double>& values, char sep = ';');

}  // namespace oneway

#endif  // ONEWAY_REPORT_HPP_
