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


#include "oneway/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace oneway {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& field, const std::string& msg) {
  throw IoError(origin + ": field '" + field + "': " + msg);
}

const json& need(const json& obj, const std::string& key, const std::string& origin,
                 const std::string& shape) {
  if (!obj.is_object() || !obj.contains(key)) fail(origin, key, "missing, expected " + shape);
  return obj.at(key);
}

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(origin + ": not valid JSON (" + std::string(e.what()) + ")");
  }
}

double number(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_number()) fail(origin, field, "expected a number, got " + std::string(v.type_name()));
  return v.get<double>();
}

std::vector<std::string> id_list(const json& root, const std::string& key, const std::string& origin) {
  const json& arr = need(root, key, origin, "array of identifiers");
  if (!arr.is_array()) fail(origin, key, "expected array of identifiers");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      out.push_back(std::to_string(v.get<long long>()));
    } else {
      fail(origin, key, "expected array of identifiers (strings)");
    }
  }
  return out;
}

std::vector<TypeInfo> type_list(const json& root, const std::string& key, const std::string& origin) {
  const json& arr = need(root, key, origin, "array of {\"id\", \"prob\"}");
  if (!arr.is_array()) fail(origin, key, "expected array of {\"id\", \"prob\"}");
  std::vector<TypeInfo> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& t = arr[i];
    const std::string f = key + "[" + std::to_string(i) + "]";
    if (!t.is_object() || !t.contains("id") || !t.contains("prob")) {
      fail(origin, f, "expected {\"id\", \"prob\"}");
    }
    const json& id = t.at("id");
    out.push_back({id.is_string() ? id.get<std::string>() : id.dump(), number(t.at("prob"), origin, f + ".prob")});
  }
  return out;
}

void expect_len(const json& v, std::size_t n, const std::string& origin, const std::string& field,
                const std::string& axis) {
  if (!v.is_array()) fail(origin, field, "expected array over axis " + axis);
  if (v.size() != n) {
    fail(origin, field, "axis " + axis + " has " + std::to_string(v.size()) + " entries, expected " +
                            std::to_string(n));
  }
}

std::vector<double> number_list(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_array()) fail(origin, field, "expected array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], origin, field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OneWayGame parse_game(const std::string& text, const std::string& origin) {
  const json root = parse_text(text, origin);
  if (!root.is_object()) throw IoError(origin + ": expected a JSON object at top level");
  const json& version = need(root, "version", origin, "integer 1");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    fail(origin, "version", "unsupported, expected " + std::to_string(kSchemaVersion));
  }
  OneWayGame g;
  g.actions_a = id_list(root, "actions_A", origin);
  g.actions_b = id_list(root, "actions_B", origin);
  g.types_a = type_list(root, "types_A", origin);
  g.types_b = type_list(root, "types_B", origin);

  const json& pa = need(root, "payoff_A", origin, "array [theta_A][s_A]");
  expect_len(pa, g.num_types_a(), origin, "payoff_A", "theta_A");
  for (std::size_t t = 0; t < pa.size(); ++t) {
    const std::string f = "payoff_A[" + std::to_string(t) + "]";
    expect_len(pa[t], g.num_actions_a(), origin, f, "s_A");
    g.payoff_a.push_back(number_list(pa[t], origin, f));
  }
  const json& pb = need(root, "payoff_B", origin, "array [theta_B][s_A][s_B]");
  expect_len(pb, g.num_types_b(), origin, "payoff_B", "theta_B");
  for (std::size_t t = 0; t < pb.size(); ++t) {
    const std::string f = "payoff_B[" + std::to_string(t) + "]";
    expect_len(pb[t], g.num_actions_a(), origin, f, "s_A");
    std::vector<std::vector<double>> table;
    for (std::size_t a = 0; a < pb[t].size(); ++a) {
      const std::string fa = f + "[" + std::to_string(a) + "]";
      expect_len(pb[t][a], g.num_actions_b(), origin, fa, "s_B");
      table.push_back(number_list(pb[t][a], origin, fa));
    }
    g.payoff_b.push_back(std::move(table));
  }
  const auto errors = validate(g);
  if (!errors.empty()) {
    std::string msg = origin + ": invalid game:";
    for (const auto& e : errors) msg += " " + e + ";";
    throw IoError(msg);
  }
  return g;
}

OneWayGame load_game(const std::string& path) { return parse_game(read_file(path), path); }

std::string game_to_json(const OneWayGame& g, const std::string& meta_json) {
  ordered_json root;
  if (!meta_json.empty()) root["meta"] = ordered_json::parse(meta_json);
  root["version"] = kSchemaVersion;
  root["actions_A"] = g.actions_a;
  root["actions_B"] = g.actions_b;
  for (const char* key : {"types_A", "types_B"}) {
    const auto& types = std::string(key) == "types_A" ? g.types_a : g.types_b;
    ordered_json arr = ordered_json::array();
    for (const auto& t : types) arr.push_back({{"id", t.id}, {"prob", t.prob}});
    root[key] = arr;
  }
  root["payoff_A"] = g.payoff_a;
  root["payoff_B"] = g.payoff_b;
  return root.dump(2) + "\n";
}

Schedule parse_schedule(const std::string& text, const std::string& origin, const OneWayGame& game) {
  const json root = parse_text(text, origin);
  const json& action = need(root, "action", origin, "action identifier");
  Schedule s;
  try {
    s.proposed_action = action_a_index(game, action.is_string() ? action.get<std::string>() : action.dump());
  } catch (const Error& e) {
    fail(origin, "action", e.what());
  }
  s.gammas = number_list(need(root, "gammas", origin, "array of numbers"), origin, "gammas");
  s.continue_probs = number_list(need(root, "probs", origin, "array of numbers"), origin, "probs");
  if (s.gammas.size() != s.continue_probs.size()) {
    fail(origin, "probs", "has " + std::to_string(s.continue_probs.size()) + " entries, expected " +
                              std::to_string(s.gammas.size()) + " (one per gamma)");
  }
  try {
    validate_schedule(s);
  } catch (const Error& e) {
    throw IoError(origin + ": invalid schedule: " + e.what());
  }
  return s;
}

Schedule load_schedule(const std::string& path, const OneWayGame& game) {
  return parse_schedule(read_file(path), path, game);
}

BilateralTradeInstance parse_bilateral(const std::string& text, const std::string& origin) {
  const json root = parse_text(text, origin);
  BilateralTradeInstance inst;
  for (const char* side : {"seller", "buyer"}) {
    const json& obj = need(root, side, origin, "{\"values\": [...], \"probs\": [...]}");
    const std::string s = side;
    ValueGrid g;
    g.values = number_list(need(obj, "values", origin, "array of numbers"), origin, s + ".values");
    g.probs = number_list(need(obj, "probs", origin, "array of numbers"), origin, s + ".probs");
    if (g.values.size() != g.probs.size()) {
      fail(origin, s + ".probs", "has " + std::to_string(g.probs.size()) + " entries, expected " +
                                     std::to_string(g.values.size()));
    }
    (s == "seller" ? inst.seller : inst.buyer) = std::move(g);
  }
  const auto errors = validate_instance(inst);
  if (!errors.empty()) {
    std::string msg = origin + ": invalid bilateral instance:";
    for (const auto& e : errors) msg += " " + e + ";";
    throw IoError(msg);
  }
  return inst;
}

BilateralTradeInstance load_bilateral(const std::string& path) {
  return parse_bilateral(read_file(path), path);
}

}  // namespace oneway
