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


#ifndef ONEWAY_IO_HPP_
#define ONEWAY_IO_HPP_

#include <string>

#include "oneway/bilateral.hpp"
#include "oneway/game.hpp"
#include "oneway/multi_offer.hpp"

namespace oneway {

// File or format problem. what() is a single line naming the file, the
// field and the expected shape.
class IoError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kSchemaVersion = 1;

// Parses and validates a game instance (schema version 1). Unknown keys
// are ignored, so generator metadata can ride along.
OneWayGame load_game(const std::string& path);
OneWayGame parse_game(const std::string& text, const std::string& origin);

// Pretty JSON with the optional `meta` object first.
std::string game_to_json(const OneWayGame& game, const std::string& meta_json = "");

// { "action": id, "gammas": [...], "probs": [...] }
Schedule load_schedule(const std::string& path, const OneWayGame& game);
Schedule parse_schedule(const std::string& text, const std::string& origin,
                        const OneWayGame& game);

// { "seller": {"values": [...], "probs": [...]}, "buyer": {...} }
BilateralTradeInstance load_bilateral(const std::string& path);
BilateralTradeInstance parse_bilateral(const std::string& text, const std::string& origin);

std::string read_file(const std::string& path);

}  // namespace oneway

#endif  // ONEWAY_IO_HPP_
