//------------------------------------------------------------------------------
//
//   Copyright 2026 The cloudshare Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include "cloudshare/game.hpp"
#include "cloudshare/money.hpp"
#include "cloudshare/scenarios.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace cloudshare::harness {

inline constexpr int kSchemaVersion = 1;

/// Exact text for an amount: a plain decimal when one exists, "n/d" otherwise.
std::string money_text(Money const &m);

/// Accepts decimal strings, "n/d" strings and JSON integers. Throws
/// ConfigError naming `field`.
Money money_from_json(nlohmann::json const &value, std::string const &field);

nlohmann::json game_to_json(Game const &game);

/// Parses and validates a game file body. Errors carry dotted field paths
/// such as "bids[2].values[0]".
Game game_from_json(nlohmann::json const &doc);

Game load_game(std::filesystem::path const &path);

nlohmann::json scenario_to_json(ScenarioSpec const &spec);

/// Missing fields keep their ScenarioSpec defaults; unknown keys are errors.
ScenarioSpec scenario_from_json(nlohmann::json const &doc, std::string const &prefix = "scenario");

/// Reads a whole file as JSON. Throws ConfigError on I/O or syntax errors.
nlohmann::json read_json_file(std::filesystem::path const &path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(std::filesystem::path const &path, std::string const &content);

}  // namespace cloudshare::harness
