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

#include <cstdint>
#include <optional>
#include <string_view>

namespace cloudshare {

enum class Family
{
  collab_size,
  overlap_slots,
  duration_spread,
  arrival_skew,
  selectivity,
  usecase_shape,
};

enum class Skew
{
  uniform,
  early,
  late,
};

std::string_view        to_string(Family family);
std::string_view        to_string(Skew skew);
std::optional<Family>   parse_family(std::string_view name);
std::optional<Skew>     parse_skew(std::string_view name);

/// Seeded description of one simulated experiment family.
struct ScenarioSpec
{
  Family        family{Family::collab_size};
  std::uint32_t users{6};
  std::uint32_t slots{12};
  std::uint32_t opt_count{1};
  /// Per-optimization cost; the mean cost for selectivity.
  Money         cost{Money::from_fraction(1, 2)};
  std::uint32_t substitutes_per_user{1};
  std::uint32_t duration{1};
  Skew          skew{Skew::uniform};
  std::uint64_t seed{0};
  std::uint64_t trials{1};
  /// usecase_shape only: workload executions per slot.
  std::uint32_t executions{1};

  friend bool operator==(ScenarioSpec const &, ScenarioSpec const &) = default;
};

/// Game kind a family produces.
GameKind kind_of(Family family);

/// Throws ConfigError with a field path ("scenario.users", ...).
void validate(ScenarioSpec const &spec);

/// Deterministic in (spec, trial). Random draws do not depend on the cost,
/// so sweeping the cost reuses the same users and relative costs.
Game generate(ScenarioSpec const &spec, std::uint64_t trial);

}  // namespace cloudshare
