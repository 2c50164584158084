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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cloudshare::harness {

struct PropertyCheck
{
  PropertyCheck() = default;
  explicit PropertyCheck(std::string property)
    : name(std::move(property))
  {}

  std::string              name;
  std::size_t              checked{0};
  std::size_t              violations{0};
  std::vector<std::string> witnesses;  ///< first few offending cases, replayable

  void pass()
  {
    ++checked;
  }
  void fail(std::string witness);
  /// Records one case; `ok` false counts a violation. `describe` is only
  /// called on failure.
  template <typename Describe>
  void expect(bool ok, Describe const &describe)
  {
    if (ok)
    {
      pass();
    }
    else
    {
      fail(describe());
    }
  }

  bool passed() const
  {
    return violations == 0;
  }
};

enum class Suite
{
  cost_recovery,
  truthfulness,
  multi_identity,
  degeneration,
  dominance,
  golden_examples,
};

std::string_view     to_string(Suite suite);
std::optional<Suite> parse_suite(std::string_view name);
std::uint64_t        default_games(Suite suite);

struct VerifyOptions
{
  std::uint64_t seed{1};
  std::uint64_t games{0};  ///< 0 picks default_games(suite)
  /// Truthfulness only: also test the pay-your-bid control as if it were
  /// meant to be truthful.
  bool inject_naive{false};
};

struct VerifyReport
{
  std::string                suite;
  std::vector<PropertyCheck> properties;

  bool                 passed() const;
  PropertyCheck const &property(std::string_view name) const;
};

VerifyReport run_suite(Suite suite, VerifyOptions const &options = {});

/// One line per property, then witnesses for the failing ones.
std::string format_report(VerifyReport const &report);

/// Game plus a short note, as a single JSON line.
std::string witness(Game const &game, std::string const &note);

}  // namespace cloudshare::harness
