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
#include "cloudshare/mechanisms.hpp"
#include "cloudshare/metrics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cloudshare {

struct GridSpec
{
  /// Value levels spread evenly over [0, 2 x truth].
  std::size_t levels{21};
  /// Joint offline grids larger than this fall back to one coordinate at a
  /// time plus uniform scaling of the whole bid vector.
  std::size_t max_joint_points{1000};
  /// Online value shapes: spread evenly, or all in the first or last slot.
  /// When false only the even spread is tried.
  bool all_shapes{true};
};

struct DeviationReport
{
  UserId      deviator{};
  Money       truthful_utility;
  Money       best_utility;
  std::string best_bid;  ///< human-readable description of the best deviation
  std::size_t evaluated{0};

  bool profitable() const
  {
    return best_utility > truthful_utility;
  }
};

/// Best unilateral misreport for `deviator` over the grid. Online mechanisms
/// are evaluated in the continuation where nobody arrives after the
/// deviator's true start. Throws DomainError for the regret baseline, which
/// takes no bids.
DeviationReport deviation_search(MechanismId mechanism, Game const &game, UserId deviator,
                                 GridSpec const &grid = {});

/// Game seen by an online mechanism when no bid arrives after `arrival`.
Game empty_future(Game const &game, UserId keep, Slot arrival);

struct SplitOutcome
{
  std::vector<Money>      factors;  ///< per identity, applied to the splitter's bids
  Money                   splitter_utility;
  std::map<UserId, Money> utilities;  ///< everyone else, true values
};

/// Runs `mechanism` with the splitter replaced by one identity per factor,
/// each bidding her true values scaled by that factor. Identities bidding
/// zero are left out. Utilities are scored against the true game with the
/// identities merged back into the splitter.
SplitOutcome evaluate_split(MechanismId mechanism, Game const &game, UserId splitter,
                            std::vector<Money> const &factors);

struct HarmReport
{
  Money                   baseline_splitter_utility;
  std::map<UserId, Money> baseline;
  std::size_t             splits_evaluated{0};
  /// Splits where some other user ends up strictly worse off.
  std::size_t harmful_splits{0};
  /// Splits that strictly help the splitter and strictly hurt someone else.
  std::size_t                 violations{0};
  std::optional<SplitOutcome> best_for_splitter;
  std::optional<SplitOutcome> first_violation;
};

/// Tries every multiset of k factors drawn from `levels` points on [0, 2].
HarmReport multi_identity_probe(MechanismId mechanism, Game const &game, UserId splitter,
                                std::size_t k, std::size_t levels = 21);

/// Shape of the small random games used by the property suites.
struct CorpusSpec
{
  GameKind      kind{GameKind::additive};
  std::uint32_t max_users{4};
  std::uint32_t max_opts{3};
  std::uint32_t max_slots{3};
  std::uint32_t max_slot_value{10};
};

/// Small random game, deterministic in (spec, seed, index). Integer per-slot
/// values keep ties frequent; costs are a random 5% to 90% of the total
/// value bid on each optimization. Every user bids on something and some
/// bid is positive.
Game corpus_game(CorpusSpec const &spec, std::uint64_t seed, std::uint64_t index);

}  // namespace cloudshare
