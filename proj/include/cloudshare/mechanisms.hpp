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
#include "cloudshare/shapley.hpp"
#include "cloudshare/types.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>

namespace cloudshare {

enum class MechanismId
{
  add_off,
  add_on,
  subst_off,
  subst_on,
  regret,
  naive_first_price,  ///< pay-your-bid; not truthful, kept as a control
};

std::string_view           to_string(MechanismId id);
std::optional<MechanismId> parse_mechanism(std::string_view name);
bool                       accepts(MechanismId id, GameKind kind);
bool                       is_online(MechanismId id);

/// Mechanism output in slot terms. Offline mechanisms service a granted user
/// over her whole declared window.
struct RunResult
{
  std::set<OptId> implemented;
  ServiceSchedule schedule;
  PaymentLedger   ledger;
};

/// Runs `id` on `game`. Throws DomainError if the mechanism does not accept
/// the game kind.
RunResult run_mechanism(MechanismId id, Game const &game);

/// Implements every optimization whose bids sum to its cost; every positive
/// bidder is granted and pays exactly her bid.
AddOffResult naive_first_price(Catalog const &catalog, std::span<AdditiveOfflineBid const> bids);

/// Expands an offline outcome over the windows of `game`'s bids.
ServiceSchedule expand_outcome(Game const &game, Outcome const &outcome);

/// Maps user ids through `rename` (ids not in the map are kept), merging the
/// service and payments of users that land on the same id.
RunResult relabel(RunResult const &run, std::map<UserId, UserId> const &rename);

}  // namespace cloudshare
