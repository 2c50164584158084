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

#include "cloudshare/shapley.hpp"
#include "cloudshare/types.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace cloudshare {

/// One optimization over a slot horizon; multi-optimization additive games
/// are run as one game per optimization.
struct OnlineAdditiveGame
{
  Optimization                   optimization;
  SlotHorizon                    horizon;
  std::vector<AdditiveOnlineBid> bids;
};

struct OnlineTrace
{
  ServiceSchedule schedule;
  /// Every bidder appears; users never in CS pay 0.
  std::map<UserId, Money> payments;
  /// C_j / |CS_j(t)| for slots where the cumulative set is non-empty.
  std::vector<std::optional<Money>> share_history;
  /// Slot at which each user's payment was fixed (its final end slot).
  std::map<UserId, Slot> charged_at;
};

/// Slot-by-slot driver for the online additive mechanism.
///
/// Each slot re-runs the Shapley mechanism on residual bids, with users
/// already in the cumulative serviced set pinned at an infinite bid. Users
/// pay the current share when their bid expires. Bids may be submitted ahead
/// of their start slot and revised upward while active.
class OnlineSession
{
public:
  struct StepResult
  {
    std::vector<UserId>                     serviced;
    std::vector<std::pair<UserId, Money>>   departures;
  };

  OnlineSession(Optimization optimization, SlotHorizon horizon);

  /// Accepts new or revised bids, then processes every slot up to `slot`.
  /// Throws SequencingError unless `slot` is after the last processed slot,
  /// RevisionError for retroactive bids or illegal revisions.
  StepResult step(Slot slot, std::span<AdditiveOnlineBid const> bids = {});

  /// Processes the remaining slots and returns the full trace.
  OnlineTrace const &finish();

  OnlineTrace const &trace() const
  {
    return trace_;
  }
  Slot last_slot() const
  {
    return last_slot_;
  }
  std::vector<UserId> const &cumulative() const
  {
    return cumulative_;
  }

private:
  /// Validates a new or revised bid submitted at slot `now`; throws on violation.
  void       accept(AdditiveOnlineBid const &bid, Slot now) const;
  StepResult advance(Slot t);

  Optimization                        optimization_;
  SlotHorizon                         horizon_;
  std::map<UserId, AdditiveOnlineBid> bids_;
  std::vector<UserId>                 cumulative_;
  Slot                                last_slot_{0};
  OnlineTrace                         trace_;
};

/// Online additive mechanism over a whole game (all bids known up front).
OnlineTrace add_on(OnlineAdditiveGame const &game);

}  // namespace cloudshare
