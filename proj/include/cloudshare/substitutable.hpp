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
#include <set>
#include <span>
#include <vector>

namespace cloudshare {

/// One phase of the offline substitutable mechanism.
struct SubstPhase
{
  OptId               opt{};
  std::vector<UserId> serviced;
  Money               share;
  /// Optimizations that tied for the lowest share; the lowest id is taken.
  std::vector<OptId> tied;

  bool had_tie() const
  {
    return tied.size() > 1;
  }
};

struct SubstOffResult
{
  Outcome                 outcome;
  PaymentLedger           payments;
  std::vector<SubstPhase> phases;

  /// Optimization granted to `user`, if any.
  std::optional<OptId> granted(UserId user) const;
};

/// Per-optimization bids of one user, as fed to the phase loop. Used
/// directly by the online mechanism, which pins users with infinite bids.
struct EffectiveSubstBid
{
  UserId                                  user{};
  std::vector<std::pair<OptId, BidValue>> values;  ///< one entry per optimization bid on
};

/// Offline substitutable mechanism: repeatedly implements the feasible
/// optimization with the smallest Shapley share among users not yet
/// serviced, until no optimization is feasible.
SubstOffResult subst_off(Catalog const &catalog, std::span<SubstitutableOfflineBid const> bids);

SubstOffResult subst_off(Catalog const &catalog, std::span<EffectiveSubstBid const> bids);

struct SubstOnResult
{
  ServiceSchedule         schedule;
  std::map<UserId, Money> payments;      ///< every bidder; 0 when never granted
  PaymentLedger           ledger;        ///< (user, granted optimization) -> payment
  std::map<UserId, OptId> assignment;    ///< optimization each user is locked to
  std::set<OptId>         implemented;
};

/// Online substitutable mechanism: the offline mechanism re-run every slot
/// on residual bids; a granted user is pinned to her optimization with an
/// infinite bid and zero on every other one, so she never switches.
SubstOnResult subst_on(Catalog const &catalog, SlotHorizon horizon,
                       std::span<SubstitutableOnlineBid const> bids);

}  // namespace cloudshare
