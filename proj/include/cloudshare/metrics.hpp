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
#include "cloudshare/types.hpp"

#include <map>
#include <set>
#include <span>

namespace cloudshare {

struct Metrics
{
  Money                   total_value;  ///< true value realized over serviced user-slots
  Money                   total_cost;
  Money                   total_utility;  ///< total_value - total_cost
  Money                   cloud_balance;  ///< payments - costs
  std::map<UserId, Money> per_user_utility;

  friend bool operator==(Metrics const &, Metrics const &) = default;
};

/// Scores a mechanism's schedule and payments against the true values in
/// `truth`. Throws DomainError for users that are not part of the game.
Metrics score(Game const &truth, ServiceSchedule const &schedule, PaymentLedger const &payments,
              std::set<OptId> const &implemented);

inline Metrics score(Game const &truth, RunResult const &run)
{
  return score(truth, run.schedule, run.ledger, run.implemented);
}

/// Offline scoring: a grant realizes the user's full value for it.
Metrics score_offline(Catalog const &catalog, std::span<AdditiveOfflineBid const> truth,
                      Outcome const &outcome, PaymentLedger const &payments);

/// A user granted any optimization from her substitute set realizes v_i once.
Metrics score_offline(Catalog const &catalog, std::span<SubstitutableOfflineBid const> truth,
                      Outcome const &outcome, PaymentLedger const &payments);

}  // namespace cloudshare
