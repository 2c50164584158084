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

#include "cloudshare/types.hpp"

#include <map>
#include <span>
#include <vector>

namespace cloudshare {

struct UserBid
{
  UserId   user{};
  BidValue bid;
};

/// Result of one Shapley value run for a single optimization.
struct ShapleyResult
{
  std::vector<UserId> serviced;  ///< sorted
  Money               share;     ///< cost / |serviced|; zero when nobody is serviced
  std::size_t         rounds{0};

  bool implemented() const
  {
    return !serviced.empty();
  }
  bool is_serviced(UserId user) const;
  /// p_ij: the share for serviced users, 0 for everyone else.
  Money payment(UserId user) const;
};

/// Shapley value cost-sharing mechanism for one optimization.
///
/// Starts from every bidder and repeatedly evicts users whose bid is below the
/// even split cost/|S| until the set is stable or empty. A bid equal to the
/// share is kept. Infinite bids are never evicted. Throws DomainError for a
/// non-positive cost or duplicate users.
ShapleyResult shapley(Money const &cost, std::span<UserBid const> bids);

struct AddOffResult
{
  Outcome                        outcome;
  PaymentLedger                  payments;
  std::map<OptId, ShapleyResult> runs;
};

/// Offline additive mechanism: an independent Shapley run per optimization.
AddOffResult add_off(Catalog const &catalog, std::span<AdditiveOfflineBid const> bids);

}  // namespace cloudshare
