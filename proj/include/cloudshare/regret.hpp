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
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace cloudshare {

struct PostedPrice
{
  Money price;
  Money loss;  ///< max(cost - price * buyers, 0)
};

/// Smallest price minimizing max(cost - p * |{r >= p}|, 0) over p >= 0.
///
/// The optimum is either the smallest price that exactly recovers the cost
/// (cost / k for the largest buyer count k that can afford it) or, when no
/// price recovers the cost, the residual value that maximizes revenue.
PostedPrice optimal_posted_price(Money const &cost, std::span<Money const> residuals);

struct RegretTrace
{
  /// R_j(t) for t = 1..z (index t - 1), value accumulated strictly before t.
  std::map<OptId, std::vector<Money>> regret_series;
  std::map<OptId, std::optional<Slot>> implement_slot;
  std::map<OptId, Money>               posted_price;
  std::set<OptId>                      implemented;
  ServiceSchedule                      serviced;
  PaymentLedger                        ledger;
  std::map<UserId, Money>              payments;  ///< every bidder, summed over optimizations
  Money                                cloud_balance;  ///< payments - costs
};

/// Regret-accumulation baseline fed with true values and perfect knowledge of
/// the future: an optimization is implemented at the first slot where its
/// accumulated regret reaches its cost; users active at that slot get it for
/// free, later access is sold at one loss-minimizing posted price.
RegretTrace regret_run(Catalog const &catalog, SlotHorizon horizon,
                       std::span<AdditiveOnlineBid const> values);

/// Substitutable variant: a user served by one optimization stops adding
/// regret to the others.
RegretTrace regret_run(Catalog const &catalog, SlotHorizon horizon,
                       std::span<SubstitutableOnlineBid const> values);

}  // namespace cloudshare
