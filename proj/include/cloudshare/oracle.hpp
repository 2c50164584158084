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

#include <cstdint>
#include <span>

namespace cloudshare {

/// Enumeration limit on users x optimizations.
inline constexpr std::size_t kMaxGrantPairs = 20;

struct EfficientOutcome
{
  Outcome       outcome;
  Money         utility;  ///< sum of granted values minus implemented costs
  std::uint64_t alternatives{0};
};

/// Exhaustive search for the outcome maximizing bid value minus cost.
/// Throws GuardError above kMaxGrantPairs grant pairs.
EfficientOutcome efficient_outcome(Catalog const &catalog, std::span<AdditiveOfflineBid const> bids);

/// Substitutable variant: each user holds at most one grant, from her set.
EfficientOutcome efficient_outcome(Catalog const &catalog,
                                   std::span<SubstitutableOfflineBid const> bids);

}  // namespace cloudshare
