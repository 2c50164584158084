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

#include <optional>
#include <string>

namespace cloudshare {

/// Bid value a user assigns to an outcome: sum of b_ij over the user's grants.
Money value_of_outcome(AdditiveOfflineBid const &bid, Outcome const &outcome);

/// Sum of C_j over implemented optimizations. Throws CatalogMismatch.
Money cost_of_outcome(Catalog const &catalog, Outcome const &outcome);

enum class RevisionFault
{
  user_or_opt_changed,
  start_changed,
  shrunk_end,
  retroactive_change,
  downward,
};

struct RevisionViolation
{
  RevisionFault fault;
  Slot          slot{0};  ///< offending slot, 0 when the fault is not slot-specific

  std::string describe() const;
};

/// Checks that `revised` is a legal update of `old` at slot `now`: same
/// start, end never shrinks, past slots untouched, future slots only raised.
std::optional<RevisionViolation> validate_revision(AdditiveOnlineBid const &old,
                                                   AdditiveOnlineBid const &revised, Slot now);

/// Every grant (i, j) must have j implemented. Returns a description of the
/// first violation, or nothing.
std::optional<std::string> check_outcome(Outcome const &outcome);

/// CS_j(t) = union of S_j(tau <= t) for every recorded optimization.
std::optional<std::string> check_schedule(ServiceSchedule const &schedule);

}  // namespace cloudshare
