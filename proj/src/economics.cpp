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

#include "cloudshare/economics.hpp"

#include <algorithm>
#include <iterator>

namespace cloudshare {

Money value_of_outcome(AdditiveOfflineBid const &bid, Outcome const &outcome)
{
  Money total;
  for (auto const &[user, opt] : outcome.grants)
  {
    if (user == bid.user)
    {
      total += bid.value_for(opt);
    }
  }
  return total;
}

Money cost_of_outcome(Catalog const &catalog, Outcome const &outcome)
{
  Money total;
  for (OptId j : outcome.implemented)
  {
    total += catalog.cost(j);
  }
  return total;
}

std::string RevisionViolation::describe() const
{
  std::string what;
  switch (fault)
  {
  case RevisionFault::user_or_opt_changed:
    what = "revision targets a different user or optimization";
    break;
  case RevisionFault::start_changed:
    what = "start slot cannot change";
    break;
  case RevisionFault::shrunk_end:
    what = "end slot cannot decrease";
    break;
  case RevisionFault::retroactive_change:
    what = "retroactive change";
    break;
  case RevisionFault::downward:
    what = "downward revision";
    break;
  }
  if (slot != 0)
  {
    what += " at slot " + std::to_string(slot);
  }
  return what;
}

std::optional<RevisionViolation> validate_revision(AdditiveOnlineBid const &old,
                                                   AdditiveOnlineBid const &revised, Slot now)
{
  if (old.user != revised.user || old.opt != revised.opt)
  {
    return RevisionViolation{RevisionFault::user_or_opt_changed};
  }
  if (old.start != revised.start)
  {
    return RevisionViolation{RevisionFault::start_changed};
  }
  if (revised.end < old.end)
  {
    return RevisionViolation{RevisionFault::shrunk_end, revised.end};
  }
  for (Slot t = old.start; t <= revised.end; ++t)
  {
    Money before = old.value_at(t);
    Money after  = revised.value_at(t);
    if (t < now)
    {
      if (before != after)
      {
        return RevisionViolation{RevisionFault::retroactive_change, t};
      }
    }
    else if (after < before)
    {
      return RevisionViolation{RevisionFault::downward, t};
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_outcome(Outcome const &outcome)
{
  for (auto const &[user, opt] : outcome.grants)
  {
    if (outcome.implemented.count(opt) == 0)
    {
      return "grant (" + std::to_string(user) + ", " + std::to_string(opt) +
             ") for an optimization that is not implemented";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_schedule(ServiceSchedule const &schedule)
{
  for (OptId j : schedule.opts())
  {
    std::vector<UserId> running;
    for (Slot t = 1; t <= schedule.z(); ++t)
    {
      auto const &s = schedule.served(j, t);
      std::vector<UserId> merged;
      std::set_union(running.begin(), running.end(), s.begin(), s.end(),
                     std::back_inserter(merged));
      running = std::move(merged);
      if (schedule.cumulative(j, t) != running)
      {
        return "cumulative set of optimization " + std::to_string(j) + " at slot " +
               std::to_string(t) + " is not the union of earlier service";
      }
    }
  }
  return std::nullopt;
}

}  // namespace cloudshare
