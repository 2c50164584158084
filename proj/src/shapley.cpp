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

#include "cloudshare/shapley.hpp"

#include "cloudshare/errors.hpp"

#include <algorithm>
#include <string>

namespace cloudshare {

bool ShapleyResult::is_serviced(UserId user) const
{
  return std::binary_search(serviced.begin(), serviced.end(), user);
}

Money ShapleyResult::payment(UserId user) const
{
  return is_serviced(user) ? share : Money{};
}

ShapleyResult shapley(Money const &cost, std::span<UserBid const> bids)
{
  if (!cost.is_positive())
  {
    throw DomainError("optimization cost must be positive");
  }

  std::vector<UserBid const *> members;
  members.reserve(bids.size());
  for (auto const &b : bids)
  {
    members.push_back(&b);
  }
  std::sort(members.begin(), members.end(),
            [](UserBid const *a, UserBid const *b) { return a->user < b->user; });
  for (std::size_t i = 1; i < members.size(); ++i)
  {
    if (members[i - 1]->user == members[i]->user)
    {
      throw DomainError("duplicate bid for user " + std::to_string(members[i]->user));
    }
  }

  ShapleyResult result;
  while (!members.empty())
  {
    ++result.rounds;
    Money share = cost.divided_by(static_cast<std::int64_t>(members.size()));
    auto  keep  = std::stable_partition(members.begin(), members.end(),
                                        [&](UserBid const *b) { return b->bid.covers(share); });
    if (keep == members.end())
    {
      result.share = std::move(share);
      break;
    }
    members.erase(keep, members.end());
  }

  result.serviced.reserve(members.size());
  for (auto const *b : members)
  {
    result.serviced.push_back(b->user);
  }
  return result;
}

AddOffResult add_off(Catalog const &catalog, std::span<AdditiveOfflineBid const> bids)
{
  std::map<OptId, std::vector<UserBid>> columns;
  for (OptId j : catalog.ids())
  {
    columns[j];
  }
  for (auto const &bid : bids)
  {
    for (auto const &[opt, value] : bid.values)
    {
      if (!catalog.contains(opt))
      {
        throw CatalogMismatch("bid of user " + std::to_string(bid.user) +
                              " references unknown optimization " + std::to_string(opt));
      }
      if (value.is_negative())
      {
        throw DomainError("negative bid from user " + std::to_string(bid.user));
      }
      columns[opt].push_back({bid.user, value});
    }
  }

  AddOffResult result;
  for (auto &[opt, column] : columns)
  {
    ShapleyResult run = shapley(catalog.cost(opt), column);
    if (run.implemented())
    {
      result.outcome.implemented.insert(opt);
      for (UserId u : run.serviced)
      {
        result.outcome.grants.insert({u, opt});
        result.payments.charge(u, opt, run.share);
      }
    }
    result.runs.emplace(opt, std::move(run));
  }
  return result;
}

}  // namespace cloudshare
