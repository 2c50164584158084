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

#include "cloudshare/substitutable.hpp"

#include "cloudshare/errors.hpp"

#include <algorithm>
#include <string>

namespace cloudshare {

namespace {

void check_substitutes(Catalog const &catalog, UserId user, std::set<OptId> const &substitutes)
{
  if (substitutes.empty())
  {
    throw DomainError("user " + std::to_string(user) + " has an empty substitute set");
  }
  for (OptId j : substitutes)
  {
    if (!catalog.contains(j))
    {
      throw CatalogMismatch("user " + std::to_string(user) +
                            " references unknown optimization " + std::to_string(j));
    }
  }
}

}  // namespace

std::optional<OptId> SubstOffResult::granted(UserId user) const
{
  auto it = outcome.grants.lower_bound({user, 0});
  if (it != outcome.grants.end() && it->first == user)
  {
    return it->second;
  }
  return std::nullopt;
}

SubstOffResult subst_off(Catalog const &catalog, std::span<SubstitutableOfflineBid const> bids)
{
  std::vector<EffectiveSubstBid> effective;
  effective.reserve(bids.size());
  for (auto const &bid : bids)
  {
    check_substitutes(catalog, bid.user, bid.substitutes);
    if (!bid.value.is_positive())
    {
      throw DomainError("user " + std::to_string(bid.user) + " must bid a positive value");
    }
    EffectiveSubstBid e{bid.user, {}};
    for (OptId j : bid.substitutes)
    {
      e.values.emplace_back(j, bid.value);
    }
    effective.push_back(std::move(e));
  }
  return subst_off(catalog, std::span<EffectiveSubstBid const>(effective));
}

SubstOffResult subst_off(Catalog const &catalog, std::span<EffectiveSubstBid const> bids)
{
  std::map<OptId, std::vector<UserBid>> columns;
  std::set<UserId>                      users;
  for (auto const &bid : bids)
  {
    if (!users.insert(bid.user).second)
    {
      throw DomainError("duplicate bid for user " + std::to_string(bid.user));
    }
    for (auto const &[opt, value] : bid.values)
    {
      if (!catalog.contains(opt))
      {
        throw CatalogMismatch("user " + std::to_string(bid.user) +
                              " references unknown optimization " + std::to_string(opt));
      }
      if (!value.is_infinite() && value.amount().is_negative())
      {
        throw DomainError("negative bid from user " + std::to_string(bid.user));
      }
      if (!value.is_zero())
      {
        columns[opt].push_back({bid.user, value});
      }
    }
  }

  SubstOffResult                 result;
  std::set<UserId>               serviced;
  std::map<OptId, ShapleyResult> cached;  // per remaining optimization, valid until its bidders change

  auto runnable = [&](OptId opt) -> ShapleyResult const & {
    auto it = cached.find(opt);
    if (it != cached.end())
    {
      return it->second;
    }
    std::vector<UserBid> open;
    for (auto const &b : columns[opt])
    {
      if (serviced.count(b.user) == 0)
      {
        open.push_back(b);
      }
    }
    return cached.emplace(opt, shapley(catalog.cost(opt), open)).first->second;
  };

  std::set<OptId> remaining;
  for (auto const &[opt, column] : columns)
  {
    remaining.insert(opt);
  }

  for (;;)
  {
    std::optional<OptId> best;
    Money                best_share;
    std::vector<OptId>   tied;
    for (OptId opt : remaining)
    {
      ShapleyResult const &run = runnable(opt);
      if (!run.implemented())
      {
        continue;
      }
      if (!best || run.share < best_share)
      {
        best       = opt;
        best_share = run.share;
        tied       = {opt};
      }
      else if (run.share == best_share)
      {
        tied.push_back(opt);
      }
    }
    if (!best)
    {
      break;
    }

    ShapleyResult chosen = cached.at(*best);
    result.outcome.implemented.insert(*best);
    for (UserId u : chosen.serviced)
    {
      result.outcome.grants.insert({u, *best});
      result.payments.charge(u, *best, chosen.share);
      serviced.insert(u);
    }
    remaining.erase(*best);
    cached.erase(*best);

    // shares of optimizations that lost bidders must be recomputed
    for (auto it = cached.begin(); it != cached.end();)
    {
      auto const &column = columns[it->first];
      bool        touched = std::any_of(column.begin(), column.end(), [&](UserBid const &b) {
        return std::binary_search(chosen.serviced.begin(), chosen.serviced.end(), b.user);
      });
      it = touched ? cached.erase(it) : std::next(it);
    }

    result.phases.push_back({*best, chosen.serviced, chosen.share, std::move(tied)});
  }
  return result;
}

SubstOnResult subst_on(Catalog const &catalog, SlotHorizon horizon,
                       std::span<SubstitutableOnlineBid const> bids)
{
  std::set<UserId> seen;
  for (auto const &bid : bids)
  {
    std::string who = "bid of user " + std::to_string(bid.user);
    if (!seen.insert(bid.user).second)
    {
      throw DomainError("duplicate " + who);
    }
    check_substitutes(catalog, bid.user, bid.substitutes);
    if (bid.start < 1 || bid.start > bid.end || !horizon.contains(bid.end))
    {
      throw DomainError(who + " has slots outside the horizon");
    }
    if (bid.per_slot.size() != bid.end - bid.start + 1)
    {
      throw DomainError(who + " has the wrong number of per-slot values");
    }
    for (auto const &v : bid.per_slot)
    {
      if (v.is_negative())
      {
        throw DomainError(who + " has a negative value");
      }
    }
  }

  SubstOnResult result;
  result.schedule = ServiceSchedule(horizon.z());
  for (auto const &bid : bids)
  {
    result.payments.emplace(bid.user, Money{});
  }

  for (Slot t = 1; t <= horizon.z(); ++t)
  {
    std::vector<EffectiveSubstBid> effective;
    effective.reserve(bids.size());
    for (auto const &bid : bids)
    {
      if (auto it = result.assignment.find(bid.user); it != result.assignment.end())
      {
        effective.push_back({bid.user, {{it->second, BidValue::infinite()}}});
      }
      else if (t >= bid.start)
      {
        Money residual = bid.residual_from(t);
        if (residual.is_zero())
        {
          continue;
        }
        EffectiveSubstBid e{bid.user, {}};
        for (OptId j : bid.substitutes)
        {
          e.values.emplace_back(j, residual);
        }
        effective.push_back(std::move(e));
      }
    }

    SubstOffResult run = subst_off(catalog, std::span<EffectiveSubstBid const>(effective));

    std::map<OptId, std::vector<UserId>> served;
    for (auto const &[user, opt] : run.outcome.grants)
    {
      result.assignment.emplace(user, opt);
      result.implemented.insert(opt);
    }
    for (auto const &bid : bids)
    {
      auto granted = run.granted(bid.user);
      if (granted && t <= bid.end)
      {
        served[*granted].push_back(bid.user);
      }
      if (bid.end == t && granted)
      {
        Money paid                 = run.payments.of(bid.user, *granted);
        result.payments[bid.user] = paid;
        result.ledger.charge(bid.user, *granted, paid);
      }
    }
    for (OptId j : catalog.ids())
    {
      result.schedule.record(j, t, std::move(served[j]));
    }
  }
  return result;
}

}  // namespace cloudshare
