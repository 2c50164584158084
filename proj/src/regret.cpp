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

#include "cloudshare/regret.hpp"

#include "cloudshare/errors.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace cloudshare {

PostedPrice optimal_posted_price(Money const &cost, std::span<Money const> residuals)
{
  if (!cost.is_positive())
  {
    throw DomainError("optimization cost must be positive");
  }
  std::vector<Money const *> sorted;
  for (auto const &r : residuals)
  {
    if (r.is_negative())
    {
      throw DomainError("negative residual value");
    }
    if (r.is_positive())
    {
      sorted.push_back(&r);
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](Money const *a, Money const *b) { return *b < *a; });

  // largest k whose k-th highest residual can afford cost / k
  for (std::size_t k = sorted.size(); k >= 1; --k)
  {
    if (!(sorted[k - 1]->times(static_cast<std::int64_t>(k)) < cost))
    {
      return {cost.divided_by(static_cast<std::int64_t>(k)), Money{}};
    }
  }

  // no price recovers the cost: maximize revenue p * |{r >= p}| at p = some residual
  PostedPrice best{Money{}, cost};
  Money       best_revenue;
  for (std::size_t i = 0; i < sorted.size(); ++i)
  {
    if (i + 1 < sorted.size() && *sorted[i + 1] == *sorted[i])
    {
      continue;  // buyer count at this price includes every tie
    }
    Money revenue = sorted[i]->times(static_cast<std::int64_t>(i + 1));
    // descending prices: ">=" keeps the smallest price among equal revenues
    if (revenue > best_revenue || (revenue == best_revenue && revenue.is_positive()))
    {
      best_revenue = revenue;
      best         = {*sorted[i], cost - revenue};
    }
  }
  return best;
}

namespace {

struct Demand
{
  UserId                    user{};
  std::vector<OptId>        opts;
  Slot                      start{1};
  Slot                      end{1};
  std::vector<Money> const *per_slot{nullptr};

  Money value_at(Slot t) const
  {
    if (t < start || t > end)
    {
      return Money{};
    }
    return (*per_slot)[t - start];
  }

  Money residual_after(Slot t) const
  {
    Money sum;
    for (Slot s = std::max(start, t + 1); s <= end; ++s)
    {
      sum += (*per_slot)[s - start];
    }
    return sum;
  }

  bool wants(OptId j) const
  {
    return std::find(opts.begin(), opts.end(), j) != opts.end();
  }
};

template <typename Bid>
void check_window(Bid const &bid, SlotHorizon const &horizon)
{
  std::string who = "values of user " + std::to_string(bid.user);
  if (bid.start < 1 || bid.start > bid.end || !horizon.contains(bid.end))
  {
    throw DomainError(who + " have slots outside the horizon");
  }
  if (bid.per_slot.size() != bid.end - bid.start + 1)
  {
    throw DomainError(who + " have the wrong number of per-slot entries");
  }
  for (auto const &v : bid.per_slot)
  {
    if (v.is_negative())
    {
      throw DomainError(who + " contain a negative value");
    }
  }
}

RegretTrace run_demands(Catalog const &catalog, SlotHorizon horizon,
                        std::vector<Demand> const &demands)
{
  RegretTrace trace;
  trace.serviced = ServiceSchedule(horizon.z());

  std::vector<std::optional<OptId>>                    assigned(demands.size());
  std::map<OptId, Money>                               regret;
  std::map<std::pair<OptId, Slot>, std::vector<UserId>> served;
  for (OptId j : catalog.ids())
  {
    regret[j];
    trace.implement_slot[j] = std::nullopt;
  }
  for (auto const &d : demands)
  {
    trace.payments.try_emplace(d.user);
  }

  auto implement = [&](OptId j, Slot t) {
    trace.implement_slot[j] = t;
    trace.implemented.insert(j);

    std::vector<std::size_t> candidates;
    for (std::size_t e = 0; e < demands.size(); ++e)
    {
      if (!assigned[e] && demands[e].wants(j))
      {
        candidates.push_back(e);
      }
    }

    std::vector<Money> residuals;
    residuals.reserve(candidates.size());
    for (std::size_t e : candidates)
    {
      Demand const &d = demands[e];
      if (d.start <= t && t <= d.end)
      {
        served[{j, t}].push_back(d.user);  // free access in the trigger slot
        assigned[e] = j;
      }
      residuals.push_back(d.residual_after(t));
    }

    PostedPrice price      = optimal_posted_price(catalog.cost(j), residuals);
    trace.posted_price[j] = price.price;
    for (std::size_t c = 0; c < candidates.size(); ++c)
    {
      Money const &r = residuals[c];
      if (!r.is_positive() || r < price.price)
      {
        continue;
      }
      Demand const &d = demands[candidates[c]];
      assigned[candidates[c]] = j;
      trace.ledger.charge(d.user, j, price.price);
      for (Slot s = std::max(d.start, t + 1); s <= d.end; ++s)
      {
        served[{j, s}].push_back(d.user);
      }
    }
  };

  for (Slot t = 1; t <= horizon.z(); ++t)
  {
    for (auto &[j, r] : regret)
    {
      trace.regret_series[j].push_back(r);
    }
    for (auto const &[j, r] : regret)
    {
      if (!trace.implemented.count(j) && !(r < catalog.cost(j)))
      {
        implement(j, t);
      }
    }
    for (std::size_t e = 0; e < demands.size(); ++e)
    {
      Money v = demands[e].value_at(t);
      if (v.is_zero())
      {
        continue;
      }
      for (OptId j : demands[e].opts)
      {
        if (!assigned[e] || *assigned[e] == j)
        {
          regret[j] += v;
        }
      }
    }
  }

  for (OptId j : catalog.ids())
  {
    for (Slot t = 1; t <= horizon.z(); ++t)
    {
      auto it = served.find({j, t});
      trace.serviced.record(j, t, it == served.end() ? std::vector<UserId>{} : it->second);
    }
  }

  Money costs;
  for (OptId j : trace.implemented)
  {
    costs += catalog.cost(j);
  }
  for (auto const &[key, amount] : trace.ledger.entries())
  {
    trace.payments[key.first] += amount;
  }
  trace.cloud_balance = trace.ledger.total() - costs;
  return trace;
}

}  // namespace

RegretTrace regret_run(Catalog const &catalog, SlotHorizon horizon,
                       std::span<AdditiveOnlineBid const> values)
{
  std::vector<Demand>                  demands;
  std::set<std::pair<UserId, OptId>>   seen;
  for (auto const &bid : values)
  {
    check_window(bid, horizon);
    if (!catalog.contains(bid.opt))
    {
      throw CatalogMismatch("unknown optimization " + std::to_string(bid.opt));
    }
    if (!seen.insert({bid.user, bid.opt}).second)
    {
      throw DomainError("duplicate values for user " + std::to_string(bid.user));
    }
    demands.push_back({bid.user, {bid.opt}, bid.start, bid.end, &bid.per_slot});
  }
  return run_demands(catalog, horizon, demands);
}

RegretTrace regret_run(Catalog const &catalog, SlotHorizon horizon,
                       std::span<SubstitutableOnlineBid const> values)
{
  std::vector<Demand> demands;
  std::set<UserId>    seen;
  for (auto const &bid : values)
  {
    check_window(bid, horizon);
    for (OptId j : bid.substitutes)
    {
      if (!catalog.contains(j))
      {
        throw CatalogMismatch("unknown optimization " + std::to_string(j));
      }
    }
    if (!seen.insert(bid.user).second)
    {
      throw DomainError("duplicate values for user " + std::to_string(bid.user));
    }
    demands.push_back({bid.user, {bid.substitutes.begin(), bid.substitutes.end()}, bid.start,
                       bid.end, &bid.per_slot});
  }
  return run_demands(catalog, horizon, demands);
}

}  // namespace cloudshare
