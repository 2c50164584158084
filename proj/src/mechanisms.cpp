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

#include "cloudshare/mechanisms.hpp"

#include "cloudshare/additive_online.hpp"
#include "cloudshare/errors.hpp"
#include "cloudshare/regret.hpp"
#include "cloudshare/substitutable.hpp"

#include <array>
#include <string>

namespace cloudshare {

namespace {

constexpr std::array<std::pair<MechanismId, std::string_view>, 6> kNames{{
    {MechanismId::add_off, "add_off"},
    {MechanismId::add_on, "add_on"},
    {MechanismId::subst_off, "subst_off"},
    {MechanismId::subst_on, "subst_on"},
    {MechanismId::regret, "regret"},
    {MechanismId::naive_first_price, "naive_first_price"},
}};

void merge_served(std::map<std::pair<OptId, Slot>, std::vector<UserId>> &into, OptId opt,
                  Slot t, std::vector<UserId> const &users)
{
  auto &slot = into[{opt, t}];
  slot.insert(slot.end(), users.begin(), users.end());
}

ServiceSchedule build_schedule(Catalog const &catalog, SlotHorizon horizon,
                               std::map<std::pair<OptId, Slot>, std::vector<UserId>> served)
{
  ServiceSchedule schedule(horizon.z());
  for (OptId j : catalog.ids())
  {
    for (Slot t = 1; t <= horizon.z(); ++t)
    {
      auto it = served.find({j, t});
      schedule.record(j, t, it == served.end() ? std::vector<UserId>{} : std::move(it->second));
    }
  }
  return schedule;
}

RunResult from_offline(Game const &game, Outcome const &outcome, PaymentLedger ledger)
{
  return {outcome.implemented, expand_outcome(game, outcome), std::move(ledger)};
}

}  // namespace

std::string_view to_string(MechanismId id)
{
  for (auto const &[m, name] : kNames)
  {
    if (m == id)
    {
      return name;
    }
  }
  return "unknown";
}

std::optional<MechanismId> parse_mechanism(std::string_view name)
{
  for (auto const &[m, n] : kNames)
  {
    if (n == name)
    {
      return m;
    }
  }
  return std::nullopt;
}

bool accepts(MechanismId id, GameKind kind)
{
  switch (id)
  {
  case MechanismId::add_off:
  case MechanismId::add_on:
  case MechanismId::naive_first_price:
    return kind == GameKind::additive;
  case MechanismId::subst_off:
  case MechanismId::subst_on:
    return kind == GameKind::substitutable;
  case MechanismId::regret:
    return true;
  }
  return false;
}

bool is_online(MechanismId id)
{
  return id == MechanismId::add_on || id == MechanismId::subst_on || id == MechanismId::regret;
}

AddOffResult naive_first_price(Catalog const &catalog, std::span<AdditiveOfflineBid const> bids)
{
  AddOffResult result;
  for (auto const &[opt, cost] : catalog.costs())
  {
    Money total;
    for (auto const &b : bids)
    {
      total += b.value_for(opt);
    }
    if (total < cost || total.is_zero())
    {
      continue;
    }
    result.outcome.implemented.insert(opt);
    for (auto const &b : bids)
    {
      Money v = b.value_for(opt);
      if (v.is_positive())
      {
        result.outcome.grants.insert({b.user, opt});
        result.payments.charge(b.user, opt, v);
      }
    }
  }
  return result;
}

ServiceSchedule expand_outcome(Game const &game, Outcome const &outcome)
{
  std::map<std::pair<OptId, Slot>, std::vector<UserId>> served;
  for (auto const &b : game.additive)
  {
    if (outcome.grants.count({b.user, b.opt}) == 0)
    {
      continue;
    }
    for (Slot t = b.start; t <= b.end; ++t)
    {
      served[{b.opt, t}].push_back(b.user);
    }
  }
  for (auto const &b : game.substitutable)
  {
    for (OptId j : b.substitutes)
    {
      if (outcome.grants.count({b.user, j}) == 0)
      {
        continue;
      }
      for (Slot t = b.start; t <= b.end; ++t)
      {
        served[{j, t}].push_back(b.user);
      }
    }
  }
  return build_schedule(game.catalog, game.horizon, std::move(served));
}

RunResult run_mechanism(MechanismId id, Game const &game)
{
  if (!accepts(id, game.kind))
  {
    throw DomainError(std::string(to_string(id)) + " does not accept " +
                      std::string(to_string(game.kind)) + " games");
  }

  switch (id)
  {
  case MechanismId::add_off:
  {
    auto bids = collapse_additive(game);
    auto res  = add_off(game.catalog, bids);
    return from_offline(game, res.outcome, std::move(res.payments));
  }
  case MechanismId::naive_first_price:
  {
    auto bids = collapse_additive(game);
    auto res  = naive_first_price(game.catalog, bids);
    return from_offline(game, res.outcome, std::move(res.payments));
  }
  case MechanismId::subst_off:
  {
    auto bids = collapse_substitutable(game);
    auto res  = subst_off(game.catalog, std::span<SubstitutableOfflineBid const>(bids));
    return from_offline(game, res.outcome, std::move(res.payments));
  }
  case MechanismId::add_on:
  {
    RunResult                                             out;
    std::map<std::pair<OptId, Slot>, std::vector<UserId>> served;
    for (auto const &[opt, cost] : game.catalog.costs())
    {
      OnlineAdditiveGame single{{opt, cost}, game.horizon, {}};
      for (auto const &b : game.additive)
      {
        if (b.opt == opt)
        {
          single.bids.push_back(b);
        }
      }
      OnlineTrace trace = add_on(single);
      for (Slot t = 1; t <= game.horizon.z(); ++t)
      {
        merge_served(served, opt, t, trace.schedule.served(opt, t));
      }
      if (!trace.schedule.cumulative(opt, game.horizon.z()).empty())
      {
        out.implemented.insert(opt);
      }
      for (auto const &[user, paid] : trace.payments)
      {
        if (paid.is_positive())
        {
          out.ledger.charge(user, opt, paid);
        }
      }
    }
    out.schedule = build_schedule(game.catalog, game.horizon, std::move(served));
    return out;
  }
  case MechanismId::subst_on:
  {
    auto res = subst_on(game.catalog, game.horizon, game.substitutable);
    return {std::move(res.implemented), std::move(res.schedule), std::move(res.ledger)};
  }
  case MechanismId::regret:
  {
    RegretTrace trace = game.kind == GameKind::additive
                            ? regret_run(game.catalog, game.horizon,
                                         std::span<AdditiveOnlineBid const>(game.additive))
                            : regret_run(game.catalog, game.horizon,
                                         std::span<SubstitutableOnlineBid const>(game.substitutable));
    return {std::move(trace.implemented), std::move(trace.serviced), std::move(trace.ledger)};
  }
  }
  throw DomainError("unknown mechanism");
}

RunResult relabel(RunResult const &run, std::map<UserId, UserId> const &rename)
{
  auto map_user = [&rename](UserId u) {
    auto it = rename.find(u);
    return it == rename.end() ? u : it->second;
  };

  RunResult out;
  out.implemented = run.implemented;
  out.schedule    = ServiceSchedule(run.schedule.z());
  for (auto const &[key, users] : run.schedule.served_map())
  {
    std::vector<UserId> mapped;
    mapped.reserve(users.size());
    for (UserId u : users)
    {
      mapped.push_back(map_user(u));
    }
    out.schedule.record(key.first, key.second, std::move(mapped));
  }
  for (auto const &[key, amount] : run.ledger.entries())
  {
    out.ledger.charge(map_user(key.first), key.second, amount);
  }
  return out;
}

}  // namespace cloudshare
