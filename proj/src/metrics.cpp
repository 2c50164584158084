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

#include "cloudshare/metrics.hpp"

#include "cloudshare/economics.hpp"
#include "cloudshare/errors.hpp"

#include <algorithm>
#include <string>

namespace cloudshare {

namespace {

bool contains(std::vector<UserId> const &sorted, UserId u)
{
  return std::binary_search(sorted.begin(), sorted.end(), u);
}

void finish(Metrics &m, Catalog const &catalog, std::set<OptId> const &implemented,
            PaymentLedger const &payments, std::set<UserId> const &users)
{
  for (OptId j : implemented)
  {
    m.total_cost += catalog.cost(j);
  }
  m.total_utility = m.total_value - m.total_cost;
  m.cloud_balance = payments.total() - m.total_cost;
  for (auto const &[key, amount] : payments.entries())
  {
    if (users.count(key.first) == 0)
    {
      throw DomainError("payment from unknown user " + std::to_string(key.first));
    }
    m.per_user_utility[key.first] -= amount;
  }
}

}  // namespace

Metrics score(Game const &truth, ServiceSchedule const &schedule, PaymentLedger const &payments,
              std::set<OptId> const &implemented)
{
  Metrics          m;
  std::set<UserId> users = truth.users();
  for (UserId u : users)
  {
    m.per_user_utility[u];
  }
  for (auto const &[key, served] : schedule.served_map())
  {
    if (!truth.catalog.contains(key.first))
    {
      throw CatalogMismatch("schedule references unknown optimization " +
                            std::to_string(key.first));
    }
    for (UserId u : served)
    {
      if (users.count(u) == 0)
      {
        throw DomainError("schedule references unknown user " + std::to_string(u));
      }
    }
  }
  for (OptId j : schedule.opts())
  {
    if (!schedule.cumulative(j, schedule.z()).empty() && implemented.count(j) == 0)
    {
      throw DomainError("users served by unimplemented optimization " + std::to_string(j));
    }
  }

  for (auto const &b : truth.additive)
  {
    for (Slot t = b.start; t <= b.end; ++t)
    {
      if (contains(schedule.served(b.opt, t), b.user))
      {
        Money const &v = b.per_slot[t - b.start];
        m.total_value += v;
        m.per_user_utility[b.user] += v;
      }
    }
  }
  for (auto const &b : truth.substitutable)
  {
    for (Slot t = b.start; t <= b.end; ++t)
    {
      bool served = std::any_of(b.substitutes.begin(), b.substitutes.end(),
                                [&](OptId j) { return contains(schedule.served(j, t), b.user); });
      if (served)
      {
        Money const &v = b.per_slot[t - b.start];
        m.total_value += v;
        m.per_user_utility[b.user] += v;
      }
    }
  }

  finish(m, truth.catalog, implemented, payments, users);
  return m;
}

Metrics score_offline(Catalog const &catalog, std::span<AdditiveOfflineBid const> truth,
                      Outcome const &outcome, PaymentLedger const &payments)
{
  Metrics          m;
  std::set<UserId> users;
  for (auto const &b : truth)
  {
    users.insert(b.user);
    Money v                   = value_of_outcome(b, outcome);
    m.total_value            += v;
    m.per_user_utility[b.user] += v;
  }
  finish(m, catalog, outcome.implemented, payments, users);
  return m;
}

Metrics score_offline(Catalog const &catalog, std::span<SubstitutableOfflineBid const> truth,
                      Outcome const &outcome, PaymentLedger const &payments)
{
  Metrics          m;
  std::set<UserId> users;
  for (auto const &b : truth)
  {
    users.insert(b.user);
    m.per_user_utility[b.user];
    bool granted = std::any_of(b.substitutes.begin(), b.substitutes.end(),
                               [&](OptId j) { return outcome.grants.count({b.user, j}) != 0; });
    if (granted)
    {
      m.total_value += b.value;
      m.per_user_utility[b.user] += b.value;
    }
  }
  finish(m, catalog, outcome.implemented, payments, users);
  return m;
}

}  // namespace cloudshare
