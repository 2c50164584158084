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

#include "cloudshare/types.hpp"

#include "cloudshare/errors.hpp"

#include <algorithm>
#include <iterator>
#include <string>

namespace cloudshare {

namespace {

template <typename Bid>
Money slot_value(Bid const &bid, Slot t)
{
  if (t < bid.start || t > bid.end)
  {
    return Money{};
  }
  std::size_t idx = t - bid.start;
  return idx < bid.per_slot.size() ? bid.per_slot[idx] : Money{};
}

template <typename Bid>
Money slot_residual(Bid const &bid, Slot t)
{
  Money sum;
  Slot  from = std::max(t, bid.start);
  for (Slot s = from; s <= bid.end; ++s)
  {
    std::size_t idx = s - bid.start;
    if (idx < bid.per_slot.size())
    {
      sum += bid.per_slot[idx];
    }
  }
  return sum;
}

std::vector<UserId> const &empty_users()
{
  static std::vector<UserId> const none;
  return none;
}

}  // namespace

Catalog::Catalog(std::initializer_list<Optimization> opts)
{
  for (auto const &o : opts)
  {
    add(o);
  }
}

Catalog::Catalog(std::vector<Optimization> const &opts)
{
  for (auto const &o : opts)
  {
    add(o);
  }
}

void Catalog::add(Optimization opt)
{
  if (!opt.cost.is_positive())
  {
    throw DomainError("optimization " + std::to_string(opt.id) + " has non-positive cost");
  }
  if (!costs_.emplace(opt.id, std::move(opt.cost)).second)
  {
    throw DomainError("duplicate optimization id " + std::to_string(opt.id));
  }
}

Money const &Catalog::cost(OptId id) const
{
  auto it = costs_.find(id);
  if (it == costs_.end())
  {
    throw CatalogMismatch("unknown optimization " + std::to_string(id));
  }
  return it->second;
}

std::vector<OptId> Catalog::ids() const
{
  std::vector<OptId> out;
  out.reserve(costs_.size());
  for (auto const &[id, _] : costs_)
  {
    out.push_back(id);
  }
  return out;
}

Catalog Catalog::scaled(Money const &factor) const
{
  Catalog out;
  for (auto const &[id, cost] : costs_)
  {
    out.add({id, cost * factor});
  }
  return out;
}

SlotHorizon::SlotHorizon(Slot z)
  : z_(z)
{
  if (z < 1)
  {
    throw DomainError("slot horizon must contain at least one slot");
  }
}

Money AdditiveOfflineBid::value_for(OptId opt) const
{
  auto it = values.find(opt);
  return it == values.end() ? Money{} : it->second;
}

Money AdditiveOnlineBid::value_at(Slot t) const
{
  return slot_value(*this, t);
}

Money AdditiveOnlineBid::residual_from(Slot t) const
{
  return slot_residual(*this, t);
}

Money AdditiveOnlineBid::total() const
{
  return slot_residual(*this, start);
}

Money SubstitutableOnlineBid::value_at(Slot t) const
{
  return slot_value(*this, t);
}

Money SubstitutableOnlineBid::residual_from(Slot t) const
{
  return slot_residual(*this, t);
}

Money SubstitutableOnlineBid::total() const
{
  return slot_residual(*this, start);
}

std::set<UserId> Outcome::serviced_by(OptId opt) const
{
  std::set<UserId> out;
  for (auto const &[user, j] : grants)
  {
    if (j == opt)
    {
      out.insert(user);
    }
  }
  return out;
}

void PaymentLedger::charge(UserId user, OptId opt, Money const &amount)
{
  if (amount.is_negative())
  {
    throw DomainError("negative payment");
  }
  entries_[{user, opt}] += amount;
}

Money PaymentLedger::of(UserId user, OptId opt) const
{
  auto it = entries_.find({user, opt});
  return it == entries_.end() ? Money{} : it->second;
}

Money PaymentLedger::total_for(UserId user) const
{
  Money sum;
  for (auto it = entries_.lower_bound({user, 0}); it != entries_.end() && it->first.first == user;
       ++it)
  {
    sum += it->second;
  }
  return sum;
}

Money PaymentLedger::total_for_opt(OptId opt) const
{
  Money sum;
  for (auto const &[key, amount] : entries_)
  {
    if (key.second == opt)
    {
      sum += amount;
    }
  }
  return sum;
}

Money PaymentLedger::total() const
{
  Money sum;
  for (auto const &[_, amount] : entries_)
  {
    sum += amount;
  }
  return sum;
}

void ServiceSchedule::record(OptId opt, Slot t, std::vector<UserId> users)
{
  if (t < 1 || t > z_)
  {
    throw DomainError("slot " + std::to_string(t) + " outside horizon");
  }
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());

  // cumulative = latest earlier cumulative for this opt, plus this slot
  std::vector<UserId> const *previous = nullptr;
  auto it = cumulative_.lower_bound({opt, t});
  if (it != cumulative_.end() && it->first == std::make_pair(opt, t))
  {
    previous = &it->second;
  }
  else if (it != cumulative_.begin())
  {
    auto prev = std::prev(it);
    if (prev->first.first == opt)
    {
      previous = &prev->second;
    }
  }
  if (auto later = cumulative_.upper_bound({opt, t});
      later != cumulative_.end() && later->first.first == opt)
  {
    throw DomainError("service slots must be recorded in order");
  }

  std::vector<UserId> merged;
  if (previous != nullptr)
  {
    std::set_union(previous->begin(), previous->end(), users.begin(), users.end(),
                   std::back_inserter(merged));
  }
  else
  {
    merged = users;
  }

  auto &slot_served = served_[{opt, t}];
  std::vector<UserId> combined;
  std::set_union(slot_served.begin(), slot_served.end(), users.begin(), users.end(),
                 std::back_inserter(combined));
  slot_served                 = std::move(combined);
  cumulative_[{opt, t}]       = std::move(merged);
}

std::vector<UserId> const &ServiceSchedule::served(OptId opt, Slot t) const
{
  auto it = served_.find({opt, t});
  return it == served_.end() ? empty_users() : it->second;
}

std::vector<UserId> const &ServiceSchedule::cumulative(OptId opt, Slot t) const
{
  // CS_j(t) is the latest recorded cumulative at or before t
  auto it = cumulative_.upper_bound({opt, t});
  if (it == cumulative_.begin())
  {
    return empty_users();
  }
  auto prev = std::prev(it);
  if (prev->first.first != opt)
  {
    return empty_users();
  }
  return prev->second;
}

std::set<OptId> ServiceSchedule::opts() const
{
  std::set<OptId> out;
  for (auto const &[key, _] : cumulative_)
  {
    out.insert(key.first);
  }
  return out;
}

bool ServiceSchedule::is_empty() const
{
  for (auto const &[_, users] : served_)
  {
    if (!users.empty())
    {
      return false;
    }
  }
  return true;
}

}  // namespace cloudshare
