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

#include "cloudshare/additive_online.hpp"

#include "cloudshare/economics.hpp"
#include "cloudshare/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace cloudshare {

namespace {

void check_bid_shape(AdditiveOnlineBid const &bid, OptId opt, SlotHorizon const &horizon)
{
  std::string who = "bid of user " + std::to_string(bid.user);
  if (bid.opt != opt)
  {
    throw DomainError(who + " targets optimization " + std::to_string(bid.opt) +
                      ", game is for " + std::to_string(opt));
  }
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

}  // namespace

OnlineSession::OnlineSession(Optimization optimization, SlotHorizon horizon)
  : optimization_(std::move(optimization))
  , horizon_(horizon)
{
  if (!optimization_.cost.is_positive())
  {
    throw DomainError("optimization cost must be positive");
  }
  trace_.schedule = ServiceSchedule(horizon_.z());
  trace_.share_history.assign(horizon_.z(), std::nullopt);
}

void OnlineSession::accept(AdditiveOnlineBid const &bid, Slot now) const
{
  check_bid_shape(bid, optimization_.id, horizon_);

  auto it = bids_.find(bid.user);
  if (it == bids_.end())
  {
    if (bid.start < now)
    {
      throw RevisionError("bid of user " + std::to_string(bid.user) + " starting at slot " +
                          std::to_string(bid.start) + " is retroactive at slot " +
                          std::to_string(now));
    }
    return;
  }

  if (it->second.end < now)
  {
    // already charged at its end slot; payments are never reopened
    throw RevisionError("bid of user " + std::to_string(bid.user) + " already expired");
  }
  if (auto violation = validate_revision(it->second, bid, now))
  {
    throw RevisionError("user " + std::to_string(bid.user) + ": " + violation->describe());
  }
}

OnlineSession::StepResult OnlineSession::advance(Slot t)
{
  std::vector<UserBid> effective;
  effective.reserve(bids_.size());
  for (auto const &[user, bid] : bids_)
  {
    if (std::binary_search(cumulative_.begin(), cumulative_.end(), user))
    {
      effective.push_back({user, BidValue::infinite()});
    }
    else if (t >= bid.start)
    {
      Money residual = bid.residual_from(t);
      if (!residual.is_zero())
      {
        effective.push_back({user, std::move(residual)});
      }
    }
  }

  ShapleyResult run = shapley(optimization_.cost, effective);
  cumulative_       = run.serviced;

  StepResult step;
  for (UserId u : cumulative_)
  {
    if (t <= bids_.at(u).end)
    {
      step.serviced.push_back(u);
    }
  }
  for (auto const &[user, bid] : bids_)
  {
    if (bid.end == t)
    {
      Money paid = run.payment(user);
      trace_.payments[user]   = paid;
      trace_.charged_at[user] = t;
      step.departures.emplace_back(user, std::move(paid));
    }
  }

  if (run.implemented())
  {
    trace_.share_history[t - 1] = run.share;
  }
  trace_.schedule.record(optimization_.id, t, step.serviced);
  last_slot_ = t;
  return step;
}

OnlineSession::StepResult OnlineSession::step(Slot slot, std::span<AdditiveOnlineBid const> bids)
{
  if (slot <= last_slot_)
  {
    throw SequencingError("slot " + std::to_string(slot) + " is not after slot " +
                          std::to_string(last_slot_));
  }
  if (!horizon_.contains(slot))
  {
    throw SequencingError("slot " + std::to_string(slot) + " outside the horizon");
  }

  std::set<UserId> batch;
  for (auto const &bid : bids)
  {
    if (!batch.insert(bid.user).second)
    {
      throw RevisionError("two bids for user " + std::to_string(bid.user) + " in one step");
    }
    accept(bid, slot);
  }

  // skipped slots run with the bids known so far; the new bids arrive at `slot`
  StepResult result;
  auto       absorb = [&result](StepResult one) {
    result.serviced = std::move(one.serviced);
    result.departures.insert(result.departures.end(), one.departures.begin(),
                             one.departures.end());
  };
  for (Slot t = last_slot_ + 1; t < slot; ++t)
  {
    absorb(advance(t));
  }
  for (auto const &bid : bids)
  {
    bids_.insert_or_assign(bid.user, bid);
    trace_.payments.try_emplace(bid.user);
  }
  absorb(advance(slot));
  return result;
}

OnlineTrace const &OnlineSession::finish()
{
  for (Slot t = last_slot_ + 1; t <= horizon_.z(); ++t)
  {
    advance(t);
  }
  return trace_;
}

OnlineTrace add_on(OnlineAdditiveGame const &game)
{
  OnlineSession session(game.optimization, game.horizon);
  session.step(1, game.bids);
  return session.finish();
}

}  // namespace cloudshare
