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

#include "cloudshare/game.hpp"

#include "cloudshare/errors.hpp"

#include <algorithm>
#include <string>

namespace cloudshare {

std::string_view to_string(GameKind kind)
{
  return kind == GameKind::additive ? "additive" : "substitutable";
}

std::set<UserId> Game::users() const
{
  std::set<UserId> out;
  for (auto const &b : additive)
  {
    out.insert(b.user);
  }
  for (auto const &b : substitutable)
  {
    out.insert(b.user);
  }
  return out;
}

UserId Game::max_user() const
{
  auto all = users();
  return all.empty() ? 0 : *all.rbegin();
}

namespace {

template <typename Bid>
void check_window(Bid const &bid, SlotHorizon const &horizon)
{
  std::string who = "bid of user " + std::to_string(bid.user);
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

void Game::validate() const
{
  if (catalog.empty())
  {
    throw DomainError("game has an empty catalog");
  }
  if (kind == GameKind::additive && !substitutable.empty())
  {
    throw DomainError("additive game carries substitutable bids");
  }
  if (kind == GameKind::substitutable && !additive.empty())
  {
    throw DomainError("substitutable game carries additive bids");
  }
  std::set<std::pair<UserId, OptId>> seen;
  for (auto const &b : additive)
  {
    check_window(b, horizon);
    if (!catalog.contains(b.opt))
    {
      throw CatalogMismatch("unknown optimization " + std::to_string(b.opt));
    }
    if (!seen.insert({b.user, b.opt}).second)
    {
      throw DomainError("user " + std::to_string(b.user) + " bids twice on optimization " +
                        std::to_string(b.opt));
    }
  }
  std::set<UserId> users_seen;
  for (auto const &b : substitutable)
  {
    check_window(b, horizon);
    if (b.substitutes.empty())
    {
      throw DomainError("user " + std::to_string(b.user) + " has an empty substitute set");
    }
    for (OptId j : b.substitutes)
    {
      if (!catalog.contains(j))
      {
        throw CatalogMismatch("unknown optimization " + std::to_string(j));
      }
    }
    if (!users_seen.insert(b.user).second)
    {
      throw DomainError("user " + std::to_string(b.user) + " bids twice");
    }
  }
}

Game Game::only_opt(OptId opt) const
{
  if (kind != GameKind::additive)
  {
    throw DomainError("only additive games split per optimization");
  }
  Game out;
  out.catalog.add({opt, catalog.cost(opt)});
  out.horizon = horizon;
  out.kind    = kind;
  for (auto const &b : additive)
  {
    if (b.opt == opt)
    {
      out.additive.push_back(b);
    }
  }
  return out;
}

std::vector<AdditiveOfflineBid> collapse_additive(Game const &game)
{
  std::map<UserId, AdditiveOfflineBid> per_user;
  for (auto const &b : game.additive)
  {
    auto &offline = per_user[b.user];
    offline.user  = b.user;
    offline.values[b.opt] += b.total();
  }
  std::vector<AdditiveOfflineBid> out;
  out.reserve(per_user.size());
  for (auto &[user, bid] : per_user)
  {
    out.push_back(std::move(bid));
  }
  return out;
}

std::vector<SubstitutableOfflineBid> collapse_substitutable(Game const &game)
{
  std::vector<SubstitutableOfflineBid> out;
  for (auto const &b : game.substitutable)
  {
    Money total = b.total();
    if (total.is_positive())
    {
      out.push_back({b.user, b.substitutes, std::move(total)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](auto const &a, auto const &b) { return a.user < b.user; });
  return out;
}

}  // namespace cloudshare
