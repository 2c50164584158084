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

#include <set>
#include <string_view>
#include <vector>

namespace cloudshare {

enum class GameKind
{
  additive,
  substitutable,
};

std::string_view to_string(GameKind kind);

/// A full game over one pricing period. Additive games carry one online bid
/// per (user, optimization); substitutable games one bid per user. Offline
/// mechanisms see the game through its collapse.
struct Game
{
  Catalog                             catalog;
  SlotHorizon                         horizon;
  GameKind                            kind{GameKind::additive};
  std::vector<AdditiveOnlineBid>      additive;
  std::vector<SubstitutableOnlineBid> substitutable;

  std::set<UserId> users() const;
  UserId           max_user() const;

  /// Throws DomainError / CatalogMismatch when bids do not fit the catalog
  /// and horizon, or a user appears twice for the same optimization.
  void validate() const;

  /// Restriction to one optimization (additive games only).
  Game only_opt(OptId opt) const;

  friend bool operator==(Game const &, Game const &) = default;
};

/// Per-user offline bids: each value is the bid's total over its slots.
std::vector<AdditiveOfflineBid> collapse_additive(Game const &game);

/// Users whose total is zero are dropped; the offline mechanism requires
/// positive values.
std::vector<SubstitutableOfflineBid> collapse_substitutable(Game const &game);

}  // namespace cloudshare
