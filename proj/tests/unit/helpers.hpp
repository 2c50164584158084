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

#include "cloudshare/game.hpp"
#include "cloudshare/money.hpp"
#include "cloudshare/types.hpp"

#include <initializer_list>
#include <string_view>
#include <vector>

namespace cloudshare::testing {

inline Money M(std::string_view text)
{
  return Money::parse(text);
}

inline std::vector<Money> Ms(std::initializer_list<std::string_view> texts)
{
  std::vector<Money> out;
  for (auto t : texts)
  {
    out.push_back(Money::parse(t));
  }
  return out;
}

inline AdditiveOnlineBid online(UserId user, OptId opt, Slot start, Slot end,
                                std::initializer_list<std::string_view> values)
{
  return {user, opt, start, end, Ms(values)};
}

inline SubstitutableOnlineBid subst(UserId user, std::set<OptId> opts, Slot start, Slot end,
                                    std::initializer_list<std::string_view> values)
{
  return {user, std::move(opts), start, end, Ms(values)};
}

/// One optimization of cost 100 over 3 slots.
inline Game staggered()
{
  Game g;
  g.catalog.add({1, Money(100)});
  g.horizon  = SlotHorizon(3);
  g.kind     = GameKind::additive;
  g.additive = {
      online(1, 1, 1, 1, {"101"}),
      online(2, 1, 1, 3, {"16", "16", "16"}),
      online(3, 1, 2, 2, {"26"}),
      online(4, 1, 2, 2, {"26"}),
  };
  return g;
}

/// Three substitutable optimizations over 3 slots; each total is spread evenly.
inline Game pinned(bool with_user4 = false)
{
  Game g;
  g.catalog.add({1, Money(60)});
  g.catalog.add({2, Money(100)});
  g.catalog.add({3, Money(50)});
  g.horizon       = SlotHorizon(3);
  g.kind          = GameKind::substitutable;
  g.substitutable = {
      subst(1, {1, 2}, 1, 2, {"50", "50"}),
      subst(2, {1, 2, 3}, 2, 3, {"50", "50"}),
      subst(3, {3}, 3, 3, {"100"}),
  };
  if (with_user4)
  {
    g.substitutable.push_back(subst(4, {3}, 3, 3, {"100"}));
  }
  return g;
}

}  // namespace cloudshare::testing
