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

#include "cloudshare/harness/golden.hpp"

#include "cloudshare/mechanisms.hpp"
#include "cloudshare/metrics.hpp"
#include "cloudshare/strategy_lab.hpp"

#include <sstream>

namespace cloudshare::harness {

namespace {

std::vector<Money> amounts(std::initializer_list<char const *> texts)
{
  std::vector<Money> out;
  for (char const *t : texts)
  {
    out.push_back(Money::parse(t));
  }
  return out;
}

AdditiveOnlineBid additive(UserId u, OptId j, Slot s, Slot e, std::initializer_list<char const *> v)
{
  return {u, j, s, e, amounts(v)};
}

SubstitutableOnlineBid substitutable(UserId u, std::set<OptId> opts, Slot s, Slot e,
                                     std::initializer_list<char const *> v)
{
  return {u, std::move(opts), s, e, amounts(v)};
}

std::string join(std::vector<Money> const &values)
{
  std::string out;
  for (auto const &v : values)
  {
    out += (out.empty() ? "" : ",") + v.to_fraction();
  }
  return out;
}

std::string join(std::vector<UserId> const &users)
{
  std::string out;
  for (auto u : users)
  {
    out += (out.empty() ? "" : ",") + std::to_string(u);
  }
  return "{" + out + "}";
}

PropertyCheck check_payments(std::string name, Game const &game, MechanismId mechanism,
                             std::vector<UserId> const &users, std::vector<Money> const &expected)
{
  PropertyCheck check{std::move(name)};
  RunResult     run = run_mechanism(mechanism, game);
  std::vector<Money> got;
  for (UserId u : users)
  {
    got.push_back(run.ledger.total_for(u));
  }
  check.expect(got == expected, [&] { return witness(game, "payments " + join(got) + ", expected " + join(expected)); });
  return check;
}

}  // namespace

Game staggered_game()
{
  Game g;
  g.kind = GameKind::additive;
  g.catalog.add({1, Money(100)});
  g.horizon  = SlotHorizon(3);
  g.additive = {
      additive(1, 1, 1, 1, {"101"}),
      additive(2, 1, 1, 3, {"16", "16", "16"}),
      additive(3, 1, 2, 2, {"26"}),
      additive(4, 1, 2, 2, {"26"}),
  };
  return g;
}

Game substitutes_game()
{
  Game g;
  g.kind = GameKind::substitutable;
  g.catalog.add({1, Money(60)});
  g.catalog.add({2, Money(180)});
  g.catalog.add({3, Money(100)});
  g.substitutable = {
      substitutable(1, {1, 2}, 1, 1, {"100"}),
      substitutable(2, {3}, 1, 1, {"101"}),
      substitutable(3, {1, 2, 3}, 1, 1, {"60"}),
      substitutable(4, {2}, 1, 1, {"70"}),
  };
  return g;
}

Game pinned_game(bool with_user4)
{
  Game g;
  g.kind = GameKind::substitutable;
  g.catalog.add({1, Money(60)});
  g.catalog.add({2, Money(100)});
  g.catalog.add({3, Money(50)});
  g.horizon       = SlotHorizon(3);
  g.substitutable = {
      substitutable(1, {1, 2}, 1, 2, {"50", "50"}),
      substitutable(2, {1, 2, 3}, 2, 3, {"50", "50"}),
      substitutable(3, {3}, 3, 3, {"100"}),
  };
  if (with_user4)
  {
    g.substitutable.push_back(substitutable(4, {3}, 3, 3, {"100"}));
  }
  return g;
}

Game split_bidder_game(bool dummy)
{
  Game g;
  g.kind = GameKind::additive;
  g.catalog.add({1, Money(101)});
  g.additive.push_back(additive(1, 1, 1, 1, {"101"}));
  for (UserId u = 2; u <= 100; ++u)
  {
    g.additive.push_back(additive(u, 1, 1, 1, {"1"}));
  }
  if (dummy)
  {
    g.additive.push_back(additive(101, 1, 1, 1, {"101"}));
  }
  return g;
}

Game dummy_game()
{
  Game g;
  g.kind = GameKind::substitutable;
  g.catalog.add({1, Money(6)});
  g.catalog.add({2, Money(5)});
  g.substitutable = {
      substitutable(1, {1}, 1, 1, {"5"}),
      substitutable(2, {1, 2}, 1, 1, {"2.51"}),
      substitutable(3, {2}, 1, 1, {"7"}),
  };
  return g;
}

std::vector<PropertyCheck> golden_checks()
{
  std::vector<PropertyCheck> out;

  Game ex3 = staggered_game();
  out.push_back(check_payments("staggered.add_on.payments", ex3, MechanismId::add_on, {1, 2, 3, 4},
                               amounts({"100", "25", "25", "25"})));
  {
    PropertyCheck check{"staggered.add_on.cumulative_sets"};
    RunResult     run = run_mechanism(MechanismId::add_on, ex3);
    std::string   got;
    for (Slot t = 1; t <= 3; ++t)
    {
      got += join(run.schedule.cumulative(1, t));
    }
    check.expect(got == "{1}{1,2,3,4}{1,2,3,4}", [&] { return witness(ex3, "cumulative sets " + got); });
    out.push_back(check);
  }

  Game ex5 = substitutes_game();
  {
    PropertyCheck check{"substitutes.subst_off.implemented"};
    RunResult     run = run_mechanism(MechanismId::subst_off, ex5);
    check.expect(run.implemented == std::set<OptId>{1, 3}, [&] { return witness(ex5, "implemented set differs"); });
    out.push_back(check);
  }
  out.push_back(check_payments("substitutes.subst_off.payments", ex5, MechanismId::subst_off,
                               {1, 2, 3, 4}, amounts({"30", "100", "30", "0"})));

  out.push_back(check_payments("pinned.subst_on.payments", pinned_game(false),
                               MechanismId::subst_on, {1, 2, 3}, amounts({"30", "30", "50"})));
  out.push_back(check_payments("pinned_extra_user.subst_on.payments", pinned_game(true),
                               MechanismId::subst_on, {2, 3, 4}, amounts({"30", "25", "25"})));

  {
    PropertyCheck check{"split_bidder.add_off.one_identity"};
    Game          g   = split_bidder_game();
    RunResult     run = run_mechanism(MechanismId::add_off, g);
    bool ok = run.schedule.served(1, 1) == std::vector<UserId>{1} && run.ledger.total_for(1) == Money(101);
    check.expect(ok, [&] { return witness(g, "expected the lone bidder alone at 101"); });
    out.push_back(check);
  }
  {
    PropertyCheck check{"split_bidder.add_off.two_identities"};
    Game          g   = split_bidder_game();
    RunResult     run = run_mechanism(MechanismId::add_off, split_bidder_game(true));
    bool ok = run.schedule.served(1, 1).size() == 101 && run.ledger.of(2, 1) == Money(1) &&
              run.ledger.of(101, 1) == Money(1);
    SplitOutcome split = evaluate_split(MechanismId::add_off, g, 1, {Money(1), Money(1)});
    ok = ok && split.splitter_utility == Money(99);
    for (auto const &[u, utility] : split.utilities)
    {
      ok = ok && utility == Money(0);
    }
    check.expect(ok, [&] { return witness(g, "split utility " + split.splitter_utility.to_fraction()); });
    out.push_back(check);
  }
  {
    PropertyCheck check{"dummy.subst_off.harm"};
    Game          g      = dummy_game();
    SplitOutcome  truth  = evaluate_split(MechanismId::subst_off, g, 1, {Money(1)});
    SplitOutcome  halves = evaluate_split(MechanismId::subst_off, g, 1,
                                          {Money::from_fraction(1, 2), Money::from_fraction(1, 2)});
    Money before = truth.utilities.at(3);
    Money after  = halves.utilities.at(3);
    check.expect(before == Money::parse("4.5") && after == Money(2), [&] { return witness(g, "user 3 utility " + before.to_fraction() + " -> " + after.to_fraction()); });
    out.push_back(check);
  }
  return out;
}

}  // namespace cloudshare::harness
