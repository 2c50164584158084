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
#include "cloudshare/rng.hpp"
#include "cloudshare/strategy_lab.hpp"

#include "unit/helpers.hpp"

#include <gtest/gtest.h>

namespace cloudshare {
namespace {

using testing::M;
using testing::online;

OnlineAdditiveGame single(Game const &g)
{
  return {{1, g.catalog.cost(1)}, g.horizon, g.additive};
}

TEST(AddOnTest, staggered_arrivals_trace)
{
  OnlineTrace trace = add_on(single(testing::staggered()));
  using V           = std::vector<UserId>;
  EXPECT_EQ(trace.schedule.cumulative(1, 1), (V{1}));
  EXPECT_EQ(trace.schedule.cumulative(1, 2), (V{1, 2, 3, 4}));
  EXPECT_EQ(trace.schedule.cumulative(1, 3), (V{1, 2, 3, 4}));
  EXPECT_EQ(trace.schedule.served(1, 1), (V{1}));
  EXPECT_EQ(trace.schedule.served(1, 2), (V{2, 3, 4}));
  EXPECT_EQ(trace.schedule.served(1, 3), (V{2}));
  EXPECT_EQ(trace.payments.at(1), Money(100));
  EXPECT_EQ(trace.payments.at(2), Money(25));
  EXPECT_EQ(trace.payments.at(3), Money(25));
  EXPECT_EQ(trace.payments.at(4), Money(25));
  EXPECT_EQ(trace.charged_at.at(1), 1U);
  EXPECT_EQ(trace.charged_at.at(2), 3U);
  EXPECT_EQ(trace.share_history[0], Money(100));
  EXPECT_EQ(trace.share_history[1], Money(25));
}

TEST(AddOnTest, overbid_gains_only_with_known_future)
{
  Game g             = testing::staggered();
  g.additive[1]      = online(2, 1, 1, 3, {"17", "17", "17"});
  OnlineTrace trace  = add_on(single(g));
  EXPECT_EQ(trace.schedule.served(1, 1), (std::vector<UserId>{1, 2}));
  EXPECT_EQ(trace.payments.at(2), Money(25));

  // with no later arrivals an overbid of 50 costs her the full half share
  Game empty        = empty_future(testing::staggered(), 2, 1);
  empty.additive[1] = online(2, 1, 1, 3, {"50", "0", "0"});
  OnlineTrace worst = add_on(single(empty));
  EXPECT_EQ(worst.payments.at(2), Money(50));
}

TEST(AddOnTest, departed_users_stay_pinned)
{
  Game g;
  g.catalog.add({1, Money(90)});
  g.horizon  = SlotHorizon(3);
  g.additive = {online(1, 1, 1, 1, {"90"}), online(2, 1, 3, 3, {"45"})};
  OnlineTrace trace = add_on(single(g));
  EXPECT_EQ(trace.payments.at(1), Money(90));  // charged before user 2 shows up
  EXPECT_EQ(trace.payments.at(2), Money(45));
  EXPECT_EQ(trace.schedule.cumulative(1, 3), (std::vector<UserId>{1, 2}));
  EXPECT_EQ(trace.schedule.served(1, 3), (std::vector<UserId>{2}));
}

TEST(AddOnTest, single_slot_equals_shapley)
{
  Rng rng(3, 0, 0);
  for (int trial = 0; trial < 500; ++trial)
  {
    OnlineAdditiveGame   game{{1, Money(static_cast<std::int64_t>(rng.uniform(1, 30)))}, SlotHorizon(1), {}};
    std::vector<UserBid> offline;
    std::size_t          n = rng.uniform(0, 6);
    for (UserId u = 1; u <= n; ++u)
    {
      Money v(static_cast<std::int64_t>(rng.uniform(0, 12)));
      game.bids.push_back({u, 1, 1, 1, {v}});
      offline.push_back({u, v});
    }
    OnlineTrace   trace = add_on(game);
    ShapleyResult run   = shapley(game.optimization.cost, offline);
    EXPECT_EQ(trace.schedule.served(1, 1), run.serviced);
    for (UserId u = 1; u <= n; ++u)
    {
      EXPECT_EQ(trace.payments.at(u), run.payment(u));
    }
  }
}

TEST(AddOnTest, random_games_recover_cost_and_stay_individually_rational)
{
  CorpusSpec spec;
  spec.max_users = 6;
  spec.max_opts  = 1;
  spec.max_slots = 5;
  for (std::uint64_t i = 0; i < 500; ++i)
  {
    Game        g     = corpus_game(spec, 21, i);
    OnlineTrace trace = add_on(single(g));
    EXPECT_FALSE(check_schedule(trace.schedule).has_value());
    Money paid;
    for (auto const &b : g.additive)
    {
      Money p = trace.payments.at(b.user);
      EXPECT_LE(p, b.total());
      paid += p;
    }
    bool implemented = !trace.schedule.cumulative(1, g.horizon.z()).empty();
    if (implemented)
    {
      EXPECT_GE(paid, g.catalog.cost(1));
    }
    else
    {
      EXPECT_EQ(paid, Money(0));
    }
  }
}

TEST(OnlineSessionTest, replay_without_revisions_matches_batch)
{
  CorpusSpec spec;
  spec.max_users = 5;
  spec.max_opts  = 1;
  spec.max_slots = 4;
  for (std::uint64_t i = 0; i < 300; ++i)
  {
    Game          g = corpus_game(spec, 5, i);
    OnlineSession session({1, g.catalog.cost(1)}, g.horizon);
    for (Slot t = 1; t <= g.horizon.z(); ++t)
    {
      std::vector<AdditiveOnlineBid> arriving;
      for (auto const &b : g.additive)
      {
        if (b.start == t)
        {
          arriving.push_back(b);
        }
      }
      if (!arriving.empty())
      {
        session.step(t, arriving);
      }
    }
    OnlineTrace const &stepped = session.finish();
    OnlineTrace        batch   = add_on(single(g));
    EXPECT_EQ(stepped.schedule, batch.schedule);
    EXPECT_EQ(stepped.payments, batch.payments);
  }
}

TEST(OnlineSessionTest, upward_revision_is_applied_from_now_on)
{
  OnlineSession                  s({1, Money(100)}, SlotHorizon(3));
  std::vector<AdditiveOnlineBid> first{online(1, 1, 1, 2, {"30", "30"})};
  EXPECT_TRUE(s.step(1, first).serviced.empty());

  std::vector<AdditiveOnlineBid> revised{online(1, 1, 1, 3, {"30", "60", "50"})};
  auto                           step2 = s.step(2, revised);
  EXPECT_EQ(step2.serviced, (std::vector<UserId>{1}));
  EXPECT_TRUE(step2.departures.empty());  // end moved to slot 3

  auto const &trace = s.finish();
  EXPECT_EQ(trace.payments.at(1), Money(100));
  EXPECT_EQ(trace.charged_at.at(1), 3U);
  EXPECT_EQ(trace.schedule.served(1, 3), (std::vector<UserId>{1}));
}

TEST(OnlineSessionTest, illegal_feeds_are_rejected_atomically)
{
  OnlineSession                  s({1, Money(100)}, SlotHorizon(4));
  std::vector<AdditiveOnlineBid> first{online(1, 1, 1, 2, {"30", "30"})};
  s.step(1, first);

  std::vector<AdditiveOnlineBid> retro{online(1, 1, 1, 2, {"31", "30"})};
  EXPECT_THROW(s.step(2, retro), RevisionError);
  std::vector<AdditiveOnlineBid> down{online(1, 1, 1, 2, {"30", "29"})};
  EXPECT_THROW(s.step(2, down), RevisionError);
  std::vector<AdditiveOnlineBid> late{online(2, 1, 1, 2, {"30", "30"})};
  EXPECT_THROW(s.step(2, late), RevisionError);
  std::vector<AdditiveOnlineBid> twice{online(3, 1, 2, 2, {"1"}), online(3, 1, 2, 2, {"2"})};
  EXPECT_THROW(s.step(2, twice), RevisionError);

  // the valid first bid must not be applied when the second one fails
  std::vector<AdditiveOnlineBid> mixed{online(4, 1, 2, 2, {"200"}), online(1, 1, 1, 2, {"0", "30"})};
  EXPECT_THROW(s.step(2, mixed), RevisionError);
  EXPECT_EQ(s.last_slot(), 1U);

  s.step(3);
  std::vector<AdditiveOnlineBid> expired{online(1, 1, 1, 3, {"30", "30", "90"})};
  EXPECT_THROW(s.step(4, expired), RevisionError);
  EXPECT_THROW(s.step(3), SequencingError);
  EXPECT_THROW(s.step(5), SequencingError);
  EXPECT_TRUE(s.finish().payments.at(1).is_zero());
}

TEST(OnlineSessionTest, skipped_slots_do_not_see_later_bids)
{
  OnlineSession                  s({1, Money(10)}, SlotHorizon(3));
  std::vector<AdditiveOnlineBid> bids{online(1, 1, 3, 3, {"10"})};
  auto                           step = s.step(3, bids);
  EXPECT_EQ(step.serviced, (std::vector<UserId>{1}));
  EXPECT_TRUE(s.trace().schedule.served(1, 1).empty());
  EXPECT_TRUE(s.trace().schedule.served(1, 2).empty());
  EXPECT_FALSE(s.trace().share_history[1].has_value());
}

}  // namespace
}  // namespace cloudshare
