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

#include "cloudshare/errors.hpp"
#include "cloudshare/strategy_lab.hpp"

#include "unit/helpers.hpp"

#include <gtest/gtest.h>

namespace cloudshare {
namespace {

using testing::M;
using testing::online;
using testing::subst;

Game two_bidders()
{
  Game g;
  g.catalog.add({1, Money(100)});
  g.additive = {online(1, 1, 1, 1, {"60"}), online(2, 1, 1, 1, {"50"})};
  return g;
}

Game split_bidder_game(bool dummy = false)
{
  Game g;
  g.catalog.add({1, Money(101)});
  g.additive.push_back(online(1, 1, 1, 1, {"101"}));
  for (UserId u = 2; u <= 100; ++u)
  {
    g.additive.push_back(online(u, 1, 1, 1, {"1"}));
  }
  if (dummy)
  {
    g.additive.push_back(online(101, 1, 1, 1, {"101"}));
  }
  return g;
}

Game dummy_counterexample()
{
  Game g;
  g.kind = GameKind::substitutable;
  g.catalog.add({1, Money(6)});
  g.catalog.add({2, Money(5)});
  g.substitutable = {
      subst(1, {1}, 1, 1, {"5"}),
      subst(2, {1, 2}, 1, 1, {"2.51"}),
      subst(3, {2}, 1, 1, {"7"}),
  };
  return g;
}

TEST(DeviationSearchTest, shapley_grid_finds_no_gain)
{
  for (MechanismId id : {MechanismId::add_off, MechanismId::add_on})
  {
    auto r = deviation_search(id, two_bidders(), 1);
    EXPECT_EQ(r.truthful_utility, Money(10));
    EXPECT_FALSE(r.profitable()) << to_string(id) << ": " << r.best_bid;
    EXPECT_GT(r.evaluated, 20U);
  }
}

TEST(DeviationSearchTest, pay_your_bid_control_is_caught)
{
  auto r = deviation_search(MechanismId::naive_first_price, two_bidders(), 1);
  EXPECT_TRUE(r.profitable());
  EXPECT_EQ(r.truthful_utility, Money(0));
  EXPECT_EQ(r.best_utility, Money(6));  // bids 54, the lowest grid level that keeps 100 covered
}

TEST(DeviationSearchTest, zero_value_deviator_cannot_gain)
{
  Game g = two_bidders();
  g.additive.push_back(online(3, 1, 1, 1, {"0"}));
  for (MechanismId id : {MechanismId::add_off, MechanismId::add_on, MechanismId::naive_first_price})
  {
    auto r = deviation_search(id, g, 3);
    EXPECT_EQ(r.truthful_utility, Money(0));
    EXPECT_LE(r.best_utility, Money(0)) << to_string(id);
  }
}

TEST(DeviationSearchTest, online_search_uses_the_empty_future)
{
  // Overbidding pays off only because users 3 and 4 arrive later
  Game g = testing::staggered();
  auto r = deviation_search(MechanismId::add_on, g, 2);
  EXPECT_EQ(r.truthful_utility, Money(0));
  EXPECT_FALSE(r.profitable()) << r.best_bid;

  Game future = empty_future(g, 2, 1);
  EXPECT_EQ(future.additive.size(), 2U);
}

TEST(DeviationSearchTest, substitutable_mechanisms_on_three_substitutes)
{
  Game g;
  g.kind = GameKind::substitutable;
  g.catalog.add({1, Money(60)});
  g.catalog.add({2, Money(180)});
  g.catalog.add({3, Money(100)});
  g.substitutable = {
      subst(1, {1, 2}, 1, 1, {"100"}),
      subst(2, {3}, 1, 1, {"101"}),
      subst(3, {1, 2, 3}, 1, 1, {"60"}),
      subst(4, {2}, 1, 1, {"70"}),
  };
  for (MechanismId id : {MechanismId::subst_off, MechanismId::subst_on})
  {
    for (UserId u = 1; u <= 4; ++u)
    {
      auto r = deviation_search(id, g, u);
      EXPECT_FALSE(r.profitable()) << to_string(id) << " user " << u << ": " << r.best_bid;
    }
  }
  EXPECT_THROW(deviation_search(MechanismId::regret, g, 1), DomainError);
}

TEST(MultiIdentityTest, split_bidder_gains_without_hurting_anyone)
{
  for (MechanismId id : {MechanismId::add_off, MechanismId::add_on})
  {
    SplitOutcome one = evaluate_split(id, split_bidder_game(), 1, {Money(1)});
    EXPECT_EQ(one.splitter_utility, Money(0));
    SplitOutcome two = evaluate_split(id, split_bidder_game(), 1, {Money(1), Money(1)});
    EXPECT_EQ(two.splitter_utility, Money(99));
    for (auto const &[u, utility] : two.utilities)
    {
      EXPECT_EQ(utility, Money(0));  // value 1, share 1
    }
  }
  RunResult split = run_mechanism(MechanismId::add_off, split_bidder_game(true));
  EXPECT_EQ(split.schedule.served(1, 1).size(), 101U);
  EXPECT_EQ(split.ledger.of(2, 1), Money(1));
}

TEST(MultiIdentityTest, additive_probe_finds_no_harmful_gain)
{
  Game g = testing::staggered();
  for (MechanismId id : {MechanismId::add_off, MechanismId::add_on})
  {
    for (UserId u = 1; u <= 4; ++u)
    {
      HarmReport r = multi_identity_probe(id, g, u, 2);
      EXPECT_EQ(r.violations, 0U) << to_string(id) << " user " << u;
      EXPECT_EQ(r.splits_evaluated, 231U);
    }
  }
}

TEST(MultiIdentityTest, substitutable_dummies_can_hurt_others)
{
  Game         g     = dummy_counterexample();
  SplitOutcome truth = evaluate_split(MechanismId::subst_off, g, 1, {Money(1)});
  EXPECT_EQ(truth.splitter_utility, Money(0));
  EXPECT_EQ(truth.utilities.at(2), M("0.01"));
  EXPECT_EQ(truth.utilities.at(3), M("4.5"));

  SplitOutcome halves = evaluate_split(MechanismId::subst_off, g, 1, {M("0.5"), M("0.5")});
  EXPECT_EQ(halves.splitter_utility, Money(1));
  EXPECT_EQ(halves.utilities.at(2), M("0.51"));
  EXPECT_EQ(halves.utilities.at(3), Money(2));

  HarmReport r = multi_identity_probe(MechanismId::subst_off, g, 1, 2);
  EXPECT_GT(r.violations, 0U);
  ASSERT_TRUE(r.first_violation.has_value());
  EXPECT_LT(r.first_violation->utilities.at(3), M("4.5"));
}

TEST(MultiIdentityTest, single_identity_is_the_identity)
{
  Game       g = testing::staggered();
  HarmReport r = multi_identity_probe(MechanismId::add_on, g, 2, 1, 11);
  EXPECT_EQ(r.splits_evaluated, 11U);
  SplitOutcome same = evaluate_split(MechanismId::add_on, g, 2, {Money(1)});
  Metrics      m    = score(g, run_mechanism(MechanismId::add_on, g));
  EXPECT_EQ(same.splitter_utility, m.per_user_utility.at(2));
  for (auto const &[u, utility] : same.utilities)
  {
    EXPECT_EQ(utility, m.per_user_utility.at(u));
  }
}

TEST(CorpusTest, games_are_deterministic_and_valid)
{
  for (GameKind kind : {GameKind::additive, GameKind::substitutable})
  {
    CorpusSpec spec;
    spec.kind = kind;
    for (std::uint64_t i = 0; i < 200; ++i)
    {
      Game a = corpus_game(spec, 1, i);
      EXPECT_EQ(a, corpus_game(spec, 1, i));
      EXPECT_NO_THROW(a.validate());
      EXPECT_LE(a.users().size(), 4U);
      EXPECT_LE(a.catalog.size(), 3U);
      EXPECT_LE(a.horizon.z(), 3U);
    }
  }
}

}  // namespace
}  // namespace cloudshare
