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
#include "cloudshare/mechanisms.hpp"
#include "cloudshare/metrics.hpp"
#include "cloudshare/oracle.hpp"
#include "cloudshare/regret.hpp"
#include "cloudshare/strategy_lab.hpp"
#include "cloudshare/substitutable.hpp"

#include "unit/helpers.hpp"

#include <gtest/gtest.h>

namespace cloudshare {
namespace {

using testing::M;

TEST(ScoreTest, staggered_add_on)
{
  Game    g = testing::staggered();
  Metrics m = score(g, run_mechanism(MechanismId::add_on, g));
  EXPECT_EQ(m.total_value, Money(185));
  EXPECT_EQ(m.total_cost, Money(100));
  EXPECT_EQ(m.total_utility, Money(85));
  // payments 100 + 25 + 25 + 25 against a cost of 100
  EXPECT_EQ(m.cloud_balance, Money(75));
  EXPECT_EQ(m.per_user_utility.at(1), Money(1));
  EXPECT_EQ(m.per_user_utility.at(2), Money(7));
  EXPECT_EQ(m.per_user_utility.at(3), Money(1));
  EXPECT_EQ(m.per_user_utility.at(4), Money(1));
}

TEST(ScoreTest, pinned_subst_on_balances)
{
  Game    g = testing::pinned();
  Metrics m = score(g, run_mechanism(MechanismId::subst_on, g));
  EXPECT_EQ(m.total_cost, Money(110));
  EXPECT_EQ(m.cloud_balance, Money(0));
  EXPECT_EQ(m.total_value, Money(300));
}

TEST(ScoreTest, empty_schedule_scores_zero)
{
  Game    g = testing::staggered();
  Metrics m = score(g, ServiceSchedule(3), PaymentLedger{}, {});
  EXPECT_TRUE(m.total_value.is_zero());
  EXPECT_TRUE(m.total_utility.is_zero());
  EXPECT_TRUE(m.cloud_balance.is_zero());
  for (auto const &[u, utility] : m.per_user_utility)
  {
    EXPECT_TRUE(utility.is_zero());
  }
}

TEST(ScoreTest, unknown_users_are_rejected)
{
  Game            g = testing::staggered();
  ServiceSchedule s(3);
  s.record(1, 1, {9});
  EXPECT_THROW(score(g, s, PaymentLedger{}, {1}), DomainError);
  PaymentLedger l;
  l.charge(9, 1, Money(1));
  EXPECT_THROW(score(g, ServiceSchedule(3), l, {}), DomainError);
}

TEST(ScoreTest, schedule_and_outcome_scoring_agree_for_offline_mechanisms)
{
  for (GameKind kind : {GameKind::additive, GameKind::substitutable})
  {
    CorpusSpec spec;
    spec.kind = kind;
    for (std::uint64_t i = 0; i < 300; ++i)
    {
      Game    g = corpus_game(spec, 41, i);
      Metrics via_schedule;
      Metrics via_outcome;
      if (kind == GameKind::additive)
      {
        auto bids    = collapse_additive(g);
        auto res     = add_off(g.catalog, bids);
        via_outcome  = score_offline(g.catalog, bids, res.outcome, res.payments);
        via_schedule = score(g, run_mechanism(MechanismId::add_off, g));
      }
      else
      {
        auto bids    = collapse_substitutable(g);
        auto res     = subst_off(g.catalog, std::span<SubstitutableOfflineBid const>(bids));
        via_outcome  = score_offline(g.catalog, bids, res.outcome, res.payments);
        via_schedule = score(g, run_mechanism(MechanismId::subst_off, g));
      }
      EXPECT_EQ(via_schedule.total_value, via_outcome.total_value);
      EXPECT_EQ(via_schedule.cloud_balance, via_outcome.cloud_balance);
      EXPECT_EQ(via_schedule.total_utility, via_outcome.total_utility);
    }
  }
}

TEST(ScoreTest, regret_balance_matches_its_trace)
{
  CorpusSpec spec;
  spec.max_slots = 5;
  for (std::uint64_t i = 0; i < 200; ++i)
  {
    Game g     = corpus_game(spec, 43, i);
    auto trace = regret_run(g.catalog, g.horizon, std::span<AdditiveOnlineBid const>(g.additive));
    Metrics m  = score(g, run_mechanism(MechanismId::regret, g));
    EXPECT_EQ(m.cloud_balance, trace.cloud_balance);

    Money realized;
    for (auto const &b : g.additive)
    {
      for (Slot t = b.start; t <= b.end; ++t)
      {
        auto const &s = trace.serviced.served(b.opt, t);
        if (std::find(s.begin(), s.end(), b.user) != s.end())
        {
          realized += b.value_at(t);
        }
      }
    }
    EXPECT_EQ(m.total_value, realized);
  }
}

TEST(EfficientOutcomeTest, small_examples)
{
  Catalog                         one{{1, Money(100)}};
  std::vector<AdditiveOfflineBid> single{{1, {{1, Money(101)}}}};
  EXPECT_EQ(efficient_outcome(one, single).utility, Money(1));

  std::vector<AdditiveOfflineBid> pair{{1, {{1, Money(60)}}}, {2, {{1, Money(50)}}}};
  auto                            best = efficient_outcome(one, pair);
  EXPECT_EQ(best.utility, Money(10));
  EXPECT_EQ(best.outcome.grants, (std::set<GrantPair>{{1, 1}, {2, 1}}));
  EXPECT_EQ(best.alternatives, 4U);

  Catalog                              ex5{{1, Money(60)}, {2, Money(180)}, {3, Money(100)}};
  std::vector<SubstitutableOfflineBid> ex5_bids{
      {1, {1, 2}, Money(100)}, {2, {3}, Money(101)}, {3, {1, 2, 3}, Money(60)}, {4, {2}, Money(70)}};
  auto opt = efficient_outcome(ex5, std::span<SubstitutableOfflineBid const>(ex5_bids));
  auto mech = subst_off(ex5, std::span<SubstitutableOfflineBid const>(ex5_bids));
  Money mech_utility = score_offline(ex5, ex5_bids, mech.outcome, mech.payments).total_utility;
  EXPECT_GE(opt.utility, mech_utility);
  EXPECT_EQ(opt.utility, Money(101));  // {1,3} on opt 1 and user 2 on opt 3
}

TEST(EfficientOutcomeTest, guard_rejects_large_instances)
{
  Catalog catalog;
  for (OptId j = 1; j <= 3; ++j)
  {
    catalog.add({j, Money(1)});
  }
  std::vector<AdditiveOfflineBid> bids;
  for (UserId u = 1; u <= 7; ++u)
  {
    bids.push_back({u, {}});
  }
  EXPECT_THROW(efficient_outcome(catalog, bids), GuardError);
}

// Additive welfare separates per optimization, which gives a closed-form check.
TEST(EfficientOutcomeTest, additive_matches_closed_form)
{
  CorpusSpec spec;
  spec.max_users = 5;
  spec.max_opts  = 4;
  for (std::uint64_t i = 0; i < 200; ++i)
  {
    Game  g    = corpus_game(spec, 47, i);
    auto  bids = collapse_additive(g);
    Money expected;
    for (auto const &[j, cost] : g.catalog.costs())
    {
      Money column;
      for (auto const &b : bids)
      {
        column += b.value_for(j);
      }
      expected += max(column - cost, Money());
    }
    EXPECT_EQ(efficient_outcome(g.catalog, bids).utility, expected);
  }
}

TEST(EfficientOutcomeTest, dominates_every_mechanism)
{
  for (GameKind kind : {GameKind::additive, GameKind::substitutable})
  {
    CorpusSpec spec;
    spec.kind = kind;
    for (std::uint64_t i = 0; i < 200; ++i)
    {
      Game  g = corpus_game(spec, 53, i);
      Money best;
      if (kind == GameKind::additive)
      {
        best = efficient_outcome(g.catalog, collapse_additive(g)).utility;
      }
      else
      {
        auto bids = collapse_substitutable(g);
        best      = efficient_outcome(g.catalog, std::span<SubstitutableOfflineBid const>(bids)).utility;
      }
      for (MechanismId id : {MechanismId::add_off, MechanismId::add_on, MechanismId::subst_off,
                             MechanismId::subst_on, MechanismId::regret})
      {
        if (accepts(id, kind))
        {
          EXPECT_GE(best, score(g, run_mechanism(id, g)).total_utility) << to_string(id);
        }
      }
    }
  }
}

TEST(MechanismTest, names_round_trip_and_kinds_are_checked)
{
  for (MechanismId id : {MechanismId::add_off, MechanismId::add_on, MechanismId::subst_off,
                         MechanismId::subst_on, MechanismId::regret, MechanismId::naive_first_price})
  {
    EXPECT_EQ(parse_mechanism(to_string(id)), id);
  }
  EXPECT_FALSE(parse_mechanism("vcg").has_value());
  EXPECT_THROW(run_mechanism(MechanismId::subst_on, testing::staggered()), DomainError);
  EXPECT_THROW(run_mechanism(MechanismId::add_on, testing::pinned()), DomainError);
}

TEST(MechanismTest, relabel_merges_identities)
{
  RunResult r;
  r.implemented = {1};
  r.schedule    = ServiceSchedule(2);
  r.schedule.record(1, 1, {5, 6});
  r.schedule.record(1, 2, {6});
  r.ledger.charge(5, 1, Money(2));
  r.ledger.charge(6, 1, Money(3));
  RunResult merged = relabel(r, {{5, 1}, {6, 1}});
  EXPECT_EQ(merged.schedule.served(1, 1), (std::vector<UserId>{1}));
  EXPECT_EQ(merged.ledger.of(1, 1), Money(5));
}

}  // namespace
}  // namespace cloudshare
