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
#include "cloudshare/rng.hpp"
#include "cloudshare/scenarios.hpp"

#include "unit/helpers.hpp"

#include <gtest/gtest.h>

namespace cloudshare {
namespace {

using testing::M;

TEST(RngTest, streams_are_reproducible_and_distinct)
{
  Rng a(1, 2, 3);
  Rng b(1, 2, 3);
  Rng c(1, 2, 4);
  Rng d(1, 3, 3);
  std::uint64_t xa = a.next();
  EXPECT_EQ(xa, b.next());
  EXPECT_NE(xa, c.next());
  EXPECT_NE(xa, d.next());

  // pinned values: mt19937_64 and SplitMix64 are fully specified
  std::uint64_t state = 0;
  EXPECT_EQ(splitmix64(state), 0xe220a8397b1dcdafULL);
}

TEST(RngTest, uniform_stays_in_range_and_covers_it)
{
  Rng                  rng(5, 0, 0);
  std::vector<int>     seen(7, 0);
  for (int i = 0; i < 7000; ++i)
  {
    auto x = rng.uniform(3, 9);
    ASSERT_GE(x, 3U);
    ASSERT_LE(x, 9U);
    ++seen[x - 3];
  }
  for (int count : seen)
  {
    EXPECT_GT(count, 800);
    EXPECT_LT(count, 1200);
  }
  double sum = 0;
  for (int i = 0; i < 20000; ++i)
  {
    sum += rng.exponential(1.2);
  }
  EXPECT_NEAR(sum / 20000, 1.2, 0.05);
}

TEST(ScenarioTest, collab_size_shape_and_determinism)
{
  ScenarioSpec spec;
  spec.seed   = 99;
  spec.trials = 5;
  Game g      = generate(spec, 3);
  EXPECT_EQ(g, generate(spec, 3));
  EXPECT_NE(g, generate(spec, 4));
  ASSERT_EQ(g.additive.size(), 6U);
  for (auto const &b : g.additive)
  {
    EXPECT_EQ(b.start, b.end);
    EXPECT_GE(b.start, 1U);
    EXPECT_LE(b.end, 12U);
    EXPECT_GE(b.total(), Money(0));
    EXPECT_LE(b.total(), Money(1));
  }
  EXPECT_THROW(generate(spec, 5), DomainError);
}

TEST(ScenarioTest, cost_sweeps_reuse_the_same_users)
{
  ScenarioSpec a;
  a.family    = Family::selectivity;
  a.opt_count = 12;
  a.substitutes_per_user = 3;
  a.trials    = 2;
  ScenarioSpec b = a;
  b.cost         = M("1.5");
  Game ga        = generate(a, 1);
  Game gb        = generate(b, 1);
  EXPECT_EQ(ga.substitutable, gb.substitutable);
  for (OptId j : ga.catalog.ids())
  {
    EXPECT_EQ(ga.catalog.cost(j) * Money(3), gb.catalog.cost(j));
  }
}

TEST(ScenarioTest, selectivity_picks_distinct_substitutes_and_bounded_costs)
{
  ScenarioSpec spec;
  spec.family               = Family::selectivity;
  spec.users                = 24;
  spec.opt_count            = 12;
  spec.substitutes_per_user = 3;
  spec.cost                 = M("0.36");
  spec.trials               = 50;
  for (std::uint64_t t = 0; t < spec.trials; ++t)
  {
    Game g = generate(spec, t);
    EXPECT_EQ(g.kind, GameKind::substitutable);
    for (auto const &b : g.substitutable)
    {
      EXPECT_EQ(b.substitutes.size(), 3U);
    }
    for (auto const &[j, c] : g.catalog.costs())
    {
      EXPECT_GT(c, Money(0));
      EXPECT_LE(c, M("0.72"));
    }
  }
}

TEST(ScenarioTest, duration_spread_divides_exactly)
{
  ScenarioSpec spec;
  spec.family   = Family::duration_spread;
  spec.duration = 7;
  spec.trials   = 20;
  for (std::uint64_t t = 0; t < spec.trials; ++t)
  {
    for (auto const &b : generate(spec, t).additive)
    {
      EXPECT_EQ(b.end - b.start + 1, 7U);
      EXPECT_LE(b.end, 12U);
      EXPECT_EQ(b.per_slot.front().times(7), b.total());
    }
  }
}

TEST(ScenarioTest, early_skew_statistics)
{
  ScenarioSpec spec;
  spec.family = Family::arrival_skew;
  spec.skew   = Skew::early;
  spec.trials = 1000;
  spec.seed   = 8;
  double sum  = 0;
  Slot   most = 0;
  for (std::uint64_t t = 0; t < spec.trials; ++t)
  {
    for (auto const &b : generate(spec, t).additive)
    {
      sum += b.start;
      most = std::max(most, b.start);
    }
  }
  EXPECT_LE(most, 12U);
  EXPECT_NEAR(sum / 6000.0, 2.2, 0.2);

  spec.skew = Skew::late;
  sum       = 0;
  for (std::uint64_t t = 0; t < spec.trials; ++t)
  {
    for (auto const &b : generate(spec, t).additive)
    {
      sum += b.start;
      EXPECT_GE(b.start, 1U);
    }
  }
  EXPECT_NEAR(sum / 6000.0, 10.8, 0.2);
}

TEST(ScenarioTest, usecase_shape_views)
{
  ScenarioSpec spec;
  spec.family     = Family::usecase_shape;
  spec.slots      = 4;
  spec.opt_count  = 27;
  spec.cost       = M("2.31");
  spec.executions = 90;
  spec.trials     = 3;
  Game g          = generate(spec, 0);
  EXPECT_EQ(g.catalog.size(), 27U);
  std::map<UserId, std::size_t> views;
  for (auto const &b : g.additive)
  {
    ++views[b.user];
    if (b.opt == 27 && b.user == 1)
    {
      EXPECT_EQ(b.per_slot.front(), M("16.2"));
    }
  }
  EXPECT_EQ(views.at(1), 27U);
  EXPECT_EQ(views.at(2), 14U);
  EXPECT_EQ(views.at(3), 7U);
  EXPECT_EQ(views.at(4), 27U);
}

TEST(ScenarioTest, validation_names_the_field)
{
  auto field_of = [](ScenarioSpec const &spec) {
    try
    {
      validate(spec);
    }
    catch (ConfigError const &e)
    {
      return e.field();
    }
    return std::string();
  };
  ScenarioSpec spec;
  spec.trials = 0;
  EXPECT_EQ(field_of(spec), "scenario.trials");
  spec          = {};
  spec.duration = 13;
  EXPECT_EQ(field_of(spec), "scenario.duration");
  spec                      = {};
  spec.family               = Family::selectivity;
  spec.opt_count            = 4;
  spec.substitutes_per_user = 5;
  EXPECT_EQ(field_of(spec), "scenario.substitutes_per_user");
  spec      = {};
  spec.cost = Money(0);
  EXPECT_EQ(field_of(spec), "scenario.cost");
  EXPECT_EQ(field_of(ScenarioSpec{}), "");
}

}  // namespace
}  // namespace cloudshare
