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
#include "cloudshare/shapley.hpp"

#include "unit/helpers.hpp"

#include <gtest/gtest.h>

namespace cloudshare {
namespace {

using testing::M;

std::vector<UserBid> bids_of(std::initializer_list<std::pair<UserId, char const *>> entries)
{
  std::vector<UserBid> out;
  for (auto const &[u, v] : entries)
  {
    out.push_back({u, std::string_view(v) == "inf" ? BidValue::infinite() : BidValue{M(v)}});
  }
  return out;
}

// Oracle: the largest subset in which every member can afford cost / |S|.
// Feasible sets are closed under union, so the largest one is unique.
std::vector<UserId> largest_feasible(Money const &cost, std::vector<UserBid> const &bids)
{
  std::vector<UserId> best;
  std::size_t         n = bids.size();
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask)
  {
    std::vector<UserId> members;
    for (std::size_t i = 0; i < n; ++i)
    {
      if (mask >> i & 1U)
      {
        members.push_back(bids[i].user);
      }
    }
    Money share    = cost.divided_by(static_cast<std::int64_t>(members.size()));
    bool  feasible = true;
    for (std::size_t i = 0; i < n; ++i)
    {
      if ((mask >> i & 1U) && !bids[i].bid.covers(share))
      {
        feasible = false;
      }
    }
    if (feasible && members.size() > best.size())
    {
      std::sort(members.begin(), members.end());
      best = members;
    }
  }
  return best;
}

TEST(ShapleyTest, evicts_until_stable)
{
  auto r = shapley(Money(100), bids_of({{1, "60"}, {2, "50"}, {3, "10"}}));
  EXPECT_EQ(r.serviced, (std::vector<UserId>{1, 2}));
  EXPECT_EQ(r.share, Money(50));
  EXPECT_EQ(r.payment(1), Money(50));
  EXPECT_EQ(r.payment(3), Money(0));
  EXPECT_EQ(r.rounds, 2U);
}

TEST(ShapleyTest, bid_equal_to_share_is_kept)
{
  auto r = shapley(Money(100), bids_of({{1, "50"}, {2, "50"}}));
  EXPECT_EQ(r.serviced.size(), 2U);
  EXPECT_EQ(r.share, Money(50));
}

TEST(ShapleyTest, nobody_serviced_when_infeasible)
{
  auto r = shapley(Money(100), bids_of({{1, "30"}, {2, "30"}, {3, "30"}}));
  EXPECT_FALSE(r.implemented());
  EXPECT_EQ(r.share, Money(0));
  EXPECT_FALSE(shapley(Money(1), {}).implemented());
}

TEST(ShapleyTest, infinite_bids_are_never_evicted)
{
  auto r = shapley(Money(100), bids_of({{1, "inf"}, {2, "1"}}));
  EXPECT_EQ(r.serviced, (std::vector<UserId>{1}));
  EXPECT_EQ(r.share, Money(100));
}

TEST(ShapleyTest, lone_bidder_pays_everything)
{
  std::vector<UserBid> bids{{1, BidValue{Money(101)}}};
  for (UserId u = 2; u <= 100; ++u)
  {
    bids.push_back({u, BidValue{Money(1)}});
  }
  auto alone = shapley(Money(101), bids);
  EXPECT_EQ(alone.serviced, (std::vector<UserId>{1}));
  EXPECT_EQ(alone.share, Money(101));

  bids.push_back({101, BidValue{Money(101)}});
  auto split = shapley(Money(101), bids);
  EXPECT_EQ(split.serviced.size(), 101U);
  EXPECT_EQ(split.share, Money(1));
}

TEST(ShapleyTest, rejects_bad_input)
{
  EXPECT_THROW(shapley(Money(0), {}), DomainError);
  EXPECT_THROW(shapley(Money(1), bids_of({{1, "1"}, {1, "2"}})), DomainError);
}

TEST(ShapleyTest, matches_subset_enumeration_oracle)
{
  Rng rng(11, 0, 0);
  for (int trial = 0; trial < 3000; ++trial)
  {
    std::size_t          n = rng.uniform(0, 8);
    std::vector<UserBid> bids;
    for (std::size_t i = 0; i < n; ++i)
    {
      BidValue v = rng.uniform(0, 15) == 0 ? BidValue::infinite()
                                           : BidValue{Money(static_cast<std::int64_t>(rng.uniform(0, 12)))};
      bids.push_back({static_cast<UserId>(i + 1), v});
    }
    Money cost(static_cast<std::int64_t>(rng.uniform(1, 40)));
    auto  r = shapley(cost, bids);
    ASSERT_EQ(r.serviced, largest_feasible(cost, bids)) << "trial " << trial;
    if (r.implemented())
    {
      EXPECT_EQ(r.share.times(static_cast<std::int64_t>(r.serviced.size())), cost);
    }
  }
}

TEST(AddOffTest, independent_run_per_optimization)
{
  Catalog                         catalog{{1, Money(100)}, {2, Money(10)}};
  std::vector<AdditiveOfflineBid> bids{
      {1, {{1, Money(60)}, {2, Money(5)}}},
      {2, {{1, Money(50)}, {2, Money(6)}}},
  };
  auto r = add_off(catalog, bids);
  EXPECT_EQ(r.outcome.implemented, (std::set<OptId>{1, 2}));
  EXPECT_EQ(r.payments.of(1, 1), Money(50));
  EXPECT_EQ(r.payments.of(1, 2), Money(5));
  EXPECT_EQ(r.payments.of(2, 2), Money(5));
  EXPECT_EQ(r.payments.total_for_opt(1), Money(100));

  std::vector<AdditiveOfflineBid> unknown{{1, {{3, Money(1)}}}};
  EXPECT_THROW(add_off(catalog, unknown), CatalogMismatch);
}

}  // namespace
}  // namespace cloudshare
