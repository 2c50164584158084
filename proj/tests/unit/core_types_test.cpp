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

#include "cloudshare/economics.hpp"
#include "cloudshare/errors.hpp"
#include "cloudshare/types.hpp"

#include "unit/helpers.hpp"

#include <gtest/gtest.h>

namespace cloudshare {
namespace {

using testing::M;
using testing::online;

TEST(CatalogTest, rejects_non_positive_and_duplicate_costs)
{
  Catalog c;
  EXPECT_THROW(c.add({1, Money(0)}), DomainError);
  EXPECT_THROW(c.add({1, M("-1")}), DomainError);
  c.add({1, Money(5)});
  EXPECT_THROW(c.add({1, Money(6)}), DomainError);
  EXPECT_THROW(c.cost(2), CatalogMismatch);
  EXPECT_EQ(c.scaled(M("1/2")).cost(1), M("2.5"));
}

TEST(OnlineBidTest, residuals_and_totals)
{
  AdditiveOnlineBid b = online(2, 1, 1, 3, {"16", "16", "16"});
  EXPECT_EQ(b.total(), Money(48));
  EXPECT_EQ(b.residual_from(1), Money(48));
  EXPECT_EQ(b.residual_from(2), Money(32));
  EXPECT_EQ(b.residual_from(4), Money(0));
  EXPECT_EQ(b.value_at(0), Money(0));
  EXPECT_EQ(b.value_at(3), Money(16));
}

TEST(EconomicsTest, value_and_cost_of_outcome)
{
  Catalog catalog{{1, Money(60)}, {2, Money(40)}};
  AdditiveOfflineBid bid{7, {{1, Money(30)}, {2, Money(25)}}};
  Outcome o;
  o.implemented = {1, 2};
  o.grants      = {{7, 2}, {8, 1}};
  EXPECT_EQ(value_of_outcome(bid, o), Money(25));
  EXPECT_EQ(cost_of_outcome(catalog, o), Money(100));
  o.implemented.insert(3);
  EXPECT_THROW(cost_of_outcome(catalog, o), CatalogMismatch);
}

TEST(EconomicsTest, grant_invariant)
{
  Outcome o;
  o.grants = {{1, 4}};
  EXPECT_TRUE(check_outcome(o).has_value());
  o.implemented = {4};
  EXPECT_FALSE(check_outcome(o).has_value());
}

TEST(EconomicsTest, revision_rules)
{
  AdditiveOnlineBid old = online(1, 1, 1, 3, {"5", "5", "5"});

  EXPECT_FALSE(validate_revision(old, online(1, 1, 1, 4, {"5", "5", "6", "1"}), 2));
  EXPECT_FALSE(validate_revision(old, old, 3));

  auto fault = [&](AdditiveOnlineBid const &revised, Slot now) {
    auto v = validate_revision(old, revised, now);
    EXPECT_TRUE(v.has_value());
    return v ? v->fault : RevisionFault::user_or_opt_changed;
  };
  EXPECT_EQ(fault(online(2, 1, 1, 3, {"5", "5", "5"}), 2), RevisionFault::user_or_opt_changed);
  EXPECT_EQ(fault(online(1, 2, 1, 3, {"5", "5", "5"}), 2), RevisionFault::user_or_opt_changed);
  EXPECT_EQ(fault(online(1, 1, 2, 3, {"5", "5"}), 2), RevisionFault::start_changed);
  EXPECT_EQ(fault(online(1, 1, 1, 2, {"5", "5"}), 2), RevisionFault::shrunk_end);
  EXPECT_EQ(fault(online(1, 1, 1, 3, {"6", "5", "5"}), 2), RevisionFault::retroactive_change);
  EXPECT_EQ(fault(online(1, 1, 1, 3, {"5", "4", "5"}), 2), RevisionFault::downward);
}

TEST(LedgerTest, accumulates_and_rejects_negative_charges)
{
  PaymentLedger l;
  l.charge(1, 1, Money(10));
  l.charge(1, 2, Money(5));
  l.charge(2, 1, M("2.5"));
  l.charge(1, 1, Money(1));
  EXPECT_EQ(l.of(1, 1), Money(11));
  EXPECT_EQ(l.total_for(1), Money(16));
  EXPECT_EQ(l.total_for_opt(1), M("13.5"));
  EXPECT_EQ(l.total(), M("18.5"));
  EXPECT_THROW(l.charge(3, 1, M("-0.01")), DomainError);
}

TEST(ScheduleTest, cumulative_sets_only_grow)
{
  ServiceSchedule s(4);
  s.record(1, 1, {3, 1, 3});
  s.record(1, 3, {2});
  EXPECT_EQ(s.served(1, 1), (std::vector<UserId>{1, 3}));
  EXPECT_TRUE(s.served(1, 2).empty());
  EXPECT_EQ(s.cumulative(1, 2), (std::vector<UserId>{1, 3}));
  EXPECT_EQ(s.cumulative(1, 4), (std::vector<UserId>{1, 2, 3}));
  EXPECT_TRUE(s.cumulative(2, 4).empty());
  EXPECT_THROW(s.record(1, 2, {5}), DomainError);
  EXPECT_THROW(s.record(1, 5, {5}), DomainError);
  EXPECT_FALSE(check_schedule(s).has_value());
}

}  // namespace
}  // namespace cloudshare
