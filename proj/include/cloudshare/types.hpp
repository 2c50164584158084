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

#include "cloudshare/money.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace cloudshare {

using UserId = std::uint32_t;
using OptId  = std::uint32_t;
using Slot   = std::uint32_t;  ///< 1-based time slot index

/// A binary optimization the cloud may implement at cost > 0.
struct Optimization
{
  OptId id{};
  Money cost;
};

/// Set of optimizations keyed by id. Every cost is strictly positive.
class Catalog
{
public:
  Catalog() = default;
  Catalog(std::initializer_list<Optimization> opts);
  explicit Catalog(std::vector<Optimization> const &opts);

  void add(Optimization opt);

  bool contains(OptId id) const
  {
    return costs_.count(id) != 0;
  }
  /// Throws CatalogMismatch for unknown ids.
  Money const &cost(OptId id) const;

  std::vector<OptId> ids() const;
  std::size_t        size() const
  {
    return costs_.size();
  }
  bool empty() const
  {
    return costs_.empty();
  }

  std::map<OptId, Money> const &costs() const
  {
    return costs_;
  }

  /// Copy with every cost multiplied by `factor` (> 0).
  Catalog scaled(Money const &factor) const;

  friend bool operator==(Catalog const &, Catalog const &) = default;

private:
  std::map<OptId, Money> costs_;
};

/// Slots 1..z of one pricing period.
class SlotHorizon
{
public:
  explicit SlotHorizon(Slot z = 1);

  Slot z() const
  {
    return z_;
  }
  bool contains(Slot t) const
  {
    return t >= 1 && t <= z_;
  }

  friend bool operator==(SlotHorizon const &, SlotHorizon const &) = default;

private:
  Slot z_;
};

struct AdditiveOfflineBid
{
  UserId                 user{};
  std::map<OptId, Money> values;  ///< absent entries mean 0

  Money value_for(OptId opt) const;

  friend bool operator==(AdditiveOfflineBid const &, AdditiveOfflineBid const &) = default;
};

/// Per-slot bid for one optimization over [start, end].
struct AdditiveOnlineBid
{
  UserId             user{};
  OptId              opt{};
  Slot               start{1};
  Slot               end{1};
  std::vector<Money> per_slot;  ///< length end - start + 1

  Money value_at(Slot t) const;
  /// Sum of values at slots >= t.
  Money residual_from(Slot t) const;
  Money total() const;

  friend bool operator==(AdditiveOnlineBid const &, AdditiveOnlineBid const &) = default;
};

struct SubstitutableOfflineBid
{
  UserId          user{};
  std::set<OptId> substitutes;
  Money           value;

  friend bool operator==(SubstitutableOfflineBid const &, SubstitutableOfflineBid const &) = default;
};

struct SubstitutableOnlineBid
{
  UserId             user{};
  std::set<OptId>    substitutes;
  Slot               start{1};
  Slot               end{1};
  std::vector<Money> per_slot;

  Money value_at(Slot t) const;
  Money residual_from(Slot t) const;
  Money total() const;

  friend bool operator==(SubstitutableOnlineBid const &, SubstitutableOnlineBid const &) = default;
};

using GrantPair = std::pair<UserId, OptId>;

/// Implemented optimizations plus (user, optimization) access grants.
struct Outcome
{
  std::set<OptId>     implemented;
  std::set<GrantPair> grants;

  std::set<UserId> serviced_by(OptId opt) const;

  friend bool operator==(Outcome const &, Outcome const &) = default;
};

/// Payment p_ij per (user, optimization); all entries are non-negative.
class PaymentLedger
{
public:
  void charge(UserId user, OptId opt, Money const &amount);

  Money of(UserId user, OptId opt) const;
  /// P_i: sum over all optimizations for one user.
  Money total_for(UserId user) const;
  /// Sum of payments attributed to one optimization.
  Money total_for_opt(OptId opt) const;
  Money total() const;

  std::map<GrantPair, Money> const &entries() const
  {
    return entries_;
  }

  friend bool operator==(PaymentLedger const &, PaymentLedger const &) = default;

private:
  std::map<GrantPair, Money> entries_;
};

/// Per-slot service record: S_j(t) and the cumulative CS_j(t).
///
/// Slots must be recorded in non-decreasing order per optimization; the
/// cumulative set is maintained on insert so CS_j(t) = union of S_j(tau <= t).
class ServiceSchedule
{
public:
  explicit ServiceSchedule(Slot z = 1)
    : z_(z)
  {}

  void record(OptId opt, Slot t, std::vector<UserId> users);

  std::vector<UserId> const &served(OptId opt, Slot t) const;
  std::vector<UserId> const &cumulative(OptId opt, Slot t) const;

  Slot z() const
  {
    return z_;
  }
  std::set<OptId> opts() const;

  std::map<std::pair<OptId, Slot>, std::vector<UserId>> const &served_map() const
  {
    return served_;
  }

  bool is_empty() const;

  friend bool operator==(ServiceSchedule const &, ServiceSchedule const &) = default;

private:
  Slot                                                 z_;
  std::map<std::pair<OptId, Slot>, std::vector<UserId>> served_;
  std::map<std::pair<OptId, Slot>, std::vector<UserId>> cumulative_;
};

}  // namespace cloudshare
