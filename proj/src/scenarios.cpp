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

#include "cloudshare/scenarios.hpp"

#include "cloudshare/errors.hpp"
#include "cloudshare/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace cloudshare {

namespace {

constexpr std::int64_t kMicro = 1'000'000;

constexpr std::array<std::pair<Family, std::string_view>, 6> kFamilies{{
    {Family::collab_size, "collab_size"},
    {Family::overlap_slots, "overlap_slots"},
    {Family::duration_spread, "duration_spread"},
    {Family::arrival_skew, "arrival_skew"},
    {Family::selectivity, "selectivity"},
    {Family::usecase_shape, "usecase_shape"},
}};

constexpr std::array<std::pair<Skew, std::string_view>, 3> kSkews{{
    {Skew::uniform, "uniform"},
    {Skew::early, "early"},
    {Skew::late, "late"},
}};

// Use-case workload shape: six users over 27 per-snapshot views.
constexpr OptId                       kUsecaseViews = 27;
constexpr std::array<std::int64_t, 6> kLastViewCents{18, 7, 3, 16, 9, 4};
constexpr std::array<std::uint32_t, 6> kSnapshotStride{1, 2, 4, 1, 2, 4};

Money unit_value(Rng &rng)
{
  return Money::from_fraction(static_cast<std::int64_t>(rng.uniform(0, kMicro)), kMicro);
}

Slot clamp_slot(double x, Slot z)
{
  double r = std::nearbyint(x);
  if (r < 1.0)
  {
    return 1;
  }
  if (r > static_cast<double>(z))
  {
    return z;
  }
  return static_cast<Slot>(r);
}

Slot draw_start(Rng &rng, Skew skew, Slot z)
{
  switch (skew)
  {
  case Skew::uniform:
    return static_cast<Slot>(rng.uniform(1, z));
  case Skew::early:
    return clamp_slot(1.0 + rng.exponential(1.2), z);
  case Skew::late:
    return clamp_slot(static_cast<double>(z) - rng.exponential(1.2), z);
  }
  return 1;
}

std::vector<Money> spread(Money const &total, Slot length)
{
  return std::vector<Money>(length, total.divided_by(length));
}

AdditiveOnlineBid additive_bid(UserId user, OptId opt, Slot start, Slot end, Money const &total)
{
  return {user, opt, start, end, spread(total, end - start + 1)};
}

Game usecase_game(ScenarioSpec const &spec, std::uint64_t trial)
{
  Game game;
  game.kind    = GameKind::additive;
  game.horizon = SlotHorizon(spec.slots);
  for (OptId j = 1; j <= kUsecaseViews; ++j)
  {
    game.catalog.add({j, spec.cost});
  }

  std::vector<std::pair<Slot, Slot>> intervals;
  for (Slot s = 1; s <= spec.slots; ++s)
  {
    for (Slot e = s; e <= spec.slots; ++e)
    {
      intervals.emplace_back(s, e);
    }
  }

  for (UserId u = 1; u <= spec.users; ++u)
  {
    Rng  rng(spec.seed, trial, u);
    auto [s, e]        = intervals[rng.uniform(0, intervals.size() - 1)];
    std::size_t  shape = (u - 1) % kLastViewCents.size();
    for (OptId j = 1; j <= kUsecaseViews; ++j)
    {
      std::int64_t cents = 0;
      if (j == kUsecaseViews)
      {
        cents = kLastViewCents[shape];
      }
      else if ((kUsecaseViews - j) % kSnapshotStride[shape] == 0)
      {
        cents = 1;
      }
      if (cents == 0)
      {
        continue;
      }
      Money per_slot = Money::from_fraction(cents * spec.executions, 100);
      game.additive.push_back({u, j, s, e, std::vector<Money>(e - s + 1, per_slot)});
    }
  }
  return game;
}

}  // namespace

std::string_view to_string(Family family)
{
  for (auto const &[f, name] : kFamilies)
  {
    if (f == family)
    {
      return name;
    }
  }
  return "unknown";
}

std::string_view to_string(Skew skew)
{
  for (auto const &[s, name] : kSkews)
  {
    if (s == skew)
    {
      return name;
    }
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name)
{
  for (auto const &[f, n] : kFamilies)
  {
    if (n == name)
    {
      return f;
    }
  }
  return std::nullopt;
}

std::optional<Skew> parse_skew(std::string_view name)
{
  for (auto const &[s, n] : kSkews)
  {
    if (n == name)
    {
      return s;
    }
  }
  return std::nullopt;
}

GameKind kind_of(Family family)
{
  return family == Family::selectivity ? GameKind::substitutable : GameKind::additive;
}

void validate(ScenarioSpec const &spec)
{
  auto require = [](bool ok, char const *field, std::string const &message) {
    if (!ok)
    {
      throw ConfigError(std::string("scenario.") + field, message);
    }
  };
  require(spec.users >= 1, "users", "must be positive");
  require(spec.slots >= 1, "slots", "must be positive");
  require(spec.opt_count >= 1, "opt_count", "must be positive");
  require(spec.trials >= 1, "trials", "must be positive");
  require(spec.cost.is_positive(), "cost", "must be positive");
  require(spec.duration >= 1, "duration", "must be positive");
  require(spec.duration <= spec.slots, "duration", "must not exceed slots");
  require(spec.executions >= 1, "executions", "must be positive");
  if (spec.family == Family::selectivity)
  {
    require(spec.substitutes_per_user >= 1, "substitutes_per_user", "must be positive");
    require(spec.substitutes_per_user <= spec.opt_count, "substitutes_per_user",
            "must not exceed opt_count");
  }
  if (spec.family == Family::usecase_shape)
  {
    require(spec.users == kLastViewCents.size(), "users", "usecase_shape has exactly 6 users");
    require(spec.opt_count == kUsecaseViews, "opt_count", "usecase_shape has 27 views");
  }
}

Game generate(ScenarioSpec const &spec, std::uint64_t trial)
{
  validate(spec);
  if (trial >= spec.trials)
  {
    throw DomainError("trial " + std::to_string(trial) + " out of range");
  }
  if (spec.family == Family::usecase_shape)
  {
    return usecase_game(spec, trial);
  }

  Game game;
  game.kind    = kind_of(spec.family);
  game.horizon = SlotHorizon(spec.slots);
  Slot const z = spec.slots;

  if (spec.family == Family::selectivity)
  {
    Rng costs(spec.seed, trial, 0);
    for (OptId j = 1; j <= spec.opt_count; ++j)
    {
      Money factor = Money::from_fraction(static_cast<std::int64_t>(costs.uniform(1, 2 * kMicro)),
                                          kMicro);
      game.catalog.add({j, spec.cost * factor});
    }
  }
  else
  {
    for (OptId j = 1; j <= spec.opt_count; ++j)
    {
      game.catalog.add({j, spec.cost});
    }
  }

  for (UserId u = 1; u <= spec.users; ++u)
  {
    Rng  rng(spec.seed, trial, static_cast<std::uint64_t>(u) + 1);
    Slot start = 1;
    Slot end   = 1;
    switch (spec.family)
    {
    case Family::collab_size:
    case Family::overlap_slots:
      start = static_cast<Slot>(rng.uniform(1, z));
      end   = start;
      break;
    case Family::duration_spread:
    case Family::selectivity:
      start = static_cast<Slot>(rng.uniform(1, z - spec.duration + 1));
      end   = start + spec.duration - 1;
      break;
    case Family::arrival_skew:
      start = draw_start(rng, spec.skew, z);
      end   = std::min<Slot>(start + spec.duration - 1, z);
      break;
    case Family::usecase_shape:
      break;
    }

    if (spec.family == Family::selectivity)
    {
      std::vector<OptId> pool(spec.opt_count);
      std::iota(pool.begin(), pool.end(), OptId{1});
      std::set<OptId> chosen;
      for (std::uint32_t k = 0; k < spec.substitutes_per_user; ++k)
      {
        auto pick = rng.uniform(k, pool.size() - 1);
        std::swap(pool[k], pool[pick]);
        chosen.insert(pool[k]);
      }
      Money total = unit_value(rng);
      game.substitutable.push_back({u, std::move(chosen), start, end,
                                    spread(total, end - start + 1)});
      continue;
    }

    for (OptId j = 1; j <= spec.opt_count; ++j)
    {
      game.additive.push_back(additive_bid(u, j, start, end, unit_value(rng)));
    }
  }
  return game;
}

}  // namespace cloudshare
