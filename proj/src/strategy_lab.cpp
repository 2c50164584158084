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

#include "cloudshare/strategy_lab.hpp"

#include "cloudshare/errors.hpp"
#include "cloudshare/rng.hpp"
#include "cloudshare/shapley.hpp"
#include "cloudshare/substitutable.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cloudshare {

namespace {

Money level_value(Money const &base, std::size_t k, std::size_t levels)
{
  if (levels < 2)
  {
    return base;
  }
  return base.times(static_cast<std::int64_t>(2 * k)).divided_by(
      static_cast<std::int64_t>(levels - 1));
}

std::string set_text(std::set<OptId> const &opts)
{
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (OptId j : opts)
  {
    out << (first ? "" : ",") << j;
    first = false;
  }
  out << '}';
  return out.str();
}

enum class Shape
{
  spread,
  front,
  back,
};

std::vector<Money> shaped(Money const &total, Slot length, Shape shape)
{
  std::vector<Money> out(length);
  switch (shape)
  {
  case Shape::spread:
    std::fill(out.begin(), out.end(), total.divided_by(length));
    break;
  case Shape::front:
    out.front() = total;
    break;
  case Shape::back:
    out.back() = total;
    break;
  }
  return out;
}

struct Window
{
  Slot               start;
  Slot               end;
  std::vector<Money> per_slot;
  std::string        text;
};

/// Every online report (s', e', values) with s <= s' <= e' <= z and a total
/// from the grid. The zero total stands for not bidding and appears once.
std::vector<Window> online_reports(Slot s, Slot z, Money const &base, GridSpec const &grid)
{
  std::vector<Window> out;
  out.push_back({0, 0, {}, "no bid"});
  std::vector<Shape> shapes{Shape::spread};
  if (grid.all_shapes)
  {
    shapes.push_back(Shape::front);
    shapes.push_back(Shape::back);
  }
  for (Slot a = s; a <= z; ++a)
  {
    for (Slot b = a; b <= z; ++b)
    {
      for (Shape shape : shapes)
      {
        if (a == b && shape != Shape::spread)
        {
          continue;
        }
        for (std::size_t k = 1; k < grid.levels; ++k)
        {
          Money              total = level_value(base, k, grid.levels);
          std::ostringstream text;
          text << "[" << a << "," << b << "] total " << total.to_fraction()
               << (shape == Shape::spread ? " spread" : shape == Shape::front ? " front" : " back");
          out.push_back({a, b, shaped(total, b - a + 1, shape), text.str()});
        }
      }
    }
  }
  return out;
}

std::vector<std::set<OptId>> nonempty_subsets(Catalog const &catalog)
{
  std::vector<OptId> ids = catalog.ids();
  if (ids.size() > 10)
  {
    throw GuardError("too many optimizations for substitute-set enumeration");
  }
  std::vector<std::set<OptId>> out;
  for (std::uint32_t mask = 1; mask < (1U << ids.size()); ++mask)
  {
    std::set<OptId> s;
    for (std::size_t k = 0; k < ids.size(); ++k)
    {
      if (mask >> k & 1U)
      {
        s.insert(ids[k]);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

Money max_cost(Catalog const &catalog)
{
  Money out;
  for (auto const &[j, c] : catalog.costs())
  {
    out = max(out, c);
  }
  return out;
}

void consider(DeviationReport &report, Money utility, std::string const &text)
{
  if (report.evaluated++ == 0 || utility > report.best_utility)
  {
    report.best_utility = std::move(utility);
    report.best_bid     = text;
  }
}

DeviationReport search_add_offline(MechanismId mechanism, Game const &game, UserId dev,
                                   GridSpec const &grid)
{
  auto truth = collapse_additive(game);
  auto it    = std::find_if(truth.begin(), truth.end(), [&](auto const &b) { return b.user == dev; });
  if (it == truth.end())
  {
    truth.push_back({dev, {}});
    it = std::prev(truth.end());
  }
  std::size_t const dev_index = static_cast<std::size_t>(it - truth.begin());
  AdditiveOfflineBid const true_bid = *it;

  auto run = [&](AdditiveOfflineBid const &bid) {
    std::vector<AdditiveOfflineBid> bids = truth;
    bids[dev_index]                      = bid;
    AddOffResult res = mechanism == MechanismId::naive_first_price
                           ? naive_first_price(game.catalog, bids)
                           : add_off(game.catalog, bids);
    return score_offline(game.catalog, truth, res.outcome, res.payments).per_user_utility.at(dev);
  };

  DeviationReport report;
  report.deviator         = dev;
  report.truthful_utility = run(true_bid);

  std::vector<OptId> opts = game.catalog.ids();
  std::vector<Money> base;
  for (OptId j : opts)
  {
    Money v = true_bid.value_for(j);
    base.push_back(v.is_positive() ? v : game.catalog.cost(j));
  }

  auto describe = [&](AdditiveOfflineBid const &bid) {
    std::ostringstream out;
    for (std::size_t k = 0; k < opts.size(); ++k)
    {
      out << (k ? "; " : "") << "opt " << opts[k] << ": " << bid.value_for(opts[k]).to_fraction();
    }
    return out.str();
  };

  double joint = std::pow(static_cast<double>(grid.levels), static_cast<double>(opts.size()));
  if (joint <= static_cast<double>(grid.max_joint_points))
  {
    std::vector<std::size_t> digit(opts.size(), 0);
    for (;;)
    {
      AdditiveOfflineBid bid{dev, {}};
      for (std::size_t k = 0; k < opts.size(); ++k)
      {
        bid.values[opts[k]] = level_value(base[k], digit[k], grid.levels);
      }
      consider(report, run(bid), describe(bid));
      std::size_t k = 0;
      while (k < opts.size() && ++digit[k] == grid.levels)
      {
        digit[k++] = 0;
      }
      if (k == opts.size())
      {
        break;
      }
    }
    return report;
  }

  for (std::size_t k = 0; k < opts.size(); ++k)
  {
    for (std::size_t level = 0; level < grid.levels; ++level)
    {
      AdditiveOfflineBid bid = true_bid;
      bid.values[opts[k]]    = level_value(base[k], level, grid.levels);
      consider(report, run(bid), describe(bid));
    }
  }
  for (std::size_t level = 0; level < grid.levels; ++level)
  {
    AdditiveOfflineBid bid{dev, {}};
    for (std::size_t k = 0; k < opts.size(); ++k)
    {
      bid.values[opts[k]] = level_value(true_bid.value_for(opts[k]), level, grid.levels);
    }
    consider(report, run(bid), describe(bid));
  }
  return report;
}

DeviationReport search_add_online(Game const &game, UserId dev, GridSpec const &grid)
{
  DeviationReport report;
  report.deviator = dev;

  // optimizations are priced independently, so deviations are searched per bid
  Money       best_gain;
  bool        any = false;
  std::size_t evaluated = 0;
  for (auto const &true_bid : game.additive)
  {
    if (true_bid.user != dev)
    {
      continue;
    }
    Game sub = empty_future(game.only_opt(true_bid.opt), dev, true_bid.start);
    auto pos = std::find_if(sub.additive.begin(), sub.additive.end(),
                            [&](auto const &b) { return b.user == dev; });
    std::size_t const index = static_cast<std::size_t>(pos - sub.additive.begin());

    Money truthful = score(sub, run_mechanism(MechanismId::add_on, sub)).per_user_utility.at(dev);
    report.truthful_utility += truthful;

    Money base = true_bid.total().is_positive() ? true_bid.total() : sub.catalog.cost(true_bid.opt);
    for (auto const &w : online_reports(true_bid.start, game.horizon.z(), base, grid))
    {
      Game deviated = sub;
      if (w.start == 0)
      {
        deviated.additive.erase(deviated.additive.begin() + static_cast<std::ptrdiff_t>(index));
      }
      else
      {
        deviated.additive[index] = {dev, true_bid.opt, w.start, w.end, w.per_slot};
      }
      RunResult run = run_mechanism(MechanismId::add_on, deviated);
      Money     gain = score(sub, run).per_user_utility.at(dev) - truthful;
      ++evaluated;
      if (!any || gain > best_gain)
      {
        best_gain       = gain;
        report.best_bid = "opt " + std::to_string(true_bid.opt) + ": " + w.text;
        any             = true;
      }
    }
  }
  report.evaluated    = evaluated;
  report.best_utility = report.truthful_utility + best_gain;
  return report;
}

DeviationReport search_subst_offline(Game const &game, UserId dev, GridSpec const &grid)
{
  auto true_it = std::find_if(game.substitutable.begin(), game.substitutable.end(),
                              [&](auto const &b) { return b.user == dev; });
  if (true_it == game.substitutable.end())
  {
    throw DomainError("deviator " + std::to_string(dev) + " has no bid");
  }
  SubstitutableOfflineBid const true_bid{dev, true_it->substitutes, true_it->total()};

  std::vector<SubstitutableOfflineBid> others;
  for (auto const &b : collapse_substitutable(game))
  {
    if (b.user != dev)
    {
      others.push_back(b);
    }
  }
  std::vector<SubstitutableOfflineBid> truth = others;
  truth.push_back(true_bid);

  auto run = [&](std::optional<SubstitutableOfflineBid> const &bid) {
    std::vector<SubstitutableOfflineBid> bids = others;
    if (bid && bid->value.is_positive())
    {
      bids.push_back(*bid);
    }
    auto res = subst_off(game.catalog, std::span<SubstitutableOfflineBid const>(bids));
    return score_offline(game.catalog, truth, res.outcome, res.payments).per_user_utility.at(dev);
  };

  DeviationReport report;
  report.deviator         = dev;
  report.truthful_utility = run(true_bid);
  consider(report, run(std::nullopt), "no bid");

  Money base = true_bid.value.is_positive() ? true_bid.value : max_cost(game.catalog);
  for (auto const &subset : nonempty_subsets(game.catalog))
  {
    for (std::size_t k = 1; k < grid.levels; ++k)
    {
      SubstitutableOfflineBid bid{dev, subset, level_value(base, k, grid.levels)};
      consider(report, run(bid), set_text(subset) + " value " + bid.value.to_fraction());
    }
  }
  return report;
}

DeviationReport search_subst_online(Game const &game, UserId dev, GridSpec const &grid)
{
  auto true_it = std::find_if(game.substitutable.begin(), game.substitutable.end(),
                              [&](auto const &b) { return b.user == dev; });
  if (true_it == game.substitutable.end())
  {
    throw DomainError("deviator " + std::to_string(dev) + " has no bid");
  }
  SubstitutableOnlineBid const true_bid = *true_it;
  Game sub = empty_future(game, dev, true_bid.start);
  auto pos = std::find_if(sub.substitutable.begin(), sub.substitutable.end(),
                          [&](auto const &b) { return b.user == dev; });
  std::size_t const index = static_cast<std::size_t>(pos - sub.substitutable.begin());

  auto utility = [&](Game const &deviated) {
    return score(sub, run_mechanism(MechanismId::subst_on, deviated)).per_user_utility.at(dev);
  };

  DeviationReport report;
  report.deviator         = dev;
  report.truthful_utility = utility(sub);

  Money base = true_bid.total().is_positive() ? true_bid.total() : max_cost(game.catalog);
  {
    Game withdrawn = sub;
    withdrawn.substitutable.erase(withdrawn.substitutable.begin() +
                                  static_cast<std::ptrdiff_t>(index));
    consider(report, utility(withdrawn), "no bid");
  }
  auto reports = online_reports(true_bid.start, game.horizon.z(), base, grid);
  for (auto const &subset : nonempty_subsets(game.catalog))
  {
    for (auto const &w : reports)
    {
      if (w.start == 0)
      {
        continue;
      }
      Game deviated                 = sub;
      deviated.substitutable[index] = {dev, subset, w.start, w.end, w.per_slot};
      consider(report, utility(deviated), set_text(subset) + " " + w.text);
    }
  }
  return report;
}

}  // namespace

Game empty_future(Game const &game, UserId keep, Slot arrival)
{
  Game out    = game;
  auto future = [&](auto const &b) { return b.user != keep && b.start > arrival; };
  std::erase_if(out.additive, future);
  std::erase_if(out.substitutable, future);
  return out;
}

DeviationReport deviation_search(MechanismId mechanism, Game const &game, UserId deviator,
                                 GridSpec const &grid)
{
  if (!accepts(mechanism, game.kind))
  {
    throw DomainError(std::string(to_string(mechanism)) + " does not accept this game");
  }
  switch (mechanism)
  {
  case MechanismId::add_off:
  case MechanismId::naive_first_price:
    return search_add_offline(mechanism, game, deviator, grid);
  case MechanismId::add_on:
    return search_add_online(game, deviator, grid);
  case MechanismId::subst_off:
    return search_subst_offline(game, deviator, grid);
  case MechanismId::subst_on:
    return search_subst_online(game, deviator, grid);
  case MechanismId::regret:
    break;
  }
  throw DomainError("the regret baseline takes true values, not bids");
}

SplitOutcome evaluate_split(MechanismId mechanism, Game const &game, UserId splitter,
                            std::vector<Money> const &factors)
{
  Game                     split = game;
  std::map<UserId, UserId> rename;
  UserId                   next  = game.max_user() + 1;
  auto                     mine  = [&](auto const &b) { return b.user == splitter; };
  std::erase_if(split.additive, mine);
  std::erase_if(split.substitutable, mine);

  for (Money const &factor : factors)
  {
    if (factor.is_negative())
    {
      throw DomainError("negative split factor");
    }
    UserId id = next++;
    rename[id] = splitter;
    if (factor.is_zero())
    {
      continue;
    }
    auto scale = [&](std::vector<Money> values) {
      for (auto &v : values)
      {
        v *= factor;
      }
      return values;
    };
    for (auto const &b : game.additive)
    {
      if (b.user == splitter)
      {
        split.additive.push_back({id, b.opt, b.start, b.end, scale(b.per_slot)});
      }
    }
    for (auto const &b : game.substitutable)
    {
      if (b.user == splitter)
      {
        split.substitutable.push_back({id, b.substitutes, b.start, b.end, scale(b.per_slot)});
      }
    }
  }

  Metrics      m = score(game, relabel(run_mechanism(mechanism, split), rename));
  SplitOutcome out;
  out.factors          = factors;
  out.splitter_utility = m.per_user_utility.at(splitter);
  m.per_user_utility.erase(splitter);
  out.utilities = std::move(m.per_user_utility);
  return out;
}

HarmReport multi_identity_probe(MechanismId mechanism, Game const &game, UserId splitter,
                                std::size_t k, std::size_t levels)
{
  if (k == 0 || levels == 0)
  {
    throw DomainError("need at least one identity and one level");
  }
  HarmReport   report;
  SplitOutcome base = evaluate_split(mechanism, game, splitter, {Money(1)});
  report.baseline_splitter_utility = base.splitter_utility;
  report.baseline                  = base.utilities;

  std::vector<std::size_t> idx(k, 0);
  for (;;)
  {
    std::vector<Money> factors;
    for (std::size_t i : idx)
    {
      factors.push_back(level_value(Money(1), i, levels));
    }
    SplitOutcome outcome = evaluate_split(mechanism, game, splitter, factors);
    ++report.splits_evaluated;

    bool harmed = std::any_of(outcome.utilities.begin(), outcome.utilities.end(),
                              [&](auto const &entry) { return entry.second < report.baseline.at(entry.first); });
    bool gained = outcome.splitter_utility > report.baseline_splitter_utility;
    if (harmed)
    {
      ++report.harmful_splits;
    }
    if (harmed && gained)
    {
      ++report.violations;
      if (!report.first_violation)
      {
        report.first_violation = outcome;
      }
    }
    if (!report.best_for_splitter ||
        outcome.splitter_utility > report.best_for_splitter->splitter_utility)
    {
      report.best_for_splitter = std::move(outcome);
    }

    // next non-decreasing index sequence (multisets of levels)
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == levels - 1)
    {
      --pos;
    }
    if (pos == 0)
    {
      break;
    }
    std::size_t v = idx[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < k; ++i)
    {
      idx[i] = v;
    }
  }
  return report;
}

Game corpus_game(CorpusSpec const &spec, std::uint64_t seed, std::uint64_t index)
{
  Rng           rng(seed, index, 0);
  std::uint32_t users = static_cast<std::uint32_t>(rng.uniform(std::min(2U, spec.max_users), spec.max_users));
  std::uint32_t opts  = static_cast<std::uint32_t>(rng.uniform(1, spec.max_opts));
  Slot          z     = static_cast<Slot>(rng.uniform(1, spec.max_slots));

  Game game;
  game.kind    = spec.kind;
  game.horizon = SlotHorizon(z);

  auto window = [&](std::vector<Money> &values) {
    Slot s = static_cast<Slot>(rng.uniform(1, z));
    Slot e = static_cast<Slot>(rng.uniform(s, z));
    values.clear();
    for (Slot t = s; t <= e; ++t)
    {
      values.emplace_back(static_cast<std::int64_t>(rng.uniform(0, spec.max_slot_value)));
    }
    return std::pair{s, e};
  };

  std::map<OptId, Money> column;
  for (UserId u = 1; u <= users; ++u)
  {
    std::vector<Money> values;
    if (spec.kind == GameKind::additive)
    {
      OptId forced = static_cast<OptId>(rng.uniform(1, opts));
      for (OptId j = 1; j <= opts; ++j)
      {
        if (j != forced && rng.uniform(0, 3) == 0)
        {
          continue;
        }
        auto [s, e] = window(values);
        AdditiveOnlineBid bid{u, j, s, e, values};
        column[j] += bid.total();
        game.additive.push_back(std::move(bid));
      }
    }
    else
    {
      std::uint64_t   mask = rng.uniform(1, (std::uint64_t{1} << opts) - 1);
      std::set<OptId> subs;
      for (OptId j = 1; j <= opts; ++j)
      {
        if (mask >> (j - 1) & 1U)
        {
          subs.insert(j);
        }
      }
      auto [s, e] = window(values);
      SubstitutableOnlineBid bid{u, subs, s, e, values};
      for (OptId j : subs)
      {
        column[j] += bid.total();
      }
      game.substitutable.push_back(std::move(bid));
    }
  }

  // a game where nobody values anything tests nothing
  bool any_value = false;
  for (auto const &[j, total] : column)
  {
    any_value = any_value || total.is_positive();
  }
  if (!any_value)
  {
    Money const top(static_cast<std::int64_t>(std::max(1U, spec.max_slot_value)));
    if (spec.kind == GameKind::additive)
    {
      auto &bid       = game.additive.front();
      bid.per_slot[0] = top;
      column[bid.opt] = top;
    }
    else
    {
      auto &bid       = game.substitutable.front();
      bid.per_slot[0] = top;
      for (OptId j : bid.substitutes)
      {
        column[j] = top;
      }
    }
  }

  for (OptId j = 1; j <= opts; ++j)
  {
    Money const &total = column[j];
    Money        cost  = total.is_positive()
                             ? total * Money::from_fraction(static_cast<std::int64_t>(rng.uniform(5, 90)), 100)
                             : Money(static_cast<std::int64_t>(rng.uniform(1, std::max(1U, spec.max_slot_value))));
    game.catalog.add({j, cost});
  }
  return game;
}

}  // namespace cloudshare
