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

#include "cloudshare/harness/verify.hpp"

#include "cloudshare/errors.hpp"
#include "cloudshare/harness/golden.hpp"
#include "cloudshare/harness/json_io.hpp"
#include "cloudshare/mechanisms.hpp"
#include "cloudshare/metrics.hpp"
#include "cloudshare/oracle.hpp"
#include "cloudshare/strategy_lab.hpp"

#include <array>
#include <sstream>

namespace cloudshare::harness {

namespace {

constexpr std::size_t kMaxWitnesses = 3;

constexpr std::array<std::pair<Suite, std::string_view>, 6> kSuites{{
    {Suite::cost_recovery, "cost_recovery"},
    {Suite::truthfulness, "truthfulness"},
    {Suite::multi_identity, "multi_identity"},
    {Suite::degeneration, "degeneration"},
    {Suite::dominance, "dominance"},
    {Suite::golden_examples, "golden_examples"},
}};

std::string name_of(MechanismId id, std::string_view property)
{
  return std::string(to_string(id)) + "." + std::string(property);
}

bool same_run(RunResult const &a, RunResult const &b)
{
  return a.implemented == b.implemented && a.ledger == b.ledger && a.schedule == b.schedule;
}

VerifyReport cost_recovery(VerifyOptions const &options, std::uint64_t games)
{
  struct Family
  {
    CorpusSpec                 spec;
    std::array<MechanismId, 2> mechanisms;
  };
  std::array<Family, 2> families{{
      {{GameKind::additive, 5, 3, 4, 10}, {MechanismId::add_off, MechanismId::add_on}},
      {{GameKind::substitutable, 5, 3, 4, 10}, {MechanismId::subst_off, MechanismId::subst_on}},
  }};

  VerifyReport report{"cost_recovery", {}};
  for (auto const &family : families)
  {
    for (MechanismId id : family.mechanisms)
    {
      PropertyCheck exact{name_of(id, "payments_equal_cost")};
      PropertyCheck cover{name_of(id, "payments_cover_cost")};
      PropertyCheck balance{name_of(id, "balance_nonnegative")};
      for (std::uint64_t i = 0; i < games; ++i)
      {
        Game      game = corpus_game(family.spec, options.seed, i);
        RunResult run  = run_mechanism(id, game);
        bool      eq   = true;
        bool      ge   = true;
        std::string note;
        for (OptId j : run.implemented)
        {
          Money paid = run.ledger.total_for_opt(j);
          Money cost = game.catalog.cost(j);
          if (paid != cost)
          {
            eq = false;
            note += "opt " + std::to_string(j) + " paid " + paid.to_fraction() + " cost " +
                    cost.to_fraction() + "; ";
          }
          ge = ge && paid >= cost;
        }
        exact.expect(eq, [&] { return witness(game, note); });
        cover.expect(ge, [&] { return witness(game, note); });
        Metrics m = score(game, run);
        balance.expect(!m.cloud_balance.is_negative(), [&] { return witness(game, "balance " + m.cloud_balance.to_fraction()); });
      }
      report.properties.push_back(std::move(exact));
      report.properties.push_back(std::move(cover));
      report.properties.push_back(std::move(balance));
    }
  }
  return report;
}

VerifyReport truthfulness(VerifyOptions const &options, std::uint64_t games)
{
  CorpusSpec additive{GameKind::additive, 4, 3, 3, 10};
  CorpusSpec substitutable{GameKind::substitutable, 4, 3, 3, 10};

  std::vector<MechanismId> mechanisms{MechanismId::add_off, MechanismId::add_on,
                                      MechanismId::subst_off, MechanismId::subst_on};
  if (options.inject_naive)
  {
    mechanisms.push_back(MechanismId::naive_first_price);
  }

  VerifyReport report{"truthfulness", {}};
  for (MechanismId id : mechanisms)
  {
    CorpusSpec const &spec = accepts(id, GameKind::additive) ? additive : substitutable;
    PropertyCheck     check{name_of(id, "no_profitable_deviation")};
    for (std::uint64_t i = 0; i < games; ++i)
    {
      Game        game = corpus_game(spec, options.seed, i);
      bool        ok   = true;
      std::string note;
      for (UserId u : game.users())
      {
        DeviationReport r = deviation_search(id, game, u);
        if (r.profitable())
        {
          ok   = false;
          note = "user " + std::to_string(u) + " truthful " + r.truthful_utility.to_fraction() +
                 " deviating " + r.best_utility.to_fraction() + " with " + r.best_bid;
          break;
        }
      }
      check.expect(ok, [&] { return witness(game, note); });
    }
    report.properties.push_back(std::move(check));
  }
  return report;
}

VerifyReport multi_identity(VerifyOptions const &options, std::uint64_t games)
{
  CorpusSpec   spec{GameKind::additive, 4, 2, 3, 10};
  VerifyReport report{"multi_identity", {}};
  for (MechanismId id : {MechanismId::add_off, MechanismId::add_on})
  {
    PropertyCheck check{name_of(id, "no_harmful_split_gain")};
    for (std::uint64_t i = 0; i < games; ++i)
    {
      Game        game = corpus_game(spec, options.seed, i);
      bool        ok   = true;
      std::string note;
      for (UserId u : game.users())
      {
        HarmReport r = multi_identity_probe(id, game, u, 2, 11);
        if (r.violations > 0)
        {
          ok   = false;
          note = "splitter " + std::to_string(u);
          break;
        }
      }
      check.expect(ok, [&] { return witness(game, note); });
    }
    report.properties.push_back(std::move(check));
  }

  // Demonstration only: substitutable mechanisms are expected to admit this.
  PropertyCheck demo{"subst_off.dummy_split_harm_reproduced"};
  HarmReport    r = multi_identity_probe(MechanismId::subst_off, dummy_game(), 1, 2);
  demo.expect(r.violations > 0, [&] { return witness(dummy_game(), "no harmful split found"); });
  report.properties.push_back(std::move(demo));
  return report;
}

VerifyReport degeneration(VerifyOptions const &options, std::uint64_t games)
{
  VerifyReport report{"degeneration", {}};

  PropertyCheck add{"add_on.single_slot_equals_add_off"};
  PropertyCheck sub{"subst_on.single_slot_equals_subst_off"};
  PropertyCheck singleton{"subst_off.singletons_equal_add_off"};
  CorpusSpec    additive{GameKind::additive, 5, 3, 1, 10};
  CorpusSpec    substitutable{GameKind::substitutable, 5, 3, 1, 10};
  CorpusSpec    wide{GameKind::substitutable, 5, 3, 3, 10};
  for (std::uint64_t i = 0; i < games; ++i)
  {
    Game a = corpus_game(additive, options.seed, i);
    add.expect(same_run(run_mechanism(MechanismId::add_on, a), run_mechanism(MechanismId::add_off, a)), [&] { return witness(a, "online and offline differ"); });

    Game s = corpus_game(substitutable, options.seed, i);
    sub.expect(same_run(run_mechanism(MechanismId::subst_on, s),
                        run_mechanism(MechanismId::subst_off, s)), [&] { return witness(s, "online and offline differ"); });

    Game single = corpus_game(wide, options.seed, i);
    Game as_additive;
    as_additive.kind    = GameKind::additive;
    as_additive.catalog = single.catalog;
    as_additive.horizon = single.horizon;
    for (auto &b : single.substitutable)
    {
      b.substitutes = {*b.substitutes.begin()};
      as_additive.additive.push_back({b.user, *b.substitutes.begin(), b.start, b.end, b.per_slot});
    }
    singleton.expect(same_run(run_mechanism(MechanismId::subst_off, single),
                              run_mechanism(MechanismId::add_off, as_additive)), [&] { return witness(single, "singleton partition differs from add_off"); });
  }
  report.properties.push_back(std::move(add));
  report.properties.push_back(std::move(sub));
  report.properties.push_back(std::move(singleton));
  return report;
}

VerifyReport dominance(VerifyOptions const &options, std::uint64_t games)
{
  VerifyReport report{"dominance", {}};
  std::vector<MechanismId> all{MechanismId::add_off, MechanismId::add_on,
                               MechanismId::subst_off, MechanismId::subst_on,
                               MechanismId::regret, MechanismId::naive_first_price};
  for (GameKind kind : {GameKind::additive, GameKind::substitutable})
  {
    CorpusSpec spec{kind, 5, 4, 3, 10};
    std::vector<PropertyCheck> checks;
    std::vector<MechanismId>   ids;
    for (MechanismId id : all)
    {
      if (accepts(id, kind))
      {
        ids.push_back(id);
        checks.push_back(PropertyCheck{name_of(id, std::string("oracle_dominates.") +
                                                       std::string(to_string(kind)))});
      }
    }
    for (std::uint64_t i = 0; i < games; ++i)
    {
      Game  game = corpus_game(spec, options.seed, i);
      Money best;
      if (kind == GameKind::additive)
      {
        auto bids = collapse_additive(game);
        best      = efficient_outcome(game.catalog, std::span<AdditiveOfflineBid const>(bids)).utility;
      }
      else
      {
        auto bids = collapse_substitutable(game);
        best = efficient_outcome(game.catalog, std::span<SubstitutableOfflineBid const>(bids)).utility;
      }
      for (std::size_t k = 0; k < ids.size(); ++k)
      {
        Money got = score(game, run_mechanism(ids[k], game)).total_utility;
        checks[k].expect(got <= best, [&] { return witness(game, "mechanism " + got.to_fraction() +
                                                        " above optimum " + best.to_fraction()); });
      }
    }
    for (auto &c : checks)
    {
      report.properties.push_back(std::move(c));
    }
  }
  return report;
}

}  // namespace

void PropertyCheck::fail(std::string witness)
{
  ++checked;
  ++violations;
  if (witnesses.size() < kMaxWitnesses)
  {
    witnesses.push_back(std::move(witness));
  }
}

std::string_view to_string(Suite suite)
{
  for (auto const &[s, name] : kSuites)
  {
    if (s == suite)
    {
      return name;
    }
  }
  return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name)
{
  for (auto const &[s, n] : kSuites)
  {
    if (n == name)
    {
      return s;
    }
  }
  return std::nullopt;
}

std::uint64_t default_games(Suite suite)
{
  switch (suite)
  {
  case Suite::cost_recovery:
    return 10000;
  case Suite::truthfulness:
  case Suite::degeneration:
  case Suite::dominance:
    return 1000;
  case Suite::multi_identity:
    return 200;
  case Suite::golden_examples:
    return 1;
  }
  return 1;
}

bool VerifyReport::passed() const
{
  for (auto const &p : properties)
  {
    if (!p.passed())
    {
      return false;
    }
  }
  return true;
}

PropertyCheck const &VerifyReport::property(std::string_view name) const
{
  for (auto const &p : properties)
  {
    if (p.name == name)
    {
      return p;
    }
  }
  throw DomainError("no property " + std::string(name) + " in suite " + suite);
}

VerifyReport run_suite(Suite suite, VerifyOptions const &options)
{
  std::uint64_t games = options.games == 0 ? default_games(suite) : options.games;
  switch (suite)
  {
  case Suite::cost_recovery:
    return cost_recovery(options, games);
  case Suite::truthfulness:
    return truthfulness(options, games);
  case Suite::multi_identity:
    return multi_identity(options, games);
  case Suite::degeneration:
    return degeneration(options, games);
  case Suite::dominance:
    return dominance(options, games);
  case Suite::golden_examples:
    return {"golden_examples", golden_checks()};
  }
  throw DomainError("unknown suite");
}

std::string format_report(VerifyReport const &report)
{
  std::ostringstream out;
  for (auto const &p : report.properties)
  {
    out << (p.passed() ? "PASS " : "FAIL ") << report.suite << '.' << p.name << "  "
        << p.violations << '/' << p.checked << " violations\n";
  }
  for (auto const &p : report.properties)
  {
    for (auto const &w : p.witnesses)
    {
      out << "  " << p.name << ": " << w << '\n';
    }
  }
  return out.str();
}

std::string witness(Game const &game, std::string const &note)
{
  nlohmann::json doc{{"note", note}, {"game", game_to_json(game)}};
  return doc.dump();
}

}  // namespace cloudshare::harness
