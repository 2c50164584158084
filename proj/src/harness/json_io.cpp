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

#include "cloudshare/harness/json_io.hpp"

#include "cloudshare/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace cloudshare::harness {

using nlohmann::json;

namespace {

std::string at(std::string const &prefix, std::string const &key)
{
  return prefix.empty() ? key : prefix + "." + key;
}

std::string index(std::string const &prefix, std::size_t i)
{
  return prefix + "[" + std::to_string(i) + "]";
}

void only_keys(json const &obj, std::string const &prefix, std::set<std::string> const &allowed)
{
  if (!obj.is_object())
  {
    throw ConfigError(prefix.empty() ? "$" : prefix, "expected an object");
  }
  for (auto const &item : obj.items())
  {
    if (allowed.count(item.key()) == 0)
    {
      throw ConfigError(at(prefix, item.key()), "unknown field");
    }
  }
}

json const &require(json const &obj, std::string const &key, std::string const &prefix)
{
  auto it = obj.find(key);
  if (it == obj.end())
  {
    throw ConfigError(at(prefix, key), "missing");
  }
  return *it;
}

std::uint64_t unsigned_field(json const &value, std::string const &field,
                             std::uint64_t max = UINT32_MAX)
{
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0))
  {
    throw ConfigError(field, "expected a non-negative integer");
  }
  auto x = value.get<std::uint64_t>();
  if (x > max)
  {
    throw ConfigError(field, "out of range");
  }
  return x;
}

std::string string_field(json const &value, std::string const &field)
{
  if (!value.is_string())
  {
    throw ConfigError(field, "expected a string");
  }
  return value.get<std::string>();
}

std::vector<Money> values_from_json(json const &value, std::string const &field)
{
  if (!value.is_array())
  {
    throw ConfigError(field, "expected an array of amounts");
  }
  std::vector<Money> out;
  for (std::size_t i = 0; i < value.size(); ++i)
  {
    out.push_back(money_from_json(value[i], index(field, i)));
  }
  return out;
}

json values_to_json(std::vector<Money> const &values)
{
  json out = json::array();
  for (auto const &v : values)
  {
    out.push_back(money_text(v));
  }
  return out;
}

}  // namespace

std::string money_text(Money const &m)
{
  mpz_class den = m.raw().get_den();
  int       digits = 0;
  for (unsigned p : {2U, 5U})
  {
    int count = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), p) != 0)
    {
      den /= p;
      ++count;
    }
    digits = std::max(digits, count);
  }
  if (den != 1)
  {
    return m.to_fraction();
  }
  return m.to_decimal(digits);
}

Money money_from_json(json const &value, std::string const &field)
{
  if (value.is_number_integer())
  {
    return Money(value.get<std::int64_t>());
  }
  if (!value.is_string())
  {
    throw ConfigError(field, "expected an amount string");
  }
  try
  {
    return Money::parse(value.get<std::string>());
  }
  catch (DomainError const &e)
  {
    throw ConfigError(field, e.what());
  }
}

json game_to_json(Game const &game)
{
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"]   = std::string(to_string(game.kind));
  doc["slots"]  = game.horizon.z();
  json catalog  = json::array();
  for (auto const &[id, cost] : game.catalog.costs())
  {
    catalog.push_back({{"id", id}, {"cost", money_text(cost)}});
  }
  doc["catalog"] = catalog;
  json bids      = json::array();
  if (game.kind == GameKind::additive)
  {
    for (auto const &b : game.additive)
    {
      bids.push_back({{"user", b.user},
                      {"opt", b.opt},
                      {"start", b.start},
                      {"end", b.end},
                      {"values", values_to_json(b.per_slot)}});
    }
  }
  else
  {
    for (auto const &b : game.substitutable)
    {
      bids.push_back({{"user", b.user},
                      {"substitutes", b.substitutes},
                      {"start", b.start},
                      {"end", b.end},
                      {"values", values_to_json(b.per_slot)}});
    }
  }
  doc["bids"] = bids;
  return doc;
}

Game game_from_json(json const &doc)
{
  only_keys(doc, "", {"schema", "kind", "slots", "catalog", "bids"});
  if (unsigned_field(require(doc, "schema", ""), "schema") != kSchemaVersion)
  {
    throw ConfigError("schema", "unsupported version");
  }
  Game        game;
  std::string kind = string_field(require(doc, "kind", ""), "kind");
  if (kind == "additive")
  {
    game.kind = GameKind::additive;
  }
  else if (kind == "substitutable")
  {
    game.kind = GameKind::substitutable;
  }
  else
  {
    throw ConfigError("kind", "expected additive or substitutable");
  }
  auto z = unsigned_field(require(doc, "slots", ""), "slots");
  if (z == 0)
  {
    throw ConfigError("slots", "must be positive");
  }
  game.horizon = SlotHorizon(static_cast<Slot>(z));

  json const &catalog = require(doc, "catalog", "");
  if (!catalog.is_array())
  {
    throw ConfigError("catalog", "expected an array");
  }
  for (std::size_t i = 0; i < catalog.size(); ++i)
  {
    std::string field = index("catalog", i);
    only_keys(catalog[i], field, {"id", "cost"});
    auto  id   = static_cast<OptId>(unsigned_field(require(catalog[i], "id", field), field + ".id"));
    Money cost = money_from_json(require(catalog[i], "cost", field), field + ".cost");
    try
    {
      game.catalog.add({id, cost});
    }
    catch (Error const &e)
    {
      throw ConfigError(field, e.what());
    }
  }

  json const &bids = require(doc, "bids", "");
  if (!bids.is_array())
  {
    throw ConfigError("bids", "expected an array");
  }
  for (std::size_t i = 0; i < bids.size(); ++i)
  {
    std::string field = index("bids", i);
    json const &b     = bids[i];
    auto        user  = static_cast<UserId>(unsigned_field(require(b, "user", field), field + ".user"));
    auto start = static_cast<Slot>(unsigned_field(require(b, "start", field), field + ".start"));
    auto end   = static_cast<Slot>(unsigned_field(require(b, "end", field), field + ".end"));
    auto values = values_from_json(require(b, "values", field), field + ".values");
    if (game.kind == GameKind::additive)
    {
      only_keys(b, field, {"user", "opt", "start", "end", "values"});
      auto opt = static_cast<OptId>(unsigned_field(require(b, "opt", field), field + ".opt"));
      game.additive.push_back({user, opt, start, end, std::move(values)});
    }
    else
    {
      only_keys(b, field, {"user", "substitutes", "start", "end", "values"});
      json const     &subs = require(b, "substitutes", field);
      std::set<OptId> set;
      if (!subs.is_array())
      {
        throw ConfigError(field + ".substitutes", "expected an array");
      }
      for (std::size_t k = 0; k < subs.size(); ++k)
      {
        set.insert(static_cast<OptId>(unsigned_field(subs[k], index(field + ".substitutes", k))));
      }
      game.substitutable.push_back({user, std::move(set), start, end, std::move(values)});
    }
  }

  try
  {
    game.validate();
  }
  catch (Error const &e)
  {
    throw ConfigError("bids", e.what());
  }
  return game;
}

Game load_game(std::filesystem::path const &path)
{
  return game_from_json(read_json_file(path));
}

json scenario_to_json(ScenarioSpec const &spec)
{
  return {{"family", std::string(to_string(spec.family))},
          {"users", spec.users},
          {"slots", spec.slots},
          {"opt_count", spec.opt_count},
          {"cost", money_text(spec.cost)},
          {"substitutes_per_user", spec.substitutes_per_user},
          {"duration", spec.duration},
          {"skew", std::string(to_string(spec.skew))},
          {"seed", spec.seed},
          {"trials", spec.trials},
          {"executions", spec.executions}};
}

ScenarioSpec scenario_from_json(json const &doc, std::string const &prefix)
{
  only_keys(doc, prefix,
            {"family", "users", "slots", "opt_count", "cost", "substitutes_per_user", "duration",
             "skew", "seed", "trials", "executions"});
  ScenarioSpec spec;
  auto         get_u32 = [&](char const *key, std::uint32_t &out) {
    if (auto it = doc.find(key); it != doc.end())
    {
      out = static_cast<std::uint32_t>(unsigned_field(*it, at(prefix, key)));
    }
  };
  if (auto it = doc.find("family"); it != doc.end())
  {
    auto f = parse_family(string_field(*it, at(prefix, "family")));
    if (!f)
    {
      throw ConfigError(at(prefix, "family"), "unknown family");
    }
    spec.family = *f;
  }
  if (auto it = doc.find("skew"); it != doc.end())
  {
    auto s = parse_skew(string_field(*it, at(prefix, "skew")));
    if (!s)
    {
      throw ConfigError(at(prefix, "skew"), "expected uniform, early or late");
    }
    spec.skew = *s;
  }
  get_u32("users", spec.users);
  get_u32("slots", spec.slots);
  get_u32("opt_count", spec.opt_count);
  get_u32("substitutes_per_user", spec.substitutes_per_user);
  get_u32("duration", spec.duration);
  get_u32("executions", spec.executions);
  if (auto it = doc.find("cost"); it != doc.end())
  {
    spec.cost = money_from_json(*it, at(prefix, "cost"));
  }
  if (auto it = doc.find("seed"); it != doc.end())
  {
    spec.seed = unsigned_field(*it, at(prefix, "seed"), UINT64_MAX);
  }
  if (auto it = doc.find("trials"); it != doc.end())
  {
    spec.trials = unsigned_field(*it, at(prefix, "trials"), UINT64_MAX);
  }
  try
  {
    validate(spec);
  }
  catch (ConfigError const &e)
  {
    // validate() reports "scenario.<field>"
    std::string field = e.field().substr(e.field().find('.') + 1);
    throw ConfigError(at(prefix, field), e.what());
  }
  return spec;
}

json read_json_file(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError(path.string(), "cannot open file");
  }
  try
  {
    return json::parse(in);
  }
  catch (json::parse_error const &e)
  {
    throw ConfigError(path.string(), e.what());
  }
}

void write_file_atomic(std::filesystem::path const &path, std::string const &content)
{
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw Error("cannot write " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out)
    {
      throw Error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace cloudshare::harness
