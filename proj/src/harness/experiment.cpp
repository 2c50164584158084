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

#include "cloudshare/harness/experiment.hpp"

#include "cloudshare/errors.hpp"
#include "cloudshare/harness/json_io.hpp"
#include "cloudshare/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <thread>

namespace cloudshare::harness {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxSweepPoints = 100000;

struct Sums
{
  Money         utility;
  Money         utility_sq;
  Money         balance;
  Money         balance_sq;
  std::uint64_t implemented{0};

  void add(Metrics const &m, bool any)
  {
    utility += m.total_utility;
    utility_sq += m.total_utility * m.total_utility;
    balance += m.cloud_balance;
    balance_sq += m.cloud_balance * m.cloud_balance;
    implemented += any ? 1 : 0;
  }

  void merge(Sums const &o)
  {
    utility += o.utility;
    utility_sq += o.utility_sq;
    balance += o.balance;
    balance_sq += o.balance_sq;
    implemented += o.implemented;
  }
};

std::vector<Money> sweep_from_json(json const &value)
{
  std::vector<Money> out;
  if (value.is_array())
  {
    for (std::size_t i = 0; i < value.size(); ++i)
    {
      out.push_back(money_from_json(value[i], "cost_sweep[" + std::to_string(i) + "]"));
    }
  }
  else if (value.is_object())
  {
    for (auto const &item : value.items())
    {
      if (item.key() != "from" && item.key() != "to" && item.key() != "step")
      {
        throw ConfigError("cost_sweep." + item.key(), "unknown field");
      }
    }
    for (char const *key : {"from", "to", "step"})
    {
      if (!value.contains(key))
      {
        throw ConfigError(std::string("cost_sweep.") + key, "missing");
      }
    }
    Money from = money_from_json(value["from"], "cost_sweep.from");
    Money to   = money_from_json(value["to"], "cost_sweep.to");
    Money step = money_from_json(value["step"], "cost_sweep.step");
    if (!step.is_positive())
    {
      throw ConfigError("cost_sweep.step", "must be positive");
    }
    if (to < from)
    {
      throw ConfigError("cost_sweep.to", "must not be below from");
    }
    for (Money c = from; c <= to; c += step)
    {
      out.push_back(c);
      if (out.size() > kMaxSweepPoints)
      {
        throw ConfigError("cost_sweep.step", "too many sweep points");
      }
    }
  }
  else
  {
    throw ConfigError("cost_sweep", "expected an array or {from, to, step}");
  }
  if (out.empty())
  {
    throw ConfigError("cost_sweep", "must not be empty");
  }
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    if (!out[i].is_positive())
    {
      throw ConfigError("cost_sweep[" + std::to_string(i) + "]", "cost must be positive");
    }
  }
  return out;
}

std::string csv_name(MechanismId id)
{
  return std::string(to_string(id));
}

}  // namespace

Aggregate const &ExperimentResult::row(MechanismId mechanism, Money const &cost) const
{
  for (auto const &r : rows)
  {
    if (r.mechanism == mechanism && r.cost == cost)
    {
      return r;
    }
  }
  throw DomainError("no row for " + csv_name(mechanism) + " at cost " + cost.to_fraction());
}

ExperimentConfig config_from_json(json const &doc)
{
  if (!doc.is_object())
  {
    throw ConfigError("$", "expected an object");
  }
  for (auto const &item : doc.items())
  {
    static std::set<std::string> const known{"schema", "name", "scenario", "mechanisms",
                                             "cost_sweep", "output"};
    if (known.count(item.key()) == 0)
    {
      throw ConfigError(item.key(), "unknown field");
    }
  }
  if (!doc.contains("schema"))
  {
    throw ConfigError("schema", "missing");
  }
  if (!doc["schema"].is_number_integer() || doc["schema"].get<std::int64_t>() != kSchemaVersion)
  {
    throw ConfigError("schema", "unsupported version");
  }

  ExperimentConfig config;
  if (doc.contains("name"))
  {
    if (!doc["name"].is_string() || doc["name"].get<std::string>().empty())
    {
      throw ConfigError("name", "expected a non-empty string");
    }
    config.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("scenario"))
  {
    throw ConfigError("scenario", "missing");
  }
  config.scenario = scenario_from_json(doc["scenario"]);

  if (!doc.contains("mechanisms") || !doc["mechanisms"].is_array() || doc["mechanisms"].empty())
  {
    throw ConfigError("mechanisms", "expected a non-empty array");
  }
  GameKind kind = kind_of(config.scenario.family);
  for (std::size_t i = 0; i < doc["mechanisms"].size(); ++i)
  {
    std::string field = "mechanisms[" + std::to_string(i) + "]";
    json const &m     = doc["mechanisms"][i];
    auto        id    = m.is_string() ? parse_mechanism(m.get<std::string>()) : std::nullopt;
    if (!id)
    {
      throw ConfigError(field, "unknown mechanism");
    }
    if (!accepts(*id, kind))
    {
      throw ConfigError(field, csv_name(*id) + " does not accept " +
                                   std::string(to_string(kind)) + " scenarios");
    }
    if (std::find(config.mechanisms.begin(), config.mechanisms.end(), *id) !=
        config.mechanisms.end())
    {
      throw ConfigError(field, "listed twice");
    }
    config.mechanisms.push_back(*id);
  }

  if (!doc.contains("cost_sweep"))
  {
    throw ConfigError("cost_sweep", "missing");
  }
  config.cost_sweep = sweep_from_json(doc["cost_sweep"]);

  if (doc.contains("output"))
  {
    json const &out = doc["output"];
    if (!out.is_object())
    {
      throw ConfigError("output", "expected an object");
    }
    for (auto const &item : out.items())
    {
      if (item.key() == "file")
      {
        if (!item.value().is_string() || item.value().get<std::string>().empty())
        {
          throw ConfigError("output.file", "expected a non-empty string");
        }
        config.output_file = item.value().get<std::string>();
      }
      else if (item.key() == "detail")
      {
        if (!item.value().is_boolean())
        {
          throw ConfigError("output.detail", "expected a boolean");
        }
        config.detail = item.value().get<bool>();
      }
      else
      {
        throw ConfigError("output." + item.key(), "unknown field");
      }
    }
  }
  return config;
}

json config_to_json(ExperimentConfig const &config)
{
  json mechanisms = json::array();
  for (auto id : config.mechanisms)
  {
    mechanisms.push_back(csv_name(id));
  }
  json sweep = json::array();
  for (auto const &c : config.cost_sweep)
  {
    sweep.push_back(money_text(c));
  }
  return {{"schema", kSchemaVersion},
          {"name", config.name},
          {"scenario", scenario_to_json(config.scenario)},
          {"mechanisms", mechanisms},
          {"cost_sweep", sweep},
          {"output", {{"file", config.output_file}, {"detail", config.detail}}}};
}

ExperimentConfig load_config(std::filesystem::path const &path)
{
  return config_from_json(read_json_file(path));
}

unsigned default_threads()
{
  if (char const *env = std::getenv("CLOUDSHARE_THREADS"))
  {
    char         *end = nullptr;
    unsigned long n   = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 1024)
    {
      return static_cast<unsigned>(n);
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

Money rounded_sqrt(Money const &x, int digits)
{
  if (x.is_negative())
  {
    throw DomainError("square root of a negative amount");
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpq_class scaled = x.raw() * scale * scale;
  mpz_class floor_x;
  mpz_fdiv_q(floor_x.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  mpz_class q;
  mpz_sqrt(q.get_mpz_t(), floor_x.get_mpz_t());
  // compare sqrt(scaled) with q + 1/2, i.e. scaled with q^2 + q + 1/4
  mpq_class mid(mpz_class(q * q + q) * 4 + 1, 4);
  int       c = cmp(scaled, mid);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t())))
  {
    q += 1;
  }
  return Money(mpq_class(q, scale));
}

ExperimentResult run_experiment(ExperimentConfig const &config, unsigned threads, bool keep_details)
{
  validate(config.scenario);
  if (config.mechanisms.empty() || config.cost_sweep.empty())
  {
    throw ConfigError("mechanisms", "nothing to run");
  }
  std::uint64_t const trials  = config.scenario.trials;
  std::size_t const   points  = config.cost_sweep.size();
  std::size_t const   mechs   = config.mechanisms.size();
  std::size_t const   cells   = points * mechs;
  ScenarioSpec const  base    = config.scenario;
  unsigned            workers = threads == 0 ? default_threads() : threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  std::vector<std::vector<Sums>> partial(workers, std::vector<Sums>(cells));
  std::vector<TrialRecord>       details;
  if (keep_details)
  {
    details.resize(static_cast<std::size_t>(trials) * cells);
  }
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned w) {
    try
    {
      for (std::uint64_t t = w; t < trials; t += workers)
      {
        Game generated = generate(base, t);
        for (std::size_t p = 0; p < points; ++p)
        {
          Game game    = generated;
          game.catalog = generated.catalog.scaled(config.cost_sweep[p] / base.cost);
          for (std::size_t k = 0; k < mechs; ++k)
          {
            RunResult run = run_mechanism(config.mechanisms[k], game);
            Metrics   m   = score(game, run);
            bool      any = !run.implemented.empty();
            partial[w][p * mechs + k].add(m, any);
            if (keep_details)
            {
              details[static_cast<std::size_t>(t) * cells + p * mechs + k] =
                  TrialRecord{config.mechanisms[k], config.cost_sweep[p], t, m.total_utility,
                              m.cloud_balance, any};
            }
          }
        }
      }
    }
    catch (...)
    {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1)
  {
    work(0);
  }
  else
  {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
    {
      pool.emplace_back(work, w);
    }
    for (auto &th : pool)
    {
      th.join();
    }
  }
  for (auto const &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }

  ExperimentResult result;
  Money const      n(static_cast<std::int64_t>(trials));
  for (std::size_t p = 0; p < points; ++p)
  {
    for (std::size_t k = 0; k < mechs; ++k)
    {
      Sums total;
      for (auto const &part : partial)
      {
        total.merge(part[p * mechs + k]);
      }
      Aggregate a;
      a.mechanism          = config.mechanisms[k];
      a.cost               = config.cost_sweep[p];
      a.trials             = trials;
      a.mean_total_utility = total.utility / n;
      a.mean_cloud_balance = total.balance / n;
      a.sd_total_utility =
          rounded_sqrt(max(Money(0), total.utility_sq / n - a.mean_total_utility * a.mean_total_utility));
      a.sd_cloud_balance =
          rounded_sqrt(max(Money(0), total.balance_sq / n - a.mean_cloud_balance * a.mean_cloud_balance));
      a.implemented_rate = Money(static_cast<std::int64_t>(total.implemented)) / n;
      result.rows.push_back(std::move(a));
    }
  }
  result.details = std::move(details);
  return result;
}

std::string to_csv(ExperimentResult const &result)
{
  std::ostringstream out;
  out << "mechanism,cost,trials,mean_total_utility,sd_total_utility,mean_cloud_balance,"
         "sd_cloud_balance,implemented_rate\n";
  for (auto const &r : result.rows)
  {
    out << csv_name(r.mechanism) << ',' << r.cost.to_decimal(9) << ',' << r.trials << ','
        << r.mean_total_utility.to_decimal(9) << ',' << r.sd_total_utility.to_decimal(9) << ','
        << r.mean_cloud_balance.to_decimal(9) << ',' << r.sd_cloud_balance.to_decimal(9) << ','
        << r.implemented_rate.to_decimal(9) << '\n';
  }
  return out.str();
}

std::string to_detail_csv(ExperimentResult const &result)
{
  std::ostringstream out;
  out << "mechanism,cost,trial,total_utility,cloud_balance,implemented\n";
  for (auto const &d : result.details)
  {
    out << csv_name(d.mechanism) << ',' << d.cost.to_fraction() << ',' << d.trial << ','
        << d.total_utility.to_fraction() << ',' << d.cloud_balance.to_fraction() << ','
        << (d.implemented ? 1 : 0) << '\n';
  }
  return out.str();
}

std::filesystem::path run_to_files(ExperimentConfig const &config,
                                   std::filesystem::path const &out_dir, unsigned threads)
{
  ExperimentResult result = run_experiment(config, threads, config.detail);
  std::filesystem::create_directories(out_dir);
  std::filesystem::path csv = out_dir / config.output_file;
  if (config.detail)
  {
    std::filesystem::path detail = csv;
    detail += ".detail.csv";
    write_file_atomic(detail, to_detail_csv(result));
  }
  write_file_atomic(csv, to_csv(result));
  return csv;
}

}  // namespace cloudshare::harness
