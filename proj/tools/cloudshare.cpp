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
#include "cloudshare/harness/experiment.hpp"
#include "cloudshare/harness/json_io.hpp"
#include "cloudshare/harness/verify.hpp"
#include "cloudshare/mechanisms.hpp"
#include "cloudshare/metrics.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace cloudshare;

constexpr int kOk          = 0;
constexpr int kViolation   = 1;
constexpr int kConfigError = 2;

int cmd_run(std::string const &config_path, std::string const &out_dir, unsigned threads)
{
  harness::ExperimentConfig config = harness::load_config(config_path);
  auto path = harness::run_to_files(config, out_dir, threads);
  std::cout << path.string() << '\n';
  return kOk;
}

int cmd_verify(std::string const &suite_name, harness::VerifyOptions const &options)
{
  auto suite = harness::parse_suite(suite_name);
  if (!suite)
  {
    std::cerr << "unknown suite: " << suite_name << '\n';
    return kConfigError;
  }
  harness::VerifyReport report = harness::run_suite(*suite, options);
  std::cout << harness::format_report(report);
  return report.passed() ? kOk : kViolation;
}

int cmd_replay(std::string const &game_path, std::string const &mechanism_name)
{
  auto id = parse_mechanism(mechanism_name);
  if (!id)
  {
    std::cerr << "unknown mechanism: " << mechanism_name << '\n';
    return kConfigError;
  }
  Game game = harness::load_game(game_path);
  if (!accepts(*id, game.kind))
  {
    std::cerr << mechanism_name << " does not accept " << to_string(game.kind) << " games\n";
    return kConfigError;
  }
  RunResult run = run_mechanism(*id, game);
  Metrics   m   = score(game, run);

  std::cout << "mechanism " << to_string(*id) << '\n';
  std::cout << "implemented";
  for (OptId j : run.implemented)
  {
    std::cout << ' ' << j;
  }
  std::cout << '\n';
  for (UserId u : game.users())
  {
    std::cout << "user " << u << " pays " << harness::money_text(run.ledger.total_for(u))
              << " utility " << harness::money_text(m.per_user_utility.at(u)) << '\n';
  }
  std::cout << "total_value " << harness::money_text(m.total_value) << '\n'
            << "total_cost " << harness::money_text(m.total_cost) << '\n'
            << "total_utility " << harness::money_text(m.total_utility) << '\n'
            << "cloud_balance " << harness::money_text(m.cloud_balance) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Cost-sharing mechanisms for cloud optimizations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  unsigned    threads = 0;
  auto       *run     = app.add_subcommand("run", "Run an experiment sweep and write CSV results");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--threads", threads, "Worker threads (default: CLOUDSHARE_THREADS or all cores)");

  std::string            suite;
  harness::VerifyOptions options;
  auto *verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", suite,
                     "cost_recovery, truthfulness, multi_identity, degeneration, dominance or "
                     "golden_examples")
      ->required();
  verify->add_option("--seed", options.seed, "Corpus seed");
  verify->add_option("--games", options.games, "Corpus size (0 = suite default)");
  verify->add_flag("--inject-naive", options.inject_naive,
                   "Also test the pay-your-bid control mechanism for truthfulness");

  std::string game_path;
  std::string mechanism;
  auto       *replay = app.add_subcommand("replay", "Run one mechanism on a game file");
  replay->add_option("--game", game_path, "Game file (JSON)")->required();
  replay->add_option("--mechanism", mechanism,
                     "add_off, add_on, subst_off, subst_on, regret or naive_first_price")
      ->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try
  {
    if (*run)
    {
      return cmd_run(config_path, out_dir, threads);
    }
    if (*verify)
    {
      return cmd_verify(suite, options);
    }
    return cmd_replay(game_path, mechanism);
  }
  catch (ConfigError const &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  catch (cloudshare::Error const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
