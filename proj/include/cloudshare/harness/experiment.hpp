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

#include "cloudshare/mechanisms.hpp"
#include "cloudshare/money.hpp"
#include "cloudshare/scenarios.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace cloudshare::harness {

struct ExperimentConfig
{
  std::string              name{"experiment"};
  ScenarioSpec             scenario;  ///< scenario.cost is replaced by each sweep point
  std::vector<MechanismId> mechanisms;
  std::vector<Money>       cost_sweep;
  std::string              output_file{"results.csv"};
  bool                     detail{false};  ///< also write <output_file>.detail.csv
};

/// Parses a config document. `cost_sweep` is either an array of amounts or
/// {"from", "to", "step"}. Throws ConfigError with a dotted field path.
ExperimentConfig config_from_json(nlohmann::json const &doc);
nlohmann::json   config_to_json(ExperimentConfig const &config);
ExperimentConfig load_config(std::filesystem::path const &path);

struct Aggregate
{
  MechanismId   mechanism{};
  Money         cost;
  std::uint64_t trials{0};
  Money         mean_total_utility;
  Money         sd_total_utility;  ///< population SD, rounded half-even to 9 digits
  Money         mean_cloud_balance;
  Money         sd_cloud_balance;
  Money         implemented_rate;  ///< share of trials implementing anything
};

struct TrialRecord
{
  MechanismId   mechanism{};
  Money         cost;
  std::uint64_t trial{0};
  Money         total_utility;
  Money         cloud_balance;
  bool          implemented{false};
};

struct ExperimentResult
{
  std::vector<Aggregate>   rows;     ///< ordered by cost point, then mechanism
  std::vector<TrialRecord> details;  ///< filled only when requested

  Aggregate const &row(MechanismId mechanism, Money const &cost) const;
};

/// Thread count from CLOUDSHARE_THREADS, else the hardware concurrency.
unsigned default_threads();

/// Runs every (cost point, trial, mechanism) triple. Each trial's game is
/// generated once and its catalog rescaled per cost point, so all cost
/// points and mechanisms see the same users. Output does not depend on
/// `threads`.
ExperimentResult run_experiment(ExperimentConfig const &config, unsigned threads = 0,
                                bool keep_details = false);

/// Square root rounded half-even to `digits` fractional digits. `x` >= 0.
Money rounded_sqrt(Money const &x, int digits = 9);

std::string to_csv(ExperimentResult const &result);
/// Per-trial rows with exact n/d values.
std::string to_detail_csv(ExperimentResult const &result);

/// Validates, runs and writes the CSV (and detail file) under `out_dir`.
/// Returns the CSV path.
std::filesystem::path run_to_files(ExperimentConfig const &config,
                                   std::filesystem::path const &out_dir, unsigned threads = 0);

}  // namespace cloudshare::harness
