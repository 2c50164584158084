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

#include <cstdint>
#include <random>

namespace cloudshare {

/// SplitMix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t &state);

/// Deterministic random stream for one (seed, trial, stream) triple.
///
/// The triple is folded through SplitMix64 into the seed of a
/// std::mt19937_64, whose output sequence is fixed by the standard. Integer
/// draws use rejection sampling so results do not depend on the standard
/// library's distribution implementations.
class Rng
{
public:
  Rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);

  std::uint64_t next()
  {
    return engine_();
  }

  /// Uniform integer in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

  /// Exponential draw with the given mean, by inversion.
  double exponential(double mean);

private:
  std::mt19937_64 engine_;
};

}  // namespace cloudshare
