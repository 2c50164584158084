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

#include "cloudshare/rng.hpp"

#include <cmath>
#include <limits>

namespace cloudshare {

std::uint64_t splitmix64(std::uint64_t &state)
{
  state         += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z               = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z               = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
{
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state               = mixed ^ trial;
  mixed               = splitmix64(state);
  state               = mixed ^ stream;
  engine_.seed(splitmix64(state));
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi)
{
  std::uint64_t const span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max())
  {
    return next();
  }
  std::uint64_t const range = span + 1;
  std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = next();
  while (x >= limit)
  {
    x = next();
  }
  return lo + x % range;
}

double Rng::unit()
{
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::exponential(double mean)
{
  return -mean * std::log1p(-unit());
}

}  // namespace cloudshare
