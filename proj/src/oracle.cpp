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

#include "cloudshare/oracle.hpp"

#include "cloudshare/errors.hpp"

#include <bit>
#include <string>

namespace cloudshare {

namespace {

void guard(std::size_t users, std::size_t opts)
{
  if (users * opts > kMaxGrantPairs)
  {
    throw GuardError(std::to_string(users) + " users x " + std::to_string(opts) +
                     " optimizations exceeds the enumeration limit of " +
                     std::to_string(kMaxGrantPairs) + " grant pairs");
  }
}

}  // namespace

EfficientOutcome efficient_outcome(Catalog const &catalog, std::span<AdditiveOfflineBid const> bids)
{
  std::vector<OptId> opts = catalog.ids();
  guard(bids.size(), opts.size());

  struct Pair
  {
    UserId      user;
    std::size_t opt;  // index into opts
    Money       value;
  };
  std::vector<Pair> pairs;
  for (auto const &b : bids)
  {
    for (std::size_t k = 0; k < opts.size(); ++k)
    {
      pairs.push_back({b.user, k, b.value_for(opts[k])});
    }
  }

  // Gray-code walk over every grant set; an optimization is implemented iff
  // it carries at least one grant (implementing it without grants only adds cost).
  std::vector<std::size_t> grants_on(opts.size(), 0);
  Money                    utility;
  Money                    best;  // empty outcome
  std::uint64_t            best_code = 0;
  std::uint64_t const      count     = std::uint64_t{1} << pairs.size();
  std::uint64_t            code      = 0;
  for (std::uint64_t step = 1; step < count; ++step)
  {
    std::size_t  bit   = static_cast<std::size_t>(std::countr_zero(step));
    Pair const  &p     = pairs[bit];
    Money const &cost  = catalog.cost(opts[p.opt]);
    code              ^= std::uint64_t{1} << bit;
    if (code >> bit & 1)
    {
      utility += p.value;
      if (grants_on[p.opt]++ == 0)
      {
        utility -= cost;
      }
    }
    else
    {
      utility -= p.value;
      if (--grants_on[p.opt] == 0)
      {
        utility += cost;
      }
    }
    if (utility > best)
    {
      best      = utility;
      best_code = code;
    }
  }

  EfficientOutcome out;
  out.utility      = best;
  out.alternatives = count;
  for (std::size_t bit = 0; bit < pairs.size(); ++bit)
  {
    if (best_code >> bit & 1)
    {
      out.outcome.grants.insert({pairs[bit].user, opts[pairs[bit].opt]});
      out.outcome.implemented.insert(opts[pairs[bit].opt]);
    }
  }
  return out;
}

EfficientOutcome efficient_outcome(Catalog const &catalog,
                                   std::span<SubstitutableOfflineBid const> bids)
{
  guard(bids.size(), catalog.size());
  std::vector<std::vector<OptId>> choices;  // per user: candidate optimizations
  for (auto const &b : bids)
  {
    for (OptId j : b.substitutes)
    {
      if (!catalog.contains(j))
      {
        throw CatalogMismatch("unknown optimization " + std::to_string(j));
      }
    }
    choices.emplace_back(b.substitutes.begin(), b.substitutes.end());
  }

  // mixed-radix counter: digit 0 means no grant, digit d grants choices[d - 1]
  std::vector<std::size_t> digit(bids.size(), 0);
  EfficientOutcome         out;
  bool                     first = true;
  for (;;)
  {
    ++out.alternatives;
    Outcome candidate;
    Money   utility;
    for (std::size_t i = 0; i < bids.size(); ++i)
    {
      if (digit[i] != 0)
      {
        OptId j = choices[i][digit[i] - 1];
        candidate.grants.insert({bids[i].user, j});
        candidate.implemented.insert(j);
        utility += bids[i].value;
      }
    }
    for (OptId j : candidate.implemented)
    {
      utility -= catalog.cost(j);
    }
    if (first || utility > out.utility)
    {
      out.utility = utility;
      out.outcome = std::move(candidate);
      first       = false;
    }

    std::size_t i = 0;
    while (i < bids.size() && ++digit[i] > choices[i].size())
    {
      digit[i++] = 0;
    }
    if (i == bids.size())
    {
      break;
    }
  }
  return out;
}

}  // namespace cloudshare
