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

#include "cloudshare/game.hpp"
#include "cloudshare/harness/verify.hpp"

#include <vector>

namespace cloudshare::harness {

/// One optimization of cost 100 over 3 slots, four users.
Game staggered_game();
/// Offline substitutable instance with three optimizations and four users.
Game substitutes_game();
/// Online substitutable instance; `with_user4` adds a second bidder for opt 3.
Game pinned_game(bool with_user4 = false);
/// Cost 101; one user values it at 101, 99 users at 1. `dummy` adds a second
/// 101 bidder, the shape of a second identity of the first user.
Game split_bidder_game(bool dummy = false);
/// Two substitutes where splitting user 1 hurts user 3.
Game dummy_game();

/// Exact checks of the worked examples.
std::vector<PropertyCheck> golden_checks();

}  // namespace cloudshare::harness
