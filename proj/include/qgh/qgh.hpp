// Copyright 2026 The qgh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qgh/correlation.hpp"
#include "qgh/cp_map.hpp"
#include "qgh/error.hpp"
#include "qgh/game_algebra.hpp"
#include "qgh/graph.hpp"
#include "qgh/homomorphism.hpp"
#include "qgh/linalg.hpp"
#include "qgh/lp.hpp"
#include "qgh/relaxations.hpp"
#include "qgh/rng.hpp"
#include "qgh/sdp.hpp"

namespace qgh {
inline constexpr const char* kVersion = "0.1.0";
}  // namespace qgh
