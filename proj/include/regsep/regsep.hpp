/*
 * Copyright 2026 The regsep authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef REGSEP_REGSEP_HPP
#define REGSEP_REGSEP_HPP

#include "regsep/baselines.hpp"
#include "regsep/counterexamples.hpp"
#include "regsep/game.hpp"
#include "regsep/game_io.hpp"
#include "regsep/game_tree.hpp"
#include "regsep/generate.hpp"
#include "regsep/product.hpp"
#include "regsep/register_automaton.hpp"
#include "regsep/safety_automaton.hpp"
#include "regsep/witness.hpp"

#endif
