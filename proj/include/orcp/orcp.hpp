/*
 * Copyright 2026 The orcp Authors
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

// Umbrella header for the edge-caching redundancy tradeoff library.

#ifndef ORCP_ORCP_HPP
#define ORCP_ORCP_HPP

#include "orcp/cost.hpp"
#include "orcp/experiments.hpp"
#include "orcp/layout.hpp"
#include "orcp/optimizer.hpp"
#include "orcp/popularity.hpp"
#include "orcp/rng.hpp"
#include "orcp/simulator.hpp"

#endif  // ORCP_ORCP_HPP
