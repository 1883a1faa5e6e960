/*
 * Copyright 2026 The dylink2vec Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>

#include "dylink2vec/dyngraph.h"

namespace dylink2vec {

/// Community-structured dynamic network with link recurrence.
///
/// Vertex v belongs to community v % communities. At every snapshot each pair
/// links independently with probability p_in (same community) or p_out.
/// A pair whose most recent link is `age` snapshots old, age <= decay_horizon,
/// gets recurrence_boost * (1 - (age - 1) / decay_horizon) added to that
/// probability (capped at 1).
struct SynthSpec {
  int n = 300;
  int t = 8;
  int communities = 10;
  double p_in = 0.01;
  double p_out = 0.0005;
  double recurrence_boost = 0.6;
  int decay_horizon = 6;
  std::uint64_t seed = 1;
};

DynamicNetwork synth_generate(const SynthSpec& spec);

}  // namespace dylink2vec
