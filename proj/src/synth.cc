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

#include "dylink2vec/synth.h"

#include <algorithm>
#include <random>

#include "dylink2vec/matrix.h"

namespace dylink2vec {

DynamicNetwork synth_generate(const SynthSpec& spec) {
  require(spec.n >= 2 && spec.t >= 2, "synth: need n >= 2 and t >= 2");
  require(spec.communities >= 1, "synth: need at least one community");
  require(spec.p_in >= 0 && spec.p_in <= 1 && spec.p_out >= 0 && spec.p_out <= 1 &&
              spec.recurrence_boost >= 0 && spec.recurrence_boost <= 1,
          "synth: probabilities must lie in [0, 1]");
  require(spec.decay_horizon >= 1, "synth: decay_horizon must be >= 1");

  const int n = spec.n;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Snapshot of each pair's most recent link, 0 = never.
  std::vector<int> last(static_cast<std::size_t>(n) * (n - 1) / 2, 0);

  std::vector<Snapshot> snapshots;
  snapshots.reserve(spec.t);
  for (int i = 1; i <= spec.t; ++i) {
    std::vector<NodePair> edges;
    std::size_t slot = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v, ++slot) {
        double p = (u % spec.communities == v % spec.communities) ? spec.p_in : spec.p_out;
        if (last[slot] > 0) {
          const int age = i - last[slot];
          if (age <= spec.decay_horizon) {
            p += spec.recurrence_boost *
                 (1.0 - static_cast<double>(age - 1) / spec.decay_horizon);
          }
        }
        if (unit(rng) < std::min(p, 1.0)) edges.push_back({u, v});
      }
    }
    for (const auto& e : edges) {
      // Pair slot in row-major upper-triangle order.
      const std::size_t s = static_cast<std::size_t>(e.u) * (2 * n - e.u - 1) / 2 + (e.v - e.u - 1);
      last[s] = i;
    }
    snapshots.emplace_back(i, n, std::move(edges));
  }
  return DynamicNetwork(n, std::move(snapshots));
}

}  // namespace dylink2vec
