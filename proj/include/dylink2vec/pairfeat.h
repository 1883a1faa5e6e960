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

// Node-pair input vectors over a window of snapshots.
//
// For a pair (u, v) and window [from, to] with T = to - from + 1, the feature
// vector has length n*T + T:
//
//   block j (j = 1..T)   (a^u + a^v) at snapshot from+j-1, divided by 2
//   tail                 cumulative decayed link history, divided by (T+1)/2
//
// The decay weight of snapshot from+j-1 is j/T, so the latest snapshot in the
// window always weighs 1. Every entry lies in [0, 1].

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dylink2vec/dyngraph.h"
#include "dylink2vec/matrix.h"

namespace dylink2vec {

/// Inclusive range of 1-based snapshot ordinals.
struct Window {
  int from = 1;
  int to = 1;
  int length() const { return to - from + 1; }
  auto operator<=>(const Window&) const = default;
};

void validate_window(const DynamicNetwork& net, Window w);

/// Length of the feature vector for n vertices over a window of T snapshots.
inline std::size_t feature_length(int n, int window_length) {
  return static_cast<std::size_t>(n) * window_length + window_length;
}

struct PairFeature {
  NodePair pair;
  Window window;
  std::vector<double> values;
};

/// a_i^u + a_i^v; entries in {0, 1, 2}.
std::vector<double> pair_adjacency_block(const DynamicNetwork& net, int i, int u, int v);

/// Entry j is (j/T) * A_{from+j-1}(u, v).
std::vector<double> weighted_link_history(const DynamicNetwork& net, Window w, int u, int v);

/// Running sum.
std::vector<double> weighted_cumulative_link_history(std::span<const double> wlh);

PairFeature build_pair_feature(const DynamicNetwork& net, Window w, int u, int v);

/// Writes the normalized feature of (u, v) into `out` (length feature_length).
/// Only nonzero entries are touched, so `out` must be zeroed by the caller.
void write_pair_feature(const DynamicNetwork& net, Window w, NodePair p, std::span<double> out);

/// One row per pair, in input order. Pairs are canonicalized; duplicates throw.
Matrix build_dataset(const DynamicNetwork& net, Window w, std::span<const NodePair> pairs);

/// `rows k` header, then rows of space-separated values with 9 decimals.
void write_dataset(std::ostream& out, const Matrix& data);
Matrix read_dataset(std::istream& in);

}  // namespace dylink2vec
