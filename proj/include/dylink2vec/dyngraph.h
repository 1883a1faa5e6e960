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

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dylink2vec {

/// Unordered vertex pair, stored with u < v.
struct NodePair {
  int u = 0;
  int v = 0;
  auto operator<=>(const NodePair&) const = default;
};

/// Orders (a, b) as (min, max). Throws on a == b.
NodePair canonical_pair(int a, int b);

/// One time step of a dynamic network: a simple undirected graph on [0, n).
class Snapshot {
 public:
  Snapshot() = default;
  /// Edges are canonicalized and deduplicated. Self-loops and out-of-range
  /// endpoints throw.
  Snapshot(int index, int n, std::vector<NodePair> edges);

  int index() const { return index_; }
  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const NodePair> edges() const { return edges_; }

  /// Sorted neighbor list of u.
  std::span<const int> neighbors(int u) const;
  int degree(int u) const;
  bool has_edge(int u, int v) const;

  friend bool operator==(const Snapshot& a, const Snapshot& b) {
    return a.index_ == b.index_ && a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int index_ = 1;
  int n_ = 0;
  std::vector<NodePair> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<int> adjacency_;
};

/// Ordered snapshots G_1..G_t over a fixed vertex set.
class DynamicNetwork {
 public:
  DynamicNetwork() = default;
  /// Snapshots must carry indices 1..t in order and share n.
  DynamicNetwork(int n, std::vector<Snapshot> snapshots);

  int num_vertices() const { return n_; }
  int num_snapshots() const { return static_cast<int>(snapshots_.size()); }
  /// 1-based access.
  const Snapshot& snapshot(int i) const;
  std::span<const Snapshot> snapshots() const { return snapshots_; }

  /// The first t snapshots.
  DynamicNetwork prefix(int t) const;

  friend bool operator==(const DynamicNetwork&, const DynamicNetwork&) = default;

 private:
  int n_ = 0;
  std::vector<Snapshot> snapshots_;
};

struct IngestSpec {
  double window_length = 1.0;
  int min_active_snapshots = 0;
  int min_degree = 0;
};

struct EdgeRecord {
  std::string u;
  std::string v;
  double time = 0.0;
};

/// Bins timestamped records into fixed-width, left-closed windows starting at
/// the minimum timestamp and relabels raw keys densely. Keys are ordered
/// numerically when every key is an integer, lexicographically otherwise.
/// Vertices active in fewer than min_active_snapshots snapshots, or with
/// collapsed degree below min_degree, are removed in a single pass.
/// When `vertex_keys` is non-null it receives the raw key of every final id.
DynamicNetwork ingest(std::span<const EdgeRecord> records, const IngestSpec& spec,
                      std::vector<std::string>* vertex_keys = nullptr);

/// Entry v is 1 iff (u, v) is an edge of snapshot i.
std::vector<double> adjacency_vector(const DynamicNetwork& net, int i, int u);

/// Union of the edge sets of snapshots from..to. The result carries index `from`.
Snapshot collapse(const DynamicNetwork& net, int from, int to);

/// Reads `u<TAB>v<TAB>time` lines; blank lines and `#` comments are skipped.
std::vector<EdgeRecord> read_edge_list(std::istream& in);
std::vector<EdgeRecord> read_edge_list_file(const std::string& path);

/// Canonical snapshot format: `n t` header, then `i u v` per edge in
/// (i, u, v) order.
void write_snapshots(std::ostream& out, const DynamicNetwork& net);
DynamicNetwork read_snapshots(std::istream& in);
void write_snapshots_file(const std::string& path, const DynamicNetwork& net);
DynamicNetwork read_snapshots_file(const std::string& path);

}  // namespace dylink2vec
