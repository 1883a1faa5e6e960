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

#include "dylink2vec/dyngraph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "dylink2vec/matrix.h"

namespace dylink2vec {

namespace {

// Upper bound on the number of snapshots ingest will materialize.
constexpr std::int64_t kMaxSnapshots = 1'000'000;

bool parse_int64(const std::string& s, std::int64_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string> sorted_keys(std::vector<std::string> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  bool numeric = true;
  std::vector<std::int64_t> values(keys.size());
  for (std::size_t i = 0; i < keys.size() && numeric; ++i) {
    numeric = parse_int64(keys[i], values[i]);
  }
  if (numeric) {
    std::vector<std::size_t> order(keys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values[a] != values[b] ? values[a] < values[b] : keys[a] < keys[b];
    });
    std::vector<std::string> out;
    out.reserve(keys.size());
    for (std::size_t i : order) out.push_back(keys[i]);
    return out;
  }
  return keys;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

NodePair canonical_pair(int a, int b) {
  require(a != b, "self pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return a < b ? NodePair{a, b} : NodePair{b, a};
}

Snapshot::Snapshot(int index, int n, std::vector<NodePair> edges)
    : index_(index), n_(n), edges_(std::move(edges)) {
  require(n >= 0, "negative vertex count");
  for (auto& e : edges_) {
    require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n,
            "edge endpoint out of range in snapshot " + std::to_string(index));
    e = canonical_pair(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int u = 0; u < n; ++u) offsets_[u + 1] += offsets_[u];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  for (int u = 0; u < n; ++u) {
    std::sort(adjacency_.begin() + offsets_[u], adjacency_.begin() + offsets_[u + 1]);
  }
}

std::span<const int> Snapshot::neighbors(int u) const {
  require(u >= 0 && u < n_, "vertex " + std::to_string(u) + " out of range");
  return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

int Snapshot::degree(int u) const { return static_cast<int>(neighbors(u).size()); }

bool Snapshot::has_edge(int u, int v) const {
  auto nb = neighbors(u);
  require(v >= 0 && v < n_, "vertex " + std::to_string(v) + " out of range");
  return std::binary_search(nb.begin(), nb.end(), v);
}

DynamicNetwork::DynamicNetwork(int n, std::vector<Snapshot> snapshots)
    : n_(n), snapshots_(std::move(snapshots)) {
  require(n >= 1, "dynamic network needs at least one vertex");
  require(!snapshots_.empty(), "dynamic network needs at least one snapshot");
  for (std::size_t i = 0; i < snapshots_.size(); ++i) {
    require(snapshots_[i].index() == static_cast<int>(i) + 1,
            "snapshot indices must be consecutive from 1");
    require(snapshots_[i].num_vertices() == n,
            "snapshot " + std::to_string(i + 1) + " has a different vertex count");
  }
}

const Snapshot& DynamicNetwork::snapshot(int i) const {
  require(i >= 1 && i <= num_snapshots(),
          "snapshot ordinal " + std::to_string(i) + " outside [1," +
              std::to_string(num_snapshots()) + "]");
  return snapshots_[i - 1];
}

DynamicNetwork DynamicNetwork::prefix(int t) const {
  require(t >= 1 && t <= num_snapshots(), "prefix length out of range");
  return DynamicNetwork(n_, {snapshots_.begin(), snapshots_.begin() + t});
}

DynamicNetwork ingest(std::span<const EdgeRecord> records, const IngestSpec& spec,
                      std::vector<std::string>* vertex_keys) {
  require(!records.empty(), "ingest: empty record list");
  require(spec.window_length > 0.0, "ingest: window_length must be positive");
  require(spec.min_active_snapshots >= 0 && spec.min_degree >= 0,
          "ingest: thresholds must be non-negative");

  std::vector<const EdgeRecord*> kept;
  kept.reserve(records.size());
  for (const auto& r : records) {
    require(std::isfinite(r.time), "ingest: non-finite timestamp");
    if (r.u != r.v) kept.push_back(&r);
  }
  require(!kept.empty(), "ingest: every record is a self-loop");

  std::vector<std::string> raw;
  raw.reserve(kept.size() * 2);
  double min_time = std::numeric_limits<double>::infinity();
  for (const auto* r : kept) {
    raw.push_back(r->u);
    raw.push_back(r->v);
    min_time = std::min(min_time, r->time);
  }
  std::vector<std::string> keys = sorted_keys(std::move(raw));
  std::unordered_map<std::string, int> id_of;
  id_of.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) id_of.emplace(keys[i], static_cast<int>(i));
  const int n = static_cast<int>(keys.size());

  std::vector<std::pair<std::int64_t, NodePair>> binned;
  binned.reserve(kept.size());
  std::int64_t t = 0;
  for (const auto* r : kept) {
    double slot = std::floor((r->time - min_time) / spec.window_length);
    require(slot < static_cast<double>(kMaxSnapshots),
            "ingest: window_length yields more than 1e6 snapshots");
    auto bin = static_cast<std::int64_t>(slot) + 1;
    t = std::max(t, bin);
    binned.emplace_back(bin, canonical_pair(id_of.at(r->u), id_of.at(r->v)));
  }

  // Activity and collapsed degree, measured before any removal.
  std::vector<std::vector<NodePair>> per_snapshot(t);
  for (const auto& [bin, e] : binned) per_snapshot[bin - 1].push_back(e);
  std::vector<int> active(n, 0);
  std::vector<NodePair> collapsed;
  for (auto& edges : per_snapshot) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<int> seen;
    for (const auto& e : edges) {
      seen.push_back(e.u);
      seen.push_back(e.v);
      collapsed.push_back(e);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (int u : seen) ++active[u];
  }
  std::sort(collapsed.begin(), collapsed.end());
  collapsed.erase(std::unique(collapsed.begin(), collapsed.end()), collapsed.end());
  std::vector<int> degree(n, 0);
  for (const auto& e : collapsed) {
    ++degree[e.u];
    ++degree[e.v];
  }

  std::vector<int> new_id(n, -1);
  std::vector<std::string> final_keys;
  int removed_inactive = 0;
  int removed_degree = 0;
  for (int u = 0; u < n; ++u) {
    bool ok_active = active[u] >= spec.min_active_snapshots;
    bool ok_degree = degree[u] >= spec.min_degree;
    if (!ok_active) ++removed_inactive;
    if (!ok_degree) ++removed_degree;
    if (ok_active && ok_degree) {
      new_id[u] = static_cast<int>(final_keys.size());
      final_keys.push_back(keys[u]);
    }
  }
  if (final_keys.empty()) {
    std::ostringstream msg;
    msg << "ingest: all " << n << " vertices filtered out (" << removed_inactive
        << " below min_active_snapshots=" << spec.min_active_snapshots << ", "
        << removed_degree << " below min_degree=" << spec.min_degree << ")";
    throw std::runtime_error(msg.str());
  }

  const int kept_n = static_cast<int>(final_keys.size());
  std::vector<Snapshot> snapshots;
  snapshots.reserve(t);
  for (std::int64_t i = 0; i < t; ++i) {
    std::vector<NodePair> edges;
    for (const auto& e : per_snapshot[i]) {
      if (new_id[e.u] >= 0 && new_id[e.v] >= 0) edges.push_back({new_id[e.u], new_id[e.v]});
    }
    snapshots.emplace_back(static_cast<int>(i) + 1, kept_n, std::move(edges));
  }
  if (vertex_keys != nullptr) *vertex_keys = std::move(final_keys);
  return DynamicNetwork(kept_n, std::move(snapshots));
}

std::vector<double> adjacency_vector(const DynamicNetwork& net, int i, int u) {
  const Snapshot& g = net.snapshot(i);
  std::vector<double> a(net.num_vertices(), 0.0);
  for (int v : g.neighbors(u)) a[v] = 1.0;
  return a;
}

Snapshot collapse(const DynamicNetwork& net, int from, int to) {
  require(from >= 1 && from <= to && to <= net.num_snapshots(),
          "collapse: invalid range [" + std::to_string(from) + "," + std::to_string(to) + "]");
  std::vector<NodePair> edges;
  for (int i = from; i <= to; ++i) {
    auto e = net.snapshot(i).edges();
    edges.insert(edges.end(), e.begin(), e.end());
  }
  return Snapshot(from, net.num_vertices(), std::move(edges));
}

std::vector<EdgeRecord> read_edge_list(std::istream& in) {
  std::vector<EdgeRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(strip_comment(line));
    std::string u, v, time, extra;
    if (!(fields >> u)) continue;
    if (!(fields >> v >> time) || (fields >> extra)) {
      throw std::runtime_error("edge list line " + std::to_string(lineno) +
                               ": expected `u<TAB>v<TAB>time`");
    }
    EdgeRecord r{u, v, 0.0};
    std::size_t used = 0;
    try {
      r.time = std::stod(time, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != time.size()) {
      throw std::runtime_error("edge list line " + std::to_string(lineno) +
                               ": bad timestamp '" + time + "'");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<EdgeRecord> read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list " + path);
  return read_edge_list(in);
}

void write_snapshots(std::ostream& out, const DynamicNetwork& net) {
  out << net.num_vertices() << ' ' << net.num_snapshots() << '\n';
  for (const auto& g : net.snapshots()) {
    for (const auto& e : g.edges()) out << g.index() << ' ' << e.u << ' ' << e.v << '\n';
  }
}

DynamicNetwork read_snapshots(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("snapshot file line " + std::to_string(lineno) + ": " + why);
  };
  auto parse_ints = [&](const std::string& s, std::size_t count) {
    std::vector<std::int64_t> out;
    std::istringstream fields(s);
    std::string tok;
    while (fields >> tok) {
      std::int64_t x = 0;
      if (!parse_int64(tok, x)) fail("not an integer: '" + tok + "'");
      out.push_back(x);
    }
    if (out.size() != count) fail("expected " + std::to_string(count) + " fields");
    return out;
  };

  if (!std::getline(in, line)) throw std::runtime_error("snapshot file is empty");
  ++lineno;
  auto header = parse_ints(line, 2);
  if (header[0] < 1 || header[1] < 1 || header[0] > std::numeric_limits<int>::max() ||
      header[1] > kMaxSnapshots) {
    fail("header must be `n t` with n, t >= 1");
  }
  const int n = static_cast<int>(header[0]);
  const int t = static_cast<int>(header[1]);
  std::vector<std::vector<NodePair>> edges(t);
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = parse_ints(line, 3);
    if (f[0] < 1 || f[0] > t) fail("snapshot ordinal out of range");
    if (f[1] < 0 || f[1] >= n || f[2] < 0 || f[2] >= n) fail("vertex id out of range");
    if (f[1] >= f[2]) fail("edge must be written as `i u v` with u < v");
    edges[f[0] - 1].push_back({static_cast<int>(f[1]), static_cast<int>(f[2])});
  }
  std::vector<Snapshot> snapshots;
  snapshots.reserve(t);
  for (int i = 0; i < t; ++i) snapshots.emplace_back(i + 1, n, std::move(edges[i]));
  return DynamicNetwork(n, std::move(snapshots));
}

void write_snapshots_file(const std::string& path, const DynamicNetwork& net) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_snapshots(out, net);
}

DynamicNetwork read_snapshots_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open snapshot file " + path);
  return read_snapshots(in);
}

}  // namespace dylink2vec
