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

#include "dylink2vec/pairfeat.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dylink2vec {

namespace {

void check_pair(const DynamicNetwork& net, int u, int v) {
  const int n = net.num_vertices();
  require(u >= 0 && u < n && v >= 0 && v < n, "pair vertex out of range");
  require(u != v, "pair endpoints must differ");
}

}  // namespace

void validate_window(const DynamicNetwork& net, Window w) {
  require(w.from >= 1 && w.from <= w.to && w.to <= net.num_snapshots(),
          "window [" + std::to_string(w.from) + "," + std::to_string(w.to) +
              "] outside snapshots [1," + std::to_string(net.num_snapshots()) + "]");
}

std::vector<double> pair_adjacency_block(const DynamicNetwork& net, int i, int u, int v) {
  check_pair(net, u, v);
  const Snapshot& g = net.snapshot(i);
  std::vector<double> a(net.num_vertices(), 0.0);
  for (int w : g.neighbors(u)) a[w] += 1.0;
  for (int w : g.neighbors(v)) a[w] += 1.0;
  return a;
}

std::vector<double> weighted_link_history(const DynamicNetwork& net, Window w, int u, int v) {
  validate_window(net, w);
  check_pair(net, u, v);
  const int len = w.length();
  std::vector<double> wlh(len, 0.0);
  for (int j = 1; j <= len; ++j) {
    if (net.snapshot(w.from + j - 1).has_edge(u, v)) {
      wlh[j - 1] = static_cast<double>(j) / len;
    }
  }
  return wlh;
}

std::vector<double> weighted_cumulative_link_history(std::span<const double> wlh) {
  std::vector<double> out(wlh.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < wlh.size(); ++j) {
    sum += wlh[j];
    out[j] = sum;
  }
  return out;
}

void write_pair_feature(const DynamicNetwork& net, Window w, NodePair p, std::span<double> out) {
  const int n = net.num_vertices();
  const int len = w.length();
  require(out.size() == feature_length(n, len), "feature buffer has wrong length");
  for (int j = 0; j < len; ++j) {
    const Snapshot& g = net.snapshot(w.from + j);
    double* block = out.data() + static_cast<std::size_t>(j) * n;
    for (int x : g.neighbors(p.u)) block[x] += 0.5;
    for (int x : g.neighbors(p.v)) block[x] += 0.5;
  }
  const double scale = (len + 1) / 2.0;
  double* tail = out.data() + static_cast<std::size_t>(n) * len;
  double sum = 0.0;
  for (int j = 1; j <= len; ++j) {
    if (net.snapshot(w.from + j - 1).has_edge(p.u, p.v)) {
      sum += static_cast<double>(j) / len;
    }
    tail[j - 1] = sum / scale;
  }
}

PairFeature build_pair_feature(const DynamicNetwork& net, Window w, int u, int v) {
  validate_window(net, w);
  check_pair(net, u, v);
  PairFeature f{canonical_pair(u, v), w,
                std::vector<double>(feature_length(net.num_vertices(), w.length()), 0.0)};
  write_pair_feature(net, w, f.pair, f.values);
  return f;
}

Matrix build_dataset(const DynamicNetwork& net, Window w, std::span<const NodePair> pairs) {
  validate_window(net, w);
  std::vector<NodePair> canon;
  canon.reserve(pairs.size());
  for (const auto& p : pairs) {
    check_pair(net, p.u, p.v);
    canon.push_back(canonical_pair(p.u, p.v));
  }
  std::vector<NodePair> sorted = canon;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "build_dataset: duplicate pair");

  Matrix data(canon.size(), feature_length(net.num_vertices(), w.length()));
  for (std::size_t r = 0; r < canon.size(); ++r) write_pair_feature(net, w, canon[r], data.row(r));
  return data;
}

void write_dataset(std::ostream& out, const Matrix& data) {
  out << data.rows() << ' ' << data.cols() << '\n';
  char buf[64];
  for (std::size_t r = 0; r < data.rows(); ++r) {
    auto row = data.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.9f", row[c]);
      if (c > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Matrix read_dataset(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw std::runtime_error("dataset: bad `rows k` header");
  Matrix data(rows, cols);
  std::string tok;
  for (std::size_t i = 0; i < rows * cols; ++i) {
    if (!(in >> tok)) throw std::runtime_error("dataset: truncated at entry " + std::to_string(i));
    std::size_t used = 0;
    double x = std::stod(tok, &used);
    if (used != tok.size()) throw std::runtime_error("dataset: bad number '" + tok + "'");
    data.data()[i] = x;
  }
  if (in >> tok) throw std::runtime_error("dataset: trailing data");
  return data;
}

}  // namespace dylink2vec
