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

#include "dylink2vec/baselines.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace dylink2vec {

namespace {

void check_pair(const Snapshot& g, int u, int v) {
  require(u >= 0 && u < g.num_vertices() && v >= 0 && v < g.num_vertices(),
          "vertex out of range");
  require(u != v, "pair endpoints must differ");
}

template <class Fn>
void for_each_common(const Snapshot& g, int u, int v, Fn fn) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      fn(a[i]);
      ++i;
      ++j;
    }
  }
}

}  // namespace

int common_neighbors(const Snapshot& g, int u, int v) {
  check_pair(g, u, v);
  int count = 0;
  for_each_common(g, u, v, [&](int) { ++count; });
  return count;
}

double adamic_adar(const Snapshot& g, int u, int v) {
  check_pair(g, u, v);
  double sum = 0.0;
  for_each_common(g, u, v, [&](int w) {
    // w neighbors both u and v, so deg(w) >= 2 and the log is positive.
    sum += 1.0 / std::log(static_cast<double>(g.degree(w)));
  });
  return sum;
}

double jaccard(const Snapshot& g, int u, int v) {
  check_pair(g, u, v);
  const int common = common_neighbors(g, u, v);
  const int uni = g.degree(u) + g.degree(v) - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / uni;
}

double preferential_attachment(const Snapshot& g, int u, int v) {
  check_pair(g, u, v);
  return static_cast<double>(g.degree(u)) * g.degree(v);
}

std::vector<double> katz_from(const Snapshot& g, int u, double beta, int max_len) {
  require(u >= 0 && u < g.num_vertices(), "vertex out of range");
  require(beta >= 0.0 && max_len >= 1, "katz: need beta >= 0 and max_len >= 1");
  const int n = g.num_vertices();
  std::vector<double> walks(n, 0.0), next(n), acc(n, 0.0);
  walks[u] = 1.0;
  double weight = 1.0;
  for (int p = 1; p <= max_len; ++p) {
    weight *= beta;
    for (int w = 0; w < n; ++w) {
      double s = 0.0;
      for (int x : g.neighbors(w)) s += walks[x];
      next[w] = s;
    }
    walks.swap(next);
    if (p >= 2) {
      for (int w = 0; w < n; ++w) acc[w] += weight * walks[w];
    }
  }
  return acc;
}

double katz(const Snapshot& g, int u, int v, double beta, int max_len) {
  check_pair(g, u, v);
  return katz_from(g, u, beta, max_len)[v];
}

std::vector<TopoScore> topo_scores(const Snapshot& g, std::span<const NodePair> pairs,
                                   const KatzParams& katz_params) {
  std::vector<TopoScore> out(pairs.size());
  std::map<int, std::vector<std::size_t>> by_source;
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto& p = pairs[r];
    check_pair(g, p.u, p.v);
    out[r] = {p, static_cast<double>(common_neighbors(g, p.u, p.v)), adamic_adar(g, p.u, p.v),
              jaccard(g, p.u, p.v), 0.0};
    by_source[p.u].push_back(r);
  }
  for (const auto& [u, rows] : by_source) {
    auto k = katz_from(g, u, katz_params.beta, katz_params.max_len);
    for (std::size_t r : rows) out[r].katz = k[pairs[r].v];
  }
  return out;
}

Matrix jack_features(const Snapshot& g, std::span<const NodePair> pairs,
                     const KatzParams& katz_params) {
  auto scores = topo_scores(g, pairs, katz_params);
  Matrix m(pairs.size(), 4);
  for (std::size_t r = 0; r < scores.size(); ++r) {
    m(r, 0) = scores[r].j;
    m(r, 1) = scores[r].aa;
    m(r, 2) = scores[r].cn;
    m(r, 3) = scores[r].katz;
  }
  return m;
}

std::string to_string(SimilarityMetric m) {
  switch (m) {
    case SimilarityMetric::kCN: return "CN";
    case SimilarityMetric::kAA: return "AA";
    case SimilarityMetric::kJ: return "J";
    case SimilarityMetric::kPA: return "PA";
  }
  return "?";
}

double similarity(const Snapshot& g, SimilarityMetric m, int u, int v) {
  switch (m) {
    case SimilarityMetric::kCN: return common_neighbors(g, u, v);
    case SimilarityMetric::kAA: return adamic_adar(g, u, v);
    case SimilarityMetric::kJ: return jaccard(g, u, v);
    case SimilarityMetric::kPA: return preferential_attachment(g, u, v);
  }
  return 0.0;
}

std::vector<SimilaritySeries> similarity_series(const DynamicNetwork& net, SimilarityMetric m,
                                                Window w, std::span<const NodePair> population,
                                                bool normalize) {
  validate_window(net, w);
  const int len = w.length();
  std::vector<SimilaritySeries> out(population.size());
  for (std::size_t r = 0; r < population.size(); ++r) {
    out[r].pair = canonical_pair(population[r].u, population[r].v);
    out[r].metric = m;
    out[r].values.resize(len);
    out[r].adj.resize(len);
  }
  for (int j = 0; j < len; ++j) {
    const Snapshot& g = net.snapshot(w.from + j);
    double lo = 0.0, hi = 0.0;
    for (std::size_t r = 0; r < out.size(); ++r) {
      const auto& p = out[r].pair;
      const double x = similarity(g, m, p.u, p.v);
      out[r].values[j] = x;
      out[r].adj[j] = g.has_edge(p.u, p.v) ? 1.0 : 0.0;
      if (r == 0) {
        lo = hi = x;
      } else {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
    if (normalize) {
      for (auto& s : out) s.values[j] = hi > lo ? (s.values[j] - lo) / (hi - lo) : 0.0;
    }
  }
  return out;
}

double ar_forecast(std::span<const double> series, int max_order) {
  require(!series.empty(), "ar_forecast: empty series");
  require(max_order >= 1, "ar_forecast: max_order must be >= 1");
  const int len = static_cast<int>(series.size());
  if (len < 3) return series.back();
  const int p = std::min(max_order, len - 2);
  const int rows = len - p;
  Eigen::MatrixXd lags(rows, p);
  Eigen::VectorXd target(rows);
  for (int r = 0; r < rows; ++r) {
    target(r) = series[p + r];
    for (int c = 0; c < p; ++c) lags(r, c) = series[p + r - 1 - c];
  }
  Eigen::VectorXd coef = lags.completeOrthogonalDecomposition().solve(target);
  double f = 0.0;
  for (int c = 0; c < p; ++c) f += coef(c) * series[len - 1 - c];
  return f;
}

double forecast_score(const SimilaritySeries& series, int max_order) {
  require(series.values.size() >= 2 && series.adj.size() == series.values.size(),
          "forecast_score: series must have length >= 2");
  return ar_forecast(series.values, max_order) + ar_forecast(series.adj, max_order);
}

void write_baseline_csv(std::ostream& out, const std::string& method,
                        std::span<const NodePair> pairs, std::span<const double> scores) {
  require(pairs.size() == scores.size(), "csv: pairs and scores differ in length");
  out << "u,v,method,score\n";
  char buf[40];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", scores[i]);
    out << pairs[i].u << ',' << pairs[i].v << ',' << method << ',' << buf << '\n';
  }
}

}  // namespace dylink2vec
