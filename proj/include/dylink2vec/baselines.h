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

// Competing link predictors: neighborhood scores on a (collapsed) snapshot and
// one-step forecasts of per-snapshot similarity time series.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dylink2vec/dyngraph.h"
#include "dylink2vec/matrix.h"
#include "dylink2vec/pairfeat.h"

namespace dylink2vec {

int common_neighbors(const Snapshot& g, int u, int v);
/// Sum of 1/ln(deg(w)) over common neighbors w.
double adamic_adar(const Snapshot& g, int u, int v);
/// |N(u) & N(v)| / |N(u) | N(v)|, 0 when both are isolated.
double jaccard(const Snapshot& g, int u, int v);
double preferential_attachment(const Snapshot& g, int u, int v);

struct KatzParams {
  double beta = 0.005;
  int max_len = 5;
};

/// sum_{p=2..max_len} beta^p * (#walks of length p from u to v).
double katz(const Snapshot& g, int u, int v, double beta, int max_len);
/// Katz scores from u to every vertex.
std::vector<double> katz_from(const Snapshot& g, int u, double beta, int max_len);

struct TopoScore {
  NodePair pair;
  double cn = 0.0;
  double aa = 0.0;
  double j = 0.0;
  double katz = 0.0;
};

std::vector<TopoScore> topo_scores(const Snapshot& g, std::span<const NodePair> pairs,
                                   const KatzParams& katz_params = {});

/// Columns, in order: Jaccard, Adamic-Adar, common neighbors, Katz.
Matrix jack_features(const Snapshot& g, std::span<const NodePair> pairs,
                     const KatzParams& katz_params = {});

enum class SimilarityMetric { kCN, kAA, kJ, kPA };

std::string to_string(SimilarityMetric m);
double similarity(const Snapshot& g, SimilarityMetric m, int u, int v);

struct SimilaritySeries {
  NodePair pair;
  SimilarityMetric metric = SimilarityMetric::kCN;
  std::vector<double> values;  // one per snapshot in the window
  std::vector<double> adj;     // A_i(u, v)
};

/// Series for every pair of `population` over window w. With `normalize`,
/// each snapshot's values are min-max scaled across the population (all zero
/// when the snapshot's values are constant).
std::vector<SimilaritySeries> similarity_series(const DynamicNetwork& net, SimilarityMetric m,
                                                Window w, std::span<const NodePair> population,
                                                bool normalize = true);

/// One-step least-squares AR(p) forecast, p = min(max_order, len - 2), no
/// intercept, minimum-norm solution when the lag matrix is rank deficient.
/// Falls back to the last value when len < 3.
double ar_forecast(std::span<const double> series, int max_order = 2);

/// forecast(values) + forecast(adj). Requires length >= 2.
double forecast_score(const SimilaritySeries& series, int max_order = 2);

/// `u,v,method,score` rows with a header line.
void write_baseline_csv(std::ostream& out, const std::string& method,
                        std::span<const NodePair> pairs, std::span<const double> scores);

}  // namespace dylink2vec
