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
#include <string>
#include <vector>

#include "dylink2vec/dyngraph.h"

namespace dylink2vec {

struct ScoredPair {
  NodePair pair;
  double score = 0.0;
  int label = 0;
};

using RankedScores = std::vector<ScoredPair>;

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

/// One point per distinct score, in descending score order, preceded by
/// (0, precision of the top tie group). Needs both classes.
std::vector<PrPoint> pr_curve(const RankedScores& scores);

/// Trapezoidal area under pr_curve.
double prauc(const RankedScores& scores);

/// Binary-relevance NDCG over the top k entries; ties in score are ordered
/// by pair id. Needs at least one positive.
double ndcg_at_k(const RankedScores& scores, std::size_t k);

struct SamplerConfig {
  double ratio = 1.0;  // negatives per positive
  std::uint64_t seed = 1;
};

struct LabeledPair {
  NodePair pair;
  int label = 0;
};

/// Every edge of snapshot `label_snapshot` as a positive, plus
/// ceil(ratio * #pos) non-edges drawn uniformly without replacement.
/// Positives come first, each group sorted by pair.
std::vector<LabeledPair> sample_training_pairs(const DynamicNetwork& net, int label_snapshot,
                                               const SamplerConfig& cfg);

struct MetricReport {
  std::string method;
  double prauc = 0.0;
  double ndcg_k = 0.0;
  std::size_t k = 50;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

MetricReport evaluate(const std::string& method, const RankedScores& scores, std::size_t k = 50);

/// JSON array of `{method, prauc, ndcg_k, k, n_pos, n_neg}` objects.
std::string reports_to_json(const std::vector<MetricReport>& reports);
std::vector<MetricReport> reports_from_json(const std::string& text);

}  // namespace dylink2vec
