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

#include "dylink2vec/evalmetrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include <json.hpp>

#include "dylink2vec/matrix.h"

namespace dylink2vec {

namespace {

// Indices in descending score order, ties by ascending pair.
std::vector<std::size_t> ranking(const RankedScores& scores) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a].score != scores[b].score) return scores[a].score > scores[b].score;
    if (scores[a].pair != scores[b].pair) return scores[a].pair < scores[b].pair;
    return a < b;
  });
  return idx;
}

std::size_t count_positives(const RankedScores& scores) {
  std::size_t pos = 0;
  for (const auto& s : scores) {
    require(s.label == 0 || s.label == 1, "labels must be 0 or 1");
    require(!std::isnan(s.score), "NaN score");
    pos += static_cast<std::size_t>(s.label);
  }
  return pos;
}

}  // namespace

std::vector<PrPoint> pr_curve(const RankedScores& scores) {
  const std::size_t pos = count_positives(scores);
  require(pos > 0 && pos < scores.size(), "pr_curve needs both positives and negatives");
  const auto idx = ranking(scores);
  std::vector<PrPoint> points;
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < idx.size();) {
    const double s = scores[idx[i]].score;
    for (; i < idx.size() && scores[idx[i]].score == s; ++i) {
      (scores[idx[i]].label == 1 ? tp : fp) += 1;
    }
    points.push_back({static_cast<double>(tp) / static_cast<double>(pos),
                      static_cast<double>(tp) / static_cast<double>(tp + fp)});
  }
  points.insert(points.begin(), PrPoint{0.0, points.front().precision});
  return points;
}

double prauc(const RankedScores& scores) {
  const auto pts = pr_curve(scores);
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].recall - pts[i - 1].recall) * (pts[i].precision + pts[i - 1].precision) / 2.0;
  }
  return area;
}

double ndcg_at_k(const RankedScores& scores, std::size_t k) {
  const std::size_t pos = count_positives(scores);
  require(pos > 0, "ndcg needs at least one positive");
  require(k >= 1, "ndcg: k must be >= 1");
  const auto idx = ranking(scores);
  const std::size_t depth = std::min(k, idx.size());
  double dcg = 0.0;
  for (std::size_t i = 0; i < depth; ++i) {
    if (scores[idx[i]].label == 1) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  double ideal = 0.0;
  for (std::size_t i = 0; i < std::min(k, pos); ++i) ideal += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  return dcg / ideal;
}

std::vector<LabeledPair> sample_training_pairs(const DynamicNetwork& net, int label_snapshot,
                                               const SamplerConfig& cfg) {
  require(cfg.ratio >= 1.0, "sampler: ratio must be >= 1");
  const Snapshot& g = net.snapshot(label_snapshot);
  const std::uint64_t n = static_cast<std::uint64_t>(net.num_vertices());
  const std::uint64_t all_pairs = n * (n - 1) / 2;
  const std::uint64_t positives = g.num_edges();
  const std::uint64_t non_edges = all_pairs - positives;
  const auto wanted =
      static_cast<std::uint64_t>(std::ceil(cfg.ratio * static_cast<double>(positives)));
  if (wanted > non_edges) {
    throw std::invalid_argument("sampler: ratio " + std::to_string(cfg.ratio) + " needs " +
                                std::to_string(wanted) + " negatives but only " +
                                std::to_string(non_edges) + " non-edges exist");
  }

  std::vector<LabeledPair> out;
  out.reserve(positives + wanted);
  for (const auto& e : g.edges()) out.push_back({e, 1});

  std::mt19937_64 rng(cfg.seed);
  std::vector<NodePair> negatives;
  negatives.reserve(wanted);
  if (wanted * 4 < non_edges) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::unordered_set<std::uint64_t> chosen;
    while (negatives.size() < wanted) {
      const int a = pick(rng);
      const int b = pick(rng);
      if (a == b || g.has_edge(a, b)) continue;
      const NodePair p = canonical_pair(a, b);
      if (chosen.insert(static_cast<std::uint64_t>(p.u) * n + p.v).second) negatives.push_back(p);
    }
  } else {
    std::vector<NodePair> pool;
    pool.reserve(non_edges);
    for (int u = 0; u < static_cast<int>(n); ++u) {
      for (int v = u + 1; v < static_cast<int>(n); ++v) {
        if (!g.has_edge(u, v)) pool.push_back({u, v});
      }
    }
    for (std::uint64_t i = 0; i < wanted; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
      negatives.push_back(pool[i]);
    }
  }
  std::sort(negatives.begin(), negatives.end());
  for (const auto& p : negatives) out.push_back({p, 0});
  return out;
}

MetricReport evaluate(const std::string& method, const RankedScores& scores, std::size_t k) {
  MetricReport r;
  r.method = method;
  r.k = k;
  r.n_pos = count_positives(scores);
  r.n_neg = scores.size() - r.n_pos;
  r.prauc = prauc(scores);
  r.ndcg_k = ndcg_at_k(scores, k);
  return r;
}

std::string reports_to_json(const std::vector<MetricReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back({{"method", r.method},
                   {"prauc", r.prauc},
                   {"ndcg_k", r.ndcg_k},
                   {"k", r.k},
                   {"n_pos", r.n_pos},
                   {"n_neg", r.n_neg}});
  }
  return arr.dump(2) + "\n";
}

std::vector<MetricReport> reports_from_json(const std::string& text) {
  auto arr = nlohmann::json::parse(text);
  std::vector<MetricReport> out;
  for (const auto& o : arr) {
    out.push_back({o.at("method").get<std::string>(), o.at("prauc").get<double>(),
                   o.at("ndcg_k").get<double>(), o.at("k").get<std::size_t>(),
                   o.at("n_pos").get<std::size_t>(), o.at("n_neg").get<std::size_t>()});
  }
  return out;
}

}  // namespace dylink2vec
