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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dylink2vec/evalmetrics.h"

namespace dylink2vec {
namespace {

RankedScores make(std::vector<double> s, std::vector<int> y) {
  RankedScores out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back({{0, static_cast<int>(i) + 1}, s[i], y[i]});
  return out;
}

// Sweeps every distinct score as a threshold by counting from scratch.
double brute_prauc(const RankedScores& r) {
  std::vector<double> thr;
  double pos = 0;
  for (const auto& s : r) {
    thr.push_back(s.score);
    pos += s.label;
  }
  std::sort(thr.begin(), thr.end(), std::greater<>());
  thr.erase(std::unique(thr.begin(), thr.end()), thr.end());
  std::vector<std::pair<double, double>> pts;
  for (double t : thr) {
    double tp = 0, fp = 0;
    for (const auto& s : r) {
      if (s.score >= t) (s.label ? tp : fp) += 1;
    }
    pts.push_back({tp / pos, tp / (tp + fp)});
  }
  pts.insert(pts.begin(), {0.0, pts.front().second});
  double area = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2;
  }
  return area;
}

double brute_ndcg(RankedScores r, std::size_t k) {
  std::sort(r.begin(), r.end(), [](const ScoredPair& a, const ScoredPair& b) {
    return a.score != b.score ? a.score > b.score : a.pair < b.pair;
  });
  double dcg = 0, idcg = 0;
  std::size_t pos = 0;
  for (const auto& s : r) pos += s.label;
  for (std::size_t i = 0; i < k && i < r.size(); ++i) dcg += r[i].label / std::log2(i + 2.0);
  for (std::size_t i = 0; i < std::min(k, pos); ++i) idcg += 1 / std::log2(i + 2.0);
  return dcg / idcg;
}

TEST(PrCurve, HandExample) {
  const auto r = make({0.9, 0.8, 0.7}, {1, 0, 1});
  const auto pts = pr_curve(r);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0].recall, 0.0);
  EXPECT_EQ(pts[0].precision, 1.0);
  EXPECT_EQ(pts[1].recall, 0.5);
  EXPECT_EQ(pts[1].precision, 1.0);
  EXPECT_EQ(pts[2].recall, 0.5);
  EXPECT_EQ(pts[2].precision, 0.5);
  EXPECT_EQ(pts[3].recall, 1.0);
  EXPECT_DOUBLE_EQ(pts[3].precision, 2.0 / 3.0);
  // 0.5 * 1 + 0 + 0.5 * (1/2 + 2/3) / 2
  EXPECT_NEAR(prauc(r), 0.5 + 0.25 * (0.5 + 2.0 / 3.0), 1e-12);
}

TEST(PrCurve, PerfectAndTied) {
  const auto perfect = make({0.9, 0.8, 0.3, 0.1}, {1, 1, 0, 0});
  const auto pp = pr_curve(perfect);
  ASSERT_EQ(pp.size(), 5u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(pp[i].precision, 1.0);
  EXPECT_EQ(prauc(perfect), 1.0);
  const auto tied = make({0.4, 0.4, 0.4, 0.4}, {1, 0, 0, 0});
  const auto pts = pr_curve(tied);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[1].recall, 1.0);
  EXPECT_EQ(pts[1].precision, 0.25);
  EXPECT_THROW(pr_curve(make({0.1, 0.2}, {1, 1})), std::invalid_argument);
  EXPECT_THROW(pr_curve(make({0.1, 0.2}, {0, 0})), std::invalid_argument);
}

TEST(PrCurve, ShapeInvariants) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s;
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
      s.push_back(std::round(unit(rng) * 10) / 10);
      y.push_back(i % 3 == 0);
    }
    const auto pts = pr_curve(make(s, y));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      // a top group of negatives gives precision 0 at recall 0
      EXPECT_GE(pts[i].precision, 0.0);
      if (pts[i].recall > 0) EXPECT_GT(pts[i].precision, 0.0);
      EXPECT_LE(pts[i].precision, 1.0);
      if (i > 0) EXPECT_GE(pts[i].recall, pts[i - 1].recall);
    }
  }
}

TEST(Prauc, RandomScoresNearPrevalence) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0, 1);
    std::vector<double> s;
    std::vector<int> y;
    for (int i = 0; i < 1000; ++i) {
      s.push_back(unit(rng));
      y.push_back(i % 2);
    }
    EXPECT_NEAR(prauc(make(s, y)), 0.5, 0.1);
  }
}

TEST(Metrics, MatchBruteForceOracles) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int len = 2 + static_cast<int>(rng() % 49);
    std::vector<double> s;
    std::vector<int> y;
    for (int i = 0; i < len; ++i) {
      s.push_back(static_cast<double>(rng() % 8) / 8.0);  // coarse so ties are common
      y.push_back(static_cast<int>(rng() % 3 == 0));
    }
    y[0] = 1;
    y[1] = 0;
    const auto r = make(s, y);
    EXPECT_NEAR(prauc(r), brute_prauc(r), 1e-9);
    for (std::size_t k : {1u, 5u, 50u}) EXPECT_NEAR(ndcg_at_k(r, k), brute_ndcg(r, k), 1e-9);
  }
}

TEST(Metrics, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<double> s;
  std::vector<int> y;
  for (int i = 0; i < 40; ++i) {
    s.push_back(std::round(unit(rng) * 20) / 20);
    y.push_back(i % 4 == 0);
  }
  auto r = make(s, y);
  auto t = r;
  for (auto& e : t) e.score = std::exp(3 * e.score) - 7;
  EXPECT_EQ(prauc(r), prauc(t));
  EXPECT_EQ(ndcg_at_k(r, 10), ndcg_at_k(t, 10));
}

TEST(Metrics, SwapBelowTopPositiveDecreases) {
  auto r = make({0.9, 0.8, 0.7, 0.6, 0.5}, {1, 1, 0, 1, 0});
  const double p = prauc(r), n = ndcg_at_k(r, 3);
  std::swap(r[1].score, r[2].score);
  EXPECT_LT(prauc(r), p);
  EXPECT_LT(ndcg_at_k(r, 3), n);
  auto ideal = make({0.9, 0.8, 0.3}, {1, 1, 0});
  const double ip = prauc(ideal), in = ndcg_at_k(ideal, 2);
  EXPECT_EQ(ip, 1.0);
  EXPECT_EQ(in, 1.0);
  std::swap(ideal[1].score, ideal[2].score);
  EXPECT_LT(prauc(ideal), ip);
  EXPECT_LT(ndcg_at_k(ideal, 2), in);
}

TEST(Ndcg, HandValues) {
  EXPECT_EQ(ndcg_at_k(make({0.9, 0.8, 0.1}, {1, 1, 0}), 50), 1.0);
  EXPECT_NEAR(ndcg_at_k(make({0.9, 0.8, 0.1}, {0, 1, 0}), 2), 1.0 / std::log2(3.0), 1e-15);
  EXPECT_NEAR(1.0 / std::log2(3.0), 0.6309, 1e-4);
  const auto r = make({0.9, 0.5, 0.7, 0.2}, {0, 1, 0, 1});
  EXPECT_EQ(ndcg_at_k(r, 100), ndcg_at_k(r, 4));
  EXPECT_THROW(ndcg_at_k(make({0.1}, {0}), 5), std::invalid_argument);
}

TEST(Ndcg, TiesBrokenByPairId) {
  RankedScores r = {{{2, 3}, 0.5, 0}, {{0, 9}, 0.5, 1}};
  EXPECT_EQ(ndcg_at_k(r, 1), 1.0);
  r[1].pair = {4, 5};
  EXPECT_EQ(ndcg_at_k(r, 1), 0.0);
}

DynamicNetwork five_edges(int n) {
  return DynamicNetwork(n, {Snapshot(1, n, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})});
}

TEST(Sampler, CountsAndDeterminism) {
  const auto net = five_edges(8);
  const auto a = sample_training_pairs(net, 1, {1.0, 5});
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(std::count_if(a.begin(), a.end(), [](auto& p) { return p.label == 1; }), 5);
  for (std::size_t i = 5; i < 10; ++i) {
    EXPECT_FALSE(net.snapshot(1).has_edge(a[i].pair.u, a[i].pair.v));
  }
  const auto b = sample_training_pairs(net, 1, {1.0, 5});
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), [](auto& x, auto& y) {
    return x.pair == y.pair && x.label == y.label;
  }));
  const auto c = sample_training_pairs(net, 1, {3.0, 5});
  EXPECT_EQ(c.size(), 20u);
  EXPECT_EQ(std::count_if(c.begin(), c.end(), [](auto& p) { return p.label == 0; }), 15);
  EXPECT_THROW(sample_training_pairs(net, 1, {5.0, 5}), std::invalid_argument);
  EXPECT_THROW(sample_training_pairs(net, 1, {0.5, 5}), std::invalid_argument);
}

// Pearson statistic of negative draw counts against the uniform expectation.
double chi_square(int n, std::size_t draws) {
  const auto net = five_edges(n);
  std::map<NodePair, double> counts;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!net.snapshot(1).has_edge(u, v)) counts[{u, v}] = 0;
  double drawn = 0;
  for (std::size_t s = 0; s < draws; ++s) {
    for (const auto& p : sample_training_pairs(net, 1, {3.0, 1000 + s})) {
      if (p.label == 0) {
        counts.at(p.pair) += 1;
        drawn += 1;
      }
    }
  }
  const double expect = drawn / static_cast<double>(counts.size());
  double stat = 0;
  for (const auto& [pair, c] : counts) stat += (c - expect) * (c - expect) / expect;
  return stat;
}

TEST(Sampler, UniformOverNonEdges) {
  // 99th percentiles of chi-square with 22 and 429 degrees of freedom.
  EXPECT_LT(chi_square(8, 1000), 40.289);
  EXPECT_LT(chi_square(30, 1000), 500.069);
}

TEST(Reports, JsonRoundTrip) {
  const std::vector<MetricReport> reps = {{"dylink2vec", 0.25, 0.5, 50, 10, 90},
                                          {"cn", 0.125, 0.0625, 50, 10, 90}};
  const std::string text = reports_to_json(reps);
  EXPECT_NE(text.find("\"ndcg_k\""), std::string::npos);
  const auto back = reports_from_json(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].method, "cn");
  EXPECT_EQ(back[0].prauc, 0.25);
  EXPECT_EQ(back[0].n_neg, 90u);
  const auto e = evaluate("x", make({0.9, 0.1}, {1, 0}), 5);
  EXPECT_EQ(e.prauc, 1.0);
  EXPECT_EQ(e.n_pos, 1u);
  EXPECT_EQ(e.k, 5u);
}

}  // namespace
}  // namespace dylink2vec
