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
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dylink2vec/pairfeat.h"
#include "dylink2vec/synth.h"

namespace dylink2vec {
namespace {

// G_1 = {(0,1)}, G_2 = {(0,1),(1,2)}
DynamicNetwork toy() {
  return DynamicNetwork(3, {Snapshot(1, 3, {{0, 1}}), Snapshot(2, 3, {{0, 1}, {1, 2}})});
}

// (4,5) links once at `early`, (3,5) once at `late`.
DynamicNetwork recency_net(int t, int early, int late) {
  std::vector<Snapshot> s;
  for (int i = 1; i <= t; ++i) {
    std::vector<NodePair> e = {{0, 1}};
    if (i == early) e.push_back({4, 5});
    if (i == late) e.push_back({3, 5});
    s.emplace_back(i, 6, e);
  }
  return DynamicNetwork(6, std::move(s));
}

TEST(PairAdjacencyBlock, HandValues) {
  DynamicNetwork net(3, {Snapshot(1, 3, {{0, 1}, {1, 2}})});
  EXPECT_EQ(pair_adjacency_block(net, 1, 0, 2), (std::vector<double>{0, 2, 0}));
  EXPECT_EQ(pair_adjacency_block(net, 1, 0, 1), (std::vector<double>{1, 1, 1}));
  DynamicNetwork empty(3, {Snapshot(1, 3, {})});
  EXPECT_EQ(pair_adjacency_block(empty, 1, 0, 1), (std::vector<double>{0, 0, 0}));
  EXPECT_THROW(pair_adjacency_block(net, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(pair_adjacency_block(net, 1, 0, 5), std::invalid_argument);
}

TEST(LinkHistory, WeightedAndCumulative) {
  DynamicNetwork last_only(3, {Snapshot(1, 3, {}), Snapshot(2, 3, {{0, 1}})});
  EXPECT_EQ(weighted_link_history(last_only, {1, 2}, 0, 1), (std::vector<double>{0, 1.0}));
  EXPECT_EQ(weighted_link_history(last_only, {1, 2}, 0, 2), (std::vector<double>{0, 0}));
  const auto both = weighted_link_history(toy(), {1, 2}, 0, 1);
  EXPECT_EQ(both, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(weighted_cumulative_link_history(both), (std::vector<double>{0.5, 1.5}));
  EXPECT_EQ(weighted_cumulative_link_history(std::vector<double>{0, 1.0}),
            (std::vector<double>{0, 1.0}));
  EXPECT_EQ(weighted_cumulative_link_history(std::vector<double>{0, 0, 0}),
            (std::vector<double>{0, 0, 0}));
  EXPECT_THROW(weighted_link_history(toy(), {2, 1}, 0, 1), std::invalid_argument);
  EXPECT_THROW(weighted_link_history(toy(), {1, 3}, 0, 1), std::invalid_argument);
}

TEST(LinkHistory, DecayIsWindowRelative) {
  const auto net = recency_net(5, 0, 4);
  EXPECT_EQ(weighted_link_history(net, {3, 4}, 3, 5), (std::vector<double>{0, 1.0}));
  EXPECT_EQ(weighted_link_history(net, {2, 5}, 3, 5), (std::vector<double>{0, 0, 0.75, 0}));
}

TEST(BuildPairFeature, WorkedExample) {
  const auto f = build_pair_feature(toy(), {1, 2}, 0, 2);
  EXPECT_EQ(f.values, (std::vector<double>{0, 0.5, 0, 0, 1, 0, 0, 0}));
  EXPECT_EQ(f.pair, (NodePair{0, 2}));
}

TEST(BuildPairFeature, LinkedPairTail) {
  const auto f = build_pair_feature(toy(), {1, 2}, 0, 1);
  ASSERT_EQ(f.values.size(), 8u);
  EXPECT_DOUBLE_EQ(f.values[6], 1.0 / 3.0);
  EXPECT_EQ(f.values[7], 1.0);
  // blocks: (a^0 + a^1) / 2 at each snapshot
  EXPECT_EQ(std::vector<double>(f.values.begin(), f.values.begin() + 6),
            (std::vector<double>{0.5, 0.5, 0, 0.5, 0.5, 0.5}));
}

TEST(BuildPairFeature, EdgelessIsZero) {
  DynamicNetwork net(3, {Snapshot(1, 3, {}), Snapshot(2, 3, {})});
  EXPECT_EQ(build_pair_feature(net, {1, 2}, 1, 2).values, std::vector<double>(8, 0.0));
}

TEST(BuildPairFeature, SymmetricBoundedAndSized) {
  SynthSpec spec;
  spec.n = 30;
  spec.t = 5;
  spec.p_in = 0.5;
  spec.recurrence_boost = 0.9;
  spec.decay_horizon = 4;
  const auto net = synth_generate(spec);
  for (Window w : {Window{1, 5}, Window{2, 4}, Window{3, 3}}) {
    for (int u = 0; u < 30; u += 3) {
      for (int v = u + 1; v < 30; v += 2) {
        const auto a = build_pair_feature(net, w, u, v);
        const auto b = build_pair_feature(net, w, v, u);
        ASSERT_EQ(a.values, b.values);
        ASSERT_EQ(a.values.size(), feature_length(30, w.length()));
        for (double x : a.values) {
          ASSERT_GE(x, 0.0);
          ASSERT_LE(x, 1.0);
        }
        const std::size_t tail = 30 * static_cast<std::size_t>(w.length());
        for (std::size_t j = tail + 1; j < a.values.size(); ++j) {
          ASSERT_GE(a.values[j], a.values[j - 1]);
        }
      }
    }
  }
}

TEST(BuildPairFeature, RecencyForAllWindowLengths) {
  for (int T = 2; T <= 10; ++T) {
    for (int early = 1; early < T; ++early) {
      for (int late = early + 1; late <= T; ++late) {
        const auto net = recency_net(T, early, late);
        const auto recent = build_pair_feature(net, {1, T}, 3, 5).values.back();
        const auto old = build_pair_feature(net, {1, T}, 4, 5).values.back();
        ASSERT_GT(recent, old) << "T=" << T << " early=" << early << " late=" << late;
      }
    }
  }
}

TEST(BuildDataset, RowsMatchFeatures) {
  const auto net = recency_net(4, 1, 3);
  const std::vector<NodePair> pairs = {{3, 5}, {0, 1}, {2, 4}};
  const Matrix d = build_dataset(net, {1, 3}, pairs);
  ASSERT_EQ(d.rows(), 3u);
  ASSERT_EQ(d.cols(), 3u * 6 + 3);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto f = build_pair_feature(net, {1, 3}, pairs[r].u, pairs[r].v).values;
    EXPECT_TRUE(std::equal(f.begin(), f.end(), d.row(r).begin()));
  }
  const std::vector<NodePair> swapped = {{0, 1}, {3, 5}};
  const Matrix s = build_dataset(net, {1, 3}, swapped);
  EXPECT_TRUE(std::equal(s.row(0).begin(), s.row(0).end(), d.row(1).begin()));
  EXPECT_TRUE(std::equal(s.row(1).begin(), s.row(1).end(), d.row(0).begin()));
  const std::vector<NodePair> dup = {{0, 1}, {1, 0}};
  EXPECT_THROW(build_dataset(net, {1, 3}, dup), std::invalid_argument);
  EXPECT_EQ(build_dataset(net, {1, 3}, {}).rows(), 0u);
}

TEST(DatasetDump, FixedPrecisionIsStable) {
  SynthSpec spec;
  spec.n = 12;
  spec.t = 4;
  spec.p_in = 0.4;
  const auto net = synth_generate(spec);
  std::vector<NodePair> pairs;
  for (int v = 1; v < 12; ++v) pairs.push_back({0, v});
  const Matrix d = build_dataset(net, {1, 4}, pairs);
  std::ostringstream out;
  write_dataset(out, d);
  std::istringstream in(out.str());
  const Matrix back = read_dataset(in);
  ASSERT_EQ(back.rows(), d.rows());
  ASSERT_EQ(back.cols(), d.cols());
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) EXPECT_NEAR(back(r, c), d(r, c), 5e-10);
  }
  std::ostringstream again;
  write_dataset(again, back);
  EXPECT_EQ(again.str(), out.str());
  std::istringstream in2(again.str());
  EXPECT_TRUE(read_dataset(in2) == back);
}

TEST(DatasetDump, RejectsShortRows) {
  std::istringstream in("2 3\n0 0 0\n0 0\n");
  EXPECT_THROW(read_dataset(in), std::runtime_error);
}

}  // namespace
}  // namespace dylink2vec
