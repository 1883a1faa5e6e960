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
#include <random>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dylink2vec/classify.h"

namespace dylink2vec {
namespace {

LabeledDataset one_feature(std::vector<double> xs, std::vector<int> ys) {
  LabeledDataset d;
  d.features = Matrix(xs.size(), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) d.features(i, 0) = xs[i];
  d.labels = std::move(ys);
  return d;
}

LabeledDataset noisy(std::size_t rows, std::size_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  LabeledDataset d;
  d.features = Matrix(rows, width);
  for (std::size_t r = 0; r < rows; ++r) {
    const int y = static_cast<int>(r % 2);
    d.labels.push_back(y);
    for (std::size_t c = 0; c < width; ++c) d.features(r, c) = gauss(rng) + (c < 2 ? 0.8 * y : 0);
  }
  return d;
}

TEST(AdaBoost, SeparableStopsAfterOneRound) {
  const auto d = one_feature({-1, -1.2, -0.9, 1, 1.1, 0.8}, {0, 0, 0, 1, 1, 1});
  BoostReport rep;
  const auto m = train_adaboost(d, 50, &rep);
  ASSERT_EQ(m.stumps.size(), 1u);
  EXPECT_EQ(rep.training_error, 0.0);
  EXPECT_EQ(m.stumps[0].polarity, 1);
  EXPECT_NEAR(m.stumps[0].threshold, -0.05, 1e-15);
  EXPECT_EQ(score(m, d.features), (std::vector<double>{0, 0, 0, 1, 1, 1}));
}

TEST(AdaBoost, HandTracedFirstRound) {
  // Midpoints 1.5, 2.5, 3.5. Weighted errors with polarity +1: 1/2, 1/4, 1/2;
  // with polarity -1: 1/2, 3/4, 1/2.
  const auto d = one_feature({1, 2, 3, 4}, {0, 0, 1, 0});
  BoostReport rep;
  const auto m = train_adaboost(d, 1, &rep);
  ASSERT_EQ(m.stumps.size(), 1u);
  EXPECT_EQ(m.stumps[0].feature, 0u);
  EXPECT_EQ(m.stumps[0].threshold, 2.5);
  EXPECT_EQ(m.stumps[0].polarity, 1);
  EXPECT_NEAR(m.stumps[0].weight, 0.5 * std::log(3.0), 1e-15);
  ASSERT_EQ(rep.round_errors.size(), 1u);
  EXPECT_NEAR(rep.round_errors[0], 0.25, 1e-15);
  EXPECT_EQ(rep.training_error, 0.25);
  EXPECT_NEAR(rep.error_bound, 2 * std::sqrt(0.25 * 0.75), 1e-15);
  EXPECT_EQ(score(m, d.features), (std::vector<double>{0, 0, 1, 1}));
}

TEST(AdaBoost, HandTracedSecondRound) {
  // After round 1 the misclassified x=4 carries weight 1/2 and the others
  // 1/6. Polarity -1 at 1.5 and at 3.5 both reach 1/3; the lower threshold wins.
  const auto d = one_feature({1, 2, 3, 4}, {0, 0, 1, 0});
  BoostReport rep;
  const auto m = train_adaboost(d, 2, &rep);
  ASSERT_EQ(m.stumps.size(), 2u);
  EXPECT_EQ(m.stumps[1].threshold, 1.5);
  EXPECT_EQ(m.stumps[1].polarity, -1);
  EXPECT_NEAR(rep.round_errors[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.stumps[1].weight, 0.5 * std::log(2.0), 1e-15);
  // margins: x=1: -a1 + a2, x=2: -a1 - a2, x=3: a1 - a2, x=4: a1 - a2
  const double a1 = 0.5 * std::log(3.0), a2 = 0.5 * std::log(2.0);
  const auto s = score(m, d.features);
  const double tot = a1 + a2;
  EXPECT_NEAR(s[0], ((-a1 + a2) / tot + 1) / 2, 1e-15);
  EXPECT_NEAR(s[1], 0.0, 1e-15);
  EXPECT_NEAR(s[2], ((a1 - a2) / tot + 1) / 2, 1e-15);
}

TEST(AdaBoost, BoundHoldsOnRandomRuns) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = noisy(60 + 7 * seed, 4, seed);
    BoostReport rep;
    train_adaboost(d, 30, &rep);
    EXPECT_LE(rep.training_error, rep.error_bound) << seed;
  }
}

TEST(AdaBoost, ErrorsAndWidthChecks) {
  EXPECT_THROW(train_adaboost(one_feature({1, 2}, {1, 1}), 5), std::invalid_argument);
  EXPECT_THROW(train_adaboost(one_feature({1, 2}, {0, 2}), 5), std::invalid_argument);
  EXPECT_THROW(train_adaboost(one_feature({1, 2}, {0, 1}), 0), std::invalid_argument);
  const auto m = train_adaboost(one_feature({1, 2}, {0, 1}), 3);
  EXPECT_THROW(score(m, Matrix(2, 3)), std::invalid_argument);
}

TEST(Score, StumpVotes) {
  StumpEnsemble one{1, {{0, 0.5, 1, 0.7}}};
  Matrix x(1, 1);
  x(0, 0) = 0.9;
  EXPECT_EQ(score(one, x)[0], 1.0);
  StumpEnsemble split{1, {{0, 0.5, 1, 0.7}, {0, 0.5, -1, 0.7}}};
  EXPECT_EQ(score(split, x)[0], 0.5);
  EXPECT_EQ(score(StumpEnsemble{1, {}}, x)[0], 0.5);
}

TEST(Score, DuplicatedStumpWithSplitWeight) {
  const auto d = noisy(80, 3, 7);
  const auto m = train_adaboost(d, 10);
  StumpEnsemble dup = m;
  Stump half = dup.stumps[0];
  half.weight /= 2;
  dup.stumps[0] = half;
  dup.stumps.push_back(half);
  const auto a = score(m, d.features);
  const auto b = score(dup, d.features);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
}

TEST(Score, FeaturePermutationEquivariance) {
  const auto d = noisy(90, 4, 8);
  const auto m = train_adaboost(d, 15);
  const std::vector<std::size_t> perm = {2, 0, 3, 1};  // new column of old column c
  LabeledDataset p = d;
  std::vector<std::size_t> where(4);
  for (std::size_t c = 0; c < 4; ++c) {
    where[c] = perm[c];
    for (std::size_t r = 0; r < d.features.rows(); ++r) p.features(r, perm[c]) = d.features(r, c);
  }
  StumpEnsemble moved = m;
  for (auto& s : moved.stumps) s.feature = where[s.feature];
  EXPECT_EQ(score(m, d.features), score(moved, p.features));
}

TEST(EnsembleFile, RoundTripIsBitwise) {
  const auto d = noisy(70, 3, 9);
  const auto m = train_adaboost(d, 12);
  std::ostringstream out;
  write_ensemble(out, m);
  std::istringstream in(out.str());
  EXPECT_TRUE(read_ensemble(in) == m);
  std::istringstream bad("dylink2vec-stumps v1 2 1\n5 0.5 1 0.3\n");
  EXPECT_THROW(read_ensemble(bad), std::runtime_error);
}

TEST(Logistic, SeparableData) {
  const auto d = one_feature({-2, -1.5, -1, 1, 1.5, 2}, {0, 0, 0, 1, 1, 1});
  const auto m = train_logistic(d, 200, 0.5);
  const auto s = score(m, d.features);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i] > 0.5, d.labels[i] == 1);
}

TEST(Logistic, ZeroStepsGiveHalf) {
  const auto d = noisy(10, 2, 1);
  const auto m = train_logistic(d, 0, 0.5);
  for (double s : score(m, d.features)) EXPECT_EQ(s, 0.5);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  const auto d = noisy(30, 3, 2);
  LogisticModel m{{0.3, -0.7, 0.2}, 0.1};
  const auto g = logistic_gradient(m, d);
  ASSERT_EQ(g.size(), 4u);
  const double h = 1e-5;
  for (std::size_t j = 0; j < 4; ++j) {
    LogisticModel up = m, down = m;
    (j < 3 ? up.weights[j] : up.bias) += h;
    (j < 3 ? down.weights[j] : down.bias) -= h;
    const double fd = (logistic_loss(up, d) - logistic_loss(down, d)) / (2 * h);
    EXPECT_LE(std::abs(fd - g[j]) / std::max({std::abs(fd), std::abs(g[j]), 1e-7}), 1e-5);
  }
}

}  // namespace
}  // namespace dylink2vec
