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

// Link forecasting on a dynamic network.
//
// Given history G_1..G_t, features for the window [from, t-1] are paired with
// labels read from G_t; the coding function is learned from those features
// alone, a classifier is fit on the codes, and the window [from+1, t] is
// embedded with the same coding function to score pairs for G_{t+1}.
// G_{t+1} itself is never passed to the learning code: callers hand it over
// separately, and it is used only to attach evaluation labels.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dylink2vec/autoenc.h"
#include "dylink2vec/baselines.h"
#include "dylink2vec/classify.h"
#include "dylink2vec/config.h"
#include "dylink2vec/dyngraph.h"
#include "dylink2vec/evalmetrics.h"
#include "dylink2vec/pairfeat.h"
#include "dylink2vec/synth.h"

namespace dylink2vec {

enum class ClassifierKind { kAdaBoost, kLogistic };

struct ExperimentConfig {
  std::size_t code_length = 100;  // clamped to k - 1
  double lambda = 0.1;
  TrainConfig train;
  ClassifierKind classifier = ClassifierKind::kAdaBoost;
  int boost_rounds = 100;
  int logistic_steps = 500;
  double logistic_rate = 0.5;
  double sampler_ratio = 1.0;
  std::uint64_t seed = 1;
  /// First snapshot of the training window.
  int train_from = 1;
  /// Score every pair when n is at most this; otherwise sample.
  int predict_all_max_n = 2000;
  std::size_t predict_sample = 20000;
  /// First snapshot of the baselines' window; 0 means train_from + 1.
  int baseline_from = 0;
  KatzParams katz;
  std::size_t ndcg_k = 50;
  int ar_order = 2;
  bool deterministic = false;
};

/// Option table for Config, with documented defaults.
std::vector<OptionSpec> experiment_schema();
ExperimentConfig experiment_from(const Config& cfg);
SynthSpec synth_from(const Config& cfg);

struct PipelineResult {
  RankedScores scores;
  bool labeled = false;
  Window train_window;
  Window predict_window;
  int label_snapshot = 0;
  TrainResult embedding;
  StumpEnsemble ensemble;
  BoostReport boost;
  LogisticModel logistic;
  std::vector<LabeledPair> training_pairs;
};

/// Candidate pairs scored for the forecast snapshot, sorted. When sampling,
/// every edge of `target` (if given) is kept.
std::vector<NodePair> prediction_pairs(int n, const ExperimentConfig& cfg,
                                       const Snapshot* target);

/// Positives of the label snapshot G_t plus seeded negatives at
/// cfg.sampler_ratio.
std::vector<LabeledPair> training_pairs(const DynamicNetwork& history, const ExperimentConfig& cfg);

/// Full forecast with the training pairs drawn by training_pairs().
PipelineResult run_dylink2vec(const DynamicNetwork& history, const ExperimentConfig& cfg,
                              const Snapshot* target = nullptr);

/// Same, with caller-supplied training pairs and labels.
PipelineResult run_dylink2vec(const DynamicNetwork& history, const ExperimentConfig& cfg,
                              std::vector<LabeledPair> training_pairs,
                              const Snapshot* target = nullptr);

/// Method names accepted by run_baseline.
const std::vector<std::string>& baseline_methods();

/// cn, aa, jaccard, katz (collapsed window), jack (AdaBoost on the four
/// collapsed scores), ts-cn-adj, ts-aa-adj, ts-j-adj, ts-pa-adj.
RankedScores run_baseline(const DynamicNetwork& history, const std::string& method,
                          const ExperimentConfig& cfg, const Snapshot* target = nullptr);

/// Splits `full` into history G_1..G_{t-1} and target G_t and evaluates each
/// method ("dylink2vec" or a baseline name).
std::vector<MetricReport> compare(const DynamicNetwork& full, const ExperimentConfig& cfg,
                                  const std::vector<std::string>& methods);

struct SweepRow {
  double setting = 0.0;
  Window train_window;
  double prauc = 0.0;
  double ndcg = 0.0;
};

/// For window size s the training window is the s snapshots ending at t-2 and
/// the label snapshot is t-1, where t indexes the held-out target.
std::vector<SweepRow> window_sweep(const DynamicNetwork& full, const ExperimentConfig& cfg,
                                   const std::vector<int>& sizes);

std::vector<SweepRow> imbalance_sweep(const DynamicNetwork& full, const ExperimentConfig& cfg,
                                      const std::vector<double>& ratios);

}  // namespace dylink2vec
