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

#include <iosfwd>
#include <vector>

#include "dylink2vec/dyngraph.h"
#include "dylink2vec/matrix.h"

namespace dylink2vec {

struct LabeledDataset {
  Matrix features;
  std::vector<int> labels;  // 1 = link present
  std::vector<NodePair> pair_ids;
};

/// Throws unless rows, labels and pair ids agree and labels are binary.
void validate(const LabeledDataset& data);

/// Votes +1 when polarity * (x[feature] - threshold) > 0, else -1.
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;
  double weight = 0.0;

  int vote(std::span<const double> x) const {
    const bool above = x[feature] > threshold;
    return (above == (polarity > 0)) ? 1 : -1;
  }
  friend bool operator==(const Stump&, const Stump&) = default;
};

struct StumpEnsemble {
  std::size_t width = 0;
  std::vector<Stump> stumps;
  friend bool operator==(const StumpEnsemble&, const StumpEnsemble&) = default;
};

/// Per-run AdaBoost bookkeeping.
struct BoostReport {
  std::vector<double> round_errors;  // clamped weighted error of each kept stump
  double training_error = 0.0;       // fraction misclassified by the final vote
  double error_bound = 1.0;          // prod_m 2 sqrt(eps_m (1 - eps_m))
};

/// AdaBoost.M1 over decision stumps. Thresholds are midpoints between
/// consecutive distinct feature values; ties in weighted error go to the
/// lower feature index, then the lower threshold, then polarity +1. Stops
/// early when a round's error is 0 or >= 1/2. Throws std::logic_error if the
/// training error ever exceeds the product bound.
StumpEnsemble train_adaboost(const LabeledDataset& data, int rounds,
                             BoostReport* report = nullptr);

/// (sum_m w_m h_m(x) / sum_m w_m + 1) / 2; 0.5 for an empty ensemble.
std::vector<double> score(const StumpEnsemble& model, const Matrix& features);

/// Header `dylink2vec-stumps v1 <width> <count>`, then `feat thr polarity weight`.
void write_ensemble(std::ostream& out, const StumpEnsemble& model);
StumpEnsemble read_ensemble(std::istream& in);

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
};

/// Mean log-loss.
double logistic_loss(const LogisticModel& model, const LabeledDataset& data);
/// Gradient of logistic_loss; the last entry is the bias derivative.
std::vector<double> logistic_gradient(const LogisticModel& model, const LabeledDataset& data);

/// Full-batch gradient descent from zero weights.
LogisticModel train_logistic(const LabeledDataset& data, int steps, double rate);
std::vector<double> score(const LogisticModel& model, const Matrix& features);

}  // namespace dylink2vec
