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

// Single-layer compression/reconstruction autoencoder over node-pair features.
//
//   alpha = f(Wc e + bc)          compression, Wc is l x k
//   beta  = f(Wr alpha + br)      reconstruction, Wr is k x l
//   J     = mean_e 1/2 |beta - e|^2 + lambda/2 (|Wc|_F^2 + |Wr|_F^2)
//
// f is the logistic function. Biases are not regularized. Training is
// full-batch gradient descent; the code alpha is the node-pair embedding.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dylink2vec/matrix.h"

namespace dylink2vec {

struct EmbeddingModel {
  Matrix wc;               // l x k
  std::vector<double> bc;  // l
  Matrix wr;               // k x l
  std::vector<double> br;  // k
  double lambda = 0.1;

  std::size_t input_length() const { return wc.cols(); }
  std::size_t code_length() const { return wc.rows(); }

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;
};

/// Zero-initialized model. Requires 1 <= l < k.
EmbeddingModel make_model(std::size_t k, std::size_t l, double lambda);

/// Same shapes as EmbeddingModel's parameters.
struct Gradients {
  Matrix wc;
  std::vector<double> bc;
  Matrix wr;
  std::vector<double> br;
};

enum class StepPolicy {
  kFixed,      // sigma never changes
  kBacktrack,  // halve sigma until the step does not increase the loss, grow it after
};

struct TrainConfig {
  double sigma = 1.0;
  StepPolicy step_policy = StepPolicy::kBacktrack;
  /// Backtracking only: sigma is multiplied by this after an accepted step.
  double sigma_growth = 1.5;
  int max_iters = 100;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  /// Weights start uniform in [-init_scale, init_scale]; <= 0 selects
  /// sqrt(6 / (k + l)).
  double init_scale = 0.0;
  /// Gradient accumulation threads. Results do not depend on this value.
  int threads = 1;
};

/// Multiply-add tally for the loss/gradient kernels.
struct WorkCounter {
  std::uint64_t multiply_adds = 0;
};

struct TrainResult {
  EmbeddingModel model;
  /// Entry 0 is the initial loss, entry i the loss after update i.
  std::vector<double> loss_trace;
  int iterations = 0;
  bool converged = false;
  double final_sigma = 0.0;
};

class TrainingDiverged : public std::runtime_error {
 public:
  explicit TrainingDiverged(int iteration)
      : std::runtime_error("autoencoder loss became non-finite at iteration " +
                           std::to_string(iteration)),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

double sigmoid(double x);
std::vector<double> sigmoid(std::span<const double> x);

std::vector<double> compress(const EmbeddingModel& model, std::span<const double> e);
std::vector<double> reconstruct(const EmbeddingModel& model, std::span<const double> alpha);

double loss(const EmbeddingModel& model, const Matrix& data, WorkCounter* counter = nullptr);

/// Objective and its gradient in one forward/backward sweep.
double loss_and_gradients(const EmbeddingModel& model, const Matrix& data, Gradients& grad,
                          WorkCounter* counter = nullptr, int threads = 1);

Gradients gradients(const EmbeddingModel& model, const Matrix& data,
                    WorkCounter* counter = nullptr);

/// Random model with weights uniform in [-scale, scale] and zero biases.
EmbeddingModel init_model(std::size_t k, std::size_t l, double lambda, double scale,
                          std::uint64_t seed);

TrainResult train(const Matrix& data, std::size_t l, double lambda, const TrainConfig& cfg);

/// Row-wise compression.
Matrix embed(const EmbeddingModel& model, const Matrix& data);

/// Text format: `dylink2vec-model v1`, `k l lambda`, then Wc, bc, Wr, br
/// row-major with 17 significant digits.
void write_model(std::ostream& out, const EmbeddingModel& model);
EmbeddingModel read_model(std::istream& in);

}  // namespace dylink2vec
