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

#include "dylink2vec/classify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dylink2vec {

namespace {

constexpr double kMinError = 1e-10;
// Weighted errors closer than this count as tied.
constexpr double kTieSlack = 1e-12;
constexpr const char* kEnsembleMagic = "dylink2vec-stumps";

void require_both_classes(const LabeledDataset& data) {
  validate(data);
  const auto pos = std::count(data.labels.begin(), data.labels.end(), 1);
  require(pos > 0 && pos < static_cast<long>(data.labels.size()),
          "classifier needs both classes in the training data");
}

struct Candidate {
  double error = 2.0;
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;
};

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double linear(const LogisticModel& m, std::span<const double> x) {
  double z = m.bias;
  for (std::size_t j = 0; j < x.size(); ++j) z += m.weights[j] * x[j];
  return z;
}

}  // namespace

void validate(const LabeledDataset& data) {
  require(data.features.rows() == data.labels.size(), "labels do not match feature rows");
  require(data.pair_ids.empty() || data.pair_ids.size() == data.labels.size(),
          "pair ids do not match feature rows");
  for (int y : data.labels) require(y == 0 || y == 1, "labels must be 0 or 1");
}

StumpEnsemble train_adaboost(const LabeledDataset& data, int rounds, BoostReport* report) {
  require_both_classes(data);
  require(rounds >= 1, "adaboost: rounds must be >= 1");
  const std::size_t n = data.features.rows();
  const std::size_t d = data.features.cols();

  std::vector<std::vector<std::size_t>> order(d, std::vector<std::size_t>(n));
  for (std::size_t f = 0; f < d; ++f) {
    auto& ord = order[f];
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
      return data.features(a, f) < data.features(b, f);
    });
  }

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  StumpEnsemble model{d, {}};
  BoostReport rep;

  for (int round = 0; round < rounds; ++round) {
    double pos_total = 0.0, neg_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) (data.labels[i] == 1 ? pos_total : neg_total) += w[i];

    Candidate best;
    for (std::size_t f = 0; f < d; ++f) {
      const auto& ord = order[f];
      double pos_below = 0.0, neg_below = 0.0;
      for (std::size_t r = 0; r + 1 < n; ++r) {
        const std::size_t i = ord[r];
        (data.labels[i] == 1 ? pos_below : neg_below) += w[i];
        const double lo = data.features(i, f);
        const double hi = data.features(ord[r + 1], f);
        if (!(lo < hi)) continue;
        double thr = lo + (hi - lo) / 2.0;
        if (thr >= hi) thr = lo;
        // Polarity +1 predicts a link above the threshold.
        const double err_up = pos_below + (neg_total - neg_below);
        const double err_down = (pos_total + neg_total) - err_up;
        if (err_up < best.error - kTieSlack) best = {err_up, f, thr, 1};
        if (err_down < best.error - kTieSlack) best = {err_down, f, thr, -1};
      }
    }
    if (best.error > 1.0) break;  // every feature is constant

    Stump stump{best.feature, best.threshold, best.polarity, 0.0};
    double eps = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int y = data.labels[i] == 1 ? 1 : -1;
      if (stump.vote(data.features.row(i)) != y) eps += w[i];
    }
    eps /= (pos_total + neg_total);
    if (eps >= 0.5) break;

    const double clamped = std::clamp(eps, kMinError, 1.0 - kMinError);
    stump.weight = 0.5 * std::log((1.0 - clamped) / clamped);
    model.stumps.push_back(stump);
    rep.round_errors.push_back(clamped);
    if (eps == 0.0) break;

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int y = data.labels[i] == 1 ? 1 : -1;
      w[i] *= std::exp(-stump.weight * y * stump.vote(data.features.row(i)));
      sum += w[i];
    }
    for (double& x : w) x /= sum;
  }

  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double margin = 0.0;
    for (const auto& s : model.stumps) margin += s.weight * s.vote(data.features.row(i));
    const int y = data.labels[i] == 1 ? 1 : -1;
    if (y * margin <= 0.0) ++wrong;
  }
  rep.training_error = static_cast<double>(wrong) / static_cast<double>(n);
  rep.error_bound = 1.0;
  for (double e : rep.round_errors) rep.error_bound *= 2.0 * std::sqrt(e * (1.0 - e));
  if (rep.training_error > rep.error_bound + 1e-12) {
    std::ostringstream msg;
    msg << "adaboost: training error " << rep.training_error << " exceeds bound "
        << rep.error_bound;
    throw std::logic_error(msg.str());
  }
  if (report != nullptr) *report = std::move(rep);
  return model;
}

std::vector<double> score(const StumpEnsemble& model, const Matrix& features) {
  require(features.cols() == model.width,
          "score: feature width " + std::to_string(features.cols()) + " != trained width " +
              std::to_string(model.width));
  double total = 0.0;
  for (const auto& s : model.stumps) total += s.weight;
  std::vector<double> out(features.rows(), 0.5);
  if (total <= 0.0) return out;
  for (std::size_t r = 0; r < features.rows(); ++r) {
    double margin = 0.0;
    for (const auto& s : model.stumps) margin += s.weight * s.vote(features.row(r));
    out[r] = (margin / total + 1.0) / 2.0;
  }
  return out;
}

void write_ensemble(std::ostream& out, const StumpEnsemble& model) {
  out << kEnsembleMagic << " v1 " << model.width << ' ' << model.stumps.size() << '\n';
  char buf[96];
  for (const auto& s : model.stumps) {
    std::snprintf(buf, sizeof(buf), "%zu %.17g %d %.17g", s.feature, s.threshold, s.polarity,
                  s.weight);
    out << buf << '\n';
  }
}

StumpEnsemble read_ensemble(std::istream& in) {
  std::string magic, version;
  StumpEnsemble model;
  std::size_t count = 0;
  if (!(in >> magic >> version >> model.width >> count) || magic != kEnsembleMagic ||
      version != "v1") {
    throw std::runtime_error("ensemble file: bad header");
  }
  for (std::size_t m = 0; m < count; ++m) {
    Stump s;
    std::string thr, weight;
    if (!(in >> s.feature >> thr >> s.polarity >> weight)) {
      throw std::runtime_error("ensemble file: truncated at stump " + std::to_string(m));
    }
    s.threshold = std::stod(thr);
    s.weight = std::stod(weight);
    if (s.feature >= model.width || (s.polarity != 1 && s.polarity != -1) ||
        !std::isfinite(s.weight)) {
      throw std::runtime_error("ensemble file: invalid stump " + std::to_string(m));
    }
    model.stumps.push_back(s);
  }
  return model;
}

double logistic_loss(const LogisticModel& model, const LabeledDataset& data) {
  validate(data);
  require(model.weights.size() == data.features.cols(), "logistic: width mismatch");
  require(data.features.rows() > 0, "logistic: empty dataset");
  double sum = 0.0;
  for (std::size_t i = 0; i < data.features.rows(); ++i) {
    const double z = linear(model, data.features.row(i));
    sum += softplus(z) - data.labels[i] * z;
  }
  return sum / static_cast<double>(data.features.rows());
}

std::vector<double> logistic_gradient(const LogisticModel& model, const LabeledDataset& data) {
  validate(data);
  require(model.weights.size() == data.features.cols(), "logistic: width mismatch");
  const std::size_t d = data.features.cols();
  std::vector<double> g(d + 1, 0.0);
  for (std::size_t i = 0; i < data.features.rows(); ++i) {
    auto x = data.features.row(i);
    const double r = logistic(linear(model, x)) - data.labels[i];
    for (std::size_t j = 0; j < d; ++j) g[j] += r * x[j];
    g[d] += r;
  }
  for (double& x : g) x /= static_cast<double>(data.features.rows());
  return g;
}

LogisticModel train_logistic(const LabeledDataset& data, int steps, double rate) {
  require_both_classes(data);
  require(steps >= 0 && rate > 0.0, "logistic: need steps >= 0 and rate > 0");
  LogisticModel m{std::vector<double>(data.features.cols(), 0.0), 0.0};
  for (int s = 0; s < steps; ++s) {
    auto g = logistic_gradient(m, data);
    for (std::size_t j = 0; j < m.weights.size(); ++j) m.weights[j] -= rate * g[j];
    m.bias -= rate * g.back();
  }
  return m;
}

std::vector<double> score(const LogisticModel& model, const Matrix& features) {
  require(features.cols() == model.weights.size(), "logistic: width mismatch");
  std::vector<double> out(features.rows());
  for (std::size_t r = 0; r < features.rows(); ++r) out[r] = logistic(linear(model, features.row(r)));
  return out;
}

}  // namespace dylink2vec
