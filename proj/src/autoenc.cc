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

#include "dylink2vec/autoenc.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <thread>

namespace dylink2vec {

namespace {

// Rows are split into this many slabs; slab partial sums are combined in slab
// order, so results are identical for any thread count.
constexpr std::size_t kSlabs = 8;

constexpr int kMaxHalvings = 60;

Gradients zero_gradients(std::size_t k, std::size_t l) {
  return {Matrix(l, k), std::vector<double>(l, 0.0), Matrix(k, l), std::vector<double>(k, 0.0)};
}

void clear(Gradients& g) {
  std::fill(g.wc.data().begin(), g.wc.data().end(), 0.0);
  std::fill(g.bc.begin(), g.bc.end(), 0.0);
  std::fill(g.wr.data().begin(), g.wr.data().end(), 0.0);
  std::fill(g.br.begin(), g.br.end(), 0.0);
}

void add_into(Gradients& total, const Gradients& part) {
  auto add = [](std::span<double> dst, std::span<const double> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  };
  add(total.wc.data(), part.wc.data());
  add(total.bc, part.bc);
  add(total.wr.data(), part.wr.data());
  add(total.br, part.br);
}

void check_data(const EmbeddingModel& model, const Matrix& data) {
  require(data.rows() > 0, "autoencoder: empty dataset");
  require(data.cols() == model.input_length(),
          "autoencoder: dataset row length " + std::to_string(data.cols()) +
              " does not match model input length " + std::to_string(model.input_length()));
}

// Sum over rows [begin, end) of 1/2 |beta - e|^2. When `grad` is non-null the
// unscaled, unregularized data gradient is accumulated into it.
double accumulate_rows(const EmbeddingModel& m, const Matrix& data, std::size_t begin,
                       std::size_t end, Gradients* grad, std::uint64_t& mac) {
  const std::size_t k = m.input_length();
  const std::size_t l = m.code_length();
  std::vector<double> alpha(l);
  std::vector<double> delta_h(l);
  std::vector<std::size_t> nz;
  nz.reserve(k);
  double total = 0.0;

  for (std::size_t r = begin; r < end; ++r) {
    const double* e = data.row(r).data();
    nz.clear();
    for (std::size_t j = 0; j < k; ++j) {
      if (e[j] != 0.0) nz.push_back(j);
    }

    for (std::size_t i = 0; i < l; ++i) {
      const double* w = m.wc.row(i).data();
      double z = m.bc[i];
      for (std::size_t j : nz) z += w[j] * e[j];
      alpha[i] = sigmoid(z);
    }

    std::fill(delta_h.begin(), delta_h.end(), 0.0);
    double row_loss = 0.0;
    const double* a = alpha.data();
    for (std::size_t o = 0; o < k; ++o) {
      const double* w = m.wr.row(o).data();
      double z = m.br[o];
      for (std::size_t i = 0; i < l; ++i) z += w[i] * a[i];
      const double beta = sigmoid(z);
      const double diff = beta - e[o];
      row_loss += diff * diff;
      if (grad != nullptr) {
        const double dz = diff * beta * (1.0 - beta);
        grad->br[o] += dz;
        double* __restrict gw = grad->wr.row(o).data();
        double* __restrict dh = delta_h.data();
        for (std::size_t i = 0; i < l; ++i) {
          gw[i] += dz * a[i];
          dh[i] += dz * w[i];
        }
      }
    }
    total += 0.5 * row_loss;
    mac += nz.size() * l + k * l;

    if (grad != nullptr) {
      for (std::size_t i = 0; i < l; ++i) {
        const double dh = delta_h[i] * alpha[i] * (1.0 - alpha[i]);
        grad->bc[i] += dh;
        double* gw = grad->wc.row(i).data();
        for (std::size_t j : nz) gw[j] += dh * e[j];
      }
      mac += 2 * k * l + nz.size() * l;
    }
  }
  return total;
}

double regularizer(const EmbeddingModel& m) {
  return 0.5 * m.lambda * (m.wc.squared_norm() + m.wr.squared_norm());
}

// Data term summed slab by slab; `grad` (optional) receives the summed data
// gradient.
double slab_sum(const EmbeddingModel& m, const Matrix& data, Gradients* grad,
                WorkCounter* counter, int threads) {
  const std::size_t n = data.rows();
  const std::size_t k = m.input_length();
  const std::size_t l = m.code_length();
  auto bound = [n](std::size_t s) { return s * n / kSlabs; };

  std::vector<double> slab_loss(kSlabs, 0.0);
  std::vector<std::uint64_t> slab_mac(kSlabs, 0);
  double total = 0.0;

  if (threads <= 1) {
    Gradients part;
    if (grad != nullptr) part = zero_gradients(k, l);
    for (std::size_t s = 0; s < kSlabs; ++s) {
      if (grad != nullptr) clear(part);
      slab_loss[s] = accumulate_rows(m, data, bound(s), bound(s + 1),
                                     grad != nullptr ? &part : nullptr, slab_mac[s]);
      if (grad != nullptr) add_into(*grad, part);
    }
  } else {
    std::vector<Gradients> parts(grad != nullptr ? kSlabs : 0);
    for (auto& p : parts) p = zero_gradients(k, l);
    const std::size_t workers = std::min<std::size_t>(threads, kSlabs);
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t s = t; s < kSlabs; s += workers) {
            slab_loss[s] = accumulate_rows(m, data, bound(s), bound(s + 1),
                                           grad != nullptr ? &parts[s] : nullptr, slab_mac[s]);
          }
        });
      }
    }
    if (grad != nullptr) {
      for (const auto& p : parts) add_into(*grad, p);
    }
  }
  for (std::size_t s = 0; s < kSlabs; ++s) {
    total += slab_loss[s];
    if (counter != nullptr) counter->multiply_adds += slab_mac[s];
  }
  return total;
}

void step(EmbeddingModel& m, const Gradients& g, double sigma) {
  auto axpy = [sigma](std::span<double> x, std::span<const double> d) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= sigma * d[i];
  };
  axpy(m.wc.data(), g.wc.data());
  axpy(m.bc, g.bc);
  axpy(m.wr.data(), g.wr.data());
  axpy(m.br, g.br);
}

}  // namespace

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::vector<double> sigmoid(std::span<const double> x) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return sigmoid(v); });
  return out;
}

EmbeddingModel make_model(std::size_t k, std::size_t l, double lambda) {
  require(l >= 1 && l < k, "autoencoder: code length must satisfy 1 <= l < k");
  require(lambda >= 0.0 && std::isfinite(lambda), "autoencoder: lambda must be >= 0");
  return {Matrix(l, k), std::vector<double>(l, 0.0), Matrix(k, l), std::vector<double>(k, 0.0),
          lambda};
}

EmbeddingModel init_model(std::size_t k, std::size_t l, double lambda, double scale,
                          std::uint64_t seed) {
  EmbeddingModel m = make_model(k, l, lambda);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (double& w : m.wc.data()) w = dist(rng);
  for (double& w : m.wr.data()) w = dist(rng);
  return m;
}

std::vector<double> compress(const EmbeddingModel& model, std::span<const double> e) {
  require(e.size() == model.input_length(), "compress: input length mismatch");
  const std::size_t l = model.code_length();
  std::vector<double> alpha(l);
  for (std::size_t i = 0; i < l; ++i) {
    auto w = model.wc.row(i);
    double z = model.bc[i];
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] != 0.0) z += w[j] * e[j];
    }
    alpha[i] = sigmoid(z);
  }
  return alpha;
}

std::vector<double> reconstruct(const EmbeddingModel& model, std::span<const double> alpha) {
  require(alpha.size() == model.code_length(), "reconstruct: code length mismatch");
  const std::size_t k = model.input_length();
  std::vector<double> beta(k);
  for (std::size_t o = 0; o < k; ++o) {
    auto w = model.wr.row(o);
    double z = model.br[o];
    for (std::size_t i = 0; i < alpha.size(); ++i) z += w[i] * alpha[i];
    beta[o] = sigmoid(z);
  }
  return beta;
}

double loss(const EmbeddingModel& model, const Matrix& data, WorkCounter* counter) {
  check_data(model, data);
  double sum = slab_sum(model, data, nullptr, counter, 1);
  return sum / static_cast<double>(data.rows()) + regularizer(model);
}

double loss_and_gradients(const EmbeddingModel& model, const Matrix& data, Gradients& grad,
                          WorkCounter* counter, int threads) {
  check_data(model, data);
  const std::size_t k = model.input_length();
  const std::size_t l = model.code_length();
  grad = zero_gradients(k, l);
  double sum = slab_sum(model, data, &grad, counter, threads);

  const double inv = 1.0 / static_cast<double>(data.rows());
  auto wc = grad.wc.data();
  auto mwc = model.wc.data();
  for (std::size_t i = 0; i < wc.size(); ++i) wc[i] = wc[i] * inv + model.lambda * mwc[i];
  auto wr = grad.wr.data();
  auto mwr = model.wr.data();
  for (std::size_t i = 0; i < wr.size(); ++i) wr[i] = wr[i] * inv + model.lambda * mwr[i];
  for (double& b : grad.bc) b *= inv;
  for (double& b : grad.br) b *= inv;
  return sum * inv + regularizer(model);
}

Gradients gradients(const EmbeddingModel& model, const Matrix& data, WorkCounter* counter) {
  Gradients g;
  loss_and_gradients(model, data, g, counter, 1);
  return g;
}

TrainResult train(const Matrix& data, std::size_t l, double lambda, const TrainConfig& cfg) {
  require(data.rows() > 0, "train: empty dataset");
  require(cfg.sigma > 0.0, "train: sigma must be positive");
  require(cfg.max_iters >= 1, "train: max_iters must be >= 1");
  require(cfg.tol >= 0.0, "train: tol must be >= 0");
  require(cfg.sigma_growth >= 1.0, "train: sigma_growth must be >= 1");
  const std::size_t k = data.cols();
  require(l >= 1 && l < k, "train: code length must satisfy 1 <= l < k");

  const double scale =
      cfg.init_scale > 0.0 ? cfg.init_scale : std::sqrt(6.0 / static_cast<double>(k + l));
  TrainResult result;
  result.model = init_model(k, l, lambda, scale, cfg.seed);

  Gradients grad;
  double current = loss_and_gradients(result.model, data, grad, nullptr, cfg.threads);
  if (!std::isfinite(current)) throw TrainingDiverged(0);
  result.loss_trace.push_back(current);

  double sigma = cfg.sigma;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    EmbeddingModel candidate;
    Gradients next_grad;
    double next = 0.0;
    int halvings = 0;
    bool accepted = false;
    while (!accepted) {
      candidate = result.model;
      step(candidate, grad, sigma);
      next = loss_and_gradients(candidate, data, next_grad, nullptr, cfg.threads);
      if (cfg.step_policy == StepPolicy::kFixed) {
        if (!std::isfinite(next)) throw TrainingDiverged(it);
        accepted = true;
      } else if (std::isfinite(next) && next <= current) {
        accepted = true;
      } else if (++halvings > kMaxHalvings) {
        break;
      } else {
        sigma *= 0.5;
      }
    }
    if (!accepted) {
      // No step size decreases the loss: a stationary point to working precision.
      result.converged = true;
      break;
    }

    const double change =
        std::abs(current - next) / std::max(std::abs(current), std::numeric_limits<double>::min());
    result.model = std::move(candidate);
    grad = std::move(next_grad);
    current = next;
    result.loss_trace.push_back(current);
    result.iterations = it;
    if (cfg.step_policy == StepPolicy::kBacktrack) sigma *= cfg.sigma_growth;
    if (change < cfg.tol) {
      result.converged = true;
      break;
    }
  }
  result.final_sigma = sigma;
  return result;
}

Matrix embed(const EmbeddingModel& model, const Matrix& data) {
  require(data.cols() == model.input_length(), "embed: row length mismatch");
  const std::size_t k = model.input_length();
  const std::size_t l = model.code_length();
  Matrix out(data.rows(), l);
  std::vector<std::size_t> nz;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const double* e = data.row(r).data();
    nz.clear();
    for (std::size_t j = 0; j < k; ++j) {
      if (e[j] != 0.0) nz.push_back(j);
    }
    for (std::size_t i = 0; i < l; ++i) {
      const double* w = model.wc.row(i).data();
      double z = model.bc[i];
      for (std::size_t j : nz) z += w[j] * e[j];
      out(r, i) = sigmoid(z);
    }
  }
  return out;
}

namespace {

constexpr const char* kModelMagic = "dylink2vec-model v1";

void write_values(std::ostream& out, std::span<const double> v) {
  char buf[40];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    if (i > 0) out << ' ';
    out << buf;
  }
  out << '\n';
}

void read_values(std::istream& in, std::span<double> v, const char* what) {
  std::string tok;
  for (double& x : v) {
    if (!(in >> tok)) throw std::runtime_error(std::string("model file: truncated ") + what);
    std::size_t used = 0;
    x = std::stod(tok, &used);
    if (used != tok.size()) throw std::runtime_error("model file: bad number '" + tok + "'");
  }
}

}  // namespace

void write_model(std::ostream& out, const EmbeddingModel& model) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", model.lambda);
  out << kModelMagic << '\n'
      << model.input_length() << ' ' << model.code_length() << ' ' << buf << '\n';
  for (std::size_t i = 0; i < model.wc.rows(); ++i) write_values(out, model.wc.row(i));
  write_values(out, model.bc);
  for (std::size_t o = 0; o < model.wr.rows(); ++o) write_values(out, model.wr.row(o));
  write_values(out, model.br);
}

EmbeddingModel read_model(std::istream& in) {
  std::string magic;
  std::getline(in, magic);
  if (magic != kModelMagic) {
    throw std::runtime_error("model file: expected header '" + std::string(kModelMagic) + "'");
  }
  std::size_t k = 0, l = 0;
  std::string lambda_tok;
  if (!(in >> k >> l >> lambda_tok)) throw std::runtime_error("model file: bad `k l lambda` line");
  EmbeddingModel m = make_model(k, l, std::stod(lambda_tok));
  read_values(in, m.wc.data(), "Wc");
  read_values(in, m.bc, "bc");
  read_values(in, m.wr.data(), "Wr");
  read_values(in, m.br, "br");
  std::string extra;
  if (in >> extra) throw std::runtime_error("model file: trailing data");
  return m;
}

}  // namespace dylink2vec
