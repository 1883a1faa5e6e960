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

#include "dylink2vec/pipeline.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace dylink2vec {

namespace {

// Rows of the prediction set embedded at a time.
constexpr std::size_t kPredictChunk = 4096;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RankedScores attach(const std::vector<NodePair>& pairs, const std::vector<double>& scores,
                    const Snapshot* target) {
  RankedScores out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out[i].pair = pairs[i];
    out[i].score = scores[i];
    out[i].label = (target != nullptr && target->has_edge(pairs[i].u, pairs[i].v)) ? 1 : 0;
  }
  return out;
}

void check_target(const DynamicNetwork& history, const Snapshot* target) {
  if (target != nullptr) {
    require(target->num_vertices() == history.num_vertices(),
            "target snapshot has a different vertex count");
  }
}

void check_history(const DynamicNetwork& history, const ExperimentConfig& cfg) {
  const int t = history.num_snapshots();
  require(t >= 2, "need at least 2 history snapshots (train window, label snapshot), got " +
                      std::to_string(t));
  require(cfg.train_from >= 1 && cfg.train_from <= t - 1,
          "train_from must lie in [1," + std::to_string(t - 1) + "]");
}

std::vector<double> classify_scores(const PipelineResult& r, const ExperimentConfig& cfg,
                                    const Matrix& codes) {
  return cfg.classifier == ClassifierKind::kAdaBoost ? score(r.ensemble, codes)
                                                     : score(r.logistic, codes);
}

LabeledDataset labeled(Matrix features, const std::vector<LabeledPair>& pairs) {
  LabeledDataset d;
  d.features = std::move(features);
  for (const auto& p : pairs) {
    d.labels.push_back(p.label);
    d.pair_ids.push_back(p.pair);
  }
  return d;
}

std::vector<NodePair> pairs_of(const std::vector<LabeledPair>& pairs) {
  std::vector<NodePair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.pair);
  return out;
}

SimilarityMetric ts_metric(const std::string& method) {
  if (method == "ts-cn-adj") return SimilarityMetric::kCN;
  if (method == "ts-aa-adj") return SimilarityMetric::kAA;
  if (method == "ts-j-adj") return SimilarityMetric::kJ;
  return SimilarityMetric::kPA;
}

}  // namespace

std::vector<OptionSpec> experiment_schema() {
  return {
      {"data.network", "", "canonical snapshot file (`n t` header, `i u v` lines)"},
      {"data.edges", "", "raw edge list (`u<TAB>v<TAB>time`) to ingest instead"},
      {"data.window_length", "1", "raw time units per snapshot when ingesting"},
      {"data.min_active", "0", "drop vertices active in fewer snapshots"},
      {"data.min_degree", "0", "drop vertices with lower collapsed degree"},
      {"data.synth", "false", "generate the network from the [synth] section"},
      {"synth.n", "300", "vertices"},
      {"synth.t", "8", "snapshots"},
      {"synth.communities", "10", "communities (vertex v joins v % communities)"},
      {"synth.p_in", "0.01", "per-snapshot link probability inside a community"},
      {"synth.p_out", "0.0005", "per-snapshot link probability across communities"},
      {"synth.boost", "0.6", "recurrence boost for recently linked pairs"},
      {"synth.horizon", "6", "snapshots over which the boost decays"},
      {"synth.seed", "1", "generator seed"},
      {"embedding.l", "100", "code length (clamped to k-1)"},
      {"embedding.lambda", "0.1", "weight regularization"},
      {"embedding.sigma", "1.0", "gradient descent learning rate"},
      {"embedding.step_policy", "backtrack", "backtrack | fixed"},
      {"embedding.sigma_growth", "1.5", "backtrack: sigma multiplier after an accepted step"},
      {"embedding.max_iters", "100", "gradient descent iterations"},
      {"embedding.tol", "1e-6", "stop when relative loss change falls below"},
      {"embedding.init_scale", "0", "weight init half-range; 0 = sqrt(6/(k+l))"},
      {"embedding.threads", "1", "gradient accumulation threads"},
      {"classifier.type", "adaboost", "adaboost | logistic"},
      {"classifier.rounds", "100", "AdaBoost rounds"},
      {"classifier.logistic_steps", "500", "logistic regression steps"},
      {"classifier.logistic_rate", "0.5", "logistic regression learning rate"},
      {"sampler.ratio", "1", "training negatives per positive"},
      {"pipeline.train_from", "1", "first snapshot of the training window"},
      {"pipeline.predict_all_max_n", "2000", "score all pairs up to this many vertices"},
      {"pipeline.predict_sample", "20000", "sampled prediction pairs above that size"},
      {"pipeline.baseline_from", "0", "first snapshot of baseline windows; 0 = train_from+1"},
      {"pipeline.katz_beta", "0.005", "Katz damping"},
      {"pipeline.katz_max_len", "5", "Katz path length cutoff"},
      {"pipeline.ndcg_k", "50", "NDCG cutoff"},
      {"pipeline.ar_order", "2", "time-series AR order"},
      {"pipeline.window_sizes", "", "comma list for window-sweep; empty = all"},
      {"pipeline.ratios", "1,2,5,10", "comma list for imbalance-sweep"},
      {"run.seed", "1", "seed for initialization and sampling"},
      {"run.methods", "dylink2vec", "comma list of methods"},
      {"run.out", "out", "output directory"},
      {"run.deterministic", "false", "force single-threaded execution"},
  };
}

ExperimentConfig experiment_from(const Config& c) {
  ExperimentConfig e;
  e.code_length = static_cast<std::size_t>(c.get_int("embedding.l"));
  e.lambda = c.get_double("embedding.lambda");
  e.train.sigma = c.get_double("embedding.sigma");
  const std::string policy = c.get_string("embedding.step_policy");
  if (policy == "backtrack") {
    e.train.step_policy = StepPolicy::kBacktrack;
  } else if (policy == "fixed") {
    e.train.step_policy = StepPolicy::kFixed;
  } else {
    throw ConfigError("config key 'embedding.step_policy': expected backtrack or fixed");
  }
  e.train.sigma_growth = c.get_double("embedding.sigma_growth");
  e.train.max_iters = static_cast<int>(c.get_int("embedding.max_iters"));
  e.train.tol = c.get_double("embedding.tol");
  e.train.init_scale = c.get_double("embedding.init_scale");
  e.train.threads = static_cast<int>(c.get_int("embedding.threads"));
  const std::string kind = c.get_string("classifier.type");
  if (kind == "adaboost") {
    e.classifier = ClassifierKind::kAdaBoost;
  } else if (kind == "logistic") {
    e.classifier = ClassifierKind::kLogistic;
  } else {
    throw ConfigError("config key 'classifier.type': expected adaboost or logistic");
  }
  e.boost_rounds = static_cast<int>(c.get_int("classifier.rounds"));
  e.logistic_steps = static_cast<int>(c.get_int("classifier.logistic_steps"));
  e.logistic_rate = c.get_double("classifier.logistic_rate");
  e.sampler_ratio = c.get_double("sampler.ratio");
  e.seed = static_cast<std::uint64_t>(c.get_int("run.seed"));
  e.train_from = static_cast<int>(c.get_int("pipeline.train_from"));
  e.predict_all_max_n = static_cast<int>(c.get_int("pipeline.predict_all_max_n"));
  e.predict_sample = static_cast<std::size_t>(c.get_int("pipeline.predict_sample"));
  e.baseline_from = static_cast<int>(c.get_int("pipeline.baseline_from"));
  e.katz.beta = c.get_double("pipeline.katz_beta");
  e.katz.max_len = static_cast<int>(c.get_int("pipeline.katz_max_len"));
  e.ndcg_k = static_cast<std::size_t>(c.get_int("pipeline.ndcg_k"));
  e.ar_order = static_cast<int>(c.get_int("pipeline.ar_order"));
  e.deterministic = c.get_bool("run.deterministic");
  return e;
}

SynthSpec synth_from(const Config& c) {
  SynthSpec s;
  s.n = static_cast<int>(c.get_int("synth.n"));
  s.t = static_cast<int>(c.get_int("synth.t"));
  s.communities = static_cast<int>(c.get_int("synth.communities"));
  s.p_in = c.get_double("synth.p_in");
  s.p_out = c.get_double("synth.p_out");
  s.recurrence_boost = c.get_double("synth.boost");
  s.decay_horizon = static_cast<int>(c.get_int("synth.horizon"));
  s.seed = static_cast<std::uint64_t>(c.get_int("synth.seed"));
  return s;
}

std::vector<NodePair> prediction_pairs(int n, const ExperimentConfig& cfg,
                                       const Snapshot* target) {
  require(n >= 2, "prediction set needs at least 2 vertices");
  std::vector<NodePair> out;
  if (n <= cfg.predict_all_max_n) {
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) out.push_back({u, v});
    }
    return out;
  }
  std::set<NodePair> chosen;
  if (target != nullptr) chosen.insert(target->edges().begin(), target->edges().end());
  const auto all = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const auto wanted = std::min<std::uint64_t>(all, chosen.size() + cfg.predict_sample);
  std::mt19937_64 rng(derive_seed(cfg.seed, 2));
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (chosen.size() < wanted) {
    const int a = pick(rng);
    const int b = pick(rng);
    if (a != b) chosen.insert(canonical_pair(a, b));
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<LabeledPair> training_pairs(const DynamicNetwork& history, const ExperimentConfig& cfg) {
  check_history(history, cfg);
  const int t = history.num_snapshots();
  require(history.snapshot(t).num_edges() > 0,
          "label snapshot " + std::to_string(t) + " has no edges");
  return sample_training_pairs(history, t, {cfg.sampler_ratio, derive_seed(cfg.seed, 1)});
}

PipelineResult run_dylink2vec(const DynamicNetwork& history, const ExperimentConfig& cfg,
                              const Snapshot* target) {
  return run_dylink2vec(history, cfg, training_pairs(history, cfg), target);
}

PipelineResult run_dylink2vec(const DynamicNetwork& history, const ExperimentConfig& cfg,
                              std::vector<LabeledPair> training_pairs, const Snapshot* target) {
  check_history(history, cfg);
  check_target(history, target);
  const int t = history.num_snapshots();

  PipelineResult r;
  r.train_window = {cfg.train_from, t - 1};
  r.label_snapshot = t;
  r.predict_window = {cfg.train_from + 1, t};
  r.training_pairs = std::move(training_pairs);

  // Learn the coding function from the training features only.
  const Matrix train_features = build_dataset(history, r.train_window, pairs_of(r.training_pairs));
  const std::size_t k = train_features.cols();
  const std::size_t l = std::min(cfg.code_length, k - 1);
  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  if (cfg.deterministic) tc.threads = 1;
  r.embedding = train(train_features, l, cfg.lambda, tc);

  const LabeledDataset codes = labeled(embed(r.embedding.model, train_features), r.training_pairs);
  if (cfg.classifier == ClassifierKind::kAdaBoost) {
    r.ensemble = train_adaboost(codes, cfg.boost_rounds, &r.boost);
  } else {
    r.logistic = train_logistic(codes, cfg.logistic_steps, cfg.logistic_rate);
  }

  const auto candidates = prediction_pairs(history.num_vertices(), cfg, target);
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (std::size_t begin = 0; begin < candidates.size(); begin += kPredictChunk) {
    const std::size_t end = std::min(candidates.size(), begin + kPredictChunk);
    std::span<const NodePair> chunk(candidates.data() + begin, end - begin);
    const Matrix codes_chunk = embed(r.embedding.model, build_dataset(history, r.predict_window, chunk));
    auto s = classify_scores(r, cfg, codes_chunk);
    scores.insert(scores.end(), s.begin(), s.end());
  }
  r.scores = attach(candidates, scores, target);
  r.labeled = target != nullptr;
  return r;
}

const std::vector<std::string>& baseline_methods() {
  static const std::vector<std::string> methods = {
      "cn", "aa", "jaccard", "katz", "jack", "ts-cn-adj", "ts-aa-adj", "ts-j-adj", "ts-pa-adj"};
  return methods;
}

RankedScores run_baseline(const DynamicNetwork& history, const std::string& method,
                          const ExperimentConfig& cfg, const Snapshot* target) {
  const auto& known = baseline_methods();
  if (std::find(known.begin(), known.end(), method) == known.end()) {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  check_history(history, cfg);
  check_target(history, target);
  const int t = history.num_snapshots();
  const int from = cfg.baseline_from > 0 ? cfg.baseline_from : cfg.train_from + 1;
  require(from >= 1 && from <= t, "baseline_from must lie in [1," + std::to_string(t) + "]");
  const auto candidates = prediction_pairs(history.num_vertices(), cfg, target);
  std::vector<double> scores(candidates.size());

  if (method == "cn" || method == "aa" || method == "jaccard" || method == "katz") {
    const Snapshot g = collapse(history, from, t);
    const auto topo = topo_scores(g, candidates, cfg.katz);
    for (std::size_t i = 0; i < topo.size(); ++i) {
      scores[i] = method == "cn"  ? topo[i].cn
                  : method == "aa" ? topo[i].aa
                  : method == "jaccard" ? topo[i].j
                                        : topo[i].katz;
    }
  } else if (method == "jack") {
    require(from >= 2, "jack needs a training window one snapshot before baseline_from");
    const auto pairs = training_pairs(history, cfg);
    const Snapshot train_g = collapse(history, from - 1, t - 1);
    const auto data = labeled(jack_features(train_g, pairs_of(pairs), cfg.katz), pairs);
    const auto model = train_adaboost(data, cfg.boost_rounds);
    scores = score(model, jack_features(collapse(history, from, t), candidates, cfg.katz));
  } else {
    require(t - from + 1 >= 2, "time-series baselines need a window of at least 2 snapshots");
    const auto series = similarity_series(history, ts_metric(method), {from, t}, candidates);
    for (std::size_t i = 0; i < series.size(); ++i) scores[i] = forecast_score(series[i], cfg.ar_order);
  }
  return attach(candidates, scores, target);
}

std::vector<MetricReport> compare(const DynamicNetwork& full, const ExperimentConfig& cfg,
                                  const std::vector<std::string>& methods) {
  const int t = full.num_snapshots();
  require(t >= 3, "evaluation needs at least 3 snapshots (history of 2 plus a target)");
  const DynamicNetwork history = full.prefix(t - 1);
  const Snapshot& target = full.snapshot(t);
  std::vector<MetricReport> out;
  for (const auto& m : methods) {
    RankedScores s = m == "dylink2vec" ? run_dylink2vec(history, cfg, &target).scores
                                       : run_baseline(history, m, cfg, &target);
    out.push_back(evaluate(m, s, cfg.ndcg_k));
  }
  return out;
}

std::vector<SweepRow> window_sweep(const DynamicNetwork& full, const ExperimentConfig& cfg,
                                   const std::vector<int>& sizes) {
  const int t = full.num_snapshots();
  const int max_size = t - 2;
  require(max_size >= 1, "window sweep needs at least 3 snapshots");
  for (int s : sizes) {
    if (s < 1 || s > max_size) {
      throw std::invalid_argument("window size " + std::to_string(s) +
                                  " unavailable; sizes must lie in [1," +
                                  std::to_string(max_size) + "]");
    }
  }
  const DynamicNetwork history = full.prefix(t - 1);
  const Snapshot& target = full.snapshot(t);
  std::vector<SweepRow> rows;
  for (int s : sizes) {
    ExperimentConfig c = cfg;
    c.train_from = (t - 1) - s;
    const auto r = run_dylink2vec(history, c, &target);
    rows.push_back({static_cast<double>(s), r.train_window, prauc(r.scores),
                    ndcg_at_k(r.scores, cfg.ndcg_k)});
  }
  return rows;
}

std::vector<SweepRow> imbalance_sweep(const DynamicNetwork& full, const ExperimentConfig& cfg,
                                      const std::vector<double>& ratios) {
  const int t = full.num_snapshots();
  require(t >= 3, "imbalance sweep needs at least 3 snapshots");
  const DynamicNetwork history = full.prefix(t - 1);
  const Snapshot& target = full.snapshot(t);
  std::vector<SweepRow> rows;
  for (double ratio : ratios) {
    ExperimentConfig c = cfg;
    c.sampler_ratio = ratio;
    const auto r = run_dylink2vec(history, c, &target);
    rows.push_back({ratio, r.train_window, prauc(r.scores), ndcg_at_k(r.scores, cfg.ndcg_k)});
  }
  return rows;
}

}  // namespace dylink2vec
