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

#include "dylink2vec/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dylink2vec/pipeline.h"

namespace dylink2vec {

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::int64_t seed = -1;
  std::string out;
  bool deterministic = false;
  std::string methods;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto b = item.find_last_not_of(" \t");
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

Config load_config(const CommonFlags& f) {
  Config c(experiment_schema());
  if (!f.config_path.empty()) c.load_file(f.config_path);
  for (const auto& o : f.overrides) c.set_override(o);
  if (f.seed >= 0) c.set("run.seed", std::to_string(f.seed));
  if (!f.out.empty()) c.set("run.out", f.out);
  if (f.deterministic) c.set("run.deterministic", "true");
  if (!f.methods.empty()) c.set("run.methods", f.methods);
  return c;
}

DynamicNetwork load_network(const Config& c, std::vector<std::string>* keys = nullptr) {
  if (c.get_bool("data.synth")) return synth_generate(synth_from(c));
  const std::string network = c.get_string("data.network");
  if (!network.empty()) return read_snapshots_file(network);
  const std::string edges = c.get_string("data.edges");
  if (!edges.empty()) {
    IngestSpec spec;
    spec.window_length = c.get_double("data.window_length");
    spec.min_active_snapshots = static_cast<int>(c.get_int("data.min_active"));
    spec.min_degree = static_cast<int>(c.get_int("data.min_degree"));
    const auto records = read_edge_list_file(edges);
    return ingest(records, spec, keys);
  }
  throw ConfigError("no input network: set data.network, data.edges or data.synth = true");
}

fs::path output_dir(const Config& c) {
  fs::path dir = c.get_string("run.out");
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_scores_csv(const fs::path& p, const RankedScores& scores, bool labeled) {
  auto out = open_out(p);
  out << (labeled ? "u,v,score,label\n" : "u,v,score\n");
  for (const auto& s : scores) {
    out << s.pair.u << ',' << s.pair.v << ',' << fmt17(s.score);
    if (labeled) out << ',' << s.label;
    out << '\n';
  }
}

void write_loss_trace(const fs::path& p, const std::vector<double>& trace) {
  auto out = open_out(p);
  out << "iteration,J\n";
  for (std::size_t i = 0; i < trace.size(); ++i) out << i << ',' << fmt17(trace[i]) << '\n';
}

void write_sweep(const fs::path& p, const std::string& column, const std::vector<SweepRow>& rows) {
  auto out = open_out(p);
  out << column << ",train_from,train_to,prauc,ndcg\n";
  for (const auto& r : rows) {
    out << fmt17(r.setting) << ',' << r.train_window.from << ',' << r.train_window.to << ','
        << fmt17(r.prauc) << ',' << fmt17(r.ndcg) << '\n';
  }
}

void write_pipeline_artifacts(const fs::path& dir, const PipelineResult& r,
                              const ExperimentConfig& cfg) {
  write_loss_trace(dir / "loss_trace.csv", r.embedding.loss_trace);
  {
    auto out = open_out(dir / "model.txt");
    write_model(out, r.embedding.model);
  }
  auto out = open_out(dir / "classifier.txt");
  if (cfg.classifier == ClassifierKind::kAdaBoost) {
    write_ensemble(out, r.ensemble);
  } else {
    out << "dylink2vec-logistic v1 " << r.logistic.weights.size() << '\n' << fmt17(r.logistic.bias);
    for (double w : r.logistic.weights) out << ' ' << fmt17(w);
    out << '\n';
  }
}

std::pair<DynamicNetwork, Snapshot> split_target(const DynamicNetwork& full) {
  const int t = full.num_snapshots();
  require(t >= 3, "evaluation needs at least 3 snapshots (history of 2 plus a target)");
  return {full.prefix(t - 1), full.snapshot(t)};
}

int cmd_ingest(const CommonFlags& f) {
  const Config c = load_config(f);
  std::vector<std::string> keys;
  const DynamicNetwork net = load_network(c, &keys);
  const fs::path dir = output_dir(c);
  write_snapshots_file((dir / "network.txt").string(), net);
  if (!keys.empty()) {
    auto out = open_out(dir / "vertex_keys.txt");
    for (std::size_t i = 0; i < keys.size(); ++i) out << i << '\t' << keys[i] << '\n';
  }
  std::cerr << "network: n=" << net.num_vertices() << " t=" << net.num_snapshots() << '\n';
  return 0;
}

int cmd_synth(const CommonFlags& f) {
  const Config c = load_config(f);
  const DynamicNetwork net = synth_generate(synth_from(c));
  const fs::path dir = output_dir(c);
  write_snapshots_file((dir / "network.txt").string(), net);
  std::cerr << "network: n=" << net.num_vertices() << " t=" << net.num_snapshots() << '\n';
  return 0;
}

int cmd_run(const CommonFlags& f) {
  const Config c = load_config(f);
  const auto methods = split_list(c.get_string("run.methods"));
  if (methods.size() != 1) throw ConfigError("run takes exactly one method; use compare for several");
  const ExperimentConfig cfg = experiment_from(c);
  const auto [history, target] = split_target(load_network(c));
  const fs::path dir = output_dir(c);
  RankedScores scores;
  if (methods[0] == "dylink2vec") {
    const auto r = run_dylink2vec(history, cfg, &target);
    write_pipeline_artifacts(dir, r, cfg);
    scores = r.scores;
  } else {
    scores = run_baseline(history, methods[0], cfg, &target);
  }
  write_scores_csv(dir / "scores.csv", scores, true);
  const auto report = evaluate(methods[0], scores, cfg.ndcg_k);
  auto out = open_out(dir / "metrics.json");
  out << reports_to_json({report});
  std::cout << reports_to_json({report});
  return 0;
}

int cmd_compare(const CommonFlags& f) {
  const Config c = load_config(f);
  const ExperimentConfig cfg = experiment_from(c);
  const auto methods = split_list(c.get_string("run.methods"));
  if (methods.empty()) throw ConfigError("run.methods is empty");
  const auto reports = compare(load_network(c), cfg, methods);
  const fs::path dir = output_dir(c);
  auto out = open_out(dir / "metrics.json");
  out << reports_to_json(reports);
  std::cout << reports_to_json(reports);
  return 0;
}

int cmd_window_sweep(const CommonFlags& f) {
  const Config c = load_config(f);
  const ExperimentConfig cfg = experiment_from(c);
  const DynamicNetwork net = load_network(c);
  std::vector<int> sizes;
  for (const auto& s : split_list(c.get_string("pipeline.window_sizes"))) sizes.push_back(std::stoi(s));
  if (sizes.empty()) {
    for (int s = 1; s <= net.num_snapshots() - 2; ++s) sizes.push_back(s);
  }
  const auto rows = window_sweep(net, cfg, sizes);
  write_sweep(output_dir(c) / "window_sweep.csv", "window", rows);
  for (const auto& r : rows) std::cout << r.setting << ' ' << r.prauc << ' ' << r.ndcg << '\n';
  return 0;
}

int cmd_imbalance_sweep(const CommonFlags& f) {
  const Config c = load_config(f);
  const ExperimentConfig cfg = experiment_from(c);
  std::vector<double> ratios;
  for (const auto& s : split_list(c.get_string("pipeline.ratios"))) ratios.push_back(std::stod(s));
  const auto rows = imbalance_sweep(load_network(c), cfg, ratios);
  write_sweep(output_dir(c) / "imbalance_sweep.csv", "ratio", rows);
  for (const auto& r : rows) std::cout << r.setting << ' ' << r.prauc << ' ' << r.ndcg << '\n';
  return 0;
}

int cmd_embed(const CommonFlags& f) {
  const Config c = load_config(f);
  ExperimentConfig cfg = experiment_from(c);
  const auto [history, target] = split_target(load_network(c));
  (void)target;
  const int t = history.num_snapshots();
  const auto pairs = training_pairs(history, cfg);
  std::vector<NodePair> ids;
  for (const auto& p : pairs) ids.push_back(p.pair);
  const Window w{cfg.train_from, t - 1};
  const Matrix features = build_dataset(history, w, ids);
  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  if (cfg.deterministic) tc.threads = 1;
  const auto trained = train(features, std::min(cfg.code_length, features.cols() - 1), cfg.lambda, tc);
  const fs::path dir = output_dir(c);
  {
    auto out = open_out(dir / "embeddings.txt");
    write_dataset(out, embed(trained.model, features));
  }
  {
    auto out = open_out(dir / "embedding_pairs.csv");
    out << "u,v,label\n";
    for (const auto& p : pairs) out << p.pair.u << ',' << p.pair.v << ',' << p.label << '\n';
  }
  {
    auto out = open_out(dir / "model.txt");
    write_model(out, trained.model);
  }
  write_loss_trace(dir / "loss_trace.csv", trained.loss_trace);
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"dylink2vec: node-pair embedding and link forecasting on dynamic networks"};
  app.require_subcommand(1);
  app.footer("Configuration keys (set in --config or with --set section.key=value):\n" +
             Config(experiment_schema()).describe());

  CommonFlags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "configuration file");
    sub->add_option("--set", flags.overrides, "override a config key: section.key=value");
    sub->add_option("--seed", flags.seed, "seed (run.seed)");
    sub->add_option("--out", flags.out, "output directory (run.out)");
    sub->add_flag("--deterministic", flags.deterministic, "single-threaded, bitwise reproducible");
    sub->add_option("--method", flags.methods, "method name(s), comma separated (run.methods)");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const CommonFlags&);
  };
  const Command commands[] = {
      {"ingest", "edge list -> canonical snapshot file", cmd_ingest},
      {"synth", "generate a synthetic dynamic network", cmd_synth},
      {"run", "run one method and write metrics.json, scores.csv", cmd_run},
      {"compare", "evaluate several methods into one metrics.json", cmd_compare},
      {"window-sweep", "vary the training window length", cmd_window_sweep},
      {"imbalance-sweep", "vary the training negative:positive ratio", cmd_imbalance_sweep},
      {"embed", "train the coding function and dump embeddings", cmd_embed},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common(sub);
    subs.emplace_back(sub, &cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) return cmd->fn(flags);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace dylink2vec
