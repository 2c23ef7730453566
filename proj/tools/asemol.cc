//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

// asemol command-line tool: parse, decompose, split, train, eval, attribute
// and route-export.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "asemol/attribution.h"
#include "asemol/batch.h"
#include "asemol/brics.h"
#include "asemol/checkpoint.h"
#include "asemol/config.h"
#include "asemol/dataset.h"
#include "asemol/error.h"
#include "asemol/features.h"
#include "asemol/log.h"
#include "asemol/metrics.h"
#include "asemol/model.h"
#include "asemol/report.h"
#include "asemol/scaffold.h"
#include "asemol/smiles.h"
#include "asemol/train.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace asemol {
namespace {

// Hyper-parameter flags. Each one overrides the config file when given.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> encoder;
  std::optional<std::size_t> experts;
  std::optional<double> psi, alpha, beta, lr, weight_decay;
  std::optional<std::size_t> batch_size, epochs_rec, epochs_total;
  std::optional<std::string> split, optimizer;
};

void add_override_flags(CLI::App *cmd, Overrides &o) {
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--encoder", o.encoder, "Graph encoder")->check(CLI::IsMember({"gcn", "gin"}));
  cmd->add_option("--experts", o.experts, "Experts per bank (K)");
  cmd->add_option("--psi", o.psi, "Motif fraction");
  cmd->add_option("--alpha", o.alpha, "Margin-loss weight");
  cmd->add_option("--beta", o.beta, "Importance-loss weight");
  cmd->add_option("--batch-size", o.batch_size, "Mini-batch size");
  cmd->add_option("--lr", o.lr, "Learning rate");
  cmd->add_option("--weight-decay", o.weight_decay, "Decoupled weight decay");
  cmd->add_option("--split", o.split, "Split strategy")
      ->check(CLI::IsMember({"scaffold", "random"}));
  cmd->add_option("--optimizer", o.optimizer, "Optimizer")->check(CLI::IsMember({"sgd", "adamw"}));
  cmd->add_option("--epochs-rec", o.epochs_rec, "Recognition-phase epoch cap");
  cmd->add_option("--epochs-total", o.epochs_total, "Expert-phase epoch cap");
}

TrainConfig resolve_config(const std::string &config_path, const Overrides &o) {
  TrainConfig cfg = config_path.empty() ? TrainConfig{} : load_config(config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.encoder) cfg.encoder.variant = parse_encoder_variant(*o.encoder);
  if (o.experts) cfg.num_experts = *o.experts;
  if (o.psi) cfg.psi = *o.psi;
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.beta) cfg.beta = *o.beta;
  if (o.batch_size) cfg.batch_size = *o.batch_size;
  if (o.lr) cfg.learning_rate = *o.lr;
  if (o.weight_decay) cfg.weight_decay = *o.weight_decay;
  if (o.split) cfg.split = parse_split_kind(*o.split);
  if (o.optimizer) cfg.optimizer = parse_optimizer_kind(*o.optimizer);
  if (o.epochs_rec) cfg.epochs_rec = *o.epochs_rec;
  if (o.epochs_total) cfg.epochs_total = *o.epochs_total;
  cfg.validate();
  return cfg;
}

// SMILES strings from positional arguments or the smiles column of a file.
// A file whose header has no smiles column is read as one SMILES per line.
std::vector<std::string> read_smiles(const std::vector<std::string> &positional,
                                     const std::string &data) {
  std::vector<std::string> out = positional;
  if (data.empty()) return out;
  std::ifstream in(data);
  if (!in) throw FormatError("cannot open '" + data + "'");
  std::string line;
  if (!std::getline(in, line)) return out;
  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  const auto header = split_delimited(line, delim);
  std::optional<std::size_t> col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string h = header[c];
    std::transform(h.begin(), h.end(), h.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (h == "smiles") col = c;
  }
  if (!col && !line.empty()) out.push_back(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!col) {
      out.push_back(line);
      continue;
    }
    const auto cells = split_delimited(line, delim);
    if (*col < cells.size()) out.push_back(cells[*col]);
  }
  return out;
}

json fragments_json(const std::vector<Fragment> &fragments) {
  json atoms = json::array(), rules = json::array();
  for (const auto &f : fragments) {
    atoms.push_back(f.node_indices);
    rules.push_back(f.rule_ids);
  }
  return json{{"atoms", atoms}, {"rules", rules}};
}

json nullable(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

int cmd_parse(const std::vector<std::string> &smiles) {
  int bad = 0;
  for (const auto &s : smiles) {
    json j{{"smiles", s}};
    try {
      const MolecularGraph g = parse_smiles(s);
      j["canonical"] = canonical_smiles(g);
      j["atoms"] = g.num_atoms();
      j["bonds"] = g.num_bonds();
      j["rings"] = g.rings().size();
      j["aromatic_atoms"] = std::count_if(g.atoms().begin(), g.atoms().end(),
                                          [](const Atom &a) { return a.is_aromatic; });
      j["dropped_components"] = g.dropped_components;
      j["scaffold"] = murcko_scaffold(g);
      j["warnings"] = g.warnings;
    } catch (const ParseError &e) {
      j["error"] = e.what();
      j["offset"] = e.offset();
      ++bad;
    }
    std::cout << j.dump() << '\n';
  }
  return bad == 0 ? 0 : 1;
}

int cmd_decompose(const std::vector<std::string> &smiles) {
  int bad = 0;
  for (const auto &s : smiles) {
    json j{{"smiles", s}};
    try {
      const auto fragments = brics_decompose(parse_smiles(s));
      j["num_fragments"] = fragments.size();
      const json f = fragments_json(fragments);
      j["fragments"] = f["atoms"];
      j["rules"] = f["rules"];
    } catch (const ParseError &e) {
      j["error"] = e.what();
      ++bad;
    }
    std::cout << j.dump() << '\n';
  }
  return bad == 0 ? 0 : 1;
}

IngestOptions ingest_options(const TrainConfig &cfg) {
  IngestOptions o;
  o.task_columns = cfg.task_columns;
  return o;
}

void write_rows(const fs::path &path, const Dataset &data, const std::vector<std::size_t> &idx) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  for (std::size_t i : idx) out << data.records[i].source_row << '\n';
}

int cmd_split(const std::string &config, const Overrides &o, const std::string &data,
              const std::string &out_dir) {
  const TrainConfig cfg = resolve_config(config, o);
  const Dataset ds = ingest(data, ingest_options(cfg));
  const SplitIndices split = make_split(ds, cfg);
  fs::create_directories(out_dir);
  write_rows(fs::path(out_dir) / "train.txt", ds, split.train);
  write_rows(fs::path(out_dir) / "valid.txt", ds, split.valid);
  write_rows(fs::path(out_dir) / "test.txt", ds, split.test);
  std::cout << json{{"split", to_string(cfg.split)},
                    {"train", split.train.size()},
                    {"valid", split.valid.size()},
                    {"test", split.test.size()},
                    {"fallback", split.fallback}}
                   .dump()
            << '\n';
  return 0;
}

int cmd_train(const std::string &config, const Overrides &o, const std::string &data,
              const std::string &out_dir) {
  const TrainConfig cfg = resolve_config(config, o);
  const Dataset ds = ingest(data, ingest_options(cfg));
  log_info("train: " + std::to_string(ds.size()) + " molecules, "
           + std::to_string(ds.num_tasks()) + " tasks");
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  {
    std::ofstream c(dir / "config.json");
    c << config_to_json(cfg) << '\n';
  }
  ReportWriter reports(dir / "reports.jsonl");
  const SplitIndices split = make_split(ds, cfg);
  const TrainResult result =
      train(ds, cfg, split, [&](const LossReport &r) { reports.write(report_to_json(r)); });
  const std::string summary = summary_to_json(result, cfg, ds.size());
  reports.write(summary);

  ModelMeta meta;
  meta.config = cfg;
  meta.task_names = ds.task_names;
  meta.phase = result.final_phase;
  for (std::size_t i = 0; i < ds.size(); ++i)
    meta.motifs.emplace(ds.records[i].smiles, result.motifs[i]);
  meta.shuffle_rng = result.shuffle_rng;
  meta.noise_rng = result.noise_rng;
  meta.optimizer_state = result.optimizer_state;
  save_checkpoint(dir / "model.ckpt", make_model_checkpoint(result.model, meta));
  std::cout << summary << '\n';
  return result.diverged ? 1 : 0;
}

// Motifs for every record. Stored assignments are looked up by SMILES when
// allowed; everything else is recognized without labels by the frozen
// recognition model, as for held-out molecules during training.
std::vector<MotifAssignment> motifs_for(const LoadedModel &m, const Dataset &ds,
                                        bool use_stored) {
  std::vector<MotifAssignment> out(ds.size());
  std::vector<std::size_t> missing;
  std::vector<const Record *> missing_recs;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto it = m.meta.motifs.find(ds.records[i].smiles);
    if (use_stored && it != m.meta.motifs.end()) {
      out[i] = it->second;
    } else {
      missing.push_back(i);
      missing_recs.push_back(&ds.records[i]);
    }
  }
  if (!missing.empty()) {
    const auto found = recognize_motifs(missing_recs, m.model.recognition_encoder(),
                                        m.model.recognition_head(), m.meta.config.psi, false,
                                        m.meta.config.batch_size);
    for (std::size_t k = 0; k < missing.size(); ++k) out[missing[k]] = found[k];
  }
  return out;
}

Dataset ingest_for(const LoadedModel &m, const std::string &data) {
  IngestOptions opts;
  opts.task_columns = m.meta.task_names;
  opts.require_label = false;
  return ingest(data, opts);
}

int cmd_eval(const std::string &checkpoint, const std::string &data) {
  const LoadedModel m = restore_model(load_checkpoint(checkpoint));
  const Dataset ds = ingest_for(m, data);
  // Stored training motifs were selected with the true labels, so scoring
  // them would leak labels into the predictions.
  const auto motifs = motifs_for(m, ds, false);
  std::vector<const Record *> recs;
  std::vector<const MotifAssignment *> mp;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    recs.push_back(&ds.records[i]);
    mp.push_back(&motifs[i]);
  }
  const auto logits = predict_logits(m.model, recs, mp, m.meta.config.batch_size);
  const AucResult auc = roc_auc(logits, stack_labels(recs), ds.num_tasks());
  json per_task = json::object();
  for (std::size_t t = 0; t < ds.num_tasks(); ++t)
    per_task[ds.task_names[t]] = nullable(auc.per_task[t]);
  std::cout << json{{"molecules", ds.size()},
                    {"dropped_invalid", ds.dropped_invalid},
                    {"per_task", per_task},
                    {"mean_auc", nullable(auc.mean)},
                    {"valid_tasks", auc.valid_tasks}}
                   .dump()
            << '\n';
  return 0;
}

int cmd_attribute(const std::string &checkpoint, const std::string &data) {
  const LoadedModel m = restore_model(load_checkpoint(checkpoint));
  const Dataset ds = ingest_for(m, data);
  const auto motifs = motifs_for(m, ds, true);
  std::vector<AttributionInput> inputs;
  for (const auto &r : ds.records) inputs.push_back({&r.graph, &r.fragments, r.labels});
  const auto scores =
      attribute(inputs, m.model.recognition_encoder(), m.model.recognition_head());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto &r = ds.records[i];
    json attribution = json::array();
    for (const auto &s : scores[i]) attribution.push_back(nullable(s.aggregate));
    std::cout << json{{"smiles", r.smiles},
                      {"fragments", fragments_json(r.fragments)["atoms"]},
                      {"attribution", attribution},
                      {"positive_nodes", motifs[i].positive_nodes},
                      {"negative_nodes", motifs[i].negative_nodes},
                      {"degenerate", motifs[i].degenerate}}
                     .dump()
              << '\n';
  }
  return 0;
}

std::vector<double> row(const Tensor &t, std::size_t i) {
  std::vector<double> out(t.cols());
  for (std::size_t j = 0; j < t.cols(); ++j) out[j] = t.at(i, j);
  return out;
}

int cmd_route_export(const std::string &checkpoint, const std::string &data, bool embeddings) {
  const LoadedModel m = restore_model(load_checkpoint(checkpoint));
  const Dataset ds = ingest_for(m, data);
  const auto motifs = motifs_for(m, ds, true);
  const std::size_t chunk = std::max<std::size_t>(1, m.meta.config.batch_size);
  for (std::size_t b = 0; b < ds.size(); b += chunk) {
    const std::size_t e = std::min(ds.size(), b + chunk);
    std::vector<const MolecularGraph *> graphs;
    std::vector<const MotifAssignment *> mp;
    for (std::size_t i = b; i < e; ++i) {
      graphs.push_back(&ds.records[i].graph);
      mp.push_back(&motifs[i]);
    }
    const ExpertOutput out = expert_forward(m.model, make_batch(graphs), mp, nullptr);
    for (std::size_t i = 0; i < e - b; ++i) {
      const auto rp = row(out.prediction.r_pos, i), rn = row(out.prediction.r_neg, i);
      json labels = json::array();
      for (auto y : ds.records[b + i].labels) labels.push_back(y < 0 ? json(nullptr) : json(y));
      json j{{"smiles", ds.records[b + i].smiles},
             {"labels", labels},
             {"r_pos", rp},
             {"r_neg", rn},
             {"expert_pos", std::max_element(rp.begin(), rp.end()) - rp.begin()},
             {"expert_neg", std::max_element(rn.begin(), rn.end()) - rn.begin()}};
      if (embeddings) j["h"] = row(out.h, i);
      std::cout << j.dump() << '\n';
    }
  }
  return 0;
}

}  // namespace
}  // namespace asemol

int main(int argc, char **argv) {
  using namespace asemol;
  CLI::App app{"asemol: substructure-aware mixture of experts for molecular property prediction"};
  app.require_subcommand(1);
  app.footer("Log verbosity: set ASEMOL_LOG_LEVEL to trace, debug, info, warn, error or off.");

  std::vector<std::string> smiles;
  std::string data, config, out_dir, checkpoint;
  bool embeddings = false;
  Overrides o;

  auto *parse = app.add_subcommand("parse", "Parse SMILES and print graph statistics");
  auto *decompose = app.add_subcommand("decompose", "List BRICS fragments per molecule");
  for (auto *cmd : {parse, decompose}) {
    cmd->add_option("smiles", smiles, "SMILES strings");
    cmd->add_option("--data", data, "File with a smiles column, or one SMILES per line");
  }

  auto *split = app.add_subcommand("split", "Write train/valid/test row lists");
  auto *train_cmd = app.add_subcommand("train", "Train a model and write checkpoint and reports");
  for (auto *cmd : {split, train_cmd}) {
    cmd->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--data", data, "Dataset file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "Output directory")->required();
    add_override_flags(cmd, o);
  }

  auto *eval = app.add_subcommand("eval", "Print per-task and mean ROC-AUC");
  auto *attr = app.add_subcommand("attribute", "Export fragment attributions and motifs");
  auto *route = app.add_subcommand("route-export", "Export router assignments");
  for (auto *cmd : {eval, attr, route}) {
    cmd->add_option("--checkpoint", checkpoint, "Model checkpoint")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--data", data, "Dataset file")->required()->check(CLI::ExistingFile);
  }
  route->add_flag("--embeddings", embeddings, "Include graph embeddings");

  CLI11_PARSE(app, argc, argv);
  configure_logging();
  try {
    if (*parse) return cmd_parse(read_smiles(smiles, data));
    if (*decompose) return cmd_decompose(read_smiles(smiles, data));
    if (*split) return cmd_split(config, o, data, out_dir);
    if (*train_cmd) return cmd_train(config, o, data, out_dir);
    if (*eval) return cmd_eval(checkpoint, data);
    if (*attr) return cmd_attribute(checkpoint, data);
    if (*route) return cmd_route_export(checkpoint, data, embeddings);
  } catch (const std::exception &e) {
    std::cerr << "asemol: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
