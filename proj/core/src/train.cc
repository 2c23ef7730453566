//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "asemol/error.h"
#include "asemol/log.h"

namespace asemol {

namespace {

std::vector<const Record *> select(const Dataset &ds, std::span<const std::size_t> idx) {
  std::vector<const Record *> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(&ds.records[i]);
  return out;
}

struct Batch {
  std::vector<const MolecularGraph *> graphs;
  std::vector<const MotifAssignment *> motifs;
  std::vector<std::int8_t> labels;
};

Batch gather(std::span<const Record *const> records, std::span<const MotifAssignment> motifs,
             std::span<const std::size_t> order, std::size_t begin, std::size_t end) {
  Batch b;
  for (std::size_t i = begin; i < end; ++i) {
    const Record *r = records[order[i]];
    b.graphs.push_back(&r->graph);
    b.motifs.push_back(&motifs[order[i]]);
    b.labels.insert(b.labels.end(), r->labels.begin(), r->labels.end());
  }
  return b;
}

bool has_observed(std::span<const std::int8_t> labels) {
  return std::any_of(labels.begin(), labels.end(), [](std::int8_t y) { return y >= 0; });
}

void check_finite(double value, const char *what) {
  if (!std::isfinite(value)) throw DivergenceError(std::string("non-finite ") + what);
}

std::optional<double> auc_or_empty(const AucResult &r) {
  if (std::isnan(r.mean)) return std::nullopt;
  return r.mean;
}

std::vector<std::size_t> shuffled(std::size_t n, Rng &rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::size_t count_changed(const std::vector<MotifAssignment> &a,
                          const std::vector<MotifAssignment> &b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] == b[i] ? 0 : 1;
  return n;
}

}  // namespace

std::vector<std::int8_t> stack_labels(std::span<const Record *const> records) {
  std::vector<std::int8_t> out;
  for (const Record *r : records) out.insert(out.end(), r->labels.begin(), r->labels.end());
  return out;
}

SplitIndices make_split(const Dataset &dataset, const TrainConfig &cfg) {
  if (cfg.split == SplitKind::kRandom)
    return random_split(dataset.size(), cfg.split_ratios, cfg.seed);
  std::vector<std::string> keys;
  for (const auto &r : dataset.records) keys.push_back(r.scaffold);
  return scaffold_split(keys, cfg.split_ratios, cfg.seed);
}

LossReport recognition_epoch(const Model &model, Optimizer &optimizer,
                             std::span<const Record *const> records,
                             std::span<const MotifAssignment> motifs,
                             const TrainConfig &cfg, Rng &shuffle) {
  const auto order = shuffled(records.size(), shuffle);
  double task_total = 0.0, margin_total = 0.0;
  std::size_t seen = 0;
  for (std::size_t b = 0; b < order.size(); b += cfg.batch_size) {
    const std::size_t e = std::min(order.size(), b + cfg.batch_size);
    const Batch batch = gather(records, motifs, order, b, e);
    if (!has_observed(batch.labels)) continue;
    const GraphBatch gb = make_batch(batch.graphs);
    const Encoding enc = model.encoder().encode(gb);
    const MotifEmbeddings me =
        motif_embeddings(enc.nodes, gb, batch.motifs, model.spec().encoder.readout);
    const Tensor l_task = task_loss(model.recognition_head().forward(enc.graphs), batch.labels);
    const Tensor l_margin = margin_loss(enc.graphs, me.h_pos, me.h_neg, cfg.margin);
    const Tensor l_rec = add(l_task, scale(l_margin, cfg.alpha));
    check_finite(l_rec.item(), "recognition loss");
    optimizer.zero_grad();
    l_rec.backward();
    optimizer.step();
    const double w = static_cast<double>(e - b);
    task_total += w * l_task.item();
    margin_total += w * l_margin.item();
    seen += e - b;
  }
  optimizer.zero_grad();
  LossReport r;
  r.phase = Phase::kRecognition;
  const double n = std::max<double>(1.0, static_cast<double>(seen));
  r.l_task = task_total / n;
  r.l_margin = margin_total / n;
  r.l_rec = r.l_task + cfg.alpha * *r.l_margin;
  return r;
}

LossReport expert_epoch(const Model &model, Optimizer &optimizer,
                        std::span<const Record *const> records,
                        std::span<const MotifAssignment> motifs,
                        const TrainConfig &cfg, Rng &shuffle, Rng &noise) {
  const auto order = shuffled(records.size(), shuffle);
  double task_total = 0.0, imp_total = 0.0;
  std::size_t seen = 0;
  for (std::size_t b = 0; b < order.size(); b += cfg.batch_size) {
    const std::size_t e = std::min(order.size(), b + cfg.batch_size);
    const Batch batch = gather(records, motifs, order, b, e);
    if (!has_observed(batch.labels)) continue;
    const GraphBatch gb = make_batch(batch.graphs);
    const ExpertOutput out = expert_forward(model, gb, batch.motifs, &noise);
    const Tensor l_task = task_loss(out.prediction.logits, batch.labels);
    const Tensor l_imp = importance_loss(out.prediction, cfg.gamma);
    const Tensor l_total = total_loss(l_task, l_imp, cfg.beta);
    check_finite(l_total.item(), "expert loss");
    optimizer.zero_grad();
    l_total.backward();
    optimizer.step();
    const double w = static_cast<double>(e - b);
    task_total += w * l_task.item();
    imp_total += w * l_imp.item();
    seen += e - b;
  }
  optimizer.zero_grad();
  LossReport r;
  r.phase = Phase::kExperts;
  const double n = std::max<double>(1.0, static_cast<double>(seen));
  r.l_task = task_total / n;
  r.l_imp = imp_total / n;
  r.l_total = r.l_task + cfg.beta * *r.l_imp;
  return r;
}

TrainResult train(const Dataset &dataset, const TrainConfig &cfg,
                  const SplitIndices &split, const ReportCallback &on_report) {
  cfg.validate();
  if (dataset.size() == 0) throw ContractError("train: empty dataset");
  if (split.train.empty()) throw ContractError("train: empty training split");

  TrainResult result{.model = Model(model_spec(cfg, dataset.num_tasks()), cfg.seed)};
  Model &model = result.model;
  Rng shuffle = make_rng(cfg.seed, SeedStream::kShuffle);
  Rng noise = make_rng(cfg.seed, SeedStream::kRoutingNoise);
  const std::size_t chunk = std::max<std::size_t>(cfg.batch_size, 1);

  const auto train_set = select(dataset, split.train);
  const auto valid_set = select(dataset, split.valid);
  const auto test_set = select(dataset, split.test);
  const auto valid_labels = stack_labels(valid_set);
  const auto test_labels = stack_labels(test_set);
  const std::size_t t_count = dataset.num_tasks();

  auto emit = [&](LossReport r) {
    result.reports.push_back(r);
    if (on_report) on_report(r);
  };
  auto evaluate = [&](std::span<const Record *const> set, const std::vector<std::int8_t> &labels,
                      std::span<const MotifAssignment *const> motifs) -> AucResult {
    if (set.empty()) return AucResult{std::nan(""), {}, 0};
    return roc_auc(predict_logits(model, set, motifs, chunk), labels, t_count);
  };

  // Phase 1: motif recognition.
  auto opt = make_optimizer(cfg, model.recognition_parameters());
  auto recognize_train = [&] {
    return recognize_motifs(train_set, model.encoder(), model.recognition_head(), cfg.psi,
                            true, chunk);
  };
  std::vector<MotifAssignment> train_motifs = recognize_train();
  std::size_t stable = 0;
  std::vector<std::vector<double>> last_good = model.snapshot();
  for (std::size_t epoch = 1; epoch <= cfg.epochs_rec; ++epoch) {
    LossReport r;
    try {
      r = recognition_epoch(model, *opt, train_set, train_motifs, cfg, shuffle);
    } catch (const DivergenceError &e) {
      model.restore(last_good);
      result.diverged = true;
      result.divergence_message = std::string(e.what()) + " in recognition epoch " + std::to_string(epoch);
      log_warn("train: " + result.divergence_message + "; restored last good weights");
      break;
    }
    last_good = model.snapshot();
    r.epoch = epoch;
    if (!valid_set.empty())
      r.auc_valid = auc_or_empty(roc_auc(
          recognition_logits(valid_set, model.encoder(), model.recognition_head(), chunk),
          valid_labels, t_count));
    auto next = recognize_train();
    const std::size_t changed = count_changed(train_motifs, next);
    r.motifs_changed = changed;
    train_motifs = std::move(next);
    result.recognition_epochs = epoch;
    emit(r);
    stable = changed == 0 ? stable + 1 : 0;
    if (stable >= cfg.patience) {
      result.recognition_early_stop = true;
      log_info("train: motifs unchanged for " + std::to_string(stable)
               + " epochs; recognition stops at epoch " + std::to_string(epoch));
      break;
    }
  }

  // Freeze motifs. Held-out molecules are recognized without their labels.
  model.freeze_recognition();
  result.motifs.assign(dataset.size(), MotifAssignment{});
  for (std::size_t i = 0; i < split.train.size(); ++i)
    result.motifs[split.train[i]] = train_motifs[i];
  {
    std::vector<std::size_t> rest(split.valid);
    rest.insert(rest.end(), split.test.begin(), split.test.end());
    const auto rest_set = select(dataset, rest);
    const auto rest_motifs = recognize_motifs(rest_set, model.recognition_encoder(),
                                              model.recognition_head(), cfg.psi, false, chunk);
    for (std::size_t i = 0; i < rest.size(); ++i) result.motifs[rest[i]] = rest_motifs[i];
  }
  auto motif_ptrs = [&](std::span<const std::size_t> idx) {
    std::vector<const MotifAssignment *> out;
    for (std::size_t i : idx) out.push_back(&result.motifs[i]);
    return out;
  };
  const auto valid_motifs = motif_ptrs(split.valid);
  const auto test_motifs = motif_ptrs(split.test);
  if (result.diverged) {
    result.test_auc = evaluate(test_set, test_labels, test_motifs);
    result.shuffle_rng = serialize_rng(shuffle);
    result.noise_rng = serialize_rng(noise);
    return result;
  }

  // Phase 2: experts.
  result.final_phase = Phase::kExperts;
  opt = make_optimizer(cfg, model.expert_parameters());
  double best = -1.0;
  std::vector<std::vector<double>> best_weights = model.snapshot();
  last_good = best_weights;
  for (std::size_t epoch = 1; epoch <= cfg.epochs_total; ++epoch) {
    LossReport r;
    try {
      r = expert_epoch(model, *opt, train_set, train_motifs, cfg, shuffle, noise);
    } catch (const DivergenceError &e) {
      model.restore(last_good);
      result.diverged = true;
      result.divergence_message = std::string(e.what()) + " in expert epoch " + std::to_string(epoch);
      log_warn("train: " + result.divergence_message + "; restored last good weights");
      break;
    }
    last_good = model.snapshot();
    r.epoch = epoch;
    const AucResult valid = evaluate(valid_set, valid_labels, valid_motifs);
    r.auc_valid = auc_or_empty(valid);
    r.auc_test = auc_or_empty(evaluate(test_set, test_labels, test_motifs));
    emit(r);
    const double score = std::isnan(valid.mean) ? 0.0 : valid.mean;
    if (score > best) {
      best = score;
      result.best_epoch = epoch;
      best_weights = last_good;
    }
  }
  if (result.best_epoch > 0 && !result.diverged) model.restore(best_weights);
  result.best_valid_auc = std::max(best, 0.0);
  result.test_auc = evaluate(test_set, test_labels, test_motifs);
  result.optimizer_state = opt->state();
  result.shuffle_rng = serialize_rng(shuffle);
  result.noise_rng = serialize_rng(noise);
  return result;
}

}  // namespace asemol
