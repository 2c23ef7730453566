//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/model.h"

#include <algorithm>

#include "asemol/error.h"

namespace asemol {

ModelSpec model_spec(const TrainConfig &cfg, std::size_t num_tasks) {
  ModelSpec s;
  s.encoder = cfg.encoder;
  s.num_tasks = num_tasks;
  s.num_experts = cfg.num_experts;
  s.tau = cfg.tau;
  s.noise_scale = cfg.noise_scale;
  return s;
}

namespace {

MoEConfig moe_config(const ModelSpec &spec) {
  MoEConfig m;
  m.num_experts = spec.num_experts;
  m.dim = spec.encoder.hidden_dim;
  m.num_tasks = spec.num_tasks;
  m.tau = spec.tau;
  m.noise_scale = spec.noise_scale;
  return m;
}

std::vector<const MolecularGraph *> graphs_of(std::span<const Record *const> records) {
  std::vector<const MolecularGraph *> g;
  g.reserve(records.size());
  for (const Record *r : records) g.push_back(&r->graph);
  return g;
}

}  // namespace

Model::Model(const ModelSpec &spec, std::uint64_t seed) : spec_(spec) {
  if (spec_.num_tasks < 1) throw ConfigError("model needs at least one task");
  Rng rng = make_rng(seed, SeedStream::kInit);
  encoder_ = Encoder(spec_.encoder, rng);
  recognition_head_ =
      Mlp(spec_.encoder.hidden_dim, spec_.encoder.hidden_dim, spec_.num_tasks, rng);
  moe_ = MoEHead(moe_config(spec_), rng);
  recognition_encoder_ = Encoder(spec_.encoder, rng);
  freeze_recognition();
}

ParameterList Model::parameters() const {
  ParameterList out;
  encoder_.collect(out, "encoder");
  recognition_head_.collect(out, "recognition_head");
  moe_.collect(out, "moe");
  recognition_encoder_.collect(out, "recognition_encoder");
  return out;
}

ParameterList Model::recognition_parameters() const {
  ParameterList out;
  encoder_.collect(out, "encoder");
  recognition_head_.collect(out, "recognition_head");
  return out;
}

ParameterList Model::expert_parameters() const {
  ParameterList out;
  encoder_.collect(out, "encoder");
  moe_.collect(out, "moe");
  return out;
}

ParameterList Model::moe_parameters() const {
  ParameterList out;
  moe_.collect(out, "moe");
  return out;
}

void Model::freeze_recognition() {
  ParameterList src, dst;
  encoder_.collect(src, "");
  recognition_encoder_.collect(dst, "");
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto v = src[i].tensor.values();
    std::copy(v.begin(), v.end(), dst[i].tensor.mutable_values().begin());
  }
}

std::vector<std::vector<double>> Model::snapshot() const {
  std::vector<std::vector<double>> out;
  for (const auto &p : parameters()) {
    const auto v = p.tensor.values();
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

void Model::restore(const std::vector<std::vector<double>> &values) {
  auto params = parameters();
  if (values.size() != params.size())
    throw ContractError("Model::restore: parameter count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto dst = params[i].tensor.mutable_values();
    if (dst.size() != values[i].size())
      throw ContractError("Model::restore: size mismatch for " + params[i].name);
    std::copy(values[i].begin(), values[i].end(), dst.begin());
  }
}

MotifEmbeddings motif_embeddings(const Tensor &nodes, const GraphBatch &batch,
                                 std::span<const MotifAssignment *const> motifs,
                                 ReadoutKind kind) {
  if (motifs.size() != batch.num_graphs)
    throw ContractError("motif_embeddings: one assignment per graph required");
  std::vector<std::size_t> pos_ids, pos_seg, neg_ids, neg_seg;
  for (std::size_t g = 0; g < motifs.size(); ++g) {
    const std::size_t base = batch.node_offset[g];
    for (int v : motifs[g]->positive_nodes) {
      pos_ids.push_back(base + static_cast<std::size_t>(v));
      pos_seg.push_back(g);
    }
    for (int v : motifs[g]->negative_nodes) {
      neg_ids.push_back(base + static_cast<std::size_t>(v));
      neg_seg.push_back(g);
    }
  }
  return {segment_readout(nodes, pos_ids, pos_seg, batch.num_graphs, kind),
          segment_readout(nodes, neg_ids, neg_seg, batch.num_graphs, kind)};
}

std::vector<double> recognition_logits(std::span<const Record *const> records,
                                       const Encoder &encoder, const Mlp &head,
                                       std::size_t chunk) {
  std::vector<double> out;
  for (std::size_t b = 0; b < records.size(); b += chunk) {
    const auto part = records.subspan(b, std::min(chunk, records.size() - b));
    const auto graphs = graphs_of(part);
    const GraphBatch batch = make_batch(graphs);
    const Tensor logits = head.forward(encoder.encode(batch).graphs);
    out.insert(out.end(), logits.values().begin(), logits.values().end());
  }
  return out;
}

std::vector<MotifAssignment> recognize_motifs(std::span<const Record *const> records,
                                              const Encoder &encoder, const Mlp &head,
                                              double psi, bool use_labels,
                                              std::size_t chunk) {
  std::vector<MotifAssignment> out;
  out.reserve(records.size());
  for (std::size_t b = 0; b < records.size(); b += chunk) {
    const auto part = records.subspan(b, std::min(chunk, records.size() - b));
    std::vector<std::vector<std::int8_t>> labels;
    if (use_labels) {
      for (const Record *r : part) labels.push_back(r->labels);
    } else {
      const auto logits = recognition_logits(part, encoder, head, part.size());
      const std::size_t t_count = logits.size() / part.size();
      for (std::size_t i = 0; i < part.size(); ++i) {
        std::vector<std::int8_t> y(t_count);
        for (std::size_t t = 0; t < t_count; ++t) y[t] = logits[i * t_count + t] >= 0.0 ? 1 : 0;
        labels.push_back(std::move(y));
      }
    }
    std::vector<AttributionInput> inputs;
    for (std::size_t i = 0; i < part.size(); ++i)
      inputs.push_back({&part[i]->graph, &part[i]->fragments, labels[i]});
    const auto scores = attribute(inputs, encoder, head);
    for (std::size_t i = 0; i < part.size(); ++i) {
      const auto &frags = part[i]->fragments;
      std::vector<double> agg(frags.size(), 0.0);
      // No observed label: every fragment ties at zero.
      for (std::size_t j = 0; j < scores[i].size(); ++j) agg[j] = scores[i][j].aggregate;
      out.push_back(select_motifs(agg, frags, psi));
    }
  }
  return out;
}

ExpertOutput expert_forward(const Model &model, const GraphBatch &batch,
                            std::span<const MotifAssignment *const> motifs, Rng *noise) {
  ExpertOutput out;
  const Encoding enc = model.encoder().encode(batch);
  out.h = enc.graphs;
  out.motifs = motif_embeddings(enc.nodes, batch, motifs, model.spec().encoder.readout);
  out.prediction = model.moe().predict(out.motifs.h_pos, out.motifs.h_neg, noise);
  return out;
}

std::vector<double> predict_logits(const Model &model,
                                   std::span<const Record *const> records,
                                   std::span<const MotifAssignment *const> motifs,
                                   std::size_t chunk) {
  if (records.size() != motifs.size())
    throw ContractError("predict_logits: one assignment per record required");
  std::vector<double> out;
  for (std::size_t b = 0; b < records.size(); b += chunk) {
    const std::size_t n = std::min(chunk, records.size() - b);
    const auto graphs = graphs_of(records.subspan(b, n));
    const GraphBatch batch = make_batch(graphs);
    const auto res = expert_forward(model, batch, motifs.subspan(b, n), nullptr);
    const auto v = res.prediction.logits.values();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace asemol
