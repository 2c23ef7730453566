//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_MODEL_H_
#define ASEMOL_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "asemol/attribution.h"
#include "asemol/batch.h"
#include "asemol/config.h"
#include "asemol/dataset.h"
#include "asemol/encoder.h"
#include "asemol/layers.h"
#include "asemol/moe.h"

namespace asemol {

struct ModelSpec {
  EncoderConfig encoder;
  std::size_t num_tasks = 1;
  std::size_t num_experts = 5;
  double tau = 0.1;
  double noise_scale = -1.0;
};

ModelSpec model_spec(const TrainConfig &cfg, std::size_t num_tasks);

/// Encoder, recognition head and MoE head. The recognition encoder is a
/// frozen copy of the encoder taken when motifs are frozen; it and the
/// recognition head recognize motifs of molecules seen after training.
class Model {
 public:
  Model(const ModelSpec &spec, std::uint64_t seed);

  const ModelSpec &spec() const { return spec_; }

  const Encoder &encoder() const { return encoder_; }
  const Encoder &recognition_encoder() const { return recognition_encoder_; }
  const Mlp &recognition_head() const { return recognition_head_; }
  const MoEHead &moe() const { return moe_; }

  // Every parameter under a stable dotted name.
  ParameterList parameters() const;
  // Encoder and recognition head.
  ParameterList recognition_parameters() const;
  // Encoder and MoE head.
  ParameterList expert_parameters() const;
  ParameterList moe_parameters() const;

  // Copies the current encoder into the recognition encoder.
  void freeze_recognition();

  std::vector<std::vector<double>> snapshot() const;
  void restore(const std::vector<std::vector<double>> &values);

 private:
  ModelSpec spec_;
  Encoder encoder_;
  Encoder recognition_encoder_;
  Mlp recognition_head_;
  MoEHead moe_;
};

struct MotifEmbeddings {
  Tensor h_pos;  // B x d
  Tensor h_neg;  // B x d
};

MotifEmbeddings motif_embeddings(const Tensor &nodes, const GraphBatch &batch,
                                 std::span<const MotifAssignment *const> motifs,
                                 ReadoutKind kind);

/// Attribution-driven motif selection for each record. With `use_labels`
/// the record labels drive the attribution sign; otherwise the head's own
/// predictions (logit >= 0) stand in for every task.
std::vector<MotifAssignment> recognize_motifs(std::span<const Record *const> records,
                                              const Encoder &encoder, const Mlp &head,
                                              double psi, bool use_labels,
                                              std::size_t chunk);

// Recognition-head logits, row-major records x T.
std::vector<double> recognition_logits(std::span<const Record *const> records,
                                       const Encoder &encoder, const Mlp &head,
                                       std::size_t chunk);

struct ExpertOutput {
  Tensor h;  // B x d whole-graph embeddings
  MotifEmbeddings motifs;
  MoEPrediction prediction;
};

ExpertOutput expert_forward(const Model &model, const GraphBatch &batch,
                            std::span<const MotifAssignment *const> motifs, Rng *noise);

// MoE logits with noise off, row-major records x T.
std::vector<double> predict_logits(const Model &model,
                                   std::span<const Record *const> records,
                                   std::span<const MotifAssignment *const> motifs,
                                   std::size_t chunk);

}  // namespace asemol

#endif  // ASEMOL_MODEL_H_
