//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_ENCODER_H_
#define ASEMOL_ENCODER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asemol/batch.h"
#include "asemol/layers.h"
#include "asemol/rng.h"
#include "asemol/tensor.h"

namespace asemol {

enum class EncoderVariant { kGcn, kGin };
enum class ReadoutKind { kMean, kSum, kMax };

std::string to_string(EncoderVariant v);
std::string to_string(ReadoutKind r);
EncoderVariant parse_encoder_variant(std::string_view text);
ReadoutKind parse_readout_kind(std::string_view text);

struct EncoderConfig {
  EncoderVariant variant = EncoderVariant::kGcn;
  std::size_t num_layers = 5;
  std::size_t hidden_dim = 300;
  ReadoutKind readout = ReadoutKind::kMean;

  // Throws ConfigError on zero layers or width.
  void validate() const;
};

/// Pools rows `node_ids` of `nodes` into `num_segments` rows; row i goes to
/// segment `segment_ids[i]`. Mean divides by the segment's row count. Full
/// and masked readouts both go through here, so a mask covering every node
/// reproduces the full readout bit for bit.
Tensor segment_readout(const Tensor &nodes, std::span<const std::size_t> node_ids,
                       std::span<const std::size_t> segment_ids,
                       std::size_t num_segments, ReadoutKind kind);

// One row per graph of the batch.
Tensor readout(const Tensor &nodes, const GraphBatch &batch, ReadoutKind kind);

// Single-graph readout over rows where mask is 1. Throws ContractError on a
// length mismatch or an all-zero mask.
Tensor readout_masked(const Tensor &nodes, std::span<const std::uint8_t> mask,
                      ReadoutKind kind);

struct Encoding {
  Tensor nodes;   // num_nodes x d
  Tensor graphs;  // num_graphs x d
};

/// Message-passing encoder. Layer 0 projects atom features to d; each layer
/// adds a learned projection of bond features to neighbor messages.
///   GCN: h' = ReLU(mean over {u} + N(u) of messages, then W, b)
///   GIN: h' = MLP((1 + eps) h_u + sum over N(u) of messages)
class Encoder {
 public:
  Encoder() = default;
  Encoder(const EncoderConfig &cfg, Rng &rng);

  const EncoderConfig &config() const { return cfg_; }

  Tensor encode_nodes(const GraphBatch &batch) const;
  Encoding encode(const GraphBatch &batch) const;

  void collect(ParameterList &out, const std::string &prefix) const;

 private:
  struct Layer {
    Tensor bond_proj;  // kBondFeatureDim x d, no bias
    Linear linear;     // GCN
    Mlp mlp;           // GIN
    Tensor eps;        // GIN, scalar
  };

  EncoderConfig cfg_;
  Linear input_;
  std::vector<Layer> layers_;
};

}  // namespace asemol

#endif  // ASEMOL_ENCODER_H_
