//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/encoder.h"

#include <numeric>

#include "asemol/error.h"
#include "asemol/features.h"

namespace asemol {

std::string to_string(EncoderVariant v) {
  return v == EncoderVariant::kGcn ? "gcn" : "gin";
}

std::string to_string(ReadoutKind r) {
  switch (r) {
  case ReadoutKind::kMean:
    return "mean";
  case ReadoutKind::kSum:
    return "sum";
  case ReadoutKind::kMax:
    return "max";
  }
  return "mean";
}

EncoderVariant parse_encoder_variant(std::string_view text) {
  if (text == "gcn") return EncoderVariant::kGcn;
  if (text == "gin") return EncoderVariant::kGin;
  throw ConfigError("unknown encoder '" + std::string(text) + "' (expected gcn or gin)");
}

ReadoutKind parse_readout_kind(std::string_view text) {
  if (text == "mean") return ReadoutKind::kMean;
  if (text == "sum") return ReadoutKind::kSum;
  if (text == "max") return ReadoutKind::kMax;
  throw ConfigError("unknown readout '" + std::string(text) + "' (expected mean, sum or max)");
}

void EncoderConfig::validate() const {
  if (num_layers < 1) throw ConfigError("encoder needs at least one layer");
  if (hidden_dim < 1) throw ConfigError("encoder hidden_dim must be positive");
}

Tensor segment_readout(const Tensor &nodes, std::span<const std::size_t> node_ids,
                       std::span<const std::size_t> segment_ids,
                       std::size_t num_segments, ReadoutKind kind) {
  if (node_ids.size() != segment_ids.size())
    throw ContractError("segment_readout: node_ids and segment_ids differ in length");
  const Tensor rows = gather_rows(nodes, node_ids);
  if (kind == ReadoutKind::kMax) return segment_max(rows, segment_ids, num_segments);
  const Tensor sums = scatter_add_rows(rows, segment_ids, num_segments);
  if (kind == ReadoutKind::kSum) return sums;
  std::vector<double> count(num_segments, 0.0);
  for (std::size_t s : segment_ids) count[s] += 1.0;
  for (double &c : count) c = c > 0.0 ? 1.0 / c : 0.0;
  return row_scale(sums, Tensor::from_values({num_segments, 1}, std::move(count)));
}

Tensor readout(const Tensor &nodes, const GraphBatch &batch, ReadoutKind kind) {
  std::vector<std::size_t> ids(batch.num_nodes);
  std::iota(ids.begin(), ids.end(), 0);
  return segment_readout(nodes, ids, batch.node_graph, batch.num_graphs, kind);
}

Tensor readout_masked(const Tensor &nodes, std::span<const std::uint8_t> mask,
                      ReadoutKind kind) {
  if (mask.size() != nodes.rows())
    throw ContractError("readout_masked: mask length " + std::to_string(mask.size())
                        + " != node count " + std::to_string(nodes.rows()));
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i] != 0) ids.push_back(i);
  if (ids.empty()) throw ContractError("readout_masked: mask selects no node");
  const std::vector<std::size_t> seg(ids.size(), 0);
  return segment_readout(nodes, ids, seg, 1, kind);
}

Encoder::Encoder(const EncoderConfig &cfg, Rng &rng) : cfg_(cfg) {
  cfg_.validate();
  const std::size_t d = cfg_.hidden_dim;
  input_ = Linear(kAtomFeatureDim, d, rng);
  for (std::size_t l = 0; l < cfg_.num_layers; ++l) {
    Layer layer;
    layer.bond_proj = xavier_uniform(kBondFeatureDim, d, rng);
    if (cfg_.variant == EncoderVariant::kGcn) {
      layer.linear = Linear(d, d, rng);
    } else {
      layer.mlp = Mlp(d, d, d, rng);
      layer.eps = Tensor::scalar(0.0, true);
    }
    layers_.push_back(std::move(layer));
  }
}

Tensor Encoder::encode_nodes(const GraphBatch &batch) const {
  if (batch.atom_features.cols() != input_.in_features())
    throw ConfigError("encoder expects " + std::to_string(input_.in_features())
                      + " atom features, batch has "
                      + std::to_string(batch.atom_features.cols()));
  const std::size_t n = batch.num_nodes;
  const std::size_t d = cfg_.hidden_dim;
  Tensor h = input_.forward(batch.atom_features);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer &layer = layers_[l];
    Tensor agg;
    if (batch.num_edges() > 0) {
      Tensor msg = add(gather_rows(h, batch.edge_src),
                       matmul(batch.edge_features, layer.bond_proj));
      agg = scatter_add_rows(msg, batch.edge_dst, n);
    } else {
      agg = Tensor::zeros({n, d});
    }
    if (cfg_.variant == EncoderVariant::kGcn) {
      h = relu(layer.linear.forward(row_scale(add(agg, h), batch.inv_degree_plus_one)));
    } else {
      Tensor self = add(h, scale_by(h, layer.eps));
      h = layer.mlp.forward(add(self, agg));
      if (l + 1 < layers_.size()) h = relu(h);
    }
  }
  return h;
}

Encoding Encoder::encode(const GraphBatch &batch) const {
  Encoding out;
  out.nodes = encode_nodes(batch);
  out.graphs = readout(out.nodes, batch, cfg_.readout);
  return out;
}

void Encoder::collect(ParameterList &out, const std::string &prefix) const {
  input_.collect(out, prefix + ".input");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const std::string p = prefix + ".layer" + std::to_string(l);
    out.push_back({p + ".bond_proj", layers_[l].bond_proj});
    if (cfg_.variant == EncoderVariant::kGcn) {
      layers_[l].linear.collect(out, p + ".linear");
    } else {
      layers_[l].mlp.collect(out, p + ".mlp");
      out.push_back({p + ".eps", layers_[l].eps});
    }
  }
}

}  // namespace asemol
