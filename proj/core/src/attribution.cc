//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/attribution.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "asemol/batch.h"
#include "asemol/error.h"
#include "asemol/log.h"

namespace asemol {

std::vector<AttributionScore> score_fragments(
    std::span<const double> full_logits,
    const std::vector<std::vector<double>> &fragment_logits,
    std::span<const std::int8_t> labels) {
  const std::size_t t_count = full_logits.size();
  if (labels.size() != t_count)
    throw ContractError("score_fragments: label count " + std::to_string(labels.size())
                        + " != task count " + std::to_string(t_count));
  if (std::none_of(labels.begin(), labels.end(),
                   [](std::int8_t y) { return y == 0 || y == 1; }))
    throw ContractError("score_fragments: molecule has no observed label");
  std::vector<AttributionScore> out;
  for (std::size_t j = 0; j < fragment_logits.size(); ++j) {
    const auto &frag = fragment_logits[j];
    if (frag.size() != t_count)
      throw ContractError("score_fragments: fragment logit width mismatch");
    AttributionScore s;
    s.fragment = j;
    s.per_task.assign(t_count, std::numeric_limits<double>::quiet_NaN());
    double total = 0.0;
    int observed = 0;
    for (std::size_t t = 0; t < t_count; ++t) {
      if (labels[t] == 1) {
        s.per_task[t] = frag[t] - full_logits[t];
      } else if (labels[t] == 0) {
        s.per_task[t] = full_logits[t] - frag[t];
      } else {
        continue;
      }
      total += s.per_task[t];
      ++observed;
    }
    s.aggregate = total / observed;
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t motif_count(std::size_t num_fragments, double psi) {
  // The small slack keeps products such as 0.2 * 5 from rounding up to 2.
  const double k = std::ceil(psi * static_cast<double>(num_fragments) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(k, 1.0)), 1,
                                 std::max<std::size_t>(num_fragments, 1));
}

namespace {

std::vector<int> union_nodes(std::span<const Fragment> fragments,
                             std::span<const std::size_t> chosen) {
  std::vector<int> nodes;
  for (std::size_t j : chosen)
    nodes.insert(nodes.end(), fragments[j].node_indices.begin(),
                 fragments[j].node_indices.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

}  // namespace

MotifAssignment select_motifs(std::span<const double> aggregates,
                              std::span<const Fragment> fragments, double psi) {
  const std::size_t s = fragments.size();
  if (s == 0) throw ContractError("select_motifs: no fragments");
  if (aggregates.size() != s)
    throw ContractError("select_motifs: score count differs from fragment count");
  MotifAssignment m;
  if (s == 1) {
    m.positive_fragments = m.negative_fragments = {0};
    m.positive_nodes = m.negative_nodes = fragments[0].node_indices;
    m.degenerate = true;
    return m;
  }
  const std::size_t k = motif_count(s, psi);
  std::vector<std::size_t> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return aggregates[a] > aggregates[b];
  });
  m.positive_fragments.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));

  std::vector<std::size_t> pool;
  for (std::size_t j = 0; j < s; ++j) {
    const bool taken = std::find(m.positive_fragments.begin(), m.positive_fragments.end(), j)
                       != m.positive_fragments.end();
    if (s < 2 * k || !taken) pool.push_back(j);
  }
  std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
    return aggregates[a] < aggregates[b];
  });
  m.negative_fragments.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  m.positive_nodes = union_nodes(fragments, m.positive_fragments);
  m.negative_nodes = union_nodes(fragments, m.negative_fragments);
  return m;
}

Tensor margin_loss(const Tensor &h, const Tensor &h_pos, const Tensor &h_neg,
                   double margin) {
  const Tensor sim_pos = sigmoid(sum(mul(h, h_pos), 1));
  const Tensor sim_neg = sigmoid(sum(mul(h, h_neg), 1));
  const Tensor term = max_with_zero(add_scalar(sub(sim_pos, sim_neg), margin));
  return scale(mean(term), -1.0);
}

std::vector<std::vector<AttributionScore>> attribute(
    std::span<const AttributionInput> inputs, const Encoder &encoder,
    const Mlp &head) {
  std::vector<std::vector<AttributionScore>> out(inputs.size());
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto &labels = inputs[i].labels;
    if (std::none_of(labels.begin(), labels.end(),
                     [](std::int8_t y) { return y == 0 || y == 1; })) {
      log_warn("attribute: molecule '" + inputs[i].graph->source_smiles
               + "' has no observed label; skipped");
      continue;
    }
    keep.push_back(i);
  }
  if (keep.empty()) return out;

  std::vector<const MolecularGraph *> graphs;
  for (std::size_t i : keep) graphs.push_back(inputs[i].graph);
  const GraphBatch batch = make_batch(graphs);
  const Tensor nodes = stop_gradient(encoder.encode_nodes(batch));

  // Segments 0..G-1 are whole graphs, then each fragment in order.
  std::vector<std::size_t> node_ids, seg_ids;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    for (std::size_t v = batch.node_offset[g]; v < batch.node_offset[g + 1]; ++v) {
      node_ids.push_back(v);
      seg_ids.push_back(g);
    }
  }
  std::size_t seg = graphs.size();
  std::vector<std::size_t> first_seg;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    first_seg.push_back(seg);
    for (const Fragment &f : *inputs[keep[g]].fragments) {
      for (int v : f.node_indices) {
        node_ids.push_back(batch.node_offset[g] + static_cast<std::size_t>(v));
        seg_ids.push_back(seg);
      }
      ++seg;
    }
  }
  const Tensor pooled =
      segment_readout(nodes, node_ids, seg_ids, seg, encoder.config().readout);
  const Tensor logits = stop_gradient(head.forward(pooled));
  const std::size_t t_count = logits.cols();
  const auto values = logits.values();
  auto row = [&](std::size_t r) {
    return std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(r * t_count),
                               values.begin() + static_cast<std::ptrdiff_t>((r + 1) * t_count));
  };
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const auto full = row(g);
    std::vector<std::vector<double>> frag;
    for (std::size_t j = 0; j < inputs[keep[g]].fragments->size(); ++j)
      frag.push_back(row(first_seg[g] + j));
    out[keep[g]] = score_fragments(full, frag, inputs[keep[g]].labels);
  }
  return out;
}

}  // namespace asemol
