//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_ATTRIBUTION_H_
#define ASEMOL_ATTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "asemol/brics.h"
#include "asemol/encoder.h"
#include "asemol/layers.h"
#include "asemol/molecule.h"
#include "asemol/tensor.h"

namespace asemol {

struct AttributionScore {
  std::size_t fragment = 0;
  // Signed per-task value; NaN where the label is missing.
  std::vector<double> per_task;
  // Mean over observed tasks.
  double aggregate = 0.0;
};

/// For each fragment j and observed task t:
///   label 1: frag_logits[j][t] - full_logits[t]
///   label 0: full_logits[t] - frag_logits[j][t]
/// Logits are pre-sigmoid. Throws ContractError when no label is observed.
std::vector<AttributionScore> score_fragments(
    std::span<const double> full_logits,
    const std::vector<std::vector<double>> &fragment_logits,
    std::span<const std::int8_t> labels);

struct MotifAssignment {
  std::vector<std::size_t> positive_fragments;  // selection order
  std::vector<std::size_t> negative_fragments;
  std::vector<int> positive_nodes;  // sorted
  std::vector<int> negative_nodes;  // sorted
  // Single-fragment molecule: both motifs are the whole molecule.
  bool degenerate = false;

  bool operator==(const MotifAssignment &) const = default;
};

// ceil(psi * num_fragments), at least 1.
std::size_t motif_count(std::size_t num_fragments, double psi);

/// Positive motif: the k highest-aggregate fragments; negative motif: the k
/// lowest, taken from the fragments not chosen as positive whenever at
/// least 2k fragments exist. Ties go to the lower fragment index.
MotifAssignment select_motifs(std::span<const double> aggregates,
                              std::span<const Fragment> fragments, double psi);

/// Per-row -max(sigmoid(<H, H+>) - sigmoid(<H, H->) + margin, 0), averaged
/// over rows. Inputs are B x d.
Tensor margin_loss(const Tensor &h, const Tensor &h_pos, const Tensor &h_neg,
                   double margin);

struct AttributionInput {
  const MolecularGraph *graph = nullptr;
  const std::vector<Fragment> *fragments = nullptr;
  std::span<const std::int8_t> labels;
};

/// Scores every fragment of every molecule with the recognition head. The
/// whole graph and all fragments go through one readout and one head call,
/// so a fragment covering the molecule scores exactly zero. Molecules with
/// no observed label get an empty result and a warning.
std::vector<std::vector<AttributionScore>> attribute(
    std::span<const AttributionInput> inputs, const Encoder &encoder,
    const Mlp &head);

}  // namespace asemol

#endif  // ASEMOL_ATTRIBUTION_H_
