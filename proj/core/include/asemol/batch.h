//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_BATCH_H_
#define ASEMOL_BATCH_H_

#include <cstddef>
#include <span>
#include <vector>

#include "asemol/molecule.h"
#include "asemol/tensor.h"

namespace asemol {

/// Disjoint union of featurized graphs. Node rows of graph g occupy
/// [node_offset[g], node_offset[g + 1]); every bond appears as two directed
/// edges.
struct GraphBatch {
  std::size_t num_graphs = 0;
  std::size_t num_nodes = 0;
  Tensor atom_features;  // num_nodes x kAtomFeatureDim
  Tensor edge_features;  // num_edges x kBondFeatureDim
  std::vector<std::size_t> edge_src;
  std::vector<std::size_t> edge_dst;
  std::vector<std::size_t> node_graph;
  std::vector<std::size_t> node_offset;
  Tensor inv_degree_plus_one;  // num_nodes x 1

  std::size_t num_edges() const { return edge_src.size(); }
};

// Throws ContractError when a graph has no features.
GraphBatch make_batch(std::span<const MolecularGraph *const> graphs);
GraphBatch make_batch(const MolecularGraph &graph);

}  // namespace asemol

#endif  // ASEMOL_BATCH_H_
