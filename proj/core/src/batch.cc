//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/batch.h"

#include "asemol/error.h"
#include "asemol/features.h"

namespace asemol {

GraphBatch make_batch(std::span<const MolecularGraph *const> graphs) {
  GraphBatch batch;
  batch.num_graphs = graphs.size();
  std::vector<double> x, e, inv;
  batch.node_offset.push_back(0);
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const MolecularGraph &graph = *graphs[g];
    if (!graph.has_features())
      throw ContractError("make_batch: graph is not featurized");
    const std::size_t base = batch.num_nodes;
    x.insert(x.end(), graph.atom_features().begin(), graph.atom_features().end());
    for (std::size_t i = 0; i < graph.num_atoms(); ++i) {
      batch.node_graph.push_back(g);
      inv.push_back(1.0 / static_cast<double>(graph.atom(static_cast<int>(i)).degree + 1));
    }
    const auto bf = graph.bond_features();
    for (std::size_t b = 0; b < graph.num_bonds(); ++b) {
      const Bond &bond = graph.bond(static_cast<int>(b));
      const auto row = bf.subspan(b * kBondFeatureDim, kBondFeatureDim);
      batch.edge_src.push_back(base + static_cast<std::size_t>(bond.begin));
      batch.edge_dst.push_back(base + static_cast<std::size_t>(bond.end));
      e.insert(e.end(), row.begin(), row.end());
      batch.edge_src.push_back(base + static_cast<std::size_t>(bond.end));
      batch.edge_dst.push_back(base + static_cast<std::size_t>(bond.begin));
      e.insert(e.end(), row.begin(), row.end());
    }
    batch.num_nodes += graph.num_atoms();
    batch.node_offset.push_back(batch.num_nodes);
  }
  batch.atom_features =
      Tensor::from_values({batch.num_nodes, kAtomFeatureDim}, std::move(x));
  batch.edge_features =
      Tensor::from_values({batch.edge_src.size(), kBondFeatureDim}, std::move(e));
  batch.inv_degree_plus_one = Tensor::from_values({batch.num_nodes, 1}, std::move(inv));
  return batch;
}

GraphBatch make_batch(const MolecularGraph &graph) {
  const MolecularGraph *one[] = {&graph};
  return make_batch(one);
}

}  // namespace asemol
