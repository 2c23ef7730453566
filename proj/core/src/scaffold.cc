//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/scaffold.h"

#include "asemol/smiles.h"

namespace asemol {

std::vector<int> murcko_atoms(const MolecularGraph &graph) {
  const std::size_t n = graph.num_atoms();
  std::vector<bool> alive(n, true);
  std::vector<int> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = graph.atom(static_cast<int>(i)).degree;

  std::vector<int> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (!graph.atom(static_cast<int>(i)).in_ring && degree[i] <= 1)
      queue.push_back(static_cast<int>(i));
  }
  while (!queue.empty()) {
    const int u = queue.back();
    queue.pop_back();
    if (!alive[static_cast<std::size_t>(u)]) continue;
    alive[static_cast<std::size_t>(u)] = false;
    for (const Neighbor &nb : graph.neighbors(u)) {
      const auto v = static_cast<std::size_t>(nb.atom);
      if (!alive[v]) continue;
      if (--degree[v] <= 1 && !graph.atom(nb.atom).in_ring) queue.push_back(nb.atom);
    }
  }
  std::vector<int> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) kept.push_back(static_cast<int>(i));
  return kept;
}

std::string murcko_scaffold(const MolecularGraph &graph) {
  const auto kept = murcko_atoms(graph);
  if (kept.empty()) return "";
  return canonical_smiles(graph.induced_subgraph(kept), SmilesStyle::kSkeleton);
}

}  // namespace asemol
