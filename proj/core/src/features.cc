//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/features.h"

#include <algorithm>
#include <vector>

namespace asemol {

void featurize(MolecularGraph &graph) {
  namespace off = feature_offset;
  std::vector<double> x(graph.num_atoms() * kAtomFeatureDim, 0.0);
  for (std::size_t i = 0; i < graph.num_atoms(); ++i) {
    const Atom &a = graph.atom(static_cast<int>(i));
    double *row = x.data() + i * kAtomFeatureDim;
    row[off::kElement + static_cast<std::size_t>(a.element)] = 1.0;
    row[off::kDegree + static_cast<std::size_t>(std::clamp(a.degree, 0, 5))] = 1.0;
    row[off::kCharge + static_cast<std::size_t>(std::clamp(a.formal_charge, -2, 2) + 2)] = 1.0;
    row[off::kHydrogens + static_cast<std::size_t>(std::clamp(a.num_hydrogens, 0, 4))] = 1.0;
    row[off::kAromatic] = a.is_aromatic ? 1.0 : 0.0;
    row[off::kInRing] = a.in_ring ? 1.0 : 0.0;
  }
  std::vector<double> e(graph.num_bonds() * kBondFeatureDim, 0.0);
  for (std::size_t b = 0; b < graph.num_bonds(); ++b) {
    const Bond &bond = graph.bond(static_cast<int>(b));
    double *row = e.data() + b * kBondFeatureDim;
    row[static_cast<std::size_t>(bond.order)] = 1.0;
    row[4] = bond.in_ring ? 1.0 : 0.0;
  }
  graph.set_features(std::move(x), std::move(e));
}

}  // namespace asemol
