//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_SCAFFOLD_H_
#define ASEMOL_SCAFFOLD_H_

#include <string>
#include <vector>

#include "asemol/molecule.h"

namespace asemol {

// Atoms remaining after repeatedly removing non-ring atoms of degree <= 1.
std::vector<int> murcko_atoms(const MolecularGraph &graph);

/// Bemis-Murcko scaffold key: canonical skeleton SMILES of the ring systems
/// and their linkers. Acyclic molecules yield the empty string.
std::string murcko_scaffold(const MolecularGraph &graph);

}  // namespace asemol

#endif  // ASEMOL_SCAFFOLD_H_
