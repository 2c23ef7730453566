//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_SMILES_H_
#define ASEMOL_SMILES_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "asemol/molecule.h"

namespace asemol {

/// Parses a SMILES string into a finalized heavy-atom graph.
///
/// Supported: organic-subset and bracket atoms (charge, H count), bonds
/// - = # :, branches, ring closures 0-9 and %nn, lowercase aromatic atoms,
/// and '.' separated components (the largest component is kept). Stereo
/// marks (/ \ @) and isotopes are accepted and dropped with a warning
/// recorded on the graph. Throws ParseError carrying the byte offset.
MolecularGraph parse_smiles(std::string_view smiles);

enum class SmilesStyle {
  // Bare organic-subset atoms where possible, no hydrogen counts. Used for
  // canonical keys of scaffolds and fragments.
  kSkeleton,
  // Every atom bracketed with explicit hydrogen count and charge, so the
  // string reparses to an identical graph.
  kExplicit,
};

/// Canonical encoding: atoms are ranked by iterative neighborhood
/// refinement and written by a depth-first walk in rank order.
std::string canonical_smiles(const MolecularGraph &graph,
                             SmilesStyle style = SmilesStyle::kSkeleton);

/// A valid explicit-style SMILES with random start atom and branch order,
/// drawn from `seed`. Reparsing yields the same molecule.
std::string random_smiles(const MolecularGraph &graph, std::uint64_t seed);

}  // namespace asemol

#endif  // ASEMOL_SMILES_H_
