//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_FEATURES_H_
#define ASEMOL_FEATURES_H_

#include <cstddef>

#include "asemol/molecule.h"

namespace asemol {

// Atom vector layout: element (11) | degree 0-5 (6) | charge -2..2 (5) |
// hydrogens 0-4 (5) | aromatic (1) | in ring (1).
inline constexpr std::size_t kAtomFeatureDim = 29;
// Bond vector layout: order single/double/triple/aromatic (4) | in ring (1).
inline constexpr std::size_t kBondFeatureDim = 5;

namespace feature_offset {
inline constexpr std::size_t kElement = 0;
inline constexpr std::size_t kDegree = 11;
inline constexpr std::size_t kCharge = 17;
inline constexpr std::size_t kHydrogens = 22;
inline constexpr std::size_t kAromatic = 27;
inline constexpr std::size_t kInRing = 28;
}  // namespace feature_offset

// Populates atom and bond feature matrices in place. Out-of-range values are
// clipped to the nearest slot.
void featurize(MolecularGraph &graph);

}  // namespace asemol

#endif  // ASEMOL_FEATURES_H_
