//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_TESTS_SYNTHETIC_H_
#define ASEMOL_TESTS_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "asemol/dataset.h"

namespace asemol::testing {

struct SyntheticMolecule {
  std::string smiles;
  int label = 0;  // 1 iff an amide linker was planted
};

// Three ring or alkyl blocks joined by two linkers. Half the molecules
// (alternating) carry exactly one amide linker; blocks never contain one.
std::vector<SyntheticMolecule> planted_amide_set(std::size_t count, std::uint64_t seed);

// "smiles,amide" CSV text for planted_amide_set.
std::string to_csv(const std::vector<SyntheticMolecule> &molecules);

// planted_amide_set ingested as a one-task dataset named "amide".
Dataset planted_amide_dataset(std::size_t count, std::uint64_t seed);

}  // namespace asemol::testing

#endif  // ASEMOL_TESTS_SYNTHETIC_H_
