//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_BRICS_H_
#define ASEMOL_BRICS_H_

#include <functional>
#include <string>
#include <vector>

#include "asemol/molecule.h"

namespace asemol {

// Structural test on an acyclic single bond, called with the endpoints in
// both orders when `both_directions` is set.
using BondPredicate =
    std::function<bool(const MolecularGraph &, int bond, int a, int b)>;

struct CleavageRule {
  std::string id;
  BondPredicate predicate;
  bool both_directions = true;
};

struct Fragment {
  std::vector<int> node_indices;  // sorted
  std::vector<std::string> rule_ids;  // sorted, unique
};

/// The fixed, ordered cleavage table:
///   1 amide-CN        carbonyl C - N
///   2 ester-CO        carbonyl C - O
///   3 ether-CO        sp3 C - O - sp3 C
///   4 amine-CN        C - N, N not amide or sulfonamide
///   5 aryl-alkyl      aromatic C - sp3 C
///   6 biaryl          aromatic atom - aromatic atom
///   7 sulfonamide-SN  sulfonyl S - N
///   8 olefin-alkyl    olefinic C - sp3 C
/// No rule matches a ring bond or a multiple bond.
const std::vector<CleavageRule> &rule_table();

// Rule id matching `bond`, or empty when it is not cleaved. The first
// matching rule in table order wins.
std::string match_bond(const MolecularGraph &graph, int bond);

/// Cuts every matching bond at once and returns the connected components,
/// ordered by smallest atom index. A molecule with no cleavable bond is a
/// single fragment.
std::vector<Fragment> brics_decompose(const MolecularGraph &graph);

}  // namespace asemol

#endif  // ASEMOL_BRICS_H_
