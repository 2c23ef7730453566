//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/brics.h"

#include <algorithm>
#include <map>

namespace asemol {

namespace {

bool is_element(const MolecularGraph &g, int atom, Element e) {
  return g.atom(atom).element == e;
}

int double_bonded_count(const MolecularGraph &g, int atom, Element partner) {
  int count = 0;
  for (const Neighbor &nb : g.neighbors(atom)) {
    if (g.bond(nb.bond).order == BondOrder::Double && is_element(g, nb.atom, partner))
      ++count;
  }
  return count;
}

bool only_single_bonds(const MolecularGraph &g, int atom) {
  for (const Neighbor &nb : g.neighbors(atom))
    if (g.bond(nb.bond).order != BondOrder::Single) return false;
  return true;
}

bool sp3_carbon(const MolecularGraph &g, int atom) {
  const Atom &a = g.atom(atom);
  return a.element == Element::C && !a.is_aromatic && only_single_bonds(g, atom);
}

bool carbonyl_carbon(const MolecularGraph &g, int atom) {
  const Atom &a = g.atom(atom);
  return a.element == Element::C && !a.is_aromatic
         && double_bonded_count(g, atom, Element::O) >= 1;
}

bool olefinic_carbon(const MolecularGraph &g, int atom) {
  const Atom &a = g.atom(atom);
  return a.element == Element::C && !a.is_aromatic
         && double_bonded_count(g, atom, Element::C) >= 1;
}

bool sulfonyl_sulfur(const MolecularGraph &g, int atom) {
  return is_element(g, atom, Element::S)
         && double_bonded_count(g, atom, Element::O) >= 2;
}

bool plain_nitrogen(const MolecularGraph &g, int atom) {
  const Atom &a = g.atom(atom);
  return a.element == Element::N && !a.is_aromatic;
}

bool amine_nitrogen(const MolecularGraph &g, int atom) {
  if (!plain_nitrogen(g, atom) || !only_single_bonds(g, atom)) return false;
  if (g.atom(atom).degree < 2) return false;
  for (const Neighbor &nb : g.neighbors(atom)) {
    if (carbonyl_carbon(g, nb.atom) || sulfonyl_sulfur(g, nb.atom)) return false;
  }
  return true;
}

bool amide_cn(const MolecularGraph &g, int, int a, int b) {
  return carbonyl_carbon(g, a) && plain_nitrogen(g, b) && g.atom(b).degree >= 2;
}

bool ester_co(const MolecularGraph &g, int, int a, int b) {
  const Atom &o = g.atom(b);
  return carbonyl_carbon(g, a) && o.element == Element::O && !o.is_aromatic
         && o.degree == 2;
}

bool ether_co(const MolecularGraph &g, int, int a, int b) {
  const Atom &o = g.atom(b);
  if (!sp3_carbon(g, a) || o.element != Element::O || o.is_aromatic || o.degree != 2)
    return false;
  for (const Neighbor &nb : g.neighbors(b)) {
    if (nb.atom != a && !sp3_carbon(g, nb.atom)) return false;
  }
  return true;
}

bool amine_cn(const MolecularGraph &g, int, int a, int b) {
  const Atom &c = g.atom(a);
  if (c.element != Element::C || carbonyl_carbon(g, a)) return false;
  if (!c.is_aromatic && !sp3_carbon(g, a)) return false;
  return amine_nitrogen(g, b);
}

bool aryl_alkyl(const MolecularGraph &g, int, int a, int b) {
  const Atom &ar = g.atom(a);
  return ar.element == Element::C && ar.is_aromatic && sp3_carbon(g, b)
         && g.atom(b).degree >= 2;
}

bool biaryl(const MolecularGraph &g, int, int a, int b) {
  return g.atom(a).is_aromatic && g.atom(b).is_aromatic;
}

bool sulfonamide_sn(const MolecularGraph &g, int, int a, int b) {
  return sulfonyl_sulfur(g, a) && plain_nitrogen(g, b) && g.atom(b).degree >= 2;
}

bool olefin_alkyl(const MolecularGraph &g, int, int a, int b) {
  return olefinic_carbon(g, a) && sp3_carbon(g, b) && g.atom(b).degree >= 2;
}

}  // namespace

const std::vector<CleavageRule> &rule_table() {
  static const std::vector<CleavageRule> table = {
      {"amide-CN", amide_cn, true},
      {"ester-CO", ester_co, true},
      {"ether-CO", ether_co, true},
      {"amine-CN", amine_cn, true},
      {"aryl-alkyl", aryl_alkyl, true},
      {"biaryl", biaryl, false},
      {"sulfonamide-SN", sulfonamide_sn, true},
      {"olefin-alkyl", olefin_alkyl, true},
  };
  return table;
}

std::string match_bond(const MolecularGraph &graph, int bond) {
  const Bond &b = graph.bond(bond);
  if (b.in_ring || b.order != BondOrder::Single) return "";
  for (const CleavageRule &rule : rule_table()) {
    if (rule.predicate(graph, bond, b.begin, b.end)) return rule.id;
    if (rule.both_directions && rule.predicate(graph, bond, b.end, b.begin))
      return rule.id;
  }
  return "";
}

std::vector<Fragment> brics_decompose(const MolecularGraph &graph) {
  const std::size_t n = graph.num_atoms();
  std::vector<std::string> cut(graph.num_bonds());
  for (std::size_t b = 0; b < graph.num_bonds(); ++b)
    cut[b] = match_bond(graph, static_cast<int>(b));

  std::vector<int> comp(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = next;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const Neighbor &nb : graph.neighbors(u)) {
        if (!cut[static_cast<std::size_t>(nb.bond)].empty()) continue;
        if (comp[static_cast<std::size_t>(nb.atom)] >= 0) continue;
        comp[static_cast<std::size_t>(nb.atom)] = next;
        stack.push_back(nb.atom);
      }
    }
    ++next;
  }

  std::vector<Fragment> fragments(static_cast<std::size_t>(next));
  for (std::size_t i = 0; i < n; ++i)
    fragments[static_cast<std::size_t>(comp[i])].node_indices.push_back(static_cast<int>(i));
  for (std::size_t b = 0; b < graph.num_bonds(); ++b) {
    if (cut[b].empty()) continue;
    const Bond &bond = graph.bond(static_cast<int>(b));
    fragments[static_cast<std::size_t>(comp[static_cast<std::size_t>(bond.begin)])].rule_ids.push_back(cut[b]);
    fragments[static_cast<std::size_t>(comp[static_cast<std::size_t>(bond.end)])].rule_ids.push_back(cut[b]);
  }
  for (Fragment &f : fragments) {
    std::sort(f.rule_ids.begin(), f.rule_ids.end());
    f.rule_ids.erase(std::unique(f.rule_ids.begin(), f.rule_ids.end()), f.rule_ids.end());
  }
  return fragments;
}

}  // namespace asemol
