//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/molecule.h"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <utility>

#include "asemol/error.h"

namespace asemol {

namespace {

constexpr std::array<std::string_view, kNumElementSlots - 1> kSlotSymbols = {
    "B", "C", "N", "O", "F", "P", "S", "Cl", "Br", "I"};

using EdgeSet = std::vector<std::uint64_t>;

bool edge_set_less(const EdgeSet &a, const EdgeSet &b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(),
                                      b.rend());
}

int highest_bit(const EdgeSet &s) {
  for (std::size_t w = s.size(); w-- > 0;) {
    if (s[w] != 0) return static_cast<int>(w * 64 + 63 - __builtin_clzll(s[w]));
  }
  return -1;
}

}  // namespace

Element element_from_symbol(std::string_view symbol) {
  for (std::size_t i = 0; i < kSlotSymbols.size(); ++i) {
    if (kSlotSymbols[i] == symbol) return static_cast<Element>(i);
  }
  return Element::Other;
}

std::string_view element_symbol(Element element) {
  const auto i = static_cast<std::size_t>(element);
  return i < kSlotSymbols.size() ? kSlotSymbols[i] : std::string_view("*");
}

double bond_order_value(BondOrder order) {
  switch (order) {
  case BondOrder::Single:
    return 1.0;
  case BondOrder::Double:
    return 2.0;
  case BondOrder::Triple:
    return 3.0;
  case BondOrder::Aromatic:
    return 1.5;
  }
  return 1.0;
}

int MolecularGraph::add_atom(Atom atom) {
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return static_cast<int>(atoms_.size()) - 1;
}

int MolecularGraph::add_bond(int begin, int end, BondOrder order) {
  const int n = static_cast<int>(atoms_.size());
  if (begin < 0 || end < 0 || begin >= n || end >= n) {
    throw IndexError("bond endpoint out of range: (" + std::to_string(begin)
                     + ", " + std::to_string(end) + ") with "
                     + std::to_string(n) + " atoms");
  }
  if (begin == end) throw ContractError("bond endpoints must be distinct");
  if (bond_between(begin, end))
    throw ContractError("duplicate bond between atoms " + std::to_string(begin)
                        + " and " + std::to_string(end));
  const int id = static_cast<int>(bonds_.size());
  bonds_.push_back(Bond{begin, end, order, false});
  adjacency_[static_cast<std::size_t>(begin)].push_back({end, id});
  adjacency_[static_cast<std::size_t>(end)].push_back({begin, id});
  return id;
}

std::optional<int> MolecularGraph::bond_between(int u, int v) const {
  if (u < 0 || static_cast<std::size_t>(u) >= adjacency_.size())
    return std::nullopt;
  for (const Neighbor &nb : adjacency_[static_cast<std::size_t>(u)]) {
    if (nb.atom == v) return nb.bond;
  }
  return std::nullopt;
}

std::vector<std::uint8_t> MolecularGraph::adjacency_matrix() const {
  const std::size_t n = atoms_.size();
  std::vector<std::uint8_t> a(n * n, 0);
  for (const Bond &b : bonds_) {
    a[static_cast<std::size_t>(b.begin) * n + static_cast<std::size_t>(b.end)] = 1;
    a[static_cast<std::size_t>(b.end) * n + static_cast<std::size_t>(b.begin)] = 1;
  }
  return a;
}

std::vector<int> MolecularGraph::component_ids() const {
  std::vector<int> comp(atoms_.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < atoms_.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = next;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const Neighbor &nb : neighbors(u)) {
        if (comp[static_cast<std::size_t>(nb.atom)] < 0) {
          comp[static_cast<std::size_t>(nb.atom)] = next;
          stack.push_back(nb.atom);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::size_t MolecularGraph::num_components() const {
  const auto comp = component_ids();
  return comp.empty() ? 0
                      : static_cast<std::size_t>(
                            *std::max_element(comp.begin(), comp.end()) + 1);
}

void MolecularGraph::finalize() {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    atoms_[i].degree = static_cast<int>(adjacency_[i].size());
  perceive_rings();
}

void MolecularGraph::perceive_rings() {
  const std::size_t n = atoms_.size();
  const std::size_t m = bonds_.size();
  for (Atom &a : atoms_) a.in_ring = false;
  for (Bond &b : bonds_) b.in_ring = false;
  rings_.clear();
  if (m == 0) return;

  // Bridges via iterative low-link DFS; every non-bridge bond is a ring bond.
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> is_bridge(m, false);
  int timer = 0;
  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (disc[s] >= 0) continue;
    std::vector<Frame> stack{{static_cast<int>(s), -1, 0}};
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto &adj = adjacency_[static_cast<std::size_t>(f.atom)];
      if (f.next < adj.size()) {
        const Neighbor nb = adj[f.next++];
        if (nb.bond == f.parent_bond) continue;
        const auto v = static_cast<std::size_t>(nb.atom);
        if (disc[v] < 0) {
          disc[v] = low[v] = timer++;
          stack.push_back({nb.atom, nb.bond, 0});
        } else {
          low[static_cast<std::size_t>(f.atom)] =
              std::min(low[static_cast<std::size_t>(f.atom)], disc[v]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          const auto u = static_cast<std::size_t>(stack.back().atom);
          const auto v = static_cast<std::size_t>(done.atom);
          low[u] = std::min(low[u], low[v]);
          if (low[v] > disc[u])
            is_bridge[static_cast<std::size_t>(done.parent_bond)] = true;
        }
      }
    }
  }
  std::size_t ring_bonds = 0;
  for (std::size_t b = 0; b < m; ++b) {
    if (is_bridge[b]) continue;
    bonds_[b].in_ring = true;
    atoms_[static_cast<std::size_t>(bonds_[b].begin)].in_ring = true;
    atoms_[static_cast<std::size_t>(bonds_[b].end)].in_ring = true;
    ++ring_bonds;
  }
  if (ring_bonds == 0) return;

  const std::size_t cyclomatic = m + num_components() - n;
  const std::size_t words = (m + 63) / 64;

  // Candidate cycles: for each ring bond, the shortest ring path joining its
  // endpoints without using the bond itself.
  std::map<EdgeSet, std::vector<int>, decltype(&edge_set_less)> candidates(
      &edge_set_less);
  for (std::size_t b = 0; b < m; ++b) {
    if (!bonds_[b].in_ring) continue;
    const int src = bonds_[b].begin, dst = bonds_[b].end;
    std::vector<int> prev_atom(n, -1), prev_bond(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<int> queue{src};
    seen[static_cast<std::size_t>(src)] = true;
    while (!queue.empty() && !seen[static_cast<std::size_t>(dst)]) {
      const int u = queue.front();
      queue.pop_front();
      for (const Neighbor &nb : neighbors(u)) {
        if (static_cast<std::size_t>(nb.bond) == b) continue;
        if (!bonds_[static_cast<std::size_t>(nb.bond)].in_ring) continue;
        const auto v = static_cast<std::size_t>(nb.atom);
        if (seen[v]) continue;
        seen[v] = true;
        prev_atom[v] = u;
        prev_bond[v] = nb.bond;
        queue.push_back(nb.atom);
      }
    }
    if (!seen[static_cast<std::size_t>(dst)]) continue;
    EdgeSet edges(words, 0);
    edges[b / 64] |= 1ULL << (b % 64);
    std::vector<int> path;
    for (int v = dst; v != src; v = prev_atom[static_cast<std::size_t>(v)]) {
      path.push_back(v);
      const auto pb = static_cast<std::size_t>(prev_bond[static_cast<std::size_t>(v)]);
      edges[pb / 64] |= 1ULL << (pb % 64);
    }
    path.push_back(src);
    std::reverse(path.begin(), path.end());
    candidates.emplace(std::move(edges), std::move(path));
  }

  std::vector<std::pair<EdgeSet, std::vector<int>>> sorted(candidates.begin(),
                                                           candidates.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y) {
    return x.second.size() < y.second.size();
  });

  // Greedy selection of GF(2)-independent cycles, smallest first.
  std::map<int, EdgeSet> basis;
  for (auto &[edges, atoms] : sorted) {
    if (rings_.size() >= cyclomatic) break;
    EdgeSet reduced = edges;
    for (int pivot = highest_bit(reduced); pivot >= 0;
         pivot = highest_bit(reduced)) {
      auto it = basis.find(pivot);
      if (it == basis.end()) break;
      for (std::size_t w = 0; w < words; ++w) reduced[w] ^= it->second[w];
    }
    const int pivot = highest_bit(reduced);
    if (pivot < 0) continue;
    basis.emplace(pivot, std::move(reduced));
    rings_.push_back(atoms);
  }
}

MolecularGraph MolecularGraph::induced_subgraph(
    std::span<const int> atom_indices) const {
  MolecularGraph sub;
  std::vector<int> remap(atoms_.size(), -1);
  for (int idx : atom_indices) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= atoms_.size())
      throw IndexError("induced_subgraph: atom index " + std::to_string(idx)
                       + " out of range");
    if (remap[static_cast<std::size_t>(idx)] >= 0) continue;
    remap[static_cast<std::size_t>(idx)] = sub.add_atom(atoms_[static_cast<std::size_t>(idx)]);
  }
  for (const Bond &b : bonds_) {
    const int u = remap[static_cast<std::size_t>(b.begin)];
    const int v = remap[static_cast<std::size_t>(b.end)];
    if (u >= 0 && v >= 0) sub.add_bond(u, v, b.order);
  }
  sub.finalize();
  sub.source_smiles = source_smiles;
  return sub;
}

void MolecularGraph::set_features(std::vector<double> atom_features,
                                  std::vector<double> bond_features) {
  atom_features_ = std::move(atom_features);
  bond_features_ = std::move(bond_features);
}

}  // namespace asemol
