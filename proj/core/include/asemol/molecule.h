//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_MOLECULE_H_
#define ASEMOL_MOLECULE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asemol {

// Feature slots for elements; everything else maps to kOther.
enum class Element : std::uint8_t { B, C, N, O, F, P, S, Cl, Br, I, Other };

inline constexpr std::size_t kNumElementSlots = 11;

Element element_from_symbol(std::string_view symbol);
std::string_view element_symbol(Element element);

enum class BondOrder : std::uint8_t { Single, Double, Triple, Aromatic };

double bond_order_value(BondOrder order);

struct Atom {
  Element element = Element::C;
  // Periodic-table symbol, capitalized ("C", "Cl", "Se").
  std::string symbol = "C";
  int formal_charge = 0;
  bool is_aromatic = false;
  int degree = 0;
  int num_hydrogens = 0;
  bool in_ring = false;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::Single;
  bool in_ring = false;

  int other(int atom) const { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

/// Heavy-atom molecular graph with perceived rings and optional features.
///
/// Build with add_atom()/add_bond(), then finalize() to compute degrees,
/// ring membership and the smallest set of smallest rings.
class MolecularGraph {
 public:
  int add_atom(Atom atom);
  int add_bond(int begin, int end, BondOrder order);

  void finalize();

  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t num_bonds() const { return bonds_.size(); }

  const Atom &atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  Atom &mutable_atom(int i) { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond &bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  Bond &mutable_bond(int i) { return bonds_[static_cast<std::size_t>(i)]; }

  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }

  std::span<const Neighbor> neighbors(int atom) const {
    return adjacency_[static_cast<std::size_t>(atom)];
  }
  std::optional<int> bond_between(int u, int v) const;
  bool adjacent(int u, int v) const { return bond_between(u, v).has_value(); }

  // Symmetric N x N 0/1 matrix with zero diagonal, row-major.
  std::vector<std::uint8_t> adjacency_matrix() const;

  const std::vector<std::vector<int>> &rings() const { return rings_; }
  std::size_t num_components() const;
  // Component id per atom, numbered in order of first atom.
  std::vector<int> component_ids() const;

  /// Graph induced by `atom_indices` (ascending order is preserved). Ring
  /// flags are recomputed on the subgraph; hydrogen counts are copied.
  MolecularGraph induced_subgraph(std::span<const int> atom_indices) const;

  // Features are populated by featurize(); empty until then.
  bool has_features() const { return !atom_features_.empty() || atoms_.empty(); }
  std::span<const double> atom_features() const { return atom_features_; }
  std::span<const double> bond_features() const { return bond_features_; }
  void set_features(std::vector<double> atom_features,
                    std::vector<double> bond_features);

  std::string source_smiles;
  // Components discarded when the input held more than one.
  int dropped_components = 0;
  std::vector<std::string> warnings;

 private:
  void perceive_rings();

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::vector<int>> rings_;
  std::vector<double> atom_features_;
  std::vector<double> bond_features_;
};

}  // namespace asemol

#endif  // ASEMOL_MOLECULE_H_
