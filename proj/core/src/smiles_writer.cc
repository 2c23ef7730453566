//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "asemol/rng.h"
#include "asemol/smiles.h"

namespace asemol {

namespace {

bool organic_subset(std::string_view symbol) {
  static constexpr std::string_view kOrganic[] = {
      "B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I", "*"};
  return std::find(std::begin(kOrganic), std::end(kOrganic), symbol)
         != std::end(kOrganic);
}

std::string lowercase(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string atom_token(const Atom &a, SmilesStyle style) {
  const std::string sym = a.is_aromatic ? lowercase(a.symbol) : a.symbol;
  if (style == SmilesStyle::kSkeleton && a.formal_charge == 0
      && organic_subset(a.symbol)) {
    return sym;
  }
  std::string out = "[" + sym;
  if (style == SmilesStyle::kExplicit && a.num_hydrogens > 0) {
    out += 'H';
    if (a.num_hydrogens > 1) out += std::to_string(a.num_hydrogens);
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? '+' : '-';
    const int mag = std::abs(a.formal_charge);
    if (mag > 1) out += std::to_string(mag);
  }
  out += ']';
  return out;
}

std::string bond_token(const MolecularGraph &g, const Bond &b) {
  const bool both_aromatic =
      g.atom(b.begin).is_aromatic && g.atom(b.end).is_aromatic;
  switch (b.order) {
  case BondOrder::Single:
    return both_aromatic ? "-" : "";
  case BondOrder::Double:
    return "=";
  case BondOrder::Triple:
    return "#";
  case BondOrder::Aromatic:
    return both_aromatic ? "" : ":";
  }
  return "";
}

std::string ring_label(int digit) {
  return digit < 10 ? std::to_string(digit) : "%" + std::to_string(digit);
}

using NeighborOrder = std::function<std::vector<Neighbor>(int)>;

class DfsWriter {
 public:
  DfsWriter(const MolecularGraph &g, SmilesStyle style, NeighborOrder order)
      : g_(g), style_(style), order_(std::move(order)),
        visited_(g.num_atoms(), false), children_(g.num_atoms()),
        openings_(g.num_atoms()), closings_(g.num_atoms()),
        closure_seen_(g.num_bonds(), false) {}

  std::string write_component(int start) {
    discover(start, -1);
    std::string out;
    emit(start, out);
    return out;
  }

  bool visited(int atom) const { return visited_[static_cast<std::size_t>(atom)]; }

 private:
  void discover(int u, int parent_bond) {
    visited_[static_cast<std::size_t>(u)] = true;
    for (const Neighbor &nb : order_(u)) {
      if (nb.bond == parent_bond) continue;
      if (visited_[static_cast<std::size_t>(nb.atom)]) {
        if (!closure_seen_[static_cast<std::size_t>(nb.bond)]) {
          closure_seen_[static_cast<std::size_t>(nb.bond)] = true;
          openings_[static_cast<std::size_t>(nb.atom)].push_back(nb.bond);
          closings_[static_cast<std::size_t>(u)].push_back(nb.bond);
        }
        continue;
      }
      children_[static_cast<std::size_t>(u)].push_back(nb);
      discover(nb.atom, nb.bond);
    }
  }

  int allocate_digit() {
    int d = 1;
    while (digits_in_use_.count(d) != 0) ++d;
    digits_in_use_.insert({d, true});
    return d;
  }

  void emit(int u, std::string &out) {
    out += atom_token(g_.atom(u), style_);
    for (int bond : openings_[static_cast<std::size_t>(u)]) {
      const int d = allocate_digit();
      digit_of_[bond] = d;
      out += bond_token(g_, g_.bond(bond)) + ring_label(d);
    }
    for (int bond : closings_[static_cast<std::size_t>(u)]) {
      const int d = digit_of_.at(bond);
      out += ring_label(d);
      digits_in_use_.erase(d);
    }
    const auto &kids = children_[static_cast<std::size_t>(u)];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const bool last = i + 1 == kids.size();
      if (!last) out += '(';
      out += bond_token(g_, g_.bond(kids[i].bond));
      emit(kids[i].atom, out);
      if (!last) out += ')';
    }
  }

  const MolecularGraph &g_;
  SmilesStyle style_;
  NeighborOrder order_;
  std::vector<bool> visited_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<int>> openings_;
  std::vector<std::vector<int>> closings_;
  std::vector<bool> closure_seen_;
  std::map<int, bool> digits_in_use_;
  std::map<int, int> digit_of_;
};

std::vector<int> dense_ranks(const std::vector<std::vector<long>> &keys) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<int> ranks(keys.size(), 0);
  int r = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0 && keys[idx[i]] != keys[idx[i - 1]]) ++r;
    ranks[idx[i]] = r;
  }
  return ranks;
}

int count_classes(const std::vector<int> &ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}

std::vector<int> refine(const MolecularGraph &g, std::vector<int> ranks) {
  const std::size_t n = g.num_atoms();
  int classes = count_classes(ranks);
  while (true) {
    std::vector<std::vector<long>> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<long, long>> nbs;
      for (const Neighbor &nb : g.neighbors(static_cast<int>(i))) {
        nbs.emplace_back(ranks[static_cast<std::size_t>(nb.atom)],
                         static_cast<long>(g.bond(nb.bond).order));
      }
      std::sort(nbs.begin(), nbs.end());
      keys[i].push_back(ranks[i]);
      for (const auto &[r, o] : nbs) {
        keys[i].push_back(r);
        keys[i].push_back(o);
      }
    }
    auto next = dense_ranks(keys);
    const int next_classes = count_classes(next);
    ranks = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  return ranks;
}

std::vector<int> canonical_ranks(const MolecularGraph &g, SmilesStyle style) {
  const std::size_t n = g.num_atoms();
  std::vector<std::vector<long>> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom &a = g.atom(static_cast<int>(i));
    std::vector<long> &k = keys[i];
    for (char c : a.symbol) k.push_back(c);
    k.push_back(-1);
    k.push_back(a.is_aromatic);
    k.push_back(a.formal_charge);
    k.push_back(a.degree);
    k.push_back(a.in_ring);
    if (style == SmilesStyle::kExplicit) k.push_back(a.num_hydrogens);
    std::vector<long> orders;
    for (const Neighbor &nb : g.neighbors(static_cast<int>(i)))
      orders.push_back(static_cast<long>(g.bond(nb.bond).order));
    std::sort(orders.begin(), orders.end());
    k.insert(k.end(), orders.begin(), orders.end());
  }
  auto ranks = refine(g, dense_ranks(keys));
  while (count_classes(ranks) < static_cast<int>(n)) {
    std::vector<int> count(n, 0);
    for (int r : ranks) ++count[static_cast<std::size_t>(r)];
    int tied = 0;
    while (count[static_cast<std::size_t>(tied)] < 2) ++tied;
    std::size_t chosen = 0;
    while (ranks[chosen] != tied) ++chosen;
    for (std::size_t i = 0; i < n; ++i) ranks[i] = 2 * ranks[i] + (i == chosen ? 0 : 1);
    ranks = refine(g, dense_ranks([&] {
      std::vector<std::vector<long>> k(n);
      for (std::size_t i = 0; i < n; ++i) k[i] = {ranks[i]};
      return k;
    }()));
  }
  return ranks;
}

}  // namespace

std::string canonical_smiles(const MolecularGraph &graph, SmilesStyle style) {
  if (graph.num_atoms() == 0) return "";
  const auto ranks = canonical_ranks(graph, style);
  DfsWriter writer(graph, style, [&](int u) {
    auto nbs = std::vector<Neighbor>(graph.neighbors(u).begin(),
                                     graph.neighbors(u).end());
    std::sort(nbs.begin(), nbs.end(), [&](const Neighbor &a, const Neighbor &b) {
      return ranks[static_cast<std::size_t>(a.atom)]
             < ranks[static_cast<std::size_t>(b.atom)];
    });
    return nbs;
  });
  std::vector<int> by_rank(graph.num_atoms());
  for (std::size_t i = 0; i < by_rank.size(); ++i)
    by_rank[static_cast<std::size_t>(ranks[i])] = static_cast<int>(i);
  std::string out;
  for (int start : by_rank) {
    if (writer.visited(start)) continue;
    if (!out.empty()) out += '.';
    out += writer.write_component(start);
  }
  return out;
}

std::string random_smiles(const MolecularGraph &graph, std::uint64_t seed) {
  if (graph.num_atoms() == 0) return "";
  Rng rng(seed);
  std::vector<int> starts(graph.num_atoms());
  std::iota(starts.begin(), starts.end(), 0);
  std::shuffle(starts.begin(), starts.end(), rng);
  DfsWriter writer(graph, SmilesStyle::kExplicit, [&](int u) {
    auto nbs = std::vector<Neighbor>(graph.neighbors(u).begin(),
                                     graph.neighbors(u).end());
    std::shuffle(nbs.begin(), nbs.end(), rng);
    return nbs;
  });
  std::string out;
  for (int start : starts) {
    if (writer.visited(start)) continue;
    if (!out.empty()) out += '.';
    out += writer.write_component(start);
  }
  return out;
}

}  // namespace asemol
