//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/smiles.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "asemol/error.h"
#include "asemol/log.h"

namespace asemol {

namespace {

constexpr std::array<std::string_view, 118> kPeriodicTable = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
    "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
    "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

bool is_element(std::string_view symbol) {
  return std::find(kPeriodicTable.begin(), kPeriodicTable.end(), symbol)
         != kPeriodicTable.end();
}

// Aromatic symbols accepted inside brackets, lowercase as written.
constexpr std::array<std::string_view, 9> kAromaticBracket = {
    "se", "as", "te", "b", "c", "n", "o", "p", "s"};

struct ValenceRule {
  std::string_view symbol;
  std::array<int, 3> valences;  // ascending, 0 = unused
};

constexpr std::array<ValenceRule, 10> kOrganicValences = {{
    {"B", {3, 0, 0}},
    {"C", {4, 0, 0}},
    {"N", {3, 5, 0}},
    {"O", {2, 0, 0}},
    {"P", {3, 5, 0}},
    {"S", {2, 4, 6}},
    {"F", {1, 0, 0}},
    {"Cl", {1, 0, 0}},
    {"Br", {1, 0, 0}},
    {"I", {1, 0, 0}},
}};

const ValenceRule *valence_rule(std::string_view symbol) {
  for (const auto &r : kOrganicValences) {
    if (r.symbol == symbol) return &r;
  }
  return nullptr;
}

std::string capitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty())
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

struct RawAtom {
  std::string symbol;
  bool aromatic = false;
  bool bracket = false;
  int charge = 0;
  int explicit_h = 0;
  int hydrogens = 0;
  std::size_t offset = 0;
};

struct RawBond {
  int begin;
  int end;
  BondOrder order;
};

struct PendingBond {
  BondOrder order;
  std::size_t offset;
};

struct RingOpening {
  int atom;
  std::optional<PendingBond> bond;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  MolecularGraph run();

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }

  void warn_once(const std::string &what) {
    if (std::find(warnings_.begin(), warnings_.end(), what) == warnings_.end())
      warnings_.push_back(what);
  }

  int add_atom(RawAtom atom);
  void connect(int a, int b, std::optional<PendingBond> spec,
               std::size_t offset);
  void parse_bracket();
  void parse_organic();
  void parse_ring_closure();
  std::size_t read_number(std::size_t max_digits);

  void assign_implicit_hydrogens();
  MolecularGraph assemble();

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<RawAtom> atoms_;
  std::vector<RawBond> bonds_;
  int prev_ = -1;
  std::optional<PendingBond> pending_;
  std::vector<std::pair<int, std::size_t>> branches_;
  std::map<int, RingOpening> rings_;
  std::vector<std::string> warnings_;
};

int Parser::add_atom(RawAtom atom) {
  atoms_.push_back(std::move(atom));
  const int id = static_cast<int>(atoms_.size()) - 1;
  if (prev_ >= 0) connect(prev_, id, pending_, atoms_.back().offset);
  pending_.reset();
  prev_ = id;
  return id;
}

void Parser::connect(int a, int b, std::optional<PendingBond> spec,
                     std::size_t offset) {
  if (a == b) throw ParseError("ring closure bonds an atom to itself", offset);
  for (const RawBond &rb : bonds_) {
    if ((rb.begin == a && rb.end == b) || (rb.begin == b && rb.end == a))
      throw ParseError("duplicate bond", offset);
  }
  BondOrder order = BondOrder::Single;
  if (spec) {
    order = spec->order;
  } else if (atoms_[static_cast<std::size_t>(a)].aromatic
             && atoms_[static_cast<std::size_t>(b)].aromatic) {
    order = BondOrder::Aromatic;
  }
  bonds_.push_back({a, b, order});
}

std::size_t Parser::read_number(std::size_t max_digits) {
  std::size_t value = 0, digits = 0;
  while (digits < max_digits && std::isdigit(static_cast<unsigned char>(peek()))) {
    value = value * 10 + static_cast<std::size_t>(peek() - '0');
    ++pos_;
    ++digits;
  }
  return value;
}

void Parser::parse_bracket() {
  const std::size_t open = pos_;
  const std::size_t close = s_.find(']', open);
  if (close == std::string_view::npos)
    throw ParseError("unclosed '['", open);
  ++pos_;
  RawAtom atom;
  atom.bracket = true;
  atom.offset = open;

  if (std::isdigit(static_cast<unsigned char>(peek()))) {
    read_number(4);
    warn_once("isotope label ignored");
  }

  const char c = peek();
  if (c == '*') {
    atom.symbol = "*";
    ++pos_;
  } else if (std::islower(static_cast<unsigned char>(c))) {
    for (std::string_view sym : kAromaticBracket) {
      if (s_.substr(pos_, sym.size()) == sym) {
        atom.symbol = capitalize(sym);
        atom.aromatic = true;
        pos_ += sym.size();
        break;
      }
    }
    if (atom.symbol.empty())
      throw ParseError("unknown aromatic element in brackets", pos_);
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    const char n = peek(1);
    if (std::islower(static_cast<unsigned char>(n))
        && is_element(std::string{c, n})) {
      atom.symbol = std::string{c, n};
      pos_ += 2;
    } else if (is_element(std::string(1, c))) {
      atom.symbol = std::string(1, c);
      pos_ += 1;
    } else {
      throw ParseError("unknown element", pos_);
    }
  } else {
    throw ParseError("expected element symbol", pos_);
  }

  if (peek() == '@') {
    warn_once("stereo marks ignored");
    while (peek() == '@') ++pos_;
    // Extended chirality classes (@TH1, @OH12, ...)
    if (std::isupper(static_cast<unsigned char>(peek()))
        && std::isupper(static_cast<unsigned char>(peek(1)))) {
      const auto cls = s_.substr(pos_, 2);
      if (cls == "TH" || cls == "AL" || cls == "SP" || cls == "TB"
          || cls == "OH") {
        pos_ += 2;
        read_number(2);
      }
    }
  }

  if (peek() == 'H') {
    ++pos_;
    atom.explicit_h = std::isdigit(static_cast<unsigned char>(peek()))
                          ? static_cast<int>(read_number(1))
                          : 1;
  }

  if (peek() == '+' || peek() == '-') {
    const char sign = peek();
    int magnitude = 0;
    while (peek() == sign) {
      ++pos_;
      ++magnitude;
    }
    if (magnitude == 1 && std::isdigit(static_cast<unsigned char>(peek())))
      magnitude = static_cast<int>(read_number(2));
    atom.charge = sign == '+' ? magnitude : -magnitude;
  }

  if (peek() == ':') {
    ++pos_;
    read_number(6);
  }

  if (pos_ != close) throw ParseError("unexpected token in bracket atom", pos_);
  ++pos_;
  add_atom(std::move(atom));
}

void Parser::parse_organic() {
  RawAtom atom;
  atom.offset = pos_;
  const char c = peek();
  const char n = peek(1);
  if (c == 'C' && n == 'l') {
    atom.symbol = "Cl";
    pos_ += 2;
  } else if (c == 'B' && n == 'r') {
    atom.symbol = "Br";
    pos_ += 2;
  } else if (c == '*') {
    atom.symbol = "*";
    ++pos_;
  } else if (c == 'B' || c == 'C' || c == 'N' || c == 'O' || c == 'P'
             || c == 'S' || c == 'F' || c == 'I') {
    atom.symbol = std::string(1, c);
    ++pos_;
  } else if (c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p'
             || c == 's') {
    atom.symbol = capitalize(std::string_view(&c, 1));
    atom.aromatic = true;
    ++pos_;
  } else {
    throw ParseError(std::string("unknown element token '") + c + "'", pos_);
  }
  add_atom(std::move(atom));
}

void Parser::parse_ring_closure() {
  const std::size_t start = pos_;
  if (prev_ < 0) throw ParseError("ring closure without preceding atom", start);
  int label;
  if (peek() == '%') {
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))
        || !std::isdigit(static_cast<unsigned char>(peek(1))))
      throw ParseError("'%' must be followed by two digits", start);
    label = static_cast<int>(read_number(2));
  } else {
    label = peek() - '0';
    ++pos_;
  }
  auto it = rings_.find(label);
  if (it == rings_.end()) {
    rings_.emplace(label, RingOpening{prev_, pending_, start});
  } else {
    const RingOpening opening = it->second;
    rings_.erase(it);
    std::optional<PendingBond> spec = pending_;
    if (opening.bond) {
      if (spec && spec->order != opening.bond->order)
        throw ParseError("conflicting ring-closure bond orders", start);
      spec = opening.bond;
    }
    connect(opening.atom, prev_, spec, start);
  }
  pending_.reset();
}

MolecularGraph Parser::run() {
  if (s_.empty()) throw ParseError("empty SMILES", 0);
  while (pos_ < s_.size()) {
    const char c = peek();
    switch (c) {
    case '(':
      if (prev_ < 0) throw ParseError("branch without preceding atom", pos_);
      if (pending_) throw ParseError("bond symbol before '('", pos_);
      branches_.emplace_back(prev_, pos_);
      ++pos_;
      break;
    case ')':
      if (branches_.empty()) throw ParseError("unmatched ')'", pos_);
      if (pending_) throw ParseError("dangling bond before ')'", pending_->offset);
      if (prev_ == branches_.back().first && s_[pos_ - 1] == '(')
        throw ParseError("empty branch", pos_);
      prev_ = branches_.back().first;
      branches_.pop_back();
      ++pos_;
      break;
    case '-':
    case '=':
    case '#':
    case ':':
    case '/':
    case '\\': {
      if (prev_ < 0) throw ParseError("bond without preceding atom", pos_);
      if (pending_) throw ParseError("consecutive bond symbols", pos_);
      BondOrder order = BondOrder::Single;
      if (c == '=') order = BondOrder::Double;
      if (c == '#') order = BondOrder::Triple;
      if (c == ':') order = BondOrder::Aromatic;
      if (c == '/' || c == '\\') warn_once("stereo marks ignored");
      pending_ = PendingBond{order, pos_};
      ++pos_;
      break;
    }
    case '.':
      if (pending_) throw ParseError("dangling bond before '.'", pending_->offset);
      if (prev_ < 0) throw ParseError("'.' without preceding atom", pos_);
      prev_ = -1;
      ++pos_;
      break;
    case '[':
      parse_bracket();
      break;
    case '%':
      parse_ring_closure();
      break;
    default:
      if (std::isdigit(static_cast<unsigned char>(c))) {
        parse_ring_closure();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        throw ParseError("whitespace inside SMILES", pos_);
      } else {
        parse_organic();
      }
    }
  }
  if (!branches_.empty()) throw ParseError("unclosed '('", branches_.back().second);
  if (!rings_.empty())
    throw ParseError("unclosed ring bond " + std::to_string(rings_.begin()->first),
                     rings_.begin()->second.offset);
  if (pending_) throw ParseError("dangling bond at end of input", pending_->offset);
  if (prev_ < 0) throw ParseError("SMILES ends with '.'", s_.size() - 1);

  assign_implicit_hydrogens();
  return assemble();
}

void Parser::assign_implicit_hydrogens() {
  std::vector<double> bond_sum(atoms_.size(), 0.0);
  std::vector<double> aromatic_sum(atoms_.size(), 0.0);
  for (const RawBond &b : bonds_) {
    for (int end : {b.begin, b.end}) {
      const auto e = static_cast<std::size_t>(end);
      bond_sum[e] += bond_order_value(b.order);
      aromatic_sum[e] +=
          b.order == BondOrder::Aromatic ? 1.0 : bond_order_value(b.order);
    }
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    RawAtom &a = atoms_[i];
    if (a.bracket) {
      a.hydrogens = a.explicit_h;
      continue;
    }
    const ValenceRule *rule = valence_rule(a.symbol);
    if (rule == nullptr) continue;
    if (a.aromatic) {
      // One valence electron is committed to the aromatic system.
      const int target = rule->valences[0] - 1;
      a.hydrogens = std::max(0, target - static_cast<int>(aromatic_sum[i]));
      continue;
    }
    const int used = static_cast<int>(std::ceil(bond_sum[i] - 1e-9));
    a.hydrogens = 0;
    for (int v : rule->valences) {
      if (v != 0 && v >= used) {
        a.hydrogens = v - used;
        break;
      }
    }
  }
}

MolecularGraph Parser::assemble() {
  // Fold explicit hydrogen atoms into their heavy neighbor.
  std::vector<bool> keep(atoms_.size(), true);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].symbol != "H") continue;
    keep[i] = false;
    std::vector<int> heavy;
    for (const RawBond &b : bonds_) {
      if (b.begin == static_cast<int>(i)) heavy.push_back(b.end);
      if (b.end == static_cast<int>(i)) heavy.push_back(b.begin);
    }
    if (heavy.size() == 1 && atoms_[static_cast<std::size_t>(heavy[0])].symbol != "H")
      atoms_[static_cast<std::size_t>(heavy[0])].hydrogens += 1;
  }

  MolecularGraph full;
  std::vector<int> remap(atoms_.size(), -1);
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!keep[i]) continue;
    const RawAtom &r = atoms_[i];
    Atom atom;
    atom.symbol = r.symbol;
    atom.element = element_from_symbol(r.symbol);
    atom.formal_charge = r.charge;
    atom.is_aromatic = r.aromatic;
    atom.num_hydrogens = r.hydrogens;
    remap[i] = full.add_atom(std::move(atom));
    offsets.push_back(r.offset);
  }
  if (full.num_atoms() == 0) throw ParseError("no heavy atoms", 0);
  for (const RawBond &b : bonds_) {
    const int u = remap[static_cast<std::size_t>(b.begin)];
    const int v = remap[static_cast<std::size_t>(b.end)];
    if (u >= 0 && v >= 0) full.add_bond(u, v, b.order);
  }

  MolecularGraph graph;
  const auto comp = full.component_ids();
  const int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
  if (ncomp > 1) {
    std::vector<int> sizes(static_cast<std::size_t>(ncomp), 0);
    for (int c : comp) ++sizes[static_cast<std::size_t>(c)];
    const int largest = static_cast<int>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<int> kept;
    std::vector<std::size_t> kept_offsets;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (comp[i] == largest) {
        kept.push_back(static_cast<int>(i));
        kept_offsets.push_back(offsets[i]);
      }
    }
    graph = full.induced_subgraph(kept);
    offsets = std::move(kept_offsets);
    graph.dropped_components = ncomp - 1;
  } else {
    full.finalize();
    graph = std::move(full);
  }

  for (std::size_t b = 0; b < graph.num_bonds(); ++b) {
    Bond &bond = graph.mutable_bond(static_cast<int>(b));
    if (bond.order == BondOrder::Aromatic && !bond.in_ring)
      bond.order = BondOrder::Single;
  }
  for (std::size_t i = 0; i < graph.num_atoms(); ++i) {
    const Atom &a = graph.atom(static_cast<int>(i));
    if (a.is_aromatic && !a.in_ring)
      throw ParseError("aromatic atom outside a ring", offsets[i]);
  }

  graph.source_smiles = std::string(s_);
  graph.warnings = std::move(warnings_);
  return graph;
}

}  // namespace

MolecularGraph parse_smiles(std::string_view smiles) {
  Parser parser(smiles);
  MolecularGraph g = parser.run();
  for (const auto &w : g.warnings)
    log_debug(std::string(smiles) + ": " + w);
  return g;
}

}  // namespace asemol
