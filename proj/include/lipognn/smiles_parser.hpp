// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lipognn/error.hpp"
#include "lipognn/molgraph.hpp"

// SMILES subset parser. Covered grammar: organic-subset atoms, bracket
// atoms with isotope/@/@@/H-count/charge, bond symbols - = # :, branches,
// ring closures 1-9 and %nn. Aromaticity is taken exactly as written
// (lowercase atoms, ':' bonds, implicit bonds between two aromatic atoms);
// there is no aromatization or kekulization pass. Dot-separated fragments,
// wildcard atoms and reaction arrows are rejected.

namespace lipognn {

// Implicit hydrogen count from the valence model, or nullopt when the bond
// sum cannot be satisfied by any allowed valence state. Aromatic atoms use
// the lowest valence state and clamp at zero instead of erroring: their
// 1.5-per-bond sum overcounts pi lone-pair donors (aromatic O, S), which
// carry no hydrogens rather than being invalid.
inline std::optional<int> implicit_hydrogens(Element e, int charge,
                                             bool aromatic,
                                             int floored_bond_sum) {
  if (aromatic) {
    const ElementInfo& info = element_info(e);
    int v = adjusted_valence(e, info.valences[0], charge);
    return std::max(0, v - floored_bond_sum);
  }
  std::optional<int> v = smallest_valence_at_least(e, charge, floored_bond_sum);
  if (!v) return std::nullopt;
  return *v - floored_bond_sum;
}

namespace detail {

class SmilesParser {
 public:
  explicit SmilesParser(std::string_view text) : text_(text) {}

  MolGraph run() {
    if (text_.empty()) {
      throw ParseError(ParseErrorKind::EmptyInput, "empty SMILES");
    }
    while (!eof()) step();
    if (pending_bond_) {
      throw ParseError(ParseErrorKind::BadSyntax, "dangling bond symbol");
    }
    if (!branch_stack_.empty()) {
      throw ParseError(ParseErrorKind::UnbalancedParen,
                       "unclosed '(' in SMILES");
    }
    if (!ring_slots_.empty()) {
      throw ParseError(ParseErrorKind::UnclosedRing,
                       "ring closure digit never closed: " +
                           std::to_string(ring_slots_.begin()->first));
    }
    finalize();
    return std::move(mol_);
  }

 private:
  struct RingSlot {
    int atom;
    std::optional<BondOrder> order;
  };

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg) const {
    throw ParseError(kind, msg + " (at position " + std::to_string(pos_) +
                               " of \"" + std::string(text_) + "\")");
  }

  void step() {
    char c = peek();
    switch (c) {
      case '.':
        fail(ParseErrorKind::MultiFragment,
             "dot-separated multi-fragment input is not supported");
      case '(':
        if (prev_ < 0) fail(ParseErrorKind::BadSyntax, "branch before atom");
        if (pending_bond_) {
          fail(ParseErrorKind::BadSyntax, "bond symbol before '('");
        }
        branch_stack_.push_back(prev_);
        ++pos_;
        return;
      case ')':
        if (branch_stack_.empty()) {
          fail(ParseErrorKind::UnbalancedParen, "unmatched ')'");
        }
        if (pending_bond_) {
          fail(ParseErrorKind::BadSyntax, "bond symbol before ')'");
        }
        prev_ = branch_stack_.back();
        branch_stack_.pop_back();
        ++pos_;
        return;
      case '-': set_bond(BondOrder::Single); return;
      case '=': set_bond(BondOrder::Double); return;
      case '#': set_bond(BondOrder::Triple); return;
      case ':': set_bond(BondOrder::Aromatic); return;
      case '%': ring_closure(); return;
      case '[': bracket_atom(); return;
      case '*':
        fail(ParseErrorKind::UnknownElement, "wildcard atoms not supported");
      case '>':
        fail(ParseErrorKind::BadSyntax, "reaction SMILES not supported");
      default:
        if (std::isdigit(static_cast<unsigned char>(c))) {
          ring_closure();
          return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
          organic_atom();
          return;
        }
        fail(ParseErrorKind::BadSyntax,
             std::string("unexpected character '") + c + "'");
    }
  }

  void set_bond(BondOrder order) {
    if (pending_bond_) fail(ParseErrorKind::BadSyntax, "two bond symbols");
    if (prev_ < 0) {
      fail(ParseErrorKind::BadSyntax, "bond symbol before first atom");
    }
    pending_bond_ = order;
    ++pos_;
  }

  void organic_atom() {
    char c = peek();
    Element elem;
    bool aromatic = false;
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      elem = Element::Cl;
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      elem = Element::Br;
      pos_ += 2;
    } else {
      bool lower = std::islower(static_cast<unsigned char>(c)) != 0;
      char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      auto e = element_from_symbol(std::string_view(&up, 1));
      if (!e || !element_info(*e).organic_subset) {
        fail(ParseErrorKind::UnknownElement,
             std::string("element '") + c + "' outside the supported set");
      }
      if (lower && !element_info(*e).aromatic_allowed) {
        fail(ParseErrorKind::UnknownElement,
             std::string("'") + c + "' cannot be aromatic");
      }
      elem = *e;
      aromatic = lower;
      ++pos_;
    }
    Atom atom;
    atom.element = elem;
    atom.aromatic = aromatic;
    add_atom(atom);
  }

  void bracket_atom() {
    ++pos_;  // '['
    Atom atom;
    // isotope
    int isotope = 0;
    bool has_isotope = false;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      isotope = isotope * 10 + (peek() - '0');
      has_isotope = true;
      ++pos_;
    }
    if (has_isotope) atom.isotope = isotope;
    // symbol
    if (eof()) fail(ParseErrorKind::BadSyntax, "unterminated bracket atom");
    char c = peek();
    if (std::isupper(static_cast<unsigned char>(c))) {
      // a lowercase letter right after an uppercase one belongs to the
      // symbol ([Cl], [Si], also unsupported ones like [Fe])
      std::string sym(1, c);
      if (pos_ + 1 < text_.size() &&
          std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        sym.push_back(text_[pos_ + 1]);
      }
      auto e = element_from_symbol(sym);
      if (!e) {
        fail(ParseErrorKind::UnknownElement,
             "element '" + sym + "' outside the supported set");
      }
      atom.element = *e;
      pos_ += sym.size();
    } else if (std::islower(static_cast<unsigned char>(c))) {
      char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      auto e = element_from_symbol(std::string_view(&up, 1));
      if (!e || !element_info(*e).aromatic_allowed) {
        fail(ParseErrorKind::UnknownElement,
             std::string("aromatic element '") + c + "' not supported");
      }
      if (pos_ + 1 < text_.size() &&
          std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        fail(ParseErrorKind::UnknownElement,
             "two-letter aromatic elements not supported");
      }
      atom.element = *e;
      atom.aromatic = true;
      ++pos_;
    } else {
      fail(ParseErrorKind::BadSyntax, "expected element symbol in bracket");
    }
    // chirality
    if (!eof() && peek() == '@') {
      ++pos_;
      if (!eof() && peek() == '@') {
        atom.chirality = Chirality::CW;
        ++pos_;
      } else {
        atom.chirality = Chirality::CCW;
      }
    }
    // hydrogen count
    int hcount = 0;
    if (!eof() && peek() == 'H') {
      ++pos_;
      hcount = 1;
      if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        hcount = peek() - '0';
        ++pos_;
      }
    }
    atom.explicit_h = hcount;
    // charge
    if (!eof() && (peek() == '+' || peek() == '-')) {
      char sign_char = peek();
      int sign = sign_char == '+' ? 1 : -1;
      ++pos_;
      int magnitude = 1;
      if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        magnitude = peek() - '0';
        ++pos_;
      } else {
        while (!eof() && peek() == sign_char) {
          ++magnitude;
          ++pos_;
        }
      }
      atom.formal_charge = sign * magnitude;
    }
    if (eof() || peek() != ']') {
      fail(ParseErrorKind::BadSyntax, "expected ']' to close bracket atom");
    }
    ++pos_;
    add_atom(atom);
  }

  void ring_closure() {
    if (prev_ < 0) {
      fail(ParseErrorKind::BadSyntax, "ring closure before first atom");
    }
    int number;
    if (peek() == '%') {
      if (pos_ + 2 >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
        fail(ParseErrorKind::BadSyntax, "'%' needs two digits");
      }
      number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = peek() - '0';
      if (number == 0) {
        fail(ParseErrorKind::BadSyntax, "ring closure digit 0 not supported");
      }
      ++pos_;
    }
    auto it = ring_slots_.find(number);
    if (it == ring_slots_.end()) {
      ring_slots_[number] = RingSlot{prev_, pending_bond_};
      pending_bond_.reset();
      return;
    }
    RingSlot slot = it->second;
    ring_slots_.erase(it);
    if (slot.atom == prev_) {
      fail(ParseErrorKind::BadSyntax, "ring closure bonds atom to itself");
    }
    std::optional<BondOrder> order = pending_bond_;
    pending_bond_.reset();
    if (slot.order && order && *slot.order != *order) {
      fail(ParseErrorKind::BadSyntax,
           "conflicting bond orders on ring closure " + std::to_string(number));
    }
    if (!order) order = slot.order;
    add_bond(slot.atom, prev_, order);
  }

  void add_atom(const Atom& atom) {
    mol_.atoms.push_back(atom);
    int idx = mol_.num_atoms() - 1;
    if (prev_ >= 0) {
      std::optional<BondOrder> order = pending_bond_;
      pending_bond_.reset();
      add_bond(prev_, idx, order);
    }
    prev_ = idx;
  }

  // order unset => single, or aromatic when both endpoints are aromatic
  void add_bond(int a, int b, std::optional<BondOrder> order) {
    for (const Bond& bond : mol_.bonds) {
      if ((bond.a == a && bond.b == b) || (bond.a == b && bond.b == a)) {
        fail(ParseErrorKind::BadSyntax, "duplicate bond between atoms " +
                                            std::to_string(a) + " and " +
                                            std::to_string(b));
      }
    }
    BondOrder ord;
    if (order) {
      ord = *order;
    } else if (mol_.atoms[a].aromatic && mol_.atoms[b].aromatic) {
      ord = BondOrder::Aromatic;
    } else {
      ord = BondOrder::Single;
    }
    if (ord == BondOrder::Aromatic &&
        (!mol_.atoms[a].aromatic || !mol_.atoms[b].aromatic)) {
      fail(ParseErrorKind::BadSyntax,
           "aromatic bond between non-aromatic atoms");
    }
    mol_.bonds.push_back(Bond{a, b, ord, false});
  }

  void finalize() {
    mol_.adjacency.assign(mol_.num_atoms(), {});
    for (int i = 0; i < mol_.num_bonds(); ++i) {
      const Bond& bond = mol_.bonds[i];
      mol_.adjacency[bond.a].push_back({bond.b, i});
      mol_.adjacency[bond.b].push_back({bond.a, i});
    }
    for (int i = 0; i < mol_.num_atoms(); ++i) {
      Atom& atom = mol_.atoms[i];
      double sum = 0.0;
      for (auto [nbr, bond] : mol_.adjacency[i]) {
        sum += mol_.bonds[bond].order_value();
      }
      int floored = static_cast<int>(std::floor(sum));
      if (atom.explicit_h) {
        atom.implicit_h = 0;
        if (!atom.aromatic) {
          auto v = smallest_valence_at_least(atom.element, atom.formal_charge,
                                             floored + *atom.explicit_h);
          if (!v) valence_fail(i, floored + *atom.explicit_h);
        }
      } else {
        auto h = implicit_hydrogens(atom.element, atom.formal_charge,
                                    atom.aromatic, floored);
        if (!h) valence_fail(i, floored);
        atom.implicit_h = *h;
      }
    }
  }

  [[noreturn]] void valence_fail(int atom_idx, int bond_sum) const {
    const Atom& atom = mol_.atoms[atom_idx];
    throw ParseError(
        ParseErrorKind::ValenceError,
        "atom " + std::to_string(atom_idx) + " (" +
            std::string(symbol_of(atom.element)) + ") carries valence " +
            std::to_string(bond_sum) + ", more than any allowed state (in \"" +
            std::string(text_) + "\")");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MolGraph mol_;
  std::vector<int> branch_stack_;
  int prev_ = -1;
  std::optional<BondOrder> pending_bond_;
  std::map<int, RingSlot> ring_slots_;
};

}  // namespace detail

inline MolGraph parse_smiles(std::string_view text) {
  // trim surrounding whitespace; embedded whitespace is a syntax error
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw ParseError(ParseErrorKind::EmptyInput, "empty SMILES");
  }
  std::size_t last = text.find_last_not_of(" \t\r\n");
  return detail::SmilesParser(text.substr(first, last - first + 1)).run();
}

}  // namespace lipognn
