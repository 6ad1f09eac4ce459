// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lipognn/error.hpp"
#include "lipognn/molgraph.hpp"
#include "lipognn/rng.hpp"
#include "lipognn/smiles_parser.hpp"

// Canonical atom ranking by iterative invariant refinement, and a SMILES
// writer driven by it. canonical_ranks leaves ties in place: atoms sharing
// a rank are indistinguishable under refinement, which is what the symmetry
// classifier keys on. The writer uses canonical_writer_ranks, which breaks
// those ties to a full ordering so the emitted string is independent of the
// input atom numbering. Ring flags participate in the initial invariant, so
// callers should run ring perception first (mol_from_smiles does).

namespace lipognn {

namespace detail {

// Refines an initial partition (dense ranks) by absorbing sorted neighbor
// ranks until it stops splitting. Renumbers densely; returns #classes.
inline int refine_ranks(const MolGraph& mol, std::vector<int>& ranks) {
  const int n = mol.num_atoms();
  if (n == 0) return 0;
  int n_classes = 1 + *std::max_element(ranks.begin(), ranks.end());
  while (true) {
    using Signature = std::pair<int, std::vector<int>>;
    std::vector<Signature> sig(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> nbr_ranks;
      nbr_ranks.reserve(mol.adjacency[i].size());
      for (auto [nbr, bond] : mol.adjacency[i]) nbr_ranks.push_back(ranks[nbr]);
      std::sort(nbr_ranks.begin(), nbr_ranks.end());
      sig[i] = {ranks[i], std::move(nbr_ranks)};
    }
    std::vector<Signature> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < n; ++i) {
      ranks[i] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[i]) -
          sorted.begin());
    }
    int refined = static_cast<int>(sorted.size());
    if (refined == n_classes) break;
    n_classes = refined;
  }
  return n_classes;
}

}  // namespace detail

// One rank per atom, in [0, #classes). Refinement starts from
// (element, degree, charge, total hydrogens, aromatic, in-ring) and absorbs
// sorted neighbor ranks until the partition stops splitting.
inline std::vector<int> canonical_ranks(const MolGraph& mol) {
  const int n = mol.num_atoms();
  std::vector<int> ranks(n, 0);
  if (n == 0) return ranks;

  {
    using Invariant = std::tuple<int, int, int, int, bool, bool>;
    std::vector<Invariant> inv(n);
    for (int i = 0; i < n; ++i) {
      const Atom& atom = mol.atoms[i];
      inv[i] = {static_cast<int>(atom.element),
                static_cast<int>(mol.adjacency[i].size()),
                atom.formal_charge,
                atom.total_h(),
                atom.aromatic,
                atom.in_ring};
    }
    std::vector<Invariant> sorted = inv;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < n; ++i) {
      ranks[i] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), inv[i]) -
          sorted.begin());
    }
  }

  detail::refine_ranks(mol, ranks);
  return ranks;
}

// Discrete (all-distinct) ranks for the SMILES writer. Starts from
// canonical_ranks and, while ties remain, singles out one atom from the
// lowest tied class and re-refines. Atoms left tied by refinement are
// interchangeable under an automorphism for molecular graphs, so the output
// string does not depend on which member is promoted — and therefore does
// not depend on the input atom numbering.
inline std::vector<int> canonical_writer_ranks(const MolGraph& mol) {
  const int n = mol.num_atoms();
  std::vector<int> ranks = canonical_ranks(mol);
  if (n == 0) return ranks;
  int n_classes = 1 + *std::max_element(ranks.begin(), ranks.end());
  while (n_classes < n) {
    std::vector<int> class_size(n_classes, 0);
    for (int r : ranks) ++class_size[r];
    int tied_rank = 0;
    while (class_size[tied_rank] < 2) ++tied_rank;
    int chosen = 0;
    while (ranks[chosen] != tied_rank) ++chosen;
    for (int& r : ranks) r *= 2;
    --ranks[chosen];
    n_classes = detail::refine_ranks(mol, ranks);
  }
  return ranks;
}

// A molecule is symmetric when refinement cannot tell all atoms apart.
inline bool is_symmetric(const MolGraph& mol) {
  std::vector<int> ranks = canonical_ranks(mol);
  std::vector<int> distinct = ranks;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  return static_cast<int>(distinct.size()) < mol.num_atoms();
}

namespace detail {

inline void append_charge(std::string& out, int charge) {
  if (charge == 0) return;
  out.push_back(charge > 0 ? '+' : '-');
  int magnitude = std::abs(charge);
  if (magnitude > 1) out += std::to_string(magnitude);
}

// Atom token. Organic-subset atoms are written bare when re-parsing would
// reproduce their hydrogen count; everything else gets a bracket with an
// explicit H count. Stereo flags are emitted verbatim without re-deriving
// parity for the new neighbor order; downstream treats them as plain atom
// attributes.
inline std::string atom_token(const MolGraph& mol, int idx) {
  const Atom& atom = mol.atoms[idx];
  const ElementInfo& info = element_info(atom.element);
  double sum = 0.0;
  for (auto [nbr, bond] : mol.adjacency[idx]) {
    sum += mol.bonds[bond].order_value();
  }
  int floored = static_cast<int>(std::floor(sum));

  std::string symbol(info.symbol);
  if (atom.aromatic) {
    for (char& c : symbol) c = static_cast<char>(std::tolower(c));
  }

  bool bare_ok = info.organic_subset && atom.formal_charge == 0 &&
                 !atom.isotope && atom.chirality == Chirality::None;
  if (bare_ok) {
    auto h = implicit_hydrogens(atom.element, 0, atom.aromatic, floored);
    bare_ok = h && *h == atom.total_h();
  }
  if (bare_ok) return symbol;

  std::string out = "[";
  if (atom.isotope) out += std::to_string(*atom.isotope);
  out += symbol;
  if (atom.chirality == Chirality::CCW) out += "@";
  if (atom.chirality == Chirality::CW) out += "@@";
  int h = atom.total_h();
  if (h > 0) {
    out += "H";
    if (h > 1) out += std::to_string(h);
  }
  append_charge(out, atom.formal_charge);
  out += "]";
  return out;
}

inline std::string bond_token(const MolGraph& mol, int bond_idx) {
  const Bond& bond = mol.bonds[bond_idx];
  switch (bond.order) {
    case BondOrder::Single:
      // explicit between two aromatic atoms, otherwise the default
      if (mol.atoms[bond.a].aromatic && mol.atoms[bond.b].aromatic) return "-";
      return "";
    case BondOrder::Double: return "=";
    case BondOrder::Triple: return "#";
    case BondOrder::Aromatic: return "";  // default between aromatic atoms
  }
  return "";
}

// DFS SMILES writer. `priority` orders both the start atom choice and the
// neighbor visit order; ties fall back to the atom index.
class SmilesWriter {
 public:
  SmilesWriter(const MolGraph& mol, std::span<const int> priority)
      : mol_(mol), priority_(priority.begin(), priority.end()) {}

  std::string write() {
    const int n = mol_.num_atoms();
    emit_pos_.assign(n, -1);
    children_.assign(n, {});
    closure_bonds_.assign(n, {});
    parent_bond_.assign(n, -1);
    bond_used_.assign(mol_.num_bonds(), false);

    int start = 0;
    for (int i = 1; i < n; ++i) {
      if (key(i) < key(start)) start = i;
    }
    discover(start);

    for (int i = 0; i < n; ++i) {
      std::sort(closure_bonds_[i].begin(), closure_bonds_[i].end(),
                [&](int x, int y) {
                  int ox = mol_.bonds[x].other(i), oy = mol_.bonds[y].other(i);
                  return emit_pos_[ox] < emit_pos_[oy];
                });
    }

    std::string out;
    emit(start, out);
    return out;
  }

 private:
  std::pair<int, int> key(int atom) const { return {priority_[atom], atom}; }

  void discover(int start) {
    // iterative DFS so deep chains cannot overflow the stack
    struct Frame {
      int atom;
      std::vector<int> nbrs;
      std::size_t next = 0;
    };
    std::vector<Frame> stack;
    int counter = 0;

    auto open = [&](int atom) {
      emit_pos_[atom] = counter++;
      Frame frame{atom, {}, 0};
      frame.nbrs.reserve(mol_.adjacency[atom].size());
      for (auto [nbr, bond] : mol_.adjacency[atom]) frame.nbrs.push_back(nbr);
      std::sort(frame.nbrs.begin(), frame.nbrs.end(),
                [&](int x, int y) { return key(x) < key(y); });
      stack.push_back(std::move(frame));
    };

    open(start);
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next >= frame.nbrs.size()) {
        stack.pop_back();
        continue;
      }
      int nbr = frame.nbrs[frame.next++];
      int bond = bond_between(frame.atom, nbr);
      if (bond_used_[bond]) continue;
      if (emit_pos_[nbr] < 0) {
        bond_used_[bond] = true;
        parent_bond_[nbr] = bond;
        children_[frame.atom].push_back(nbr);
        open(nbr);
      } else {
        bond_used_[bond] = true;
        closure_bonds_[frame.atom].push_back(bond);
        closure_bonds_[nbr].push_back(bond);
      }
    }
  }

  int bond_between(int a, int b) const {
    for (auto [nbr, bond] : mol_.adjacency[a]) {
      if (nbr == b) return bond;
    }
    return -1;
  }

  std::string closure_label(int bond) {
    auto it = closure_digit_.find(bond);
    int digit;
    if (it == std::end(closure_digit_)) {
      digit = 1;
      while (digits_in_use_.count(digit)) ++digit;
      if (digit > 99) throw Error("more than 99 simultaneous ring closures");
      digits_in_use_.insert(digit);
      closure_digit_[bond] = digit;
    } else {
      digit = it->second;
      digits_in_use_.erase(digit);
    }
    if (digit < 10) return std::to_string(digit);
    return "%" + std::to_string(digit);
  }

  void emit(int root, std::string& out) {
    // tasks run LIFO: a parenthesized child pushes its closing ')' first so
    // it lands after the whole subtree
    struct Task {
      int atom;           // -1 for a bare text task
      bool parenthesize;
      const char* text;
    };
    std::vector<Task> stack{{root, false, nullptr}};
    while (!stack.empty()) {
      Task task = stack.back();
      stack.pop_back();
      if (task.atom < 0) {
        out += task.text;
        continue;
      }
      int atom = task.atom;
      if (task.parenthesize) out += "(";
      if (parent_bond_[atom] >= 0) out += bond_token(mol_, parent_bond_[atom]);
      out += atom_token(mol_, atom);
      for (int bond : closure_bonds_[atom]) {
        out += bond_token(mol_, bond);
        out += closure_label(bond);
      }
      if (task.parenthesize) stack.push_back({-1, false, ")"});
      const std::vector<int>& kids = children_[atom];
      const int n_kids = static_cast<int>(kids.size());
      for (int i = n_kids - 1; i >= 0; --i) {
        stack.push_back({kids[i], i + 1 < n_kids, nullptr});
      }
    }
  }

  const MolGraph& mol_;
  std::vector<int> priority_;
  std::vector<int> emit_pos_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> closure_bonds_;
  std::vector<int> parent_bond_;
  std::vector<bool> bond_used_;
  std::map<int, int> closure_digit_;
  std::set<int> digits_in_use_;
};

}  // namespace detail

inline std::string write_smiles(const MolGraph& mol,
                                std::span<const int> priority) {
  if (mol.num_atoms() == 0) throw Error("cannot write an empty molecule");
  return detail::SmilesWriter(mol, priority).write();
}

// Deterministic canonical form: DFS from the lowest-ranked atom, neighbors
// visited in rank order, with refinement ties broken up front so the
// traversal never consults the input atom numbering. Output is a fixed
// point of parse + canonicalize. Aromaticity is written exactly as stored,
// so a Kekule input and an aromatic input of the same compound keep
// distinct canonical forms.
inline std::string canonical_smiles(const MolGraph& mol) {
  std::vector<int> ranks = canonical_writer_ranks(mol);
  return write_smiles(mol, ranks);
}

// A random traversal of the same molecule: a valid SMILES whose re-parse
// renumbers the atoms. Handy for order-invariance checks.
inline std::string random_equivalent_smiles(const MolGraph& mol,
                                            Xoshiro256& rng) {
  std::vector<int> priority = random_permutation(mol.num_atoms(), rng);
  return write_smiles(mol, priority);
}

}  // namespace lipognn
