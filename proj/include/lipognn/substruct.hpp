// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "lipognn/featurize.hpp"
#include "lipognn/molgraph.hpp"

// Functional-group hyper-atoms. Five classes are extracted as a disjoint
// partition of the atoms (priority Sulfonamide > Ester > Acid > Amine >
// Ring, first claim wins, scans in ascending atom index); whatever is left
// becomes plain atoms. Hyper-atoms and plain atoms share one node-vector
// layout so the substructure encoder is a single linear map.

namespace lipognn {

enum class SubstructureKind : int {
  Ring = 0,
  Acid = 1,
  Amine = 2,
  Ester = 3,
  Sulfonamide = 4,
  PlainAtom = 5,
};

inline const char* to_string(SubstructureKind kind) {
  switch (kind) {
    case SubstructureKind::Ring: return "ring";
    case SubstructureKind::Acid: return "acid";
    case SubstructureKind::Amine: return "amine";
    case SubstructureKind::Ester: return "ester";
    case SubstructureKind::Sulfonamide: return "sulfonamide";
    case SubstructureKind::PlainAtom: return "plain";
  }
  return "?";
}

struct Substructure {
  SubstructureKind kind;
  std::vector<int> atom_indices;           // sorted
  std::vector<int> internal_bond_indices;  // sorted; both endpoints inside
};

struct SubstructureSet {
  std::vector<Substructure> substructures;  // in match order
  std::vector<int> plain_atoms;             // ascending atom index
};

// Node row layout:
//   per-element atom counts (12) | internal-edge count (1) |
//   summed formal charge (1) | total H (1) | aromatic flag (1) |
//   summed mass / 100 (1) | external valence (1) | kind one-hot (6) |
//   embedded atom-feature block (F_a; zero for hyper-atoms)
inline constexpr int kHyperAtomFeatureDim = 12 + 6 + 6 + kAtomFeatureDim;  // 62

namespace detail {

inline bool is_carbonyl_carbon(const MolGraph& mol, int atom_idx) {
  return mol.atoms[atom_idx].element == Element::C &&
         mol.has_double_bond_to(atom_idx, Element::O);
}

// Unclaimed neighbors of `atom` with a given element and bond order,
// ascending by atom index.
inline std::vector<int> free_neighbors(const MolGraph& mol,
                                       const std::vector<bool>& claimed,
                                       int atom, Element element,
                                       BondOrder order) {
  std::vector<int> found;
  for (auto [nbr, bond] : mol.adjacency[atom]) {
    if (!claimed[nbr] && mol.atoms[nbr].element == element &&
        mol.bonds[bond].order == order) {
      found.push_back(nbr);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

inline std::vector<int> internal_bonds(const MolGraph& mol,
                                       const std::vector<int>& atoms) {
  std::vector<bool> member(mol.num_atoms(), false);
  for (int at : atoms) member[at] = true;
  std::vector<int> bonds;
  for (int b = 0; b < mol.num_bonds(); ++b) {
    if (member[mol.bonds[b].a] && member[mol.bonds[b].b]) bonds.push_back(b);
  }
  return bonds;
}

}  // namespace detail

inline SubstructureSet extract_substructures(const MolGraph& mol) {
  using namespace detail;
  SubstructureSet out;
  std::vector<bool> claimed(mol.num_atoms(), false);

  auto emit = [&](SubstructureKind kind, std::vector<int> atoms) {
    std::sort(atoms.begin(), atoms.end());
    for (int at : atoms) claimed[at] = true;
    Substructure sub{kind, std::move(atoms), {}};
    sub.internal_bond_indices = internal_bonds(mol, sub.atom_indices);
    out.substructures.push_back(std::move(sub));
  };

  // Sulfonamide: S(=O)(=O)-N, claiming {S, both O, N}
  for (int s = 0; s < mol.num_atoms(); ++s) {
    if (claimed[s] || mol.atoms[s].element != Element::S) continue;
    auto oxygens = free_neighbors(mol, claimed, s, Element::O,
                                  BondOrder::Double);
    auto nitrogens = free_neighbors(mol, claimed, s, Element::N,
                                    BondOrder::Single);
    if (oxygens.size() < 2 || nitrogens.empty()) continue;
    emit(SubstructureKind::Sulfonamide,
         {s, oxygens[0], oxygens[1], nitrogens[0]});
  }

  // Ester: C(=O)-O-C with the bridging O carbon-bound on both sides,
  // claiming {carbonyl C, carbonyl O, ester O} (the alkyl C stays outside)
  for (int c = 0; c < mol.num_atoms(); ++c) {
    if (claimed[c] || mol.atoms[c].element != Element::C) continue;
    auto carbonyl_o = free_neighbors(mol, claimed, c, Element::O,
                                     BondOrder::Double);
    if (carbonyl_o.empty()) continue;
    int ester_o = -1;
    for (int o : free_neighbors(mol, claimed, c, Element::O,
                                BondOrder::Single)) {
      for (auto [nbr, bond] : mol.adjacency[o]) {
        if (nbr != c && mol.atoms[nbr].element == Element::C &&
            mol.bonds[bond].order == BondOrder::Single) {
          ester_o = o;
          break;
        }
      }
      if (ester_o >= 0) break;
    }
    if (ester_o < 0) continue;
    emit(SubstructureKind::Ester, {c, carbonyl_o[0], ester_o});
  }

  // Carboxylic acid: C(=O)-O-H, claiming {C, both O}
  for (int c = 0; c < mol.num_atoms(); ++c) {
    if (claimed[c] || mol.atoms[c].element != Element::C) continue;
    auto carbonyl_o = free_neighbors(mol, claimed, c, Element::O,
                                     BondOrder::Double);
    if (carbonyl_o.empty()) continue;
    int hydroxyl_o = -1;
    for (int o : free_neighbors(mol, claimed, c, Element::O,
                                BondOrder::Single)) {
      if (mol.atoms[o].total_h() >= 1) {
        hydroxyl_o = o;
        break;
      }
    }
    if (hydroxyl_o < 0) continue;
    emit(SubstructureKind::Acid, {c, carbonyl_o[0], hydroxyl_o});
  }

  // Amine: non-aromatic N with no carbonyl-carbon neighbor (amides excluded)
  for (int n = 0; n < mol.num_atoms(); ++n) {
    if (claimed[n] || mol.atoms[n].element != Element::N ||
        mol.atoms[n].aromatic) {
      continue;
    }
    bool amide = false;
    for (auto [nbr, bond] : mol.adjacency[n]) {
      if (is_carbonyl_carbon(mol, nbr)) amide = true;
    }
    if (amide) continue;
    emit(SubstructureKind::Amine, {n});
  }

  // Rings: each fused system's still-unclaimed atoms form one hyper-atom
  for (const std::vector<int>& system : mol.rings.ring_systems) {
    std::vector<int> remainder;
    for (int at : system) {
      if (!claimed[at]) remainder.push_back(at);
    }
    if (!remainder.empty()) emit(SubstructureKind::Ring, std::move(remainder));
  }

  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (!claimed[i]) out.plain_atoms.push_back(i);
  }
  return out;
}

inline Eigen::RowVectorXd hyperatom_features(const MolGraph& mol,
                                             const Substructure& sub) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(kHyperAtomFeatureDim);
  for (int at : sub.atom_indices) {
    const Atom& atom = mol.atoms[at];
    row[static_cast<int>(atom.element)] += 1.0;
    row[13] += atom.formal_charge;
    row[14] += atom.total_h();
    row[16] += mass_of(atom.element) / 100.0;
  }
  row[12] = static_cast<double>(sub.internal_bond_indices.size());
  bool aromatic = !sub.internal_bond_indices.empty();
  for (int b : sub.internal_bond_indices) {
    if (mol.bonds[b].order != BondOrder::Aromatic) aromatic = false;
  }
  row[15] = aromatic ? 1.0 : 0.0;
  // external valence: bonds crossing the boundary
  std::vector<bool> member(mol.num_atoms(), false);
  for (int at : sub.atom_indices) member[at] = true;
  for (const Bond& bond : mol.bonds) {
    if (member[bond.a] != member[bond.b]) row[17] += 1.0;
  }
  row[18 + static_cast<int>(sub.kind)] = 1.0;
  return row;
}

// Plain atoms ride in the same layout: hyper-atom blocks zero, kind=plain,
// atom features appended.
inline Eigen::RowVectorXd plain_node_features(const MolGraph& mol,
                                              int atom_idx) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(kHyperAtomFeatureDim);
  row[18 + static_cast<int>(SubstructureKind::PlainAtom)] = 1.0;
  row.tail(kAtomFeatureDim) = atom_features(mol, atom_idx);
  return row;
}

// One row per hyper-atom (match order) then per plain atom (index order).
// Consumers treat rows as an unordered set.
inline Eigen::MatrixXd node_set(const MolGraph& mol,
                                const SubstructureSet& subs) {
  const int n_rows = static_cast<int>(subs.substructures.size()) +
                     static_cast<int>(subs.plain_atoms.size());
  Eigen::MatrixXd rows(n_rows, kHyperAtomFeatureDim);
  int r = 0;
  for (const Substructure& sub : subs.substructures) {
    rows.row(r++) = hyperatom_features(mol, sub);
  }
  for (int at : subs.plain_atoms) {
    rows.row(r++) = plain_node_features(mol, at);
  }
  return rows;
}

}  // namespace lipognn
