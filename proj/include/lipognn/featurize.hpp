// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>

#include "lipognn/molgraph.hpp"

// Fixed-layout numeric features for atoms, bonds and whole molecules.
// Layouts are frozen: downstream weights and the model file format depend on
// them, so any change is a format break.

namespace lipognn {

// Atom row layout:
//   element one-hot (12) | heavy-degree one-hot 0-6 (7) |
//   formal charge one-hot -2..+2 (5) | chirality one-hot (3) |
//   total-H one-hot 0-4 (5) | hybridization one-hot sp,sp2,sp3,other (4) |
//   aromatic (1) | atomic mass / 100 (1)
inline constexpr int kAtomFeatureDim = 12 + 7 + 5 + 3 + 5 + 4 + 1 + 1;  // 38

// Bond row layout: order one-hot (4) | in_ring (1) | conjugated (1)
inline constexpr int kBondFeatureDim = 6;

inline constexpr int kGlobalDescriptorDim = 10;

enum class Hybridization : std::uint8_t { SP, SP2, SP3, Other };

// Rule-based hybridization: aromatic -> sp2; a triple bond or two or more
// double bonds -> sp; exactly one double bond -> sp2; everything else sp3.
inline Hybridization hybridization(const MolGraph& mol, int atom_idx) {
  if (mol.atoms[atom_idx].aromatic) return Hybridization::SP2;
  int doubles = 0, triples = 0;
  for (auto [nbr, bond] : mol.adjacency[atom_idx]) {
    if (mol.bonds[bond].order == BondOrder::Double) ++doubles;
    if (mol.bonds[bond].order == BondOrder::Triple) ++triples;
  }
  if (triples > 0 || doubles >= 2) return Hybridization::SP;
  if (doubles == 1) return Hybridization::SP2;
  return Hybridization::SP3;
}

namespace detail {

inline bool has_pi_bond(const MolGraph& mol, int atom_idx) {
  for (auto [nbr, bond] : mol.adjacency[atom_idx]) {
    BondOrder order = mol.bonds[bond].order;
    if (order == BondOrder::Double || order == BondOrder::Triple ||
        order == BondOrder::Aromatic) {
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Conjugation heuristic: both endpoints aromatic, or each endpoint carries
// at least one double/triple/aromatic bond (the bond itself included).
inline bool is_conjugated(const MolGraph& mol, int bond_idx) {
  const Bond& bond = mol.bonds[bond_idx];
  if (mol.atoms[bond.a].aromatic && mol.atoms[bond.b].aromatic) return true;
  return detail::has_pi_bond(mol, bond.a) && detail::has_pi_bond(mol, bond.b);
}

// Rotatable: non-ring single bond with heavy-degree >= 2 on both ends.
inline bool is_rotatable(const MolGraph& mol, int bond_idx) {
  const Bond& bond = mol.bonds[bond_idx];
  return bond.order == BondOrder::Single && !bond.in_ring &&
         mol.heavy_degree(bond.a) >= 2 && mol.heavy_degree(bond.b) >= 2;
}

inline Eigen::RowVectorXd atom_features(const MolGraph& mol, int atom_idx) {
  const Atom& atom = mol.atoms[atom_idx];
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(kAtomFeatureDim);
  int offset = 0;

  row[offset + static_cast<int>(atom.element)] = 1.0;
  offset += kNumElements;

  int degree = std::clamp(mol.heavy_degree(atom_idx), 0, 6);
  row[offset + degree] = 1.0;
  offset += 7;

  int charge = std::clamp(atom.formal_charge, -2, 2);
  row[offset + charge + 2] = 1.0;
  offset += 5;

  row[offset + static_cast<int>(atom.chirality)] = 1.0;
  offset += 3;

  int h = std::clamp(atom.total_h(), 0, 4);
  row[offset + h] = 1.0;
  offset += 5;

  row[offset + static_cast<int>(hybridization(mol, atom_idx))] = 1.0;
  offset += 4;

  row[offset++] = atom.aromatic ? 1.0 : 0.0;
  row[offset++] = mass_of(atom.element) / 100.0;
  return row;
}

inline Eigen::RowVectorXd bond_features(const MolGraph& mol, int bond_idx) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(kBondFeatureDim);
  row[static_cast<int>(mol.bonds[bond_idx].order)] = 1.0;
  row[4] = mol.bonds[bond_idx].in_ring ? 1.0 : 0.0;
  row[5] = is_conjugated(mol, bond_idx) ? 1.0 : 0.0;
  return row;
}

inline Eigen::MatrixXd atom_feature_matrix(const MolGraph& mol) {
  Eigen::MatrixXd rows(mol.num_atoms(), kAtomFeatureDim);
  for (int i = 0; i < mol.num_atoms(); ++i) rows.row(i) = atom_features(mol, i);
  return rows;
}

// Raw (unstandardized) whole-molecule descriptors:
//   0 molecular weight (implicit+explicit H included)
//   1 heavy-atom count
//   2 aromatic-ring count (rings whose bonds are all aromatic)
//   3 ring count (SSSR size)
//   4 H-bond donor count (hydrogens attached to N or O)
//   5 H-bond acceptor count (N and O atoms)
//   6 rotatable-bond count
//   7 fraction of sp3 carbons (0 when carbon-free)
//   8 formal-charge sum
//   9 halogen count
// Ring perception must have run (mol_from_smiles does).
inline Eigen::RowVectorXd global_descriptors(const MolGraph& mol) {
  Eigen::RowVectorXd g = Eigen::RowVectorXd::Zero(kGlobalDescriptorDim);
  const double h_mass = mass_of(Element::H);
  int carbons = 0, sp3_carbons = 0;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom& atom = mol.atoms[i];
    g[0] += mass_of(atom.element) + h_mass * atom.total_h();
    if (atom.element != Element::H) g[1] += 1.0;
    if (atom.element == Element::N || atom.element == Element::O) {
      g[4] += atom.total_h();
      g[5] += 1.0;
    }
    if (atom.element == Element::C) {
      ++carbons;
      if (hybridization(mol, i) == Hybridization::SP3) ++sp3_carbons;
    }
    g[8] += atom.formal_charge;
    if (is_halogen(atom.element)) g[9] += 1.0;
  }
  for (std::size_t r = 0; r < mol.rings.ring_bonds.size(); ++r) {
    bool all_aromatic = true;
    for (int b : mol.rings.ring_bonds[r]) {
      if (mol.bonds[b].order != BondOrder::Aromatic) all_aromatic = false;
    }
    if (all_aromatic) g[2] += 1.0;
  }
  g[3] = static_cast<double>(mol.rings.rings.size());
  for (int b = 0; b < mol.num_bonds(); ++b) {
    if (is_rotatable(mol, b)) g[6] += 1.0;
  }
  g[7] = carbons > 0 ? static_cast<double>(sp3_carbons) / carbons : 0.0;
  return g;
}

// Per-column zero-mean / unit-variance scaling. Statistics come from the
// training split only and ride along in the model file. Zero-variance
// columns map to 0 rather than dividing by zero.
class StandardScaler {
 public:
  StandardScaler() = default;
  StandardScaler(Eigen::RowVectorXd mean, Eigen::RowVectorXd std)
      : mean_(std::move(mean)), std_(std::move(std)) {}

  // No-op scaling (mean 0, std 1) for paths that never fit statistics.
  static StandardScaler identity(int dim) {
    return StandardScaler(Eigen::RowVectorXd::Zero(dim),
                          Eigen::RowVectorXd::Ones(dim));
  }

  static StandardScaler fit(const Eigen::MatrixXd& rows) {
    Eigen::RowVectorXd mean = rows.colwise().mean();
    Eigen::MatrixXd centered = rows.rowwise() - mean;
    Eigen::RowVectorXd variance =
        centered.array().square().colwise().mean();
    return StandardScaler(mean, variance.array().sqrt().matrix());
  }

  Eigen::MatrixXd transform(const Eigen::MatrixXd& rows) const {
    Eigen::MatrixXd out = rows.rowwise() - mean_;
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      out.col(c) *= std_[c] > 0.0 ? 1.0 / std_[c] : 0.0;
    }
    return out;
  }

  const Eigen::RowVectorXd& mean() const { return mean_; }
  const Eigen::RowVectorXd& std() const { return std_; }

 private:
  Eigen::RowVectorXd mean_;
  Eigen::RowVectorXd std_;
};

}  // namespace lipognn
