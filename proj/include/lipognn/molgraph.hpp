// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lipognn/elements.hpp"

namespace lipognn {

enum class BondOrder : std::uint8_t { Single, Double, Triple, Aromatic };

enum class Chirality : std::uint8_t { None, CW, CCW };

struct Atom {
  Element element = Element::C;
  int formal_charge = 0;
  // Hydrogens written inside a bracket atom. Unset for organic-subset atoms.
  std::optional<int> explicit_h;
  // Hydrogens filled in from the valence model. Always 0 for bracket atoms.
  int implicit_h = 0;
  bool aromatic = false;
  Chirality chirality = Chirality::None;
  std::optional<int> isotope;  // parsed, ignored downstream
  bool in_ring = false;        // set by ring perception

  int total_h() const { return implicit_h + explicit_h.value_or(0); }
};

struct Bond {
  int a = -1;  // endpoint atom indices, a < b is not required
  int b = -1;
  BondOrder order = BondOrder::Single;
  bool in_ring = false;  // set by ring perception

  int other(int atom) const { return atom == a ? b : a; }

  double order_value() const {
    switch (order) {
      case BondOrder::Single: return 1.0;
      case BondOrder::Double: return 2.0;
      case BondOrder::Triple: return 3.0;
      case BondOrder::Aromatic: return 1.5;
    }
    return 1.0;
  }
};

struct RingInfo {
  // Smallest set of smallest rings, one atom-index set per ring (sorted).
  std::vector<std::vector<int>> rings;
  // Bond indices forming each ring's cycle, aligned with `rings`.
  std::vector<std::vector<int>> ring_bonds;
  // Fused-ring systems: rings sharing at least one atom are merged.
  std::vector<std::vector<int>> ring_systems;
};

// A parsed, connected molecule. Immutable after parsing plus ring
// perception; all library operations treat it as read-only.
struct MolGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  // adjacency[i] lists (neighbor atom index, bond index) pairs.
  std::vector<std::vector<std::pair<int, int>>> adjacency;
  // Populated by perceive_rings(); empty until then.
  RingInfo rings;
  bool rings_perceived = false;

  int num_atoms() const { return static_cast<int>(atoms.size()); }
  int num_bonds() const { return static_cast<int>(bonds.size()); }

  // Degree counting only non-hydrogen neighbors.
  int heavy_degree(int atom_idx) const {
    int d = 0;
    for (auto [nbr, bond] : adjacency[atom_idx]) {
      if (atoms[nbr].element != Element::H) ++d;
    }
    return d;
  }

  bool has_double_bond_to(int atom_idx, Element target) const {
    for (auto [nbr, bond] : adjacency[atom_idx]) {
      if (bonds[bond].order == BondOrder::Double &&
          atoms[nbr].element == target) {
        return true;
      }
    }
    return false;
  }
};

}  // namespace lipognn
