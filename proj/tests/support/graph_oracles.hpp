// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Test-only oracles, built independently of the library's ranking code:
// exhaustive graph-automorphism search and graph permutation helpers.
// Intended for molecules of desk-top size (<= ~12 heavy atoms).

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "lipognn/molgraph.hpp"
#include "lipognn/ring_perception.hpp"
#include "lipognn/rng.hpp"

namespace lipognn::oracles {

namespace detail {

inline std::tuple<Element, int, int, bool, int> atom_key(const MolGraph& mol,
                                                         int i) {
  const Atom& a = mol.atoms[i];
  return {a.element, a.formal_charge, a.total_h(), a.aromatic,
          static_cast<int>(mol.adjacency[i].size())};
}

inline std::optional<BondOrder> bond_between(const MolGraph& mol, int a,
                                             int b) {
  for (auto [nbr, bond] : mol.adjacency[a]) {
    if (nbr == b) return mol.bonds[bond].order;
  }
  return std::nullopt;
}

// Extends the partial map `image` (image[i] = -1 means unassigned) atom by
// atom; returns true when a full non-identity automorphism is reached.
inline bool extend(const MolGraph& mol, std::vector<int>& image,
                   std::vector<bool>& used, int next, bool identity_so_far) {
  int n = mol.num_atoms();
  if (next == n) return !identity_so_far;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    if (atom_key(mol, next) != atom_key(mol, cand)) continue;
    bool ok = true;
    for (auto [nbr, bond] : mol.adjacency[next]) {
      if (nbr >= next) continue;  // only earlier atoms are mapped
      auto mapped = bond_between(mol, cand, image[nbr]);
      if (!mapped || *mapped != mol.bonds[bond].order) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    image[next] = cand;
    used[cand] = true;
    if (extend(mol, image, used, next + 1,
               identity_so_far && cand == next)) {
      return true;
    }
    image[next] = -1;
    used[cand] = false;
  }
  return false;
}

}  // namespace detail

// True iff the molecular graph admits a non-identity automorphism that
// preserves element, charge, total hydrogen count, aromaticity and all bond
// orders. Exhaustive backtracking search.
inline bool has_nontrivial_automorphism(const MolGraph& mol) {
  int n = mol.num_atoms();
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  return detail::extend(mol, image, used, 0, true);
}

// Rebuilds `mol` with atom order perm[0], perm[1], ... (perm maps new index
// -> old index). Bond order within the bond list is preserved; endpoints are
// relabeled. Ring perception is re-run on the permuted graph.
inline MolGraph permute_graph(const MolGraph& mol,
                              const std::vector<int>& perm) {
  int n = mol.num_atoms();
  std::vector<int> old_to_new(n);
  for (int i = 0; i < n; ++i) old_to_new[perm[i]] = i;
  MolGraph out;
  out.atoms.reserve(n);
  for (int i = 0; i < n; ++i) {
    Atom atom = mol.atoms[perm[i]];
    atom.in_ring = false;
    out.atoms.push_back(atom);
  }
  for (const Bond& bond : mol.bonds) {
    out.bonds.push_back(Bond{old_to_new[bond.a], old_to_new[bond.b],
                             bond.order, false});
  }
  out.adjacency.assign(n, {});
  for (int i = 0; i < out.num_bonds(); ++i) {
    out.adjacency[out.bonds[i].a].push_back({out.bonds[i].b, i});
    out.adjacency[out.bonds[i].b].push_back({out.bonds[i].a, i});
  }
  perceive_rings(out);
  return out;
}

inline MolGraph random_permutation_of(const MolGraph& mol, Xoshiro256& rng) {
  std::vector<int> perm = random_permutation(mol.num_atoms(), rng);
  return permute_graph(mol, perm);
}

}  // namespace lipognn::oracles
