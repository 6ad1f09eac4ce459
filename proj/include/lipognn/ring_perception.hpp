// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "lipognn/molgraph.hpp"
#include "lipognn/smiles_parser.hpp"

namespace lipognn {

namespace detail {

// Edge set of a cycle as a bitset over bond indices, for GF(2) arithmetic.
using EdgeBits = std::vector<std::uint64_t>;

inline void bits_flip(EdgeBits& bits, int idx) {
  bits[idx / 64] ^= (std::uint64_t{1} << (idx % 64));
}

inline void bits_xor(EdgeBits& a, const EdgeBits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

inline bool bits_empty(const EdgeBits& bits) {
  for (std::uint64_t w : bits) {
    if (w != 0) return false;
  }
  return true;
}

inline int bits_leading(const EdgeBits& bits) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) {
      return static_cast<int>(i * 64 + std::countr_zero(bits[i]));
    }
  }
  return -1;
}

struct CycleCandidate {
  std::vector<int> atoms;  // sorted
  std::vector<int> bonds;  // sorted
  EdgeBits bits;
};

// Shortest path from `src` to `dst` avoiding bond `skip`; returns the bond
// index sequence, empty when disconnected.
inline std::vector<int> bfs_path(const MolGraph& mol, int src, int dst,
                                 int skip) {
  std::vector<int> prev_bond(mol.num_atoms(), -1);
  std::vector<int> prev_atom(mol.num_atoms(), -1);
  std::vector<bool> seen(mol.num_atoms(), false);
  std::queue<int> queue;
  queue.push(src);
  seen[src] = true;
  while (!queue.empty()) {
    int at = queue.front();
    queue.pop();
    if (at == dst) break;
    for (auto [nbr, bond] : mol.adjacency[at]) {
      if (bond == skip || seen[nbr]) continue;
      seen[nbr] = true;
      prev_bond[nbr] = bond;
      prev_atom[nbr] = at;
      queue.push(nbr);
    }
  }
  std::vector<int> path;
  if (!seen[dst]) return path;
  for (int at = dst; at != src; at = prev_atom[at]) {
    path.push_back(prev_bond[at]);
  }
  return path;
}

inline CycleCandidate make_candidate(const MolGraph& mol,
                                     std::vector<int> bond_idxs) {
  CycleCandidate cand;
  cand.bits.assign((mol.num_bonds() + 63) / 64, 0);
  std::vector<bool> atom_seen(mol.num_atoms(), false);
  for (int b : bond_idxs) {
    bits_flip(cand.bits, b);
    for (int at : {mol.bonds[b].a, mol.bonds[b].b}) {
      if (!atom_seen[at]) {
        atom_seen[at] = true;
        cand.atoms.push_back(at);
      }
    }
  }
  std::sort(cand.atoms.begin(), cand.atoms.end());
  std::sort(bond_idxs.begin(), bond_idxs.end());
  cand.bonds = std::move(bond_idxs);
  return cand;
}

}  // namespace detail

// Smallest set of smallest rings as a minimum cycle basis: the shortest
// cycle through every edge is generated (plus spanning-tree fundamental
// cycles as a completion reserve), candidates are ordered by size with ties
// broken on the lexicographically smallest atom-index set, and cycles are
// kept greedily while independent over GF(2), until the cycle-space rank
// |E|-|V|+1 is reached. Also fills Atom/Bond in_ring flags and the
// fused-ring systems.
inline const RingInfo& perceive_rings(MolGraph& mol) {
  using namespace detail;
  RingInfo& info = mol.rings;
  info = RingInfo{};
  mol.rings_perceived = true;
  const int rank = mol.num_bonds() - mol.num_atoms() + 1;
  if (rank <= 0) return info;

  std::vector<CycleCandidate> candidates;
  for (int e = 0; e < mol.num_bonds(); ++e) {
    std::vector<int> path =
        bfs_path(mol, mol.bonds[e].a, mol.bonds[e].b, e);
    if (path.empty()) continue;  // bridge
    path.push_back(e);
    candidates.push_back(make_candidate(mol, std::move(path)));
  }
  // Fundamental cycles of a BFS spanning tree, as a completion reserve in
  // case the shortest-cycle candidates do not span the cycle space.
  {
    std::vector<bool> seen(mol.num_atoms(), false);
    std::vector<int> parent_bond(mol.num_atoms(), -1);
    std::vector<int> parent_atom(mol.num_atoms(), -1);
    std::vector<bool> tree_bond(mol.num_bonds(), false);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = true;
    while (!queue.empty()) {
      int at = queue.front();
      queue.pop();
      for (auto [nbr, bond] : mol.adjacency[at]) {
        if (seen[nbr]) continue;
        seen[nbr] = true;
        parent_bond[nbr] = bond;
        parent_atom[nbr] = at;
        tree_bond[bond] = true;
        queue.push(nbr);
      }
    }
    auto depth = [&](int at) {
      int d = 0;
      for (int cur = at; parent_atom[cur] >= 0; cur = parent_atom[cur]) ++d;
      return d;
    };
    for (int e = 0; e < mol.num_bonds(); ++e) {
      if (tree_bond[e]) continue;
      std::vector<int> cycle_bonds{e};
      int u = mol.bonds[e].a, v = mol.bonds[e].b;
      int du = depth(u), dv = depth(v);
      while (du > dv) {
        cycle_bonds.push_back(parent_bond[u]);
        u = parent_atom[u];
        --du;
      }
      while (dv > du) {
        cycle_bonds.push_back(parent_bond[v]);
        v = parent_atom[v];
        --dv;
      }
      while (u != v) {
        cycle_bonds.push_back(parent_bond[u]);
        cycle_bonds.push_back(parent_bond[v]);
        u = parent_atom[u];
        v = parent_atom[v];
      }
      candidates.push_back(make_candidate(mol, std::move(cycle_bonds)));
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const CycleCandidate& x, const CycleCandidate& y) {
              if (x.atoms.size() != y.atoms.size()) {
                return x.atoms.size() < y.atoms.size();
              }
              return x.atoms < y.atoms;
            });
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](const CycleCandidate& x,
                                  const CycleCandidate& y) {
                                 return x.bits == y.bits;
                               }),
                   candidates.end());

  std::vector<EdgeBits> basis;  // row-reduced
  for (const CycleCandidate& cand : candidates) {
    if (static_cast<int>(info.rings.size()) == rank) break;
    EdgeBits reduced = cand.bits;
    // xor-basis elimination; rows are kept sorted by pivot (lowest set bit)
    for (const EdgeBits& row : basis) {
      if (bits_leading(reduced) == bits_leading(row)) bits_xor(reduced, row);
    }
    if (bits_empty(reduced)) continue;
    basis.push_back(reduced);
    // keep reduced rows ordered by leading bit so reduction stays valid
    std::sort(basis.begin(), basis.end(),
              [](const EdgeBits& x, const EdgeBits& y) {
                return bits_leading(x) < bits_leading(y);
              });
    info.rings.push_back(cand.atoms);
    info.ring_bonds.push_back(cand.bonds);
  }

  for (const std::vector<int>& bonds : info.ring_bonds) {
    for (int b : bonds) mol.bonds[b].in_ring = true;
  }
  for (const std::vector<int>& atoms : info.rings) {
    for (int at : atoms) mol.atoms[at].in_ring = true;
  }

  // Fuse rings sharing at least one atom into systems.
  const int n_rings = static_cast<int>(info.rings.size());
  std::vector<int> component(n_rings);
  for (int i = 0; i < n_rings; ++i) component[i] = i;
  auto root = [&](int i) {
    while (component[i] != i) i = component[i] = component[component[i]];
    return i;
  };
  for (int i = 0; i < n_rings; ++i) {
    for (int j = i + 1; j < n_rings; ++j) {
      std::vector<int> shared;
      std::set_intersection(info.rings[i].begin(), info.rings[i].end(),
                            info.rings[j].begin(), info.rings[j].end(),
                            std::back_inserter(shared));
      if (!shared.empty()) component[root(i)] = root(j);
    }
  }
  std::vector<std::vector<int>> grouped(n_rings);
  for (int i = 0; i < n_rings; ++i) {
    auto& group = grouped[root(i)];
    group.insert(group.end(), info.rings[i].begin(), info.rings[i].end());
  }
  for (auto& group : grouped) {
    if (group.empty()) continue;
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    info.ring_systems.push_back(std::move(group));
  }
  std::sort(info.ring_systems.begin(), info.ring_systems.end());
  return info;
}

// Parse plus ring perception, the form most callers want.
inline MolGraph mol_from_smiles(std::string_view text) {
  MolGraph mol = parse_smiles(text);
  perceive_rings(mol);
  return mol;
}

}  // namespace lipognn
