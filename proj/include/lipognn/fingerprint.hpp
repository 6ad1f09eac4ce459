// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "lipognn/error.hpp"
#include "lipognn/molgraph.hpp"

// ECFP-style circular fingerprint: per-atom identifiers are iteratively
// re-hashed with sorted (bond order, neighbor identifier) lists for `radius`
// rounds, and every identifier from every round is folded into the bit
// vector by modulo. Hashing is hand-rolled 64-bit mixing so fingerprints are
// identical across platforms and standard libraries.

namespace lipognn {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6)));
}

}  // namespace detail

// Identifier table: identifiers[r][i] is atom i's identifier after r rounds
// (r = 0 is the initial invariant hash). Size radius+1 by num_atoms.
inline std::vector<std::vector<std::uint64_t>> morgan_identifiers(
    const MolGraph& mol, int radius) {
  using detail::hash_combine;
  const int n = mol.num_atoms();
  std::vector<std::vector<std::uint64_t>> rounds;
  rounds.reserve(radius + 1);

  std::vector<std::uint64_t> ids(n);
  for (int i = 0; i < n; ++i) {
    const Atom& atom = mol.atoms[i];
    std::uint64_t h = 0x6c697067ULL;  // arbitrary fixed seed
    h = hash_combine(h, static_cast<std::uint64_t>(atom.element));
    h = hash_combine(h, static_cast<std::uint64_t>(mol.heavy_degree(i)));
    h = hash_combine(h, static_cast<std::uint64_t>(atom.formal_charge + 8));
    h = hash_combine(h, static_cast<std::uint64_t>(atom.total_h()));
    h = hash_combine(h, atom.aromatic ? 1 : 0);
    h = hash_combine(h, atom.in_ring ? 1 : 0);
    ids[i] = h;
  }
  rounds.push_back(ids);

  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> nbrs;
      nbrs.reserve(mol.adjacency[i].size());
      for (auto [nbr, bond] : mol.adjacency[i]) {
        nbrs.push_back({static_cast<std::uint64_t>(mol.bonds[bond].order),
                        ids[nbr]});
      }
      std::sort(nbrs.begin(), nbrs.end());
      std::uint64_t h = hash_combine(0x726f756e64ULL, ids[i]);
      for (auto& [order, nbr_id] : nbrs) {
        h = hash_combine(h, order);
        h = hash_combine(h, nbr_id);
      }
      next[i] = h;
    }
    rounds.push_back(next);
    ids = std::move(next);
  }
  return rounds;
}

// Folded count vector over all rounds' identifiers.
inline std::vector<std::uint32_t> morgan_fingerprint(const MolGraph& mol,
                                                     int radius, int n_bits) {
  if (radius < 0) throw Error("fingerprint radius must be >= 0");
  if (n_bits <= 0 || (n_bits & (n_bits - 1)) != 0) {
    throw Error("fingerprint size must be a power of two");
  }
  std::vector<std::uint32_t> counts(n_bits, 0);
  for (const auto& round : morgan_identifiers(mol, radius)) {
    for (std::uint64_t id : round) {
      ++counts[id % static_cast<std::uint64_t>(n_bits)];
    }
  }
  return counts;
}

}  // namespace lipognn
