// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "lipognn/ring_perception.hpp"

namespace {

using namespace lipognn;

std::vector<int> ring_sizes(const MolGraph& mol) {
  std::vector<int> sizes;
  for (const auto& ring : mol.rings.rings) {
    sizes.push_back(static_cast<int>(ring.size()));
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

TEST(RingPerception, Acyclic) {
  MolGraph mol = mol_from_smiles("CCO");
  EXPECT_TRUE(mol.rings.rings.empty());
  EXPECT_TRUE(mol.rings.ring_systems.empty());
  for (const Atom& atom : mol.atoms) EXPECT_FALSE(atom.in_ring);
}

TEST(RingPerception, Triangle) {
  MolGraph mol = mol_from_smiles("C1CC1");
  ASSERT_EQ(mol.rings.rings.size(), 1u);
  EXPECT_EQ(mol.rings.rings[0], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(mol.rings.ring_systems.size(), 1u);
  for (const Bond& bond : mol.bonds) EXPECT_TRUE(bond.in_ring);
}

TEST(RingPerception, Benzene) {
  MolGraph mol = mol_from_smiles("c1ccccc1");
  EXPECT_EQ(ring_sizes(mol), (std::vector<int>{6}));
  ASSERT_EQ(mol.rings.ring_systems.size(), 1u);
  EXPECT_EQ(mol.rings.ring_systems[0].size(), 6u);
}

TEST(RingPerception, Naphthalene) {
  MolGraph mol = mol_from_smiles("c1ccc2ccccc2c1");
  // cycle-space rank: 11 bonds - 10 atoms + 1 = 2
  EXPECT_EQ(ring_sizes(mol), (std::vector<int>{6, 6}));
  ASSERT_EQ(mol.rings.ring_systems.size(), 1u);
  EXPECT_EQ(mol.rings.ring_systems[0].size(), 10u);
}

TEST(RingPerception, Spiro) {
  MolGraph mol = mol_from_smiles("C1CC11CC1");
  EXPECT_EQ(ring_sizes(mol), (std::vector<int>{3, 3}));
  ASSERT_EQ(mol.rings.ring_systems.size(), 1u);  // shares one atom
  EXPECT_EQ(mol.rings.ring_systems[0].size(), 5u);
}

TEST(RingPerception, NorbornanePicksSmallestRings) {
  // bicyclo[2.2.1]heptane: basis must take the two 5-rings, not the 6-ring
  MolGraph mol = mol_from_smiles("C1CC2CCC1C2");
  EXPECT_EQ(ring_sizes(mol), (std::vector<int>{5, 5}));
  ASSERT_EQ(mol.rings.ring_systems.size(), 1u);
  EXPECT_EQ(mol.rings.ring_systems[0].size(), 7u);
}

TEST(RingPerception, BiphenylSeparateSystems) {
  MolGraph mol = mol_from_smiles("c1ccccc1-c1ccccc1");
  EXPECT_EQ(ring_sizes(mol), (std::vector<int>{6, 6}));
  EXPECT_EQ(mol.rings.ring_systems.size(), 2u);
  // the bridge bond is not in any ring
  int bridge = -1;
  for (int i = 0; i < mol.num_bonds(); ++i) {
    if (!mol.bonds[i].in_ring) bridge = i;
  }
  ASSERT_GE(bridge, 0);
  EXPECT_EQ(mol.bonds[bridge].order, BondOrder::Single);
}

TEST(RingPerception, RankLaw) {
  for (const char* smiles :
       {"C1CC1", "c1ccccc1", "c1ccc2ccccc2c1", "C1CC2CCC1C2", "C1CC11CC1",
        "c1ccccc1-c1ccccc1", "C1CCC2(CC1)CCCC2", "c1ccc2c(c1)Cc1ccccc1-2",
        "C1CC2CC1C2", "O1CCOCC1"}) {
    MolGraph mol = mol_from_smiles(smiles);
    int rank = mol.num_bonds() - mol.num_atoms() + 1;
    EXPECT_EQ(static_cast<int>(mol.rings.rings.size()), rank) << smiles;
    for (const auto& ring : mol.rings.rings) {
      EXPECT_GE(ring.size(), 3u) << smiles;
    }
  }
}

TEST(RingPerception, RingBondsConsistent) {
  MolGraph mol = mol_from_smiles("Cc1ccccc1");
  int in_ring_bonds = 0;
  for (const Bond& bond : mol.bonds) in_ring_bonds += bond.in_ring ? 1 : 0;
  EXPECT_EQ(in_ring_bonds, 6);
  EXPECT_FALSE(mol.atoms[0].in_ring);
  EXPECT_TRUE(mol.atoms[1].in_ring);
}

}  // namespace
