// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "lipognn/canonical.hpp"
#include "lipognn/ring_perception.hpp"
#include "support/graph_oracles.hpp"

namespace {

using namespace lipognn;

int distinct_ranks(const MolGraph& mol) {
  std::vector<int> ranks = canonical_ranks(mol);
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  return static_cast<int>(ranks.size());
}

// Partition fingerprint: sorted class sizes. Isomorphic graphs must agree.
std::vector<int> rank_class_sizes(const MolGraph& mol) {
  std::vector<int> ranks = canonical_ranks(mol);
  std::map<int, int> counts;
  for (int r : ranks) ++counts[r];
  std::vector<int> sizes;
  for (auto& [rank, count] : counts) sizes.push_back(count);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> smiles = {
      "C",
      "CC",
      "CCO",
      "CC(C)C",
      "CC(C)(C)C",
      "c1ccccc1",
      "Cc1ccccc1",
      "c1ccc2ccccc2c1",
      "CC(=O)O",
      "CC(=O)OC",
      "CS(N)(=O)=O",
      "CN",
      "CCN(CC)CC",
      "C1CCCCC1",
      "C1CC2CCC1C2",
      "OCC(O)CO",
      "FC(F)(F)c1ccccc1",
      "Clc1ccc(Cl)cc1",
      "C#N",
      "CC#CC",
      "[NH4+]",
      "C[N+](C)(C)C",
      "CC(=O)Nc1ccc(O)cc1",
      "c1ccncc1",
      "c1cc[nH]c1",
      "O=C1CCCCC1",
      "C1COCCO1",
      "CCCCCCCC",
      "CC(C)CC(C)(C)C",
      "N[C@@H](C)C(=O)O",
  };
  return smiles;
}

TEST(CanonicalRanks, SpecExamples) {
  EXPECT_EQ(distinct_ranks(mol_from_smiles("c1ccccc1")), 1);
  EXPECT_EQ(distinct_ranks(mol_from_smiles("CCO")), 3);
  EXPECT_EQ(distinct_ranks(mol_from_smiles("CC(C)C")), 2);
}

TEST(CanonicalRanks, Symmetry) {
  EXPECT_TRUE(is_symmetric(mol_from_smiles("c1ccccc1")));
  EXPECT_FALSE(is_symmetric(mol_from_smiles("CCO")));
  EXPECT_TRUE(is_symmetric(mol_from_smiles("CC(C)C")));
  EXPECT_TRUE(is_symmetric(mol_from_smiles("Cc1ccccc1")));
  EXPECT_FALSE(is_symmetric(mol_from_smiles("C")));  // single atom: 1 rank
}

TEST(CanonicalRanks, AgreesWithAutomorphismOracle) {
  for (const std::string& smiles : corpus()) {
    MolGraph mol = mol_from_smiles(smiles);
    if (mol.num_atoms() > 12) continue;
    EXPECT_EQ(is_symmetric(mol), oracles::has_nontrivial_automorphism(mol))
        << smiles;
  }
}

TEST(CanonicalRanks, PermutationInvariantPartition) {
  Xoshiro256 rng(11);
  for (const std::string& smiles : corpus()) {
    MolGraph mol = mol_from_smiles(smiles);
    auto sizes = rank_class_sizes(mol);
    for (int trial = 0; trial < 3; ++trial) {
      MolGraph shuffled = oracles::random_permutation_of(mol, rng);
      EXPECT_EQ(rank_class_sizes(shuffled), sizes) << smiles;
    }
  }
}

TEST(CanonicalSmiles, SameMoleculeDifferentWriting) {
  EXPECT_EQ(canonical_smiles(mol_from_smiles("OCC")),
            canonical_smiles(mol_from_smiles("CCO")));
  EXPECT_EQ(canonical_smiles(mol_from_smiles("C(C)(C)C")),
            canonical_smiles(mol_from_smiles("CC(C)C")));
  EXPECT_EQ(canonical_smiles(mol_from_smiles("c1ccccc1C")),
            canonical_smiles(mol_from_smiles("Cc1ccccc1")));
}

TEST(CanonicalSmiles, Idempotent) {
  for (const std::string& smiles : corpus()) {
    std::string once = canonical_smiles(mol_from_smiles(smiles));
    std::string twice = canonical_smiles(mol_from_smiles(once));
    EXPECT_EQ(once, twice) << smiles;
  }
}

TEST(CanonicalSmiles, PermutationInvariant) {
  Xoshiro256 rng(23);
  for (const std::string& smiles : corpus()) {
    MolGraph mol = mol_from_smiles(smiles);
    std::string expected = canonical_smiles(mol);
    for (int trial = 0; trial < 5; ++trial) {
      MolGraph shuffled = oracles::random_permutation_of(mol, rng);
      EXPECT_EQ(canonical_smiles(shuffled), expected) << smiles;
    }
  }
}

TEST(CanonicalSmiles, RoundTripPreservesGraph) {
  for (const std::string& smiles : corpus()) {
    MolGraph mol = mol_from_smiles(smiles);
    MolGraph back = mol_from_smiles(canonical_smiles(mol));
    EXPECT_EQ(back.num_atoms(), mol.num_atoms()) << smiles;
    EXPECT_EQ(back.num_bonds(), mol.num_bonds()) << smiles;
    EXPECT_EQ(rank_class_sizes(back), rank_class_sizes(mol)) << smiles;
    int h_before = 0, h_after = 0;
    for (const Atom& atom : mol.atoms) h_before += atom.total_h();
    for (const Atom& atom : back.atoms) h_after += atom.total_h();
    EXPECT_EQ(h_after, h_before) << smiles;
  }
}

TEST(CanonicalSmiles, RandomTraversalsReparseToSameMolecule) {
  Xoshiro256 rng(37);
  for (const std::string& smiles : corpus()) {
    MolGraph mol = mol_from_smiles(smiles);
    std::string expected = canonical_smiles(mol);
    for (int trial = 0; trial < 5; ++trial) {
      std::string variant = random_equivalent_smiles(mol, rng);
      EXPECT_EQ(canonical_smiles(mol_from_smiles(variant)), expected)
          << smiles << " via " << variant;
    }
  }
}

TEST(CanonicalSmiles, BracketAtomsSurvive) {
  EXPECT_EQ(canonical_smiles(mol_from_smiles("[NH4+]")), "[NH4+]");
  std::string alanine = canonical_smiles(mol_from_smiles("N[C@@H](C)C(=O)O"));
  EXPECT_NE(alanine.find("@@"), std::string::npos);
  std::string isotope = canonical_smiles(mol_from_smiles("[13CH4]"));
  EXPECT_EQ(isotope, "[13CH4]");
}

TEST(CanonicalSmiles, KekuleAndAromaticStayDistinct) {
  // no aromatization pass: the two inputs are different graphs here
  EXPECT_NE(canonical_smiles(mol_from_smiles("C1=CC=CC=C1")),
            canonical_smiles(mol_from_smiles("c1ccccc1")));
}

}  // namespace
