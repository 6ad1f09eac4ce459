// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "lipognn/ring_perception.hpp"
#include "lipognn/substruct.hpp"
#include "support/graph_oracles.hpp"

namespace {

using namespace lipognn;

using KindAndAtoms = std::pair<SubstructureKind, std::vector<int>>;

std::vector<KindAndAtoms> summarize(const SubstructureSet& subs) {
  std::vector<KindAndAtoms> out;
  for (const Substructure& sub : subs.substructures) {
    out.push_back({sub.kind, sub.atom_indices});
  }
  return out;
}

TEST(Substruct, AceticAcid) {
  MolGraph mol = mol_from_smiles("CC(=O)O");
  SubstructureSet subs = extract_substructures(mol);
  EXPECT_EQ(summarize(subs),
            (std::vector<KindAndAtoms>{
                {SubstructureKind::Acid, {1, 2, 3}}}));
  EXPECT_EQ(subs.plain_atoms, (std::vector<int>{0}));
}

TEST(Substruct, MethylAcetateIsEsterNotAcid) {
  MolGraph mol = mol_from_smiles("COC(=O)C");
  SubstructureSet subs = extract_substructures(mol);
  EXPECT_EQ(summarize(subs),
            (std::vector<KindAndAtoms>{
                {SubstructureKind::Ester, {1, 2, 3}}}));
  EXPECT_EQ(subs.plain_atoms, (std::vector<int>{0, 4}));
}

TEST(Substruct, Sulfonamide) {
  MolGraph mol = mol_from_smiles("CS(N)(=O)=O");
  SubstructureSet subs = extract_substructures(mol);
  EXPECT_EQ(summarize(subs),
            (std::vector<KindAndAtoms>{
                {SubstructureKind::Sulfonamide, {1, 2, 3, 4}}}));
  EXPECT_EQ(subs.plain_atoms, (std::vector<int>{0}));
}

TEST(Substruct, PlainChain) {
  MolGraph mol = mol_from_smiles("CCCC");
  SubstructureSet subs = extract_substructures(mol);
  EXPECT_TRUE(subs.substructures.empty());
  EXPECT_EQ(subs.plain_atoms, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Substruct, BenzeneSingleRingHyperAtom) {
  MolGraph mol = mol_from_smiles("c1ccccc1");
  SubstructureSet subs = extract_substructures(mol);
  ASSERT_EQ(subs.substructures.size(), 1u);
  EXPECT_EQ(subs.substructures[0].kind, SubstructureKind::Ring);
  EXPECT_EQ(subs.substructures[0].atom_indices,
            (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(subs.substructures[0].internal_bond_indices.size(), 6u);
  EXPECT_TRUE(subs.plain_atoms.empty());
}

TEST(Substruct, FusedSystemIsOneHyperAtom) {
  MolGraph mol = mol_from_smiles("c1ccc2ccccc2c1");
  SubstructureSet subs = extract_substructures(mol);
  ASSERT_EQ(subs.substructures.size(), 1u);
  EXPECT_EQ(subs.substructures[0].atom_indices.size(), 10u);
  EXPECT_EQ(subs.substructures[0].internal_bond_indices.size(), 11u);
}

TEST(Substruct, Amine) {
  MolGraph mol = mol_from_smiles("CN");
  SubstructureSet subs = extract_substructures(mol);
  EXPECT_EQ(summarize(subs),
            (std::vector<KindAndAtoms>{{SubstructureKind::Amine, {1}}}));
  // amide N is not an amine
  MolGraph acetamide = mol_from_smiles("CC(=O)N");
  EXPECT_TRUE(extract_substructures(acetamide).substructures.empty());
  // aromatic N is not an amine (the ring claims it)
  MolGraph pyridine = mol_from_smiles("c1ccncc1");
  subs = extract_substructures(pyridine);
  ASSERT_EQ(subs.substructures.size(), 1u);
  EXPECT_EQ(subs.substructures[0].kind, SubstructureKind::Ring);
}

TEST(Substruct, PriorityOrder) {
  // aspirin: ester + acid + ring, plain methyl
  MolGraph mol = mol_from_smiles("CC(=O)Oc1ccccc1C(=O)O");
  SubstructureSet subs = extract_substructures(mol);
  EXPECT_EQ(summarize(subs),
            (std::vector<KindAndAtoms>{
                {SubstructureKind::Ester, {1, 2, 3}},
                {SubstructureKind::Acid, {10, 11, 12}},
                {SubstructureKind::Ring, {4, 5, 6, 7, 8, 9}}}));
  EXPECT_EQ(subs.plain_atoms, (std::vector<int>{0}));
}

TEST(Substruct, SulfonamideClaimsNitrogenBeforeAmine) {
  MolGraph mol = mol_from_smiles("NCS(N)(=O)=O");
  SubstructureSet subs = extract_substructures(mol);
  // atom 0: free amine; atoms 2,3,4,5: sulfonamide (N3 claimed by it)
  EXPECT_EQ(summarize(subs),
            (std::vector<KindAndAtoms>{
                {SubstructureKind::Sulfonamide, {2, 3, 4, 5}},
                {SubstructureKind::Amine, {0}}}));
}

TEST(Substruct, RingRemainderAfterClaim) {
  // cyclic ester (beta-propiolactone): ester claims ring atoms; the ring
  // hyper-atom keeps only what is left
  MolGraph mol = mol_from_smiles("O=C1CCO1");
  SubstructureSet subs = extract_substructures(mol);
  ASSERT_EQ(subs.substructures.size(), 2u);
  EXPECT_EQ(subs.substructures[0].kind, SubstructureKind::Ester);
  EXPECT_EQ(subs.substructures[0].atom_indices, (std::vector<int>{0, 1, 4}));
  EXPECT_EQ(subs.substructures[1].kind, SubstructureKind::Ring);
  EXPECT_EQ(subs.substructures[1].atom_indices, (std::vector<int>{2, 3}));
}

TEST(Substruct, PartitionProperty) {
  for (const char* smiles :
       {"CC(=O)Oc1ccccc1C(=O)O", "CS(N)(=O)=O", "c1ccc2ccccc2c1", "CCCC",
        "CC(=O)O", "COC(=O)C", "CN", "O=C1CCO1", "NCS(N)(=O)=O",
        "CCN(CC)CC", "c1cc[nH]c1", "OC(=O)c1ccccc1N"}) {
    MolGraph mol = mol_from_smiles(smiles);
    SubstructureSet subs = extract_substructures(mol);
    std::vector<int> seen(mol.num_atoms(), 0);
    for (const Substructure& sub : subs.substructures) {
      EXPECT_FALSE(sub.atom_indices.empty()) << smiles;
      for (int at : sub.atom_indices) ++seen[at];
      for (int b : sub.internal_bond_indices) {
        EXPECT_TRUE(std::count(sub.atom_indices.begin(),
                               sub.atom_indices.end(), mol.bonds[b].a) &&
                    std::count(sub.atom_indices.begin(),
                               sub.atom_indices.end(), mol.bonds[b].b))
            << smiles;
      }
    }
    for (int at : subs.plain_atoms) ++seen[at];
    for (int at = 0; at < mol.num_atoms(); ++at) {
      EXPECT_EQ(seen[at], 1) << smiles << " atom " << at;
    }
  }
}

TEST(Substruct, ExtractionInvariantUnderReordering) {
  Xoshiro256 rng(17);
  for (const char* smiles :
       {"CC(=O)Oc1ccccc1C(=O)O", "CS(N)(=O)=O", "COC(=O)C", "CCN(CC)CC"}) {
    MolGraph mol = mol_from_smiles(smiles);
    auto as_set = [](const SubstructureSet& subs) {
      std::set<std::pair<int, std::vector<int>>> out;
      for (const Substructure& sub : subs.substructures) {
        out.insert({static_cast<int>(sub.kind), sub.atom_indices});
      }
      return out;
    };
    auto expected = as_set(extract_substructures(mol));
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<int> perm = random_permutation(mol.num_atoms(), rng);
      MolGraph shuffled = oracles::permute_graph(mol, perm);
      SubstructureSet subs = extract_substructures(shuffled);
      // map the shuffled graph's indices back to the original labels
      std::set<std::pair<int, std::vector<int>>> mapped;
      for (const Substructure& sub : subs.substructures) {
        std::vector<int> atoms;
        for (int at : sub.atom_indices) atoms.push_back(perm[at]);
        std::sort(atoms.begin(), atoms.end());
        mapped.insert({static_cast<int>(sub.kind), atoms});
      }
      EXPECT_EQ(mapped, expected) << smiles;
    }
  }
}

TEST(HyperAtomFeatures, Benzene) {
  MolGraph mol = mol_from_smiles("c1ccccc1");
  SubstructureSet subs = extract_substructures(mol);
  Eigen::RowVectorXd row = hyperatom_features(mol, subs.substructures[0]);
  ASSERT_EQ(row.size(), kHyperAtomFeatureDim);
  EXPECT_DOUBLE_EQ(row[static_cast<int>(Element::C)], 6.0);
  EXPECT_DOUBLE_EQ(row[12], 6.0);       // internal edges
  EXPECT_DOUBLE_EQ(row[13], 0.0);       // charge
  EXPECT_DOUBLE_EQ(row[14], 6.0);       // hydrogens
  EXPECT_DOUBLE_EQ(row[15], 1.0);       // aromatic
  EXPECT_NEAR(row[16], 0.72066, 1e-9);  // mass / 100
  EXPECT_DOUBLE_EQ(row[17], 0.0);       // external valence
  EXPECT_DOUBLE_EQ(row[18 + static_cast<int>(SubstructureKind::Ring)], 1.0);
  EXPECT_TRUE((row.tail(kAtomFeatureDim).array() == 0.0).all());
}

TEST(HyperAtomFeatures, AcidAndAmine) {
  MolGraph acid = mol_from_smiles("CC(=O)O");
  SubstructureSet subs = extract_substructures(acid);
  Eigen::RowVectorXd row = hyperatom_features(acid, subs.substructures[0]);
  EXPECT_DOUBLE_EQ(row[static_cast<int>(Element::C)], 1.0);
  EXPECT_DOUBLE_EQ(row[static_cast<int>(Element::O)], 2.0);
  EXPECT_DOUBLE_EQ(row[12], 2.0);
  EXPECT_DOUBLE_EQ(row[14], 1.0);
  EXPECT_DOUBLE_EQ(row[15], 0.0);
  EXPECT_DOUBLE_EQ(row[17], 1.0);

  MolGraph amine = mol_from_smiles("CN");
  subs = extract_substructures(amine);
  row = hyperatom_features(amine, subs.substructures[0]);
  EXPECT_DOUBLE_EQ(row[static_cast<int>(Element::N)], 1.0);
  EXPECT_DOUBLE_EQ(row[12], 0.0);
  EXPECT_DOUBLE_EQ(row[14], 2.0);
  EXPECT_DOUBLE_EQ(row[15], 0.0);  // no internal bonds: not aromatic
  EXPECT_DOUBLE_EQ(row[17], 1.0);
}

TEST(NodeSet, RowsAndPlainLayout) {
  MolGraph mol = mol_from_smiles("CC(=O)O");
  SubstructureSet subs = extract_substructures(mol);
  Eigen::MatrixXd nodes = node_set(mol, subs);
  ASSERT_EQ(nodes.rows(), 2);
  ASSERT_EQ(nodes.cols(), kHyperAtomFeatureDim);
  // row 1 is the plain methyl: hyper blocks zero, kind=plain, atom features
  Eigen::RowVectorXd plain = nodes.row(1);
  EXPECT_TRUE((plain.head(18).array() == 0.0).all());
  EXPECT_DOUBLE_EQ(plain[18 + static_cast<int>(SubstructureKind::PlainAtom)],
                   1.0);
  EXPECT_TRUE(plain.tail(kAtomFeatureDim).isApprox(atom_features(mol, 0)));

  MolGraph chain = mol_from_smiles("CCCC");
  nodes = node_set(chain, extract_substructures(chain));
  EXPECT_EQ(nodes.rows(), 4);
  MolGraph benzene = mol_from_smiles("c1ccccc1");
  nodes = node_set(benzene, extract_substructures(benzene));
  EXPECT_EQ(nodes.rows(), 1);
}

TEST(NodeSet, ElementHistogramConserved) {
  for (const char* smiles :
       {"CC(=O)Oc1ccccc1C(=O)O", "CS(N)(=O)=O", "O=C1CCO1", "CCN(CC)CC"}) {
    MolGraph mol = mol_from_smiles(smiles);
    SubstructureSet subs = extract_substructures(mol);
    std::map<Element, double> expected;
    for (const Atom& atom : mol.atoms) expected[atom.element] += 1.0;
    std::map<Element, double> got;
    for (const Substructure& sub : subs.substructures) {
      Eigen::RowVectorXd row = hyperatom_features(mol, sub);
      for (int e = 0; e < kNumElements; ++e) {
        if (row[e] > 0) got[static_cast<Element>(e)] += row[e];
      }
    }
    for (int at : subs.plain_atoms) got[mol.atoms[at].element] += 1.0;
    EXPECT_EQ(got, expected) << smiles;
  }
}

TEST(NodeSet, ExternalValenceAccounting) {
  // aspirin: ester crosses 2 bonds, acid 1, ring 2 (boundary bonds counted
  // once per substructure they touch)
  MolGraph mol = mol_from_smiles("CC(=O)Oc1ccccc1C(=O)O");
  SubstructureSet subs = extract_substructures(mol);
  std::vector<double> ext;
  for (const Substructure& sub : subs.substructures) {
    ext.push_back(hyperatom_features(mol, sub)[17]);
  }
  EXPECT_EQ(ext, (std::vector<double>{2.0, 1.0, 2.0}));
}

}  // namespace
