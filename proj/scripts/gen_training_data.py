#!/usr/bin/env python3
"""Regenerates data/sample500.csv and tests/fixtures/overfit32.csv.

Molecules come from a scaffold x substituent grammar; labels follow a
deterministic additive contribution scheme (element/aromaticity terms,
hydrogen-bond-donor penalty, ring bonus) with small seeded noise for the
500-sample set and no noise for the 32-molecule overfit set. logD is
logP minus an ionization penalty and is present on ~60% of rows.

Structural duplicates are removed with a Weisfeiler-Lehman refinement
key, so the 500 rows stay unique after canonicalization.

Run from the repository root:  python3 scripts/gen_training_data.py
"""

import csv
import os
import random
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from gen_parser_fixtures import ParseFail, parse, hydrogens  # noqa: E402

SCAFFOLDS = [
    "CC{}", "CCC{}", "CCCC{}", "CCCCC{}", "CCCCCC{}", "CCCCCCC{}",
    "CC(C){}", "CC(C)C{}", "CC(C)(C){}", "CC(C)CC{}", "CCC(C)C{}",
    "C1CCCCC1{}", "C1CCCC1{}", "C1CCC(CC1){}", "CC1CCCCC1{}",
    "c1ccc({})cc1", "Cc1ccc({})cc1", "CCc1ccc({})cc1", "COc1ccc({})cc1",
    "Fc1ccc({})cc1", "Clc1ccc({})cc1", "Cc1cccc({})c1", "Cc1ccccc1{}",
    "c1ccnc({})c1", "Cc1ccnc({})c1", "c1ccc2ccc({})cc2c1",
    "c1ccc({})nc1? DROP", "C1CCN(C1){}", "C1CCN(CC1){}", "O1CCN(CC1){}",
    "C1CCO(C1){}? DROP", "c1csc({})c1", "c1coc({})c1", "CC(F)(F){}",
    "FC(F)(F)c1ccc({})cc1", "CSc1ccc({})cc1", "Cn1ccc({})c1? DROP",
]

SUBSTITUENTS = [
    "O", "N", "Cl", "Br", "F", "I", "C", "CC", "CCC", "C(C)C", "OC",
    "OCC", "NC", "N(C)C", "C#N", "C=O", "CO", "CN", "C(=O)O", "C(=O)OC",
    "C(=O)OCC", "C(=O)N", "C(=O)NC", "CC(=O)O", "S", "SC", "S(=O)(=O)N",
    "S(=O)(=O)C", "C(F)(F)F", "OC(F)(F)F", "CCl", "CCO", "CCN", "C(C)O",
    "C(C)N", "CC#N", "C(=O)C", "OCC(=O)O",
]

EXTRAS = [
    "CC(=O)Oc1ccccc1C(=O)O", "CC(=O)Nc1ccc(O)cc1", "OC(=O)c1ccccc1O",
    "Cn1cnc2c1c(=O)n(C)c(=O)n2C", "CN1CCCC1c1cccnc1", "NC(=O)c1cccnc1",
    "CCOC(=O)c1ccc(N)cc1", "COc1cc(C=O)ccc1O", "NCCc1c[nH]c2ccc(O)cc12",
    "Nc1ccc(cc1)S(N)(=O)=O", "O=S1(=O)NC(=O)c2ccccc12",
    "OCC1OC(O)C(O)C(O)C1O", "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
    "c1ccc2c(c1)cccn2", "c1ccc2c(c1)cc[nH]2", "c1ccc2ccccc2c1",
    "c1ccc2c(c1)CCCC2", "C1Cc2ccccc2C1", "NCCc1ccccc1", "OCCc1ccccc1",
    "CCN(CC)CCOC(=O)c1ccc(N)cc1", "CC(N)Cc1ccccc1", "CCCCCCCCO",
    "CCCCCCCC(=O)O", "CCCCCCCCCC", "ClC(Cl)Cl", "FC(F)(F)F", "CCOCC",
    "CSSC", "CS(=O)C", "COP(=O)(OC)OC", "C1CC2CCC1C2", "C1CC2(CC1)CCCC2",
    "C1C2CC3CC1CC(C2)C3", "C1CCC2CCCCC2C1", "c1cc[nH]c1", "c1c[nH]cn1",
    "c1ccoc1", "c1ccsc1", "c1cncnc1", "Oc1ccccc1", "OCc1ccccc1",
]

OVERFIT32 = [
    "C", "CC", "CCC", "CCCC", "CCO", "CCCO", "CCN", "CCCN", "CC(C)C",
    "CC(C)O", "CC(=O)O", "CC(=O)OC", "CC(=O)NC", "CCOCC", "CCS", "CSC",
    "CCCl", "CCBr", "CCF", "CC#N", "C1CCCCC1", "C1CCOC1", "C1CCNC1",
    "c1ccccc1", "Cc1ccccc1", "Oc1ccccc1", "Nc1ccccc1", "c1ccncc1",
    "c1ccoc1", "CC(=O)c1ccccc1", "OC(=O)c1ccccc1", "Clc1ccccc1",
]

ELEMENT_TERM = {
    "B": 0.05, "C": 0.19, "N": -0.60, "O": -0.45, "F": 0.14, "Si": 0.20,
    "P": -0.30, "S": 0.25, "Cl": 0.65, "Br": 0.85, "I": 1.10, "H": 0.00,
}
AROMATIC_BONUS = 0.12   # aromatic atoms pack better into lipid phases here
DONOR_PENALTY = -0.35   # N/O carrying at least one hydrogen
RING_BONUS = 0.10       # per independent cycle
BASE = -0.20


def descriptors(smiles):
    atoms, bonds = parse(smiles)
    hs = hydrogens(atoms, bonds)
    return atoms, bonds, hs


def logp_of(atoms, bonds, hs):
    value = BASE
    for atom, h in zip(atoms, hs):
        value += ELEMENT_TERM[atom.element]
        if atom.aromatic:
            value += AROMATIC_BONUS
        if atom.element in ("N", "O") and h >= 1:
            value += DONOR_PENALTY
    value += RING_BONUS * (len(bonds) - len(atoms) + 1)
    return value


def ionization_penalty(atoms, bonds, hs):
    """Acidic -C(=O)OH or basic amine-like N-H shifts logD below logP."""
    adj = {}
    for a, b, v in bonds:
        adj.setdefault(a, []).append((b, v))
        adj.setdefault(b, []).append((a, v))
    penalty = 0.05
    for i, atom in enumerate(atoms):
        if atom.element == "C":
            nbrs = adj.get(i, [])
            has_carbonyl = any(
                atoms[j].element == "O" and v == 2.0 for j, v in nbrs)
            has_acid_oh = any(
                atoms[j].element == "O" and v == 1.0 and hs[j] >= 1
                for j, v in nbrs)
            if has_carbonyl and has_acid_oh:
                penalty = max(penalty, 1.20)
        if (atom.element == "N" and not atom.aromatic and hs[i] >= 1
                and not any(
                    atoms[j].element == "C"
                    and any(atoms[k].element == "O" and v2 == 2.0
                            for k, v2 in adj.get(j, []))
                    for j, _ in adj.get(i, []))):
            penalty = max(penalty, 0.80)
    return penalty


def wl_key(atoms, bonds, hs):
    """Color-refinement fingerprint used only for duplicate removal."""
    adj = {i: [] for i in range(len(atoms))}
    for a, b, v in bonds:
        adj[a].append((b, v))
        adj[b].append((a, v))
    colors = [
        (atom.element, atom.aromatic, atom.charge, hs[i])
        for i, atom in enumerate(atoms)
    ]
    for _ in range(4):
        colors = [
            (colors[i], tuple(sorted((v, colors[j]) for j, v in adj[i])))
            for i in range(len(atoms))
        ]
    return (len(atoms), len(bonds), tuple(sorted(map(repr, colors))))


def build_candidates():
    seen_strings = set()
    out = []
    for scaffold in SCAFFOLDS:
        if "DROP" in scaffold:
            continue
        for sub in SUBSTITUENTS:
            out.append(scaffold.format(sub))
    out.extend(EXTRAS)
    unique = []
    for s in out:
        if s not in seen_strings:
            seen_strings.add(s)
            unique.append(s)
    return unique


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    data_dir = os.path.join(root, "data")
    fixture_dir = os.path.join(root, "tests", "fixtures")
    os.makedirs(data_dir, exist_ok=True)
    os.makedirs(fixture_dir, exist_ok=True)

    rng = random.Random(20260825)
    kept = []
    seen_structures = set()
    skipped_parse = 0
    for smiles in build_candidates():
        try:
            atoms, bonds, hs = descriptors(smiles)
        except ParseFail:
            skipped_parse += 1
            continue
        key = wl_key(atoms, bonds, hs)
        if key in seen_structures:
            continue
        seen_structures.add(key)
        kept.append((smiles, atoms, bonds, hs))
    if skipped_parse:
        print(f"note: {skipped_parse} candidates failed to parse, dropped")
    if len(kept) < 500:
        sys.exit(f"only {len(kept)} unique candidates, need 500")
    rng.shuffle(kept)
    kept = kept[:500]

    sample_path = os.path.join(data_dir, "sample500.csv")
    with open(sample_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["smiles", "logp", "logd"])
        for smiles, atoms, bonds, hs in kept:
            logp = logp_of(atoms, bonds, hs) + rng.gauss(0.0, 0.05)
            row = [smiles, f"{logp:.4f}"]
            if rng.random() < 0.6:
                logd = logp - ionization_penalty(atoms, bonds, hs)
                row.append(f"{logd:.4f}")
            else:
                row.append("")
            writer.writerow(row)
    print(f"wrote {sample_path}: 500 molecules")

    overfit_path = os.path.join(fixture_dir, "overfit32.csv")
    with open(overfit_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["smiles", "logp"])
        for smiles in OVERFIT32:
            atoms, bonds, hs = descriptors(smiles)
            writer.writerow([smiles, f"{logp_of(atoms, bonds, hs):.4f}"])
    print(f"wrote {overfit_path}: {len(OVERFIT32)} molecules")


if __name__ == "__main__":
    main()
