#!/usr/bin/env python3
"""Regenerates tests/fixtures/parser_corpus.csv and corpus50.txt.

This is the reference implementation of the documented SMILES chemical
model (organic subset + brackets, aromatic bonds worth 1.5 with a floored
sum, charge-adjusted valences, lowest-state clamping for aromatic atoms).
It is written independently of the C++ parser -- regex tokenizer and a
flat loop instead of a recursive scanner -- so the committed counts act
as an oracle rather than an echo.

Run from the repository root:  python3 scripts/gen_parser_fixtures.py
"""

import csv
import math
import os
import re
import sys

# --- chemical model -------------------------------------------------------

VALENCES = {
    "B": [3], "C": [4], "N": [3], "O": [2], "F": [1], "Si": [4],
    "P": [3, 5], "S": [2, 4, 6], "Cl": [1], "Br": [1], "I": [1], "H": [1],
}
ORGANIC = {"B", "C", "N", "O", "F", "P", "S", "Cl", "Br", "I"}
AROMATIC_OK = {"B", "C", "N", "O", "P", "S"}
BOND_VALUE = {"-": 1.0, "=": 2.0, "#": 3.0, ":": 1.5}


class ParseFail(ValueError):
    pass


def adjusted_valence(elem, valence, charge):
    if charge > 0 and elem in ("N", "O"):
        return valence + charge
    if charge < 0:
        return valence + charge
    return valence


def smallest_valence_at_least(elem, charge, bond_sum):
    for v in VALENCES[elem]:
        adj = adjusted_valence(elem, v, charge)
        if adj >= bond_sum:
            return adj
    return None


# --- tokenizer / graph builder -------------------------------------------

BRACKET_RE = re.compile(
    r"""\[
    (?P<isotope>\d+)?
    (?P<symbol>[A-Z][a-z]?|[a-z])
    (?P<chiral>@@?)?
    (?P<hcount>H\d?)?
    (?P<charge>\+\d|-\d|\++|-+)?
    \]""",
    re.X,
)


class Atom:
    __slots__ = ("element", "aromatic", "charge", "explicit_h")

    def __init__(self, element, aromatic=False, charge=0, explicit_h=None):
        self.element = element
        self.aromatic = aromatic
        self.charge = charge
        self.explicit_h = explicit_h


def parse(smiles):
    """Returns (atoms, bonds) where bonds are (a, b, order_value)."""
    if not smiles:
        raise ParseFail("empty input")
    atoms = []
    bonds = []
    seen_pairs = set()
    branch_stack = []
    ring_slots = {}  # number -> (atom index, pending bond symbol or None)
    prev = -1
    pending = None  # bond symbol
    i = 0
    n = len(smiles)

    def add_bond(a, b, symbol):
        if a == b:
            raise ParseFail("self bond")
        if (min(a, b), max(a, b)) in seen_pairs:
            raise ParseFail("duplicate bond")
        if symbol is None:
            value = 1.5 if atoms[a].aromatic and atoms[b].aromatic else 1.0
        else:
            value = BOND_VALUE[symbol]
            if value == 1.5 and not (atoms[a].aromatic and atoms[b].aromatic):
                raise ParseFail("aromatic bond between non-aromatic atoms")
        seen_pairs.add((min(a, b), max(a, b)))
        bonds.append((a, b, value))

    def add_atom(atom):
        nonlocal prev, pending
        atoms.append(atom)
        idx = len(atoms) - 1
        if prev >= 0:
            add_bond(prev, idx, pending)
            pending = None
        prev = idx

    while i < n:
        c = smiles[i]
        if c == ".":
            raise ParseFail("multi-fragment")
        if c == "(":
            if prev < 0 or pending is not None:
                raise ParseFail("bad branch open")
            branch_stack.append(prev)
            i += 1
        elif c == ")":
            if not branch_stack or pending is not None:
                raise ParseFail("bad branch close")
            prev = branch_stack.pop()
            i += 1
        elif c in BOND_VALUE:
            if pending is not None or prev < 0:
                raise ParseFail("bad bond symbol")
            pending = c
            i += 1
        elif c == "%" or c.isdigit():
            if prev < 0:
                raise ParseFail("ring closure before atom")
            if c == "%":
                if i + 2 >= n or not smiles[i + 1 : i + 3].isdigit():
                    raise ParseFail("'%' needs two digits")
                number = int(smiles[i + 1 : i + 3])
                i += 3
            else:
                number = int(c)
                if number == 0:
                    raise ParseFail("ring digit 0")
                i += 1
            if number not in ring_slots:
                ring_slots[number] = (prev, pending)
                pending = None
            else:
                open_atom, open_bond = ring_slots.pop(number)
                if open_bond and pending and open_bond != pending:
                    raise ParseFail("conflicting ring bond orders")
                add_bond(open_atom, prev, pending or open_bond)
                pending = None
                prev = prev  # ring closure does not move the cursor atom
        elif c == "[":
            m = BRACKET_RE.match(smiles, i)
            if not m or m.start() != i:
                raise ParseFail("bad bracket atom")
            sym = m.group("symbol")
            aromatic = False
            if sym.islower():
                elem = sym.upper()
                if elem not in VALENCES or elem not in AROMATIC_OK:
                    raise ParseFail("bad aromatic element")
                aromatic = True
            else:
                elem = sym
                if elem not in VALENCES:
                    raise ParseFail("unknown element " + sym)
            hgroup = m.group("hcount")
            if hgroup is None:
                hcount = 0
            elif hgroup == "H":
                hcount = 1
            else:
                hcount = int(hgroup[1:])
            cgroup = m.group("charge")
            if cgroup is None:
                charge = 0
            elif cgroup[-1].isdigit():
                charge = int(cgroup[1:]) * (1 if cgroup[0] == "+" else -1)
            else:
                charge = len(cgroup) * (1 if cgroup[0] == "+" else -1)
            add_atom(Atom(elem, aromatic, charge, hcount))
            i = m.end()
        elif c == "*" or c == ">":
            raise ParseFail("unsupported token " + c)
        elif c.isalpha():
            two = smiles[i : i + 2]
            if two in ("Cl", "Br"):
                add_atom(Atom(two))
                i += 2
            else:
                elem = c.upper()
                if elem not in VALENCES or elem not in ORGANIC:
                    raise ParseFail("unknown organic atom " + c)
                if c.islower() and elem not in AROMATIC_OK:
                    raise ParseFail("cannot be aromatic: " + c)
                add_atom(Atom(elem, aromatic=c.islower()))
                i += 1
        else:
            raise ParseFail("unexpected character " + c)

    if pending is not None:
        raise ParseFail("dangling bond")
    if branch_stack:
        raise ParseFail("unclosed branch")
    if ring_slots:
        raise ParseFail("unclosed ring")
    return atoms, bonds


def hydrogens(atoms, bonds):
    """Per-atom total hydrogen counts under the valence model."""
    sums = [0.0] * len(atoms)
    for a, b, value in bonds:
        sums[a] += value
        sums[b] += value
    out = []
    for idx, atom in enumerate(atoms):
        floored = int(math.floor(sums[idx]))
        if atom.explicit_h is not None:
            if not atom.aromatic:
                if smallest_valence_at_least(
                    atom.element, atom.charge, floored + atom.explicit_h
                ) is None:
                    raise ParseFail(f"valence error on atom {idx}")
            out.append(atom.explicit_h)
        elif atom.aromatic:
            v = adjusted_valence(atom.element, VALENCES[atom.element][0],
                                 atom.charge)
            out.append(max(0, v - floored))
        else:
            v = smallest_valence_at_least(atom.element, atom.charge, floored)
            if v is None:
                raise ParseFail(f"valence error on atom {idx}")
            out.append(v - floored)
    return out


# --- curated corpus -------------------------------------------------------

CORPUS = [
    # alkanes, linear and branched
    "C", "CC", "CCC", "CCCC", "CCCCC", "CCCCCC", "CCCCCCCC", "CCCCCCCCCC",
    "CC(C)C", "CC(C)CC", "CC(C)(C)C", "CC(C)C(C)C", "CC(C)(C)CC",
    "CCC(CC)CC",
    # alkenes, alkynes, cumulenes, nitriles
    "C=C", "CC=C", "CC=CC", "C=CC=C", "CC(=C)C", "C=C=C", "C=CCC=C",
    "C#C", "CC#C", "CC#CC", "C#N", "CC#N", "CCC#N", "N#CC#N",
    "CC=C(C)C", "C=CC#N",
    # alcohols, ethers, polyols
    "CO", "CCO", "CCCO", "CC(C)O", "CC(C)(C)O", "OCCO", "OCC(O)CO",
    "CC(O)CO", "COC", "CCOC", "CCOCC", "COCCO", "COCCOC", "OCCOCCO",
    # aldehydes and ketones
    "C=O", "CC=O", "CCC=O", "CC(C)=O", "CC(=O)CC", "O=CC=O",
    "CC(=O)C(C)=O", "CC(=O)CC(C)=O",
    # acids, esters, amides, anhydrides
    "OC=O", "CC(=O)O", "CCC(=O)O", "CC(C)C(=O)O", "OC(=O)C(=O)O",
    "OC(=O)CC(=O)O", "CC(=O)OC", "CC(=O)OCC", "COC(=O)C", "CCOC(=O)CC",
    "NC(C)=O", "CC(=O)NC", "CC(=O)N(C)C", "CC(=O)OC(C)=O", "NC(N)=O",
    "COC(=O)OC",
    # amines and other nitrogen chains
    "N", "CN", "CCN", "CCCN", "CNC", "CCNC", "CN(C)C", "CCN(CC)CC",
    "NCCN", "NCCO", "NCCCN", "CC(N)C", "CN=C", "CC=NC", "CN=CC",
    # charged species
    "[NH4+]", "C[NH3+]", "CC[NH3+]", "C[N+](C)(C)C", "CC(=O)[O-]",
    "CC[O-]", "[O-]c1ccccc1", "c1cc[nH+]cc1", "CC[N+](=O)[O-]",
    "C[N+](=O)[O-]", "CCN=[N+]=[N-]", "[NH3+]CC([O-])=O",
    "[O-][N+](=O)c1ccccc1", "C[S+](C)C", "[CH3-]", "[OH-]",
    # isotopes, chirality, bracket oddities
    "[13CH4]", "[CH4]", "[2H]O[2H]", "C([2H])([2H])([2H])O",
    "N[C@@H](C)C(=O)O", "N[C@H](C)C(=O)O", "C[C@H](O)CC", "C[C@@H](N)CO",
    "[SiH4]", "C[Si](C)(C)C", "[PH3]", "[CH2]1CC1",
    # halides
    "CF", "CCl", "CBr", "CI", "FCF", "FC(F)F", "FC(F)(F)F", "OCC(F)(F)F",
    "ClCCl", "ClC(Cl)Cl", "BrCCBr", "FCCF", "Fc1ccccc1", "Clc1ccccc1",
    "Clc1ccc(Cl)cc1", "Brc1ccccc1", "Ic1ccccc1", "FC(F)(F)c1ccccc1",
    # sulfur and phosphorus chains
    "S", "CS", "CCS", "CSC", "CCSC", "CSSC", "CS(=O)C", "CS(=O)(=O)C",
    "CS(=O)(=O)O", "CS(=O)(=O)N", "NS(=O)(=O)c1ccccc1", "CP(C)C",
    "OP(=O)(O)O", "COP(=O)(OC)OC", "SC#N", "CSC#N",
    # plain rings
    "C1CC1", "C1CCC1", "C1CCCC1", "C1CCCCC1", "C1CCCCCC1", "C1CCCCCCC1",
    "CC1CCCCC1", "CC1CC(C)C1", "C1CC1C1CCCCC1", "C1CCOC1", "C1CCNC1",
    "C1CCNCC1", "C1COCCN1", "C1CCSC1", "O1CCOCC1", "C1CNCCN1",
    "O=C1CCCCC1", "OC1CCCCC1", "NC1CCCCC1", "C1CCC=CC1",
    "C%10CCCC%10", "C%12CCCCC%12", "[CH2]1[CH2]C1",
    "C1=CC=CC=C1", "C1=CCCCC1", "C1=CC=CC1",
    # fused, bridged, spiro ring systems
    "C1CCC2CCCCC2C1", "C1CCC2CCCC2C1", "C1CC2CCC1C2", "C1CC2CCC1CC2",
    "C1CC2(CC1)CCCC2", "C1CCC2(C1)CCCCC2", "C1CCC2(CC1)CCCCC2",
    "C1C2CC3CC1CC(C2)C3", "C12C3C4C1C5C2C3C45", "C1CC2CCC3CCCC3C2C1",
    # benzene derivatives
    "c1ccccc1", "Cc1ccccc1", "CCc1ccccc1", "Cc1ccccc1C", "Cc1ccc(C)cc1",
    "Cc1cccc(C)c1", "Oc1ccccc1", "COc1ccccc1", "Nc1ccccc1", "CNc1ccccc1",
    "CC(=O)c1ccccc1", "OC(=O)c1ccccc1", "C=Cc1ccccc1", "N#Cc1ccccc1",
    "c1ccc(cc1)-c1ccccc1", "c1ccc(cc1)c1ccccc1", "c1:c:c:c:c:c1",
    "Cc1ccc(cc1)C(C)C", "CC(C)c1ccccc1", "OCc1ccccc1",
    # heteroaromatic monocycles
    "c1ccncc1", "c1ccoc1", "c1ccsc1", "c1cc[nH]c1", "c1cncnc1",
    "c1cnccn1", "c1ccnnc1", "c1cn[nH]c1", "c1c[nH]cn1", "o1cncc1",
    "s1cncc1", "o1nccc1", "c1ncncn1", "c1ccpcc1", "Cc1ccncc1",
    "Cn1cccc1", "Cc1occc1", "Nc1ncccn1",
    # fused aromatics and mixed systems
    "c1ccc2ccccc2c1", "c1ccc2cc3ccccc3cc2c1", "c1ccc2c(c1)ccc1ccccc12",
    "c1ccc2c(c1)cc[nH]2", "c1ccc2c(c1)cccn2", "c1ccc2cnccc2c1",
    "c1ccc2c(c1)cco2", "c1ccc2c(c1)ccs2", "c1ccc2[nH]cnc2c1",
    "c1ccc2c(c1)[nH]c1ccccc12", "c1ccc2c(c1)oc1ccccc12",
    "c1ccc2cccc2cc1", "c1ccc2nccnc2c1",
    "c1ccc2c(c1)CCCC2", "C1Cc2ccccc2C1", "c1ccc2c(c1)OCO2",
    "C1Oc2ccccc2O1",
    # chains bearing rings
    "NCCc1ccccc1", "NC(=O)c1ccccc1", "OCCc1ccccc1", "O=CC=Cc1ccccc1",
    "CC(=O)Nc1ccccc1", "CCOC(=O)c1ccccc1", "Cc1ccccc1N", "ClCc1ccccc1",
    # drug-like molecules
    "CC(=O)Oc1ccccc1C(=O)O", "CC(=O)Nc1ccc(O)cc1",
    "CC(C)Cc1ccc(cc1)C(C)C(=O)O", "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "CN1CCCC1c1cccnc1", "CCOC(=O)c1ccc(N)cc1", "OC(=O)c1ccccc1O",
    "COc1cc(C=O)ccc1O", "O=c1ccc2ccccc2o1", "O=S1(=O)NC(=O)c2ccccc12",
    "Nc1ccc(cc1)S(N)(=O)=O", "CCN(CC)CCOC(=O)c1ccc(N)cc1",
    "NC(=O)c1cccnc1", "NCCc1c[nH]c2ccc(O)cc12",
    "OCC1OC(O)C(O)C(O)C1O", "CCC1(c2ccccc2)C(=O)NC(=O)NC1=O",
    "CC(CS)C(=O)N1CCCC1C(=O)O", "CC(N)Cc1ccccc1",
]

# 50 structurally diverse molecules reused by the canonicalization and
# end-to-end invariance checks.
CORPUS50 = [
    "CC(C)CC", "CC(C)(C)C", "C=CC=C", "CC#CC", "CCO", "OCC(O)CO",
    "CCOCC", "CC(=O)CC", "CC(=O)O", "CC(=O)OCC", "CC(=O)N(C)C",
    "CCN(CC)CC", "NCCO", "C[N+](C)(C)C", "CC(=O)[O-]", "c1cc[nH+]cc1",
    "CCN=[N+]=[N-]", "N[C@@H](C)C(=O)O", "C[Si](C)(C)C", "FC(F)(F)F",
    "OCC(F)(F)F", "ClC(Cl)Cl", "Clc1ccc(Cl)cc1", "CS(=O)C",
    "CS(=O)(=O)N", "NS(=O)(=O)c1ccccc1", "COP(=O)(OC)OC", "C1CC1",
    "C1CCCCC1", "CC1CCCCC1", "C1CCOC1", "C1COCCN1", "O=C1CCCCC1",
    "C1CCC2CCCCC2C1", "C1CC2CCC1C2", "C1CC2(CC1)CCCC2",
    "C1C2CC3CC1CC(C2)C3", "c1ccccc1", "Cc1ccc(C)cc1", "Oc1ccccc1",
    "c1ccncc1", "c1cc[nH]c1", "c1c[nH]cn1", "c1ccc2ccccc2c1",
    "c1ccc2c(c1)cc[nH]2", "c1ccc2c(c1)cccn2", "CC(=O)Oc1ccccc1C(=O)O",
    "CC(=O)Nc1ccc(O)cc1", "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "NC(=O)c1cccnc1",
]


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    fixture_dir = os.path.join(root, "tests", "fixtures")
    os.makedirs(fixture_dir, exist_ok=True)

    corpus = list(CORPUS)
    if len(corpus) != len(set(corpus)):
        dupes = sorted({s for s in corpus if corpus.count(s) > 1})
        sys.exit(f"duplicate corpus entries: {dupes}")
    if len(corpus) < 200:
        sys.exit(f"corpus too small: {len(corpus)}")
    missing = [s for s in CORPUS50 if s not in corpus]
    if missing:
        sys.exit(f"corpus50 entries missing from corpus: {missing}")

    rows = []
    for smiles in corpus:
        atoms, bonds = parse(smiles)
        hs = hydrogens(atoms, bonds)
        rows.append(
            (smiles, len(atoms), len(bonds), sum(hs),
             "".join(str(h) for h in hs))
        )

    out_path = os.path.join(fixture_dir, "parser_corpus.csv")
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["smiles", "atoms", "bonds", "h_total", "h_per_atom"])
        writer.writerows(rows)
    print(f"wrote {out_path}: {len(rows)} molecules")

    with open(os.path.join(fixture_dir, "corpus50.txt"), "w") as fh:
        fh.write("\n".join(CORPUS50) + "\n")
    print(f"wrote corpus50.txt: {len(CORPUS50)} molecules")


if __name__ == "__main__":
    main()
