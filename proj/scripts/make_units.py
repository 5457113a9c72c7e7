#!/usr/bin/env python3
# Copyright 2026 The prips Authors
# SPDX-License-Identifier: Apache-2.0
"""Generate the bundled repeating-unit documents from pSMILES.

Development-only: needs RDKit. The outputs under data/ are committed, so
building and testing never runs this script.

For every distinct cyclic rotation of the backbone fragments, the rotated unit
is embedded with anchors replaced by methyl stand-ins, optimized with UFF, and
its heavy-atom and anchor coordinates are stored as one frame indexed by the
original atom order.
"""

import argparse
import json
from collections import deque
from pathlib import Path

from rdkit import Chem
from rdkit.Chem import AllChem

BUNDLED = [
    ("PEO", "*CCO*"),
    ("PMMA", "*CC(*)(C)C(=O)OC"),
    ("BPA-PC", "*Oc1ccc(cc1)C(C)(C)c1ccc(cc1)OC(=O)*"),
]

# Aryl-ethyl vinyl families: acrylate, acrylamide, methacrylate.
FAMILIES = {
    "Ar-Et-A": "*CC(*)C(=O)OCC{ring}",
    "Ar-Et-AM": "*CC(*)C(=O)NCC{ring}",
    "Ar-Et-MA": "*CC(*)(C)C(=O)OCC{ring}",
}
RINGS = {
    "none": "c1ccccc1",
    "p-F": "c1ccc(F)cc1",
    "m-Cl": "c1cccc(Cl)c1",
    "o-CH3": "c1ccccc1C",
}

HYBRID = {
    Chem.HybridizationType.SP: "SP",
    Chem.HybridizationType.SP2: "SP2",
    Chem.HybridizationType.SP3: "SP3",
}
BOND = {
    Chem.BondType.SINGLE: "single",
    Chem.BondType.DOUBLE: "double",
    Chem.BondType.TRIPLE: "triple",
    Chem.BondType.AROMATIC: "aromatic",
}


def anchors(mol):
    idx = [a.GetIdx() for a in mol.GetAtoms() if a.GetAtomicNum() == 0]
    if len(idx) != 2:
        raise ValueError("expected two anchors")
    return sorted(idx)


def backbone(mol, s, e):
    """Lexicographically smallest shortest path from s to e."""
    n = mol.GetNumAtoms()
    dist = [-1] * n
    dist[e] = 0
    q = deque([e])
    while q:
        u = q.popleft()
        for nb in mol.GetAtomWithIdx(u).GetNeighbors():
            v = nb.GetIdx()
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    path = [s]
    while path[-1] != e:
        u = path[-1]
        path.append(min(nb.GetIdx() for nb in mol.GetAtomWithIdx(u).GetNeighbors()
                        if dist[nb.GetIdx()] == dist[u] - 1))
    return path


def rotations(mol):
    """Bond lists of the unit re-cut at each breakable backbone bond."""
    s, e = anchors(mol)
    path = backbone(mol, s, e)
    p1, pm = path[1], path[-2]
    bonds = {tuple(sorted((b.GetBeginAtomIdx(), b.GetEndAtomIdx()))): b.GetBondType()
             for b in mol.GetBonds()}
    cuts = [(path[i], path[i + 1]) for i in range(1, len(path) - 2)
            if not mol.GetBondBetweenAtoms(path[i], path[i + 1]).IsInRing()]
    out = [dict(bonds)]
    for x, y in cuts:
        rot = dict(bonds)
        anchor_type = rot.pop(tuple(sorted((s, p1))))
        rot.pop(tuple(sorted((e, pm))))
        cut_type = rot.pop(tuple(sorted((x, y))))
        rot[tuple(sorted((pm, p1)))] = anchor_type
        rot[tuple(sorted((s, y)))] = cut_type
        rot[tuple(sorted((e, x)))] = cut_type
        out.append(rot)
    return out


def rotated_mol(mol, bonds):
    rw = Chem.RWMol()
    for a in mol.GetAtoms():
        na = Chem.Atom(a.GetAtomicNum())
        na.SetFormalCharge(a.GetFormalCharge())
        na.SetIsAromatic(a.GetIsAromatic())
        na.SetNoImplicit(False)
        rw.AddAtom(na)
    for (i, j), t in sorted(bonds.items()):
        rw.AddBond(i, j, t)
    m = rw.GetMol()
    Chem.SanitizeMol(m)
    return m


def embed(mol, seed):
    stand_in = Chem.RWMol(mol)
    for a in stand_in.GetAtoms():
        if a.GetAtomicNum() == 0:
            a.SetAtomicNum(6)
    m = stand_in.GetMol()
    Chem.SanitizeMol(m)
    mh = Chem.AddHs(m)
    params = AllChem.ETKDGv3()
    params.randomSeed = seed
    if AllChem.EmbedMolecule(mh, params) != 0:
        raise RuntimeError("embedding failed")
    AllChem.UFFOptimizeMolecule(mh, maxIters=2000)
    conf = mh.GetConformer()
    return [[round(c, 6) for c in conf.GetAtomPosition(i)] for i in range(mol.GetNumAtoms())]


def unit_document(name, psmiles, family="", key="", seed=7):
    mol = Chem.MolFromSmiles(psmiles)
    s, e = anchors(mol)
    atoms = []
    for a in mol.GetAtoms():
        atoms.append({
            "index": a.GetIdx(),
            "element": "*" if a.GetAtomicNum() == 0 else a.GetSymbol(),
            "degree": a.GetDegree(),
            "implicit_valence": a.GetTotalNumHs(),
            "formal_charge": a.GetFormalCharge(),
            "radical_electrons": a.GetNumRadicalElectrons(),
            "hybridization": HYBRID.get(a.GetHybridization(), "other"),
            "aromatic": a.GetIsAromatic(),
            "is_anchor": a.GetIdx() in (s, e),
        })
    bonds = [{
        "i": b.GetBeginAtomIdx(),
        "j": b.GetEndAtomIdx(),
        "type": BOND[b.GetBondType()],
        "conjugated": b.GetIsConjugated(),
        "in_ring": b.IsInRing(),
    } for b in mol.GetBonds()]

    frames, seen = [], set()
    for k, rot in enumerate(rotations(mol)):
        rmol = rotated_mol(mol, rot)
        canon = Chem.MolToSmiles(rmol)
        if canon in seen:
            continue
        seen.add(canon)
        frames.append({"permutation_id": k, "coords": embed(rmol, seed + k)})

    meta = {"name": name, "psmiles": psmiles}
    if family:
        meta["family"] = family
        meta["substitution_key"] = key
    return {"format": "prips-unit/1", "meta": meta, "atoms": atoms, "bonds": bonds,
            "frames": frames}


def write(path, doc):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    for name, smi in BUNDLED:
        write(out / "polymers" / f"{name}.json", unit_document(name, smi))
    for family, template in FAMILIES.items():
        for key, ring in RINGS.items():
            name = f"{family}_{key}"
            doc = unit_document(name, template.format(ring=ring), family, key)
            write(out / "mini" / f"{name}.json", doc)


if __name__ == "__main__":
    main()
