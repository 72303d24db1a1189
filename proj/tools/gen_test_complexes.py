#!/usr/bin/env python3
# Copyright (c) 2026, the posekit developers
# Licensed under the Apache License, Version 2.0 (see LICENSE).
#
# Generates the frozen receptor/ligand fixtures under
# tests/data/complexes/: three synthetic binding pockets, ten small
# ligands placed near the pocket center, and a manifest pairing them.
# The geometry is deliberate: aromatic residue rings are planar
# polygons, waters and a metal sit near the ligand, and shell atoms
# surround the origin so every interaction category can fire.

import math
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "complexes"


def unit(v):
    n = math.sqrt(sum(x * x for x in v))
    return tuple(x / n for x in v)


def orthobasis(normal):
    n = unit(normal)
    pick = (1.0, 0.0, 0.0) if abs(n[0]) < 0.9 else (0.0, 1.0, 0.0)
    u = unit(tuple(pick[i] - n[i] * sum(p * q for p, q in zip(pick, n)) for i in range(3)))
    v = (n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0])
    return u, v


def polygon(center, normal, n_atoms, bond=1.39):
    u, v = orthobasis(normal)
    radius = bond / (2.0 * math.sin(math.pi / n_atoms))
    pts = []
    for k in range(n_atoms):
        a = 2.0 * math.pi * k / n_atoms
        pts.append(tuple(center[i] + radius * (math.cos(a) * u[i] + math.sin(a) * v[i])
                         for i in range(3)))
    return pts


class PdbBuilder:
    def __init__(self):
        self.lines = []
        self.serial = 0
        self.seq = 0

    def atom(self, name, res, pos, element, hetatm=False, seq=None, chain="A"):
        self.serial += 1
        if seq is None:
            self.seq += 1
            seq = self.seq
        record = "HETATM" if hetatm else "ATOM  "
        x, y, z = pos
        self.lines.append(
            f"{record}{self.serial:>5} {name:<4} {res:<3} {chain}{seq:>4}    "
            f"{x:8.3f}{y:8.3f}{z:8.3f}{1.00:6.2f}{0.00:6.2f}          {element:>2}")
        return seq

    def residue(self, res, named_positions, hetatm=False):
        self.seq += 1
        for name, pos, element in named_positions:
            self.atom(name, res, pos, element, hetatm=hetatm, seq=self.seq)

    def text(self):
        return "\n".join(self.lines + ["END"]) + "\n"


SHELL_PALETTE = [
    ("CB", "ALA", "C"),
    ("CB", "ALA", "C"),
    ("OG", "SER", "O"),
    ("NZ", "LYS", "N"),
    ("OD1", "ASP", "O"),
    ("CD1", "LEU", "C"),
    ("O", "GLY", "O"),
    ("N", "GLY", "N"),
    ("SD", "MET", "S"),
    ("NH1", "ARG", "N"),
]


def shell_atoms(builder, rng, count, r_lo, r_hi):
    for _ in range(count):
        while True:
            p = tuple(rng.uniform(-1, 1) for _ in range(3))
            n = math.sqrt(sum(x * x for x in p))
            if 0.2 < n <= 1.0:
                break
        r = rng.uniform(r_lo, r_hi)
        pos = tuple(x / n * r for x in p)
        name, res, element = SHELL_PALETTE[rng.randrange(len(SHELL_PALETTE))]
        builder.atom(name, res, pos, element)


def phe_ring(builder, center, normal, with_stem=True):
    pts = polygon(center, normal, 6)
    names = ["CG", "CD1", "CE1", "CZ", "CE2", "CD2"]
    rows = [(n, p, "C") for n, p in zip(names, pts)]
    if with_stem:
        stem = tuple(center[i] + 1.5 * unit(center)[i] for i in range(3))
        rows.append(("CB", stem, "C"))
    builder.residue("PHE", rows)


def his_ring(builder, center, normal):
    pts = polygon(center, normal, 5, bond=1.37)
    names = ["CG", "ND1", "CE1", "NE2", "CD2"]
    rows = [(n, p, ("N" if n.startswith("N") else "C")) for n, p in zip(names, pts)]
    builder.residue("HIS", rows)


def tyr_ring(builder, center, normal):
    pts = polygon(center, normal, 6)
    names = ["CG", "CD1", "CE1", "CZ", "CE2", "CD2"]
    rows = [(n, p, "C") for n, p in zip(names, pts)]
    oh = tuple(center[i] + (pts[3][i] - center[i]) * 2.0 for i in range(3))
    rows.append(("OH", oh, "O"))
    builder.residue("TYR", rows)


def receptor_0(rng):
    b = PdbBuilder()
    shell_atoms(b, rng, 48, 7.0, 11.0)
    phe_ring(b, (5.2, 0.8, -0.5), (0.3, 0.2, 1.0))
    b.residue("LYS", [("NZ", (0.5, 5.6, 1.2), "N")])
    b.atom("O", "HOH", (3.4, -2.2, 1.8), "O", hetatm=True)
    b.atom("O", "HOH", (-2.8, 3.1, -2.4), "O", hetatm=True)
    b.atom("O", "HOH", (1.9, 2.4, 4.1), "O", hetatm=True)
    b.atom("ZN", "ZN", (-3.8, -2.6, 2.2), "ZN", hetatm=True)
    b.residue("SER", [("OG", (3.0, 3.2, -2.6), "O"), ("CB", (4.2, 3.9, -3.1), "C")])
    return b.text()


def receptor_1(rng):
    b = PdbBuilder()
    shell_atoms(b, rng, 56, 6.5, 10.5)
    his_ring(b, (-4.8, 1.5, 0.8), (0.9, -0.3, 0.4))
    tyr_ring(b, (1.2, -5.4, 1.0), (0.1, 1.0, 0.5))
    b.residue("ARG", [("NE", (4.9, 2.2, 2.8), "N"), ("NH1", (5.8, 3.0, 3.4), "N"),
                      ("NH2", (5.6, 1.1, 4.0), "N"), ("CZ", (5.5, 2.1, 3.5), "C")])
    b.atom("O", "HOH", (2.6, 1.8, -3.0), "O", hetatm=True)
    b.atom("O", "HOH", (-1.4, -3.0, -3.3), "O", hetatm=True)
    b.residue("THR", [("OG1", (-3.2, -3.4, 2.5), "O"), ("CG2", (-4.4, -4.0, 3.1), "C")])
    return b.text()


def receptor_2(rng):
    b = PdbBuilder()
    shell_atoms(b, rng, 36, 6.0, 9.5)
    b.residue("LEU", [("CD1", (4.6, -1.0, 0.6), "C"), ("CD2", (5.2, 0.4, -0.9), "C")])
    b.residue("ASN", [("OD1", (-4.4, 0.8, 1.4), "O"), ("ND2", (-5.0, 1.9, 0.3), "N")])
    return b.text()


class SdfMol:
    def __init__(self, name):
        self.name = name
        self.rows = []   # (x, y, z, symbol)
        self.bonds = []  # (i, j, order) 0-based

    def atom(self, pos, sym):
        self.rows.append((pos[0], pos[1], pos[2], sym))
        return len(self.rows) - 1

    def bond(self, i, j, order=1):
        self.bonds.append((i, j, order))

    def record(self, fields=None):
        lines = [self.name, "  fixturegen", ""]
        lines.append(f"{len(self.rows):3d}{len(self.bonds):3d}  0  0  0  0  0  0  0  0999 V2000")
        for x, y, z, sym in self.rows:
            lines.append(f"{x:10.4f}{y:10.4f}{z:10.4f} {sym:<3} 0  0  0  0  0  0  0  0  0  0  0  0")
        for i, j, order in self.bonds:
            lines.append(f"{i + 1:3d}{j + 1:3d}{order:3d}  0  0  0  0")
        lines.append("M  END")
        for key, value in (fields or {}).items():
            lines.append(f"> <{key}>")
            lines.append(str(value))
            lines.append("")
        lines.append("$$$$")
        return "\n".join(lines) + "\n"


def hexagon_mol(name, center=(0.0, 0.0, 0.0), normal=(0.1, 0.2, 1.0), aromatic=True):
    mol = SdfMol(name)
    pts = polygon(center, normal, 6)
    ring = [mol.atom(p, "C") for p in pts]
    for k in range(6):
        order = 2 if (aromatic and k % 2 == 0) else 1
        mol.bond(ring[k], ring[(k + 1) % 6], order)
    return mol, ring, pts


def substituted(mol, pts, center, idx, sym, stretch=1.9):
    direction = unit(tuple(pts[idx][i] - center[i] for i in range(3)))
    pos = tuple(pts[idx][i] + stretch * direction[i] for i in range(3))
    return mol.atom(pos, sym)


def chain_mol(name, syms, start=(-1.8, 0.3, -0.4), step=1.52, rng=None):
    mol = SdfMol(name)
    prev = None
    pos = list(start)
    for k, sym in enumerate(syms):
        jitter = (0.0, 0.35 * (-1) ** k, 0.15 * (rng.uniform(-1, 1) if rng else 0.0))
        p = (pos[0], pos[1] + jitter[1], pos[2] + jitter[2])
        idx = mol.atom(p, sym)
        if prev is not None:
            mol.bond(prev, idx, 1)
        prev = idx
        pos[0] += step
    return mol


def build_ligands(rng):
    ligands = {}

    mol, ring, pts = hexagon_mol("lig_benzene")
    ligands["lig_benzene.sdf"] = mol.record()

    mol, ring, pts = hexagon_mol("lig_chlorophenol", center=(0.3, 0.2, 0.1))
    cl = substituted(mol, pts, (0.3, 0.2, 0.1), 0, "Cl", 1.75)
    oh = substituted(mol, pts, (0.3, 0.2, 0.1), 3, "O", 1.40)
    mol.bond(ring[0], cl)
    mol.bond(ring[3], oh)
    ligands["lig_chlorophenol.sdf"] = mol.record()

    mol, ring, pts = hexagon_mol("lig_pyridine_amine", center=(-0.2, 0.4, 0.0))
    mol.rows[0] = (mol.rows[0][0], mol.rows[0][1], mol.rows[0][2], "N")
    nh2 = substituted(mol, pts, (-0.2, 0.4, 0.0), 3, "N", 1.45)
    mol.bond(ring[3], nh2)
    ligands["lig_pyridine_amine.sdf"] = mol.record({"source": "fixture"})

    mol = chain_mol("lig_butanol", ["C", "C", "C", "C", "O"], rng=rng)
    ligands["lig_butanol.sdf"] = mol.record()

    mol = chain_mol("lig_diamine", ["N", "C", "C", "C", "N"], rng=rng)
    ligands["lig_diamine.sdf"] = mol.record()

    mol = chain_mol("lig_thioether", ["C", "S", "C", "C"], rng=rng)
    o = mol.atom((1.3, 1.6, 0.6), "O")
    mol.bond(3, o, 2)
    ligands["lig_thioether.sdf"] = mol.record()

    mol = SdfMol("lig_imidazole_like")
    pts = polygon((0.1, -0.3, 0.2), (0.2, 1.0, 0.3), 5, bond=1.37)
    syms = ["N", "C", "N", "C", "C"]
    ring = [mol.atom(p, s) for p, s in zip(pts, syms)]
    orders = [1, 2, 1, 2, 1]
    for k in range(5):
        mol.bond(ring[k], ring[(k + 1) % 5], orders[k])
    ligands["lig_imidazole_like.sdf"] = mol.record()

    mol = SdfMol("lig_spiro")
    ring1 = polygon((0.0, 0.0, 0.0), (0.0, 0.0, 1.0), 5, bond=1.53)
    ring2 = polygon((1.6, 0.9, 0.9), (1.0, 0.2, 0.1), 5, bond=1.53)
    a1 = [mol.atom(p, "C") for p in ring1]
    a2 = [mol.atom(p, "C") for p in ring2[1:]]
    cyc2 = [a1[0]] + a2
    for k in range(5):
        mol.bond(a1[k], a1[(k + 1) % 5])
    for k in range(5):
        if {cyc2[k], cyc2[(k + 1) % 5]} != {a1[0], a1[1]}:
            mol.bond(cyc2[k], cyc2[(k + 1) % 5])
    ligands["lig_spiro.sdf"] = mol.record()

    mol = chain_mol("lig_bromo_ketone", ["Br", "C", "C", "C"], rng=rng)
    o = mol.atom((1.1, 1.7, -0.4), "O")
    mol.bond(2, o, 2)
    ligands["lig_bromo_ketone.sdf"] = mol.record()

    multi = []
    mol, ring, pts = hexagon_mol("multi_a_benzene", center=(0.2, -0.1, 0.3))
    multi.append(mol.record({"batch": "multi"}))
    mol = chain_mol("multi_b_aminopropane", ["N", "C", "C", "C"], rng=rng)
    multi.append(mol.record())
    mol, ring, pts = hexagon_mol("multi_c_chlorobenzene", center=(-0.3, 0.3, -0.2))
    cl = substituted(mol, pts, (-0.3, 0.3, -0.2), 2, "Cl", 1.75)
    mol.bond(ring[2], cl)
    multi.append(mol.record())
    ligands["lig_multi.sdf"] = "".join(multi)

    return ligands


MANIFEST = """\
# receptor<TAB>ligand pairs used by the batch-mode tests
receptor_0.pdb\tlig_benzene.sdf
receptor_0.pdb\tlig_chlorophenol.sdf
receptor_0.pdb\tlig_multi.sdf

receptor_1.pdb\tlig_pyridine_amine.sdf
receptor_1.pdb\tlig_butanol.sdf
receptor_1.pdb\tlig_diamine.sdf
receptor_2.pdb\tlig_thioether.sdf
receptor_2.pdb\tlig_spiro.sdf
receptor_2.pdb\tlig_bromo_ketone.sdf
receptor_0.pdb\tlig_imidazole_like.sdf
"""


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(31415)
    (OUT / "receptor_0.pdb").write_text(receptor_0(rng))
    (OUT / "receptor_1.pdb").write_text(receptor_1(rng))
    (OUT / "receptor_2.pdb").write_text(receptor_2(rng))
    for name, text in build_ligands(rng).items():
        (OUT / name).write_text(text)
    (OUT / "manifest.tsv").write_text(MANIFEST)
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
