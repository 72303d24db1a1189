#!/usr/bin/env python3
# Copyright (c) 2026, the posekit developers
# Licensed under the Apache License, Version 2.0 (see LICENSE).
#
# Generates tests/data/scaffold_corpus.sdf and scaffold_expected.json:
# a corpus of classical and procedurally generated molecules together
# with their scaffold decompositions, computed by two independent
# routes (iterated leaf pruning via the 2-core, and bridge-based ring
# perception plus shortest-path linkers). The script fails if the two
# routes ever disagree, and the frozen JSON is what the C++ tests
# compare against.

import json
import random
import sys
from collections import deque
from pathlib import Path

import networkx as nx

VALENCE = {"C": 4, "N": 3, "O": 2, "S": 2, "P": 3,
           "F": 1, "Cl": 1, "Br": 1, "I": 1, "H": 1}


class Mol:
    def __init__(self, name):
        self.name = name
        self.elements = []
        self.bonds = {}  # (i, j) with i < j -> order

    def add_atom(self, sym):
        self.elements.append(sym)
        return len(self.elements) - 1

    def add_bond(self, i, j, order=1):
        key = (min(i, j), max(i, j))
        assert key not in self.bonds and i != j
        self.bonds[key] = order

    def order_sum(self, i):
        return sum(o for (a, b), o in self.bonds.items() if i in (a, b))

    def spare(self, i):
        return VALENCE[self.elements[i]] - self.order_sum(i)

    def degree(self, i):
        return sum(1 for (a, b) in self.bonds if i in (a, b))


def table_mol(name, elements, bonds):
    mol = Mol(name)
    for sym in elements:
        mol.add_atom(sym)
    for i, j, order in bonds:
        mol.add_bond(i, j, order)
    for i, sym in enumerate(mol.elements):
        assert mol.order_sum(i) <= VALENCE[sym], f"{name}: atom {i} over valence"
    return mol


def benzene_bonds(base=0):
    return [(base + k, base + (k + 1) % 6, 2 if k % 2 == 0 else 1) for k in range(6)]


def classics():
    mols = []

    mols.append(table_mol("benzene", ["C"] * 6, benzene_bonds()))
    mols.append(table_mol("toluene", ["C"] * 7, benzene_bonds() + [(0, 6, 1)]))
    mols.append(table_mol("phenol", ["C"] * 6 + ["O"], benzene_bonds() + [(0, 6, 1)]))
    mols.append(table_mol("aniline", ["C"] * 6 + ["N"], benzene_bonds() + [(0, 6, 1)]))
    mols.append(table_mol(
        "benzoic_acid", ["C"] * 7 + ["O", "O"],
        benzene_bonds() + [(0, 6, 1), (6, 7, 2), (6, 8, 1)]))
    mols.append(table_mol(
        "naphthalene", ["C"] * 10,
        [(0, 1, 2), (1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 5, 2), (5, 6, 1),
         (6, 7, 2), (7, 8, 1), (8, 9, 2), (9, 0, 1), (9, 4, 1)]))
    mols.append(table_mol(
        "biphenyl", ["C"] * 12, benzene_bonds() + benzene_bonds(6) + [(0, 6, 1)]))
    mols.append(table_mol(
        "diphenylmethane", ["C"] * 13,
        benzene_bonds() + benzene_bonds(6) + [(0, 12, 1), (6, 12, 1)]))
    mols.append(table_mol(
        "diphenyl_ether", ["C"] * 12 + ["O"],
        benzene_bonds() + benzene_bonds(6) + [(0, 12, 1), (6, 12, 1)]))
    mols.append(table_mol(
        "benzophenone", ["C"] * 13 + ["O"],
        benzene_bonds() + benzene_bonds(6) + [(0, 12, 1), (6, 12, 1), (12, 13, 2)]))
    mols.append(table_mol(
        "stilbene", ["C"] * 14,
        benzene_bonds() + benzene_bonds(6) + [(0, 12, 1), (12, 13, 2), (13, 6, 1)]))
    mols.append(table_mol(
        "azobenzene", ["C"] * 12 + ["N", "N"],
        benzene_bonds() + benzene_bonds(6) + [(0, 12, 1), (12, 13, 2), (13, 6, 1)]))
    mols.append(table_mol(
        "styrene", ["C"] * 8, benzene_bonds() + [(0, 6, 1), (6, 7, 2)]))
    mols.append(table_mol(
        "acetophenone", ["C"] * 8 + ["O"],
        benzene_bonds() + [(0, 6, 1), (6, 8, 2), (6, 7, 1)]))
    mols.append(table_mol(
        "benzoquinone_1_4", ["C"] * 6 + ["O", "O"],
        [(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 1), (4, 5, 2), (5, 0, 1),
         (0, 6, 2), (3, 7, 2)]))
    mols.append(table_mol(
        "pyridine", ["N"] + ["C"] * 5, benzene_bonds()))
    mols.append(table_mol(
        "pyrimidine", ["N", "C", "N", "C", "C", "C"], benzene_bonds()))
    mols.append(table_mol(
        "imidazole", ["N", "C", "N", "C", "C"],
        [(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 2), (4, 0, 1)]))
    mols.append(table_mol(
        "furan", ["O", "C", "C", "C", "C"],
        [(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 2), (4, 0, 1)]))
    mols.append(table_mol(
        "thiophene", ["S", "C", "C", "C", "C"],
        [(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 2), (4, 0, 1)]))
    mols.append(table_mol(
        "indole", ["C"] * 6 + ["N", "C", "C"],
        benzene_bonds() + [(5, 6, 1), (6, 7, 1), (7, 8, 2), (8, 4, 1)]))
    mols.append(table_mol(
        "quinoline", ["N"] + ["C"] * 9,
        [(0, 1, 2), (1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 5, 2), (5, 6, 1),
         (6, 7, 2), (7, 8, 1), (8, 9, 2), (9, 0, 1), (9, 4, 1)]))
    mols.append(table_mol(
        "purine", ["N", "C", "N", "C", "C", "C", "N", "C", "N"],
        [(0, 1, 2), (1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 5, 2), (5, 0, 1),
         (4, 6, 1), (6, 7, 1), (7, 8, 2), (8, 5, 1)]))
    mols.append(table_mol(
        "caffeine",
        ["N", "C", "N", "C", "C", "C", "N", "C", "N", "O", "O", "C", "C", "C"],
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 2), (4, 5, 1), (5, 0, 1),
         (1, 9, 2), (5, 10, 2), (4, 6, 1), (6, 7, 1), (7, 8, 2), (8, 3, 1),
         (0, 11, 1), (2, 12, 1), (6, 13, 1)]))
    mols.append(table_mol(
        "aspirin", ["C"] * 7 + ["O", "O", "O", "C", "O", "C"],
        benzene_bonds() + [(0, 6, 1), (6, 7, 2), (6, 8, 1),
                           (1, 9, 1), (9, 10, 1), (10, 11, 2), (10, 12, 1)]))
    mols.append(table_mol(
        "ibuprofen", ["C"] * 13 + ["O", "O"],
        benzene_bonds() + [(0, 6, 1), (6, 7, 1), (7, 8, 1), (7, 9, 1),
                           (3, 10, 1), (10, 11, 1), (10, 12, 1),
                           (12, 13, 2), (12, 14, 1)]))
    mols.append(table_mol(
        "cyclohexane", ["C"] * 6, [(k, (k + 1) % 6, 1) for k in range(6)]))
    mols.append(table_mol(
        "cyclopropane", ["C"] * 3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]))
    mols.append(table_mol(
        "piperidine", ["N"] + ["C"] * 5, [(k, (k + 1) % 6, 1) for k in range(6)]))
    mols.append(table_mol(
        "morpholine", ["O", "C", "C", "N", "C", "C"],
        [(k, (k + 1) % 6, 1) for k in range(6)]))
    mols.append(table_mol(
        "spiro_5_5_undecane", ["C"] * 11,
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1),
         (5, 6, 1), (6, 7, 1), (7, 8, 1), (8, 9, 1), (9, 10, 1), (10, 5, 1)]))
    mols.append(table_mol(
        "adamantane", ["C"] * 10,
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1),
         (1, 6, 1), (3, 7, 1), (5, 8, 1), (6, 9, 1), (7, 9, 1), (8, 9, 1)]))
    mols.append(table_mol(
        "cubane", ["C"] * 8,
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (4, 5, 1), (5, 6, 1),
         (6, 7, 1), (7, 4, 1), (0, 4, 1), (1, 5, 1), (2, 6, 1), (3, 7, 1)]))
    mols.append(table_mol(
        "gonane_like", ["C"] * 17,
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1),
         (5, 6, 1), (6, 7, 1), (7, 8, 1), (8, 9, 1), (9, 4, 1),
         (9, 10, 1), (10, 11, 1), (11, 12, 1), (12, 13, 1), (13, 8, 1),
         (13, 14, 1), (14, 15, 1), (15, 16, 1), (16, 12, 1)]))
    mols.append(table_mol(
        "bipyridine_2_2", ["N"] + ["C"] * 5 + ["N"] + ["C"] * 5,
        benzene_bonds() + benzene_bonds(6) + [(1, 7, 1)]))
    mols.append(table_mol("hexane", ["C"] * 6, [(k, k + 1, 1) for k in range(5)]))
    mols.append(table_mol(
        "isopropanol", ["C", "C", "C", "O"], [(0, 1, 1), (1, 2, 1), (1, 3, 1)]))
    mols.append(table_mol(
        "glycerol", ["C", "C", "C", "O", "O", "O"],
        [(0, 1, 1), (1, 2, 1), (0, 3, 1), (1, 4, 1), (2, 5, 1)]))
    mols.append(table_mol(
        "benzoate_acetate_pair", ["C"] * 7 + ["O", "O"] + ["C", "C", "O", "O"],
        benzene_bonds() + [(0, 6, 1), (6, 7, 2), (6, 8, 1),
                           (9, 10, 1), (10, 11, 2), (10, 12, 1)]))
    mols.append(table_mol(
        "hexane_then_benzene", ["C"] * 12,
        [(k, k + 1, 1) for k in range(5)] + benzene_bonds(6)))
    mols.append(table_mol(
        "benzene_then_hexane", ["C"] * 12,
        benzene_bonds() + [(k, k + 1, 1) for k in range(6, 11)]))
    mols.append(table_mol(
        "ethanol_explicit_h", ["C", "C", "O", "H", "H", "H", "H", "H", "H"],
        [(0, 1, 1), (1, 2, 1), (0, 3, 1), (0, 4, 1), (0, 5, 1),
         (1, 6, 1), (1, 7, 1), (2, 8, 1)]))
    mols.append(table_mol(
        "toluene_explicit_h", ["C"] * 7 + ["H"] * 8,
        benzene_bonds() + [(0, 6, 1)] +
        [(k, 7 + k - 1, 1) for k in range(1, 6)] +
        [(6, 12, 1), (6, 13, 1), (6, 14, 1)]))

    return mols


def random_molecule(rng, name):
    mol = Mol(name)
    n_systems = rng.choice([0, 1, 1, 1, 2, 2, 2, 3])

    system_atoms = []
    for _ in range(n_systems):
        size = rng.choice([3, 4, 5, 6, 6, 6, 7])
        ring = [mol.add_atom("C") for _ in range(size)]
        for k in range(size):
            mol.add_bond(ring[k], ring[(k + 1) % size], 1)
        if size == 6 and rng.random() < 0.5:
            for k in range(6):
                mol.bonds[(min(ring[k], ring[(k + 1) % 6]),
                           max(ring[k], ring[(k + 1) % 6]))] = 2 if k % 2 == 0 else 1
        atoms = set(ring)
        while rng.random() < 0.35:
            mode = rng.random()
            candidates = sorted(atoms)
            if mode < 0.5:
                edges = [(u, v) for (u, v) in mol.bonds
                         if u in atoms and v in atoms
                         and mol.spare(u) >= 1 and mol.spare(v) >= 1]
                if not edges:
                    break
                u, v = edges[rng.randrange(len(edges))]
                path = [mol.add_atom("C") for _ in range(rng.randint(1, 4))]
                chain = [u] + path + [v]
                for a, b in zip(chain, chain[1:]):
                    if (min(a, b), max(a, b)) in mol.bonds:
                        break
                else:
                    for a, b in zip(chain, chain[1:]):
                        mol.add_bond(a, b, 1)
                    atoms.update(path)
                    continue
                break
            elif mode < 0.8:
                pivots = [u for u in candidates if mol.spare(u) >= 2]
                if not pivots:
                    break
                u = pivots[rng.randrange(len(pivots))]
                size2 = rng.choice([3, 4, 5, 6])
                ring2 = [u] + [mol.add_atom("C") for _ in range(size2 - 1)]
                for k in range(size2):
                    a, b = ring2[k], ring2[(k + 1) % size2]
                    if (min(a, b), max(a, b)) not in mol.bonds:
                        mol.add_bond(a, b, 1)
                atoms.update(ring2)
            else:
                spare = [u for u in candidates if mol.spare(u) >= 1]
                pairs = [(u, v) for u in spare for v in spare
                         if u < v and (u, v) not in mol.bonds]
                if pairs:
                    u, v = pairs[rng.randrange(len(pairs))]
                    mol.add_bond(u, v, 1)
        system_atoms.append(sorted(atoms))

    for k in range(1, len(system_atoms)):
        src_sys = system_atoms[k - 1 if rng.random() < 0.85 else rng.randrange(k)]
        src_opts = [u for u in src_sys if mol.spare(u) >= 1]
        dst_opts = [u for u in system_atoms[k] if mol.spare(u) >= 1]
        if not src_opts or not dst_opts:
            continue
        src = src_opts[rng.randrange(len(src_opts))]
        dst = dst_opts[rng.randrange(len(dst_opts))]
        linker_len = rng.choice([0, 0, 1, 1, 2, 3])
        chain = [src] + [mol.add_atom("C") for _ in range(linker_len)] + [dst]
        for a, b in zip(chain, chain[1:]):
            if (min(a, b), max(a, b)) not in mol.bonds:
                mol.add_bond(a, b, 1)

    if n_systems == 0:
        root = mol.add_atom("C")
        for _ in range(rng.randint(3, 11)):
            opts = [u for u in range(len(mol.elements)) if mol.spare(u) >= 1]
            parent = opts[rng.randrange(len(opts))]
            child = mol.add_atom("C")
            mol.add_bond(parent, child, 1)
        del root

    for _ in range(rng.randint(0, 8)):
        opts = [u for u in range(len(mol.elements)) if mol.spare(u) >= 1]
        if not opts:
            break
        parent = opts[rng.randrange(len(opts))]
        child = mol.add_atom("C")
        mol.add_bond(parent, child, 1)

    # Exocyclic carbonyl-style decorations and side-chain double bonds.
    ring_like = sorted({u for sys in system_atoms for u in sys})
    for _ in range(rng.randint(0, 2)):
        opts = [u for u in ring_like if mol.spare(u) >= 2]
        if not opts:
            break
        u = opts[rng.randrange(len(opts))]
        o = mol.add_atom("O")
        mol.add_bond(u, o, 2)
    for _ in range(rng.randint(0, 2)):
        edges = [(u, v) for (u, v), o in mol.bonds.items()
                 if o == 1 and mol.spare(u) >= 1 and mol.spare(v) >= 1]
        if not edges:
            break
        u, v = edges[rng.randrange(len(edges))]
        mol.bonds[(u, v)] = 2

    # Heteroatom substitution under the valence caps.
    for i in range(len(mol.elements)):
        if mol.elements[i] != "C":
            continue
        r = rng.random()
        used = mol.order_sum(i)
        if r < 0.12 and used <= VALENCE["N"]:
            mol.elements[i] = "N"
        elif r < 0.18 and used <= VALENCE["O"]:
            mol.elements[i] = "O"
        elif r < 0.21 and used <= VALENCE["S"]:
            mol.elements[i] = "S"
        elif r < 0.24 and used <= 1 and mol.degree(i) == 1:
            mol.elements[i] = rng.choice(["F", "Cl", "Br", "I"])

    if rng.random() < 0.12:
        frag = [mol.add_atom("C") for _ in range(rng.randint(1, 4))]
        for a, b in zip(frag, frag[1:]):
            mol.add_bond(a, b, 1)
        if len(frag) >= 3 and rng.random() < 0.3:
            mol.add_bond(frag[0], frag[-1], 1)

    return mol


def heavy_graph(mol):
    G = nx.Graph()
    heavy = [i for i, s in enumerate(mol.elements) if s != "H"]
    G.add_nodes_from(heavy)
    for (i, j), order in mol.bonds.items():
        if mol.elements[i] != "H" and mol.elements[j] != "H":
            G.add_edge(i, j, order=order)
    return G


def kept_component(G):
    comps = []
    seen = set()
    for s in sorted(G.nodes()):
        if s in seen:
            continue
        c = nx.node_connected_component(G, s)
        comps.append(c)
        seen |= c
    if not comps:
        return set(), set()
    best = max(range(len(comps)), key=lambda i: (len(comps[i]), -i))
    kept = comps[best]
    dropped = set(G.nodes()) - kept
    return kept, dropped


def add_exo(H_all, core, kept):
    scaffold = set(core)
    for u, v, data in H_all.edges(data=True):
        if data["order"] != 2 or u not in kept:
            continue
        if u in core and v not in core:
            scaffold.add(v)
        if v in core and u not in core:
            scaffold.add(u)
    return scaffold


def route_a(G, kept):
    H = G.subgraph(kept)
    core = set(nx.k_core(H, 2).nodes())
    return core


def route_b(G, kept):
    H = G.subgraph(kept)
    bridges = {frozenset(e) for e in nx.bridges(H)}
    ring_nodes = set()
    nonbridge = nx.Graph()
    for u, v in H.edges():
        if frozenset((u, v)) not in bridges:
            ring_nodes.update((u, v))
            nonbridge.add_edge(u, v)
    systems = sorted((sorted(c) for c in nx.connected_components(nonbridge)),
                     key=lambda c: c[0])

    def bfs(system):
        dist = {u: 0 for u in system}
        queue = deque(system)
        while queue:
            u = queue.popleft()
            if dist[u] != 0 and u in ring_nodes:
                continue
            for v in H[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    dists = [bfs(sys) for sys in systems]
    linkers = set()
    for a in range(len(systems)):
        for b in range(a + 1, len(systems)):
            reach = [dists[a][u] for u in systems[b] if u in dists[a]]
            if not reach:
                continue
            dab = min(reach)
            for v in H.nodes():
                if v in ring_nodes or v not in dists[a] or v not in dists[b]:
                    continue
                if dists[a][v] + dists[b][v] == dab:
                    linkers.add(v)
    return ring_nodes | linkers, systems, linkers


def decompose(mol):
    G = heavy_graph(mol)
    if G.number_of_nodes() == 0:
        return dict(has_scaffold=False, scaffold=[], sidechains=[], linkers=[],
                    ring_systems=[], dropped=[])
    kept, dropped = kept_component(G)
    core_a = route_a(G, kept)
    core_b, systems, linkers = route_b(G, kept)
    assert core_a == core_b, f"{mol.name}: pruning core {sorted(core_a)} != " \
                             f"bridge core {sorted(core_b)}"
    scaffold = add_exo(G, core_a, kept) if core_a else set()
    heavy = set(G.nodes())
    return dict(
        has_scaffold=bool(scaffold),
        scaffold=sorted(scaffold),
        sidechains=sorted(heavy - scaffold),
        linkers=sorted(linkers),
        ring_systems=[list(sys) for sys in systems],
        dropped=sorted(dropped),
    )


def sdf_record(mol, rng):
    lines = [mol.name, "  corpusgen", ""]
    lines.append(f"{len(mol.elements):3d}{len(mol.bonds):3d}  0  0  0  0  0  0  0  0999 V2000")
    for sym in mol.elements:
        x, y, z = (round(rng.uniform(-10, 10), 4) for _ in range(3))
        lines.append(f"{x:10.4f}{y:10.4f}{z:10.4f} {sym:<3} 0  0  0  0  0  0  0  0  0  0  0  0")
    for (i, j), order in sorted(mol.bonds.items()):
        lines.append(f"{i + 1:3d}{j + 1:3d}{order:3d}  0  0  0  0")
    lines.append("M  END")
    lines.append("$$$$")
    return "\n".join(lines) + "\n"


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/data")
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20260814)

    mols = classics()
    for k in range(70):
        mols.append(random_molecule(rng, f"proc_{k:03d}"))

    expected = []
    records = []
    coord_rng = random.Random(97)
    for mol in mols:
        entry = decompose(mol)
        entry["name"] = mol.name
        entry["atoms"] = len(mol.elements)
        expected.append(entry)
        records.append(sdf_record(mol, coord_rng))

    (out_dir / "scaffold_corpus.sdf").write_text("".join(records))
    (out_dir / "scaffold_expected.json").write_text(
        json.dumps(expected, indent=1, sort_keys=True) + "\n")

    n_scaffold = sum(1 for e in expected if e["has_scaffold"])
    n_dropped = sum(1 for e in expected if e["dropped"])
    n_linker = sum(1 for e in expected if e["linkers"])
    print(f"wrote {len(mols)} molecules ({n_scaffold} with scaffolds, "
          f"{n_linker} with linkers, {n_dropped} with dropped fragments)")


if __name__ == "__main__":
    main()
