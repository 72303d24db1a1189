/*
   Copyright (c) 2026, the posekit developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "types.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include "error.hpp"

namespace posekit {

namespace {

constexpr std::array<std::string_view, 23> kResidueNames = {
    "ALA", "ARG", "ASN", "ASP", "CYS", "GLN", "GLU", "GLY", "HIS", "ILE",
    "LEU", "LYS", "MET", "PHE", "PRO", "SER", "THR", "TRP", "TYR", "VAL",
    "HOH", "ION", "UNK",
};

}  // namespace

std::optional<ResidueCode> residue_from_name(const std::string& name) {
    if (name == "HOH" || name == "WAT" || name == "H2O") return ResidueCode::WAT;
    for (size_t i = 0; i < kResidueNames.size(); ++i)
        if (name == kResidueNames[i]) return static_cast<ResidueCode>(i);
    return std::nullopt;
}

std::string_view residue_name(ResidueCode code) {
    return kResidueNames[static_cast<size_t>(code)];
}

size_t MolecularGraph::heavy_atom_count() const {
    size_t n = 0;
    for (const auto& a : atoms)
        if (a.is_heavy()) ++n;
    return n;
}

std::vector<size_t> MolecularGraph::heavy_atom_indices() const {
    std::vector<size_t> out;
    out.reserve(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i].is_heavy()) out.push_back(i);
    return out;
}

Vec3 MolecularGraph::heavy_centroid() const {
    Vec3 c;
    size_t n = 0;
    for (const auto& a : atoms) {
        if (!a.is_heavy()) continue;
        c += a.position;
        ++n;
    }
    if (n == 0) return c;
    return c * (1.0 / static_cast<double>(n));
}

std::vector<std::vector<size_t>> MolecularGraph::adjacency() const {
    std::vector<std::vector<size_t>> adj(atoms.size());
    for (const auto& b : bonds) {
        adj[b.i].push_back(b.j);
        adj[b.j].push_back(b.i);
    }
    return adj;
}

void MolecularGraph::validate() const {
    std::set<std::pair<size_t, size_t>> seen;
    for (const auto& b : bonds) {
        if (b.i >= atoms.size() || b.j >= atoms.size())
            throw Error("bond endpoint out of range in '" + name + "'");
        if (b.i == b.j) throw Error("self-loop bond in '" + name + "'");
        if (b.i > b.j) throw Error("bond endpoints not normalized (i < j) in '" + name + "'");
        if (!seen.insert({b.i, b.j}).second)
            throw Error("duplicate bond in '" + name + "'");
    }
}

MolecularGraph induced_subgraph(const MolecularGraph& mol, std::vector<size_t> atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());

    MolecularGraph out;
    out.name = mol.name;
    out.data_fields = mol.data_fields;
    std::vector<size_t> remap(mol.atoms.size(), std::numeric_limits<size_t>::max());
    for (size_t i : atoms) {
        if (i >= mol.atoms.size()) throw Error("subgraph atom index out of range");
        remap[i] = out.atoms.size();
        out.atoms.push_back(mol.atoms[i]);
    }
    for (const Bond& b : mol.bonds) {
        if (remap[b.i] == std::numeric_limits<size_t>::max() ||
            remap[b.j] == std::numeric_limits<size_t>::max())
            continue;
        Bond nb;
        nb.i = std::min(remap[b.i], remap[b.j]);
        nb.j = std::max(remap[b.i], remap[b.j]);
        nb.order = b.order;
        out.bonds.push_back(nb);
    }
    return out;
}

size_t PocketStructure::heavy_atom_count() const {
    size_t n = 0;
    for (const auto& a : atoms)
        if (a.is_heavy()) ++n;
    return n;
}

std::vector<size_t> PocketStructure::heavy_atom_indices() const {
    std::vector<size_t> out;
    out.reserve(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i].is_heavy()) out.push_back(i);
    return out;
}

}  // namespace posekit
