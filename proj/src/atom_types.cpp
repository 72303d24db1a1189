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

#include "atom_types.hpp"

#include <algorithm>
#include <string_view>

namespace posekit {

double vdw_radius(Element e) {
    switch (e) {
        case Element::H: return 1.0;
        case Element::C: return 1.9;
        case Element::N: return 1.8;
        case Element::O: return 1.7;
        case Element::F: return 1.5;
        case Element::P: return 2.1;
        case Element::S: return 2.0;
        case Element::Cl: return 1.8;
        case Element::Br: return 2.0;
        case Element::I: return 2.2;
        default: return 1.2;  // metals
    }
}

namespace {

bool is_hetero_for_carbon(Element e) {
    switch (e) {
        case Element::N:
        case Element::O:
        case Element::F:
        case Element::P:
        case Element::S:
        case Element::Cl:
        case Element::Br:
        case Element::I:
            return true;
        default:
            return false;
    }
}

int default_valence(Element e) {
    if (e == Element::N) return 3;
    if (e == Element::O) return 2;
    return 0;
}

// Side-chain typing by residue and PDB v3 atom name. Backbone
// N/CA/C/O/OXT entries are shared and handled separately. Carbons with
// a heteroatom neighbor in the residue structure are non-hydrophobic.
struct TemplateRow {
    ResidueCode residue;
    std::string_view atom;
    bool hydrophobic;
    bool donor;
    bool acceptor;
};

constexpr TemplateRow kSidechainTable[] = {
    {ResidueCode::ALA, "CB", true, false, false},
    {ResidueCode::ARG, "CB", true, false, false},
    {ResidueCode::ARG, "CG", true, false, false},
    {ResidueCode::ARG, "CD", false, false, false},
    {ResidueCode::ARG, "NE", false, true, false},
    {ResidueCode::ARG, "CZ", false, false, false},
    {ResidueCode::ARG, "NH1", false, true, false},
    {ResidueCode::ARG, "NH2", false, true, false},
    {ResidueCode::ASN, "CB", true, false, false},
    {ResidueCode::ASN, "CG", false, false, false},
    {ResidueCode::ASN, "OD1", false, false, true},
    {ResidueCode::ASN, "ND2", false, true, false},
    {ResidueCode::ASP, "CB", true, false, false},
    {ResidueCode::ASP, "CG", false, false, false},
    {ResidueCode::ASP, "OD1", false, false, true},
    {ResidueCode::ASP, "OD2", false, false, true},
    {ResidueCode::CYS, "CB", false, false, false},
    {ResidueCode::CYS, "SG", false, false, false},
    {ResidueCode::GLN, "CB", true, false, false},
    {ResidueCode::GLN, "CG", true, false, false},
    {ResidueCode::GLN, "CD", false, false, false},
    {ResidueCode::GLN, "OE1", false, false, true},
    {ResidueCode::GLN, "NE2", false, true, false},
    {ResidueCode::GLU, "CB", true, false, false},
    {ResidueCode::GLU, "CG", true, false, false},
    {ResidueCode::GLU, "CD", false, false, false},
    {ResidueCode::GLU, "OE1", false, false, true},
    {ResidueCode::GLU, "OE2", false, false, true},
    {ResidueCode::HIS, "CB", true, false, false},
    {ResidueCode::HIS, "CG", false, false, false},
    {ResidueCode::HIS, "ND1", false, true, true},
    {ResidueCode::HIS, "CD2", false, false, false},
    {ResidueCode::HIS, "CE1", false, false, false},
    {ResidueCode::HIS, "NE2", false, true, true},
    {ResidueCode::ILE, "CB", true, false, false},
    {ResidueCode::ILE, "CG1", true, false, false},
    {ResidueCode::ILE, "CG2", true, false, false},
    {ResidueCode::ILE, "CD1", true, false, false},
    {ResidueCode::LEU, "CB", true, false, false},
    {ResidueCode::LEU, "CG", true, false, false},
    {ResidueCode::LEU, "CD1", true, false, false},
    {ResidueCode::LEU, "CD2", true, false, false},
    {ResidueCode::LYS, "CB", true, false, false},
    {ResidueCode::LYS, "CG", true, false, false},
    {ResidueCode::LYS, "CD", true, false, false},
    {ResidueCode::LYS, "CE", false, false, false},
    {ResidueCode::LYS, "NZ", false, true, false},
    {ResidueCode::MET, "CB", true, false, false},
    {ResidueCode::MET, "CG", false, false, false},
    {ResidueCode::MET, "SD", false, false, false},
    {ResidueCode::MET, "CE", false, false, false},
    {ResidueCode::PHE, "CB", true, false, false},
    {ResidueCode::PHE, "CG", true, false, false},
    {ResidueCode::PHE, "CD1", true, false, false},
    {ResidueCode::PHE, "CD2", true, false, false},
    {ResidueCode::PHE, "CE1", true, false, false},
    {ResidueCode::PHE, "CE2", true, false, false},
    {ResidueCode::PHE, "CZ", true, false, false},
    {ResidueCode::PRO, "CB", true, false, false},
    {ResidueCode::PRO, "CG", true, false, false},
    {ResidueCode::PRO, "CD", false, false, false},
    {ResidueCode::SER, "CB", false, false, false},
    {ResidueCode::SER, "OG", false, true, true},
    {ResidueCode::THR, "CB", false, false, false},
    {ResidueCode::THR, "OG1", false, true, true},
    {ResidueCode::THR, "CG2", true, false, false},
    {ResidueCode::TRP, "CB", true, false, false},
    {ResidueCode::TRP, "CG", true, false, false},
    {ResidueCode::TRP, "CD1", false, false, false},
    {ResidueCode::TRP, "CD2", true, false, false},
    {ResidueCode::TRP, "NE1", false, true, false},
    {ResidueCode::TRP, "CE2", false, false, false},
    {ResidueCode::TRP, "CE3", true, false, false},
    {ResidueCode::TRP, "CZ2", true, false, false},
    {ResidueCode::TRP, "CZ3", true, false, false},
    {ResidueCode::TRP, "CH2", true, false, false},
    {ResidueCode::TYR, "CB", true, false, false},
    {ResidueCode::TYR, "CG", true, false, false},
    {ResidueCode::TYR, "CD1", true, false, false},
    {ResidueCode::TYR, "CD2", true, false, false},
    {ResidueCode::TYR, "CE1", true, false, false},
    {ResidueCode::TYR, "CE2", true, false, false},
    {ResidueCode::TYR, "CZ", false, false, false},
    {ResidueCode::TYR, "OH", false, true, true},
    {ResidueCode::VAL, "CB", true, false, false},
    {ResidueCode::VAL, "CG1", true, false, false},
    {ResidueCode::VAL, "CG2", true, false, false},
};

const TemplateRow* lookup_sidechain(ResidueCode residue, const std::string& atom_name) {
    for (const auto& row : kSidechainTable)
        if (row.residue == residue && row.atom == atom_name) return &row;
    return nullptr;
}

}  // namespace

std::vector<AtomType> assign_ligand_types(const MolecularGraph& mol) {
    std::vector<AtomType> types(mol.atoms.size());
    auto adj = mol.adjacency();

    std::vector<int> bond_order_sum(mol.atoms.size(), 0);
    for (const auto& b : mol.bonds) {
        bond_order_sum[b.i] += b.order;
        bond_order_sum[b.j] += b.order;
    }

    for (size_t i = 0; i < mol.atoms.size(); ++i) {
        const Element e = mol.atoms[i].element;
        AtomType& t = types[i];
        t.vdw_radius = vdw_radius(e);
        if (e == Element::H) continue;

        int explicit_h = 0;
        int heavy_neighbors = 0;
        bool hetero_neighbor = false;
        for (size_t j : adj[i]) {
            const Element ne = mol.atoms[j].element;
            if (ne == Element::H) {
                ++explicit_h;
            } else {
                ++heavy_neighbors;
                if (is_hetero_for_carbon(ne)) hetero_neighbor = true;
            }
        }

        if (e == Element::C) {
            t.is_hydrophobic = !hetero_neighbor;
            continue;
        }
        if (e != Element::N && e != Element::O) continue;

        const int implicit_h = std::max(0, default_valence(e) - bond_order_sum[i]);
        const int hydrogens = explicit_h + implicit_h;
        t.is_donor = hydrogens > 0;
        if (e == Element::O)
            t.is_acceptor = true;
        else
            t.is_acceptor = heavy_neighbors + explicit_h + implicit_h <= 3;
    }
    return types;
}

std::vector<AtomType> assign_receptor_types(PocketStructure& pocket) {
    std::vector<AtomType> types(pocket.atoms.size());
    pocket.template_warnings = 0;

    for (size_t i = 0; i < pocket.atoms.size(); ++i) {
        const Atom& atom = pocket.atoms[i];
        AtomType& t = types[i];
        t.vdw_radius = vdw_radius(atom.element);
        if (atom.element == Element::H) continue;

        if (is_metal(atom.element)) {
            t.is_donor = true;
            continue;
        }
        if (atom.residue == ResidueCode::WAT) {
            if (atom.element == Element::O) {
                t.is_donor = true;
                t.is_acceptor = true;
            }
            continue;
        }

        if (is_standard_residue(atom.residue)) {
            if (atom.atom_name == "N") {
                t.is_donor = atom.residue != ResidueCode::PRO;
                continue;
            }
            if (atom.atom_name == "CA" || atom.atom_name == "C") continue;
            if (atom.atom_name == "O" || atom.atom_name == "OXT") {
                t.is_acceptor = true;
                continue;
            }
            if (const TemplateRow* row = lookup_sidechain(atom.residue, atom.atom_name)) {
                t.is_hydrophobic = row->hydrophobic;
                t.is_donor = row->donor;
                t.is_acceptor = row->acceptor;
                continue;
            }
        }

        ++pocket.template_warnings;
        if (atom.element == Element::C) t.is_hydrophobic = true;
    }
    return types;
}

}  // namespace posekit
