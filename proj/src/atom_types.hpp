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

#ifndef POSEKIT_ATOM_TYPES_HPP
#define POSEKIT_ATOM_TYPES_HPP

#include <vector>

#include "types.hpp"

namespace posekit {

struct AtomType {
    double vdw_radius = 1.9;
    bool is_hydrophobic = false;
    bool is_donor = false;
    bool is_acceptor = false;
};

// Vina-style van der Waals radii; metals share 1.2 A.
double vdw_radius(Element e);

// Per-atom typing for a ligand, parallel to mol.atoms (hydrogen entries
// are inert placeholders).
//
// hydrophobic: carbon with no covalent neighbor in {N, O, F, P, S, Cl,
// Br, I}. donor: N/O carrying at least one hydrogen, explicit hydrogens
// counted from the graph and implicit ones from default valence (N 3,
// O 2) minus the summed bond orders. acceptor: every O; N when its total
// connection count (heavy neighbors + implicit H) leaves a lone pair
// (<= 3 connections).
std::vector<AtomType> assign_ligand_types(const MolecularGraph& mol);

// Per-atom typing for a receptor via per-residue atom-name templates
// (PDB v3 names). Water oxygens are donor + acceptor; metals are typed
// as donors so they pair with ligand acceptors in the hydrogen-bond
// term; proline backbone N is not a donor. Atoms without a template
// entry fall back to element defaults (carbon hydrophobic, N/O neither
// donor nor acceptor) and increment pocket.template_warnings.
std::vector<AtomType> assign_receptor_types(PocketStructure& pocket);

}  // namespace posekit

#endif
