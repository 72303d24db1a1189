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

#ifndef POSEKIT_TYPES_HPP
#define POSEKIT_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elements.hpp"
#include "vec3.hpp"

namespace posekit {

// Residue vocabulary: the 20 standard amino acids plus water, metal ions
// and a catch-all for other hetero groups.
enum class ResidueCode {
    ALA, ARG, ASN, ASP, CYS, GLN, GLU, GLY, HIS, ILE,
    LEU, LYS, MET, PHE, PRO, SER, THR, TRP, TYR, VAL,
    WAT,  // HOH / WAT / H2O
    ION,  // monoatomic metal HETATM
    UNK,
};

constexpr int kResidueVocabularySize = 23;

std::optional<ResidueCode> residue_from_name(const std::string& name);
std::string_view residue_name(ResidueCode code);
inline bool is_standard_residue(ResidueCode code) { return code <= ResidueCode::VAL; }

struct Atom {
    int serial = 0;
    Element element = Element::C;
    Vec3 position;

    // ligand role
    bool context_flag = false;

    // receptor role
    bool backbone_flag = false;
    ResidueCode residue = ResidueCode::UNK;
    std::string atom_name;   // PDB atom name, template key
    char chain_id = ' ';
    int residue_seq = 0;

    bool is_heavy() const { return is_heavy_element(element); }
};

struct Bond {
    size_t i = 0;  // always i < j
    size_t j = 0;
    int order = 1;
};

struct MolecularGraph {
    std::string name;
    std::vector<Atom> atoms;
    std::vector<Bond> bonds;
    // SDF data fields carried through parse, in file order.
    std::vector<std::pair<std::string, std::string>> data_fields;

    size_t heavy_atom_count() const;
    std::vector<size_t> heavy_atom_indices() const;
    Vec3 heavy_centroid() const;
    std::vector<std::vector<size_t>> adjacency() const;

    // Throws Error if a bond is out of range, a self-loop or a duplicate.
    void validate() const;
};

// Subgraph on the given atoms (sorted, deduplicated first) with bonds
// reindexed; data fields and name are carried over.
MolecularGraph induced_subgraph(const MolecularGraph& mol, std::vector<size_t> atoms);

struct PocketStructure {
    std::string source;
    std::vector<Atom> atoms;
    std::optional<Vec3> clip_center;
    std::optional<double> clip_radius;
    // Records whose donor/acceptor template was missing (see atom typing).
    size_t template_warnings = 0;

    size_t heavy_atom_count() const;
    std::vector<size_t> heavy_atom_indices() const;
};

}  // namespace posekit

#endif
