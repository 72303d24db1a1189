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

#ifndef POSEKIT_INTERACTIONS_HPP
#define POSEKIT_INTERACTIONS_HPP

#include <optional>
#include <vector>

#include "atom_types.hpp"
#include "scaffold.hpp"
#include "types.hpp"

namespace posekit {

// Cross pair of heavy atoms closer than the virtual-edge threshold.
// Waters participate here even though the energy model drops them.
struct VirtualEdge {
    size_t pocket_atom = 0;
    size_t ligand_atom = 0;
    double dist = 0.0;
};

struct VirtualEdgeGraph {
    std::vector<VirtualEdge> edges;
    double threshold = 6.0;
};

VirtualEdgeGraph build_virtual_edges(const PocketStructure& pocket, const MolecularGraph& ligand,
                                     double threshold = 6.0);

enum class InteractionCategory {
    Hydrophobic,
    HydrogenBond,
    WaterBridge,
    PiPi,
    PiCation,
    Halogen,
    Metal,
};

constexpr int kInteractionCategoryCount = 7;

std::string_view interaction_category_name(InteractionCategory c);

// Distance gates per category; every value is a config key in the CLI.
struct InteractionThresholds {
    double hydrophobic = 4.0;
    double hydrogen_bond = 3.5;
    double water_bridge = 3.5;
    double pi_pi = 5.5;
    double pi_cation = 6.0;
    double halogen = 3.5;
    double metal = 3.0;
};

struct InteractionRecord {
    InteractionCategory category = InteractionCategory::Hydrophobic;
    size_t ligand_atom = 0;
    size_t pocket_atom = 0;
    double distance = 0.0;
    // Ring categories also carry the centroid-based gate distance.
    std::optional<double> centroid_distance;
};

// A flat 5- or 6-membered ring of C/N atoms (root-mean-square deviation
// from the best-fit plane below 0.1 A).
struct AromaticRing {
    std::vector<size_t> atoms;
    Vec3 centroid;
};

// Rings found by shortest-cycle enumeration over the heavy-atom graph,
// then filtered by size, composition, and planarity.
std::vector<AromaticRing> ligand_aromatic_rings(const MolecularGraph& mol);

// Rings taken from PHE/TYR/TRP/HIS side-chain templates (atom names),
// subject to the same planarity gate.
std::vector<AromaticRing> pocket_aromatic_rings(const PocketStructure& pocket);

// One record per satisfied geometric rule:
//   hydrophobic   — hydrophobic carbons within the gate
//   hydrogen-bond — donor/acceptor N/O pair, waters excluded
//   water-bridge  — ligand N/O near a water oxygen that is near a
//                   receptor N/O; the water oxygen is the pocket atom
//   pi-pi         — ligand/pocket ring centroids within the gate; one
//                   record per ligand ring atom with its closest
//                   pocket-ring atom
//   pi-cation     — ligand ring centroid near a charged receptor
//                   nitrogen (LYS NZ, ARG NE/NH1/NH2); one record per
//                   ligand ring atom
//   halogen       — ligand Cl/Br/I near a receptor acceptor
//   metal         — receptor metal near ligand N/O/S
std::vector<InteractionRecord> classify_interactions(const PocketStructure& pocket,
                                                     const std::vector<AtomType>& pocket_types,
                                                     const MolecularGraph& ligand,
                                                     const std::vector<AtomType>& ligand_types,
                                                     const InteractionThresholds& gates = {});

// Four context statistics, averaged over the tally atoms (the mask's
// context set for SH/SC, every ligand heavy atom for DN):
//   n_bar — virtual-edge degree
//   d_bar — mean incident edge length; absent when no edges touch the
//           tally set
//   t_bar — distinct interaction categories
//   k_bar — distinct pocket atoms in the atom's interaction records
struct ContextSummary {
    TaskKind task = TaskKind::DN;
    double n_bar = 0.0;
    std::optional<double> d_bar;
    double t_bar = 0.0;
    double k_bar = 0.0;
    size_t context_size = 0;
};

// Throws DomainError when the tally set is empty (an SH mask on a
// molecule with no side chains, say).
ContextSummary summarize(const PocketStructure& pocket, const std::vector<AtomType>& pocket_types,
                         const MolecularGraph& ligand, const std::vector<AtomType>& ligand_types,
                         const MaskAssignment& mask, double edge_threshold = 6.0,
                         const InteractionThresholds& gates = {});

}  // namespace posekit

#endif
