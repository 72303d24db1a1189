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

#ifndef POSEKIT_SCAFFOLD_HPP
#define POSEKIT_SCAFFOLD_HPP

#include <string>
#include <vector>

#include "rng.hpp"
#include "types.hpp"

namespace posekit {

// Bemis-Murcko split of the heavy atoms into scaffold and side chains.
// All index vectors are sorted ascending and refer to positions in the
// molecule's atom array; hydrogens belong to neither set.
struct Decomposition {
    std::vector<size_t> scaffold_atoms;
    std::vector<size_t> sidechain_atoms;
    std::vector<std::vector<size_t>> ring_systems;
    std::vector<size_t> linker_atoms;
    // Atoms kept only because they are double-bonded to a ring or linker
    // atom (carbonyl oxygens and the like); subset of scaffold_atoms.
    std::vector<size_t> exo_atoms;
    // Heavy atoms of smaller disconnected fragments (salt components);
    // subset of sidechain_atoms.
    std::vector<size_t> dropped_fragment_atoms;
    // False for acyclic molecules: scaffold empty, everything side chain.
    bool has_scaffold = false;
};

enum class TaskKind { SH, SC, DN };

std::string_view task_name(TaskKind task);
std::optional<TaskKind> task_from_name(std::string_view name);

// Target atoms are regenerated, context atoms are held fixed.
struct MaskAssignment {
    TaskKind task = TaskKind::DN;
    std::vector<size_t> target;
    std::vector<size_t> context;
};

// Ring systems of the heavy-atom graph: an atom is a ring atom iff it
// lies on some cycle (equivalently, on a non-bridge edge), and systems
// are the connected components of the ring atoms under non-bridge edges,
// so fused and spiro rings merge while a biphenyl-style single bond
// separates. Each system is sorted; systems are ordered by first atom.
std::vector<std::vector<size_t>> find_ring_systems(const MolecularGraph& mol);

// Full decomposition. Scaffold = ring atoms + linker atoms (atoms on the
// unique interior path between each pair of ring systems) + atoms
// double-bonded directly to either. Disconnected inputs decompose the
// largest heavy fragment only; dropped fragments land in the side-chain
// set. Acyclic molecules yield has_scaffold = false with an empty
// scaffold.
Decomposition decompose(const MolecularGraph& mol);

// SH: target = scaffold, context = side chains.
// SC: target = side chains, context = scaffold.
// DN: target = all heavy atoms, context empty.
// Throws DomainError for SH/SC when the decomposition has no scaffold.
MaskAssignment make_mask(const Decomposition& decomp, TaskKind task);

// Seeded training-time variant: samples uniformly among the tasks that
// are valid for this decomposition (DN only, for acyclic molecules).
TaskKind sample_task(const Decomposition& decomp, SeededRng& rng);

// Writes the context flag of each atom: 1 on context atoms, 0 elsewhere.
void apply_mask(MolecularGraph& mol, const MaskAssignment& mask);

}  // namespace posekit

#endif
