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

#include "interactions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "error.hpp"

namespace posekit {

namespace {

constexpr size_t kNone = std::numeric_limits<size_t>::max();
constexpr double kPlanarityRms = 0.1;

bool is_polar(Element e) { return e == Element::N || e == Element::O; }

bool is_ring_capable(Element e) { return e == Element::C || e == Element::N; }

Vec3 centroid_of(const std::vector<size_t>& atoms, const std::vector<Vec3>& positions) {
    Vec3 c;
    for (size_t i : atoms) c += positions[i];
    return c * (1.0 / static_cast<double>(atoms.size()));
}

// Smallest eigenvalue of a symmetric 3x3 matrix via the trigonometric
// closed form.
double smallest_eigenvalue(const Mat3& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    const double tr = a(0, 0) + a(1, 1) + a(2, 2);
    if (p1 < 1e-30) return std::min({a(0, 0), a(1, 1), a(2, 2)});
    const double q = tr / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b = (a + Mat3::identity() * -q) * (1.0 / p);
    const double r = std::clamp(b.det() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    // Eigenvalues are q + 2p cos(phi + 2k pi / 3); k = 1 gives the least.
    return q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
}

// RMS deviation of the points from their best-fit plane.
double planarity_rms(const std::vector<size_t>& atoms, const std::vector<Vec3>& positions) {
    const Vec3 c = centroid_of(atoms, positions);
    Mat3 cov;
    cov.m.fill(0.0);
    for (size_t i : atoms) {
        const Vec3 d = positions[i] - c;
        cov(0, 0) += d.x * d.x;
        cov(0, 1) += d.x * d.y;
        cov(0, 2) += d.x * d.z;
        cov(1, 1) += d.y * d.y;
        cov(1, 2) += d.y * d.z;
        cov(2, 2) += d.z * d.z;
    }
    cov(1, 0) = cov(0, 1);
    cov(2, 0) = cov(0, 2);
    cov(2, 1) = cov(1, 2);
    cov = cov * (1.0 / static_cast<double>(atoms.size()));
    return std::sqrt(std::max(0.0, smallest_eigenvalue(cov)));
}

std::vector<Vec3> atom_positions(const MolecularGraph& mol) {
    std::vector<Vec3> out;
    out.reserve(mol.atoms.size());
    for (const Atom& a : mol.atoms) out.push_back(a.position);
    return out;
}

std::vector<Vec3> atom_positions(const PocketStructure& pocket) {
    std::vector<Vec3> out;
    out.reserve(pocket.atoms.size());
    for (const Atom& a : pocket.atoms) out.push_back(a.position);
    return out;
}

// Shortest cycle through each heavy-atom edge: BFS between the
// endpoints with the edge removed. Returns unique cycles as sorted
// atom-index sets.
std::vector<std::vector<size_t>> shortest_cycles(const MolecularGraph& mol, size_t max_size) {
    std::vector<std::vector<size_t>> adj(mol.atoms.size());
    std::vector<std::pair<size_t, size_t>> edges;
    for (const Bond& b : mol.bonds) {
        if (!mol.atoms[b.i].is_heavy() || !mol.atoms[b.j].is_heavy()) continue;
        adj[b.i].push_back(b.j);
        adj[b.j].push_back(b.i);
        edges.emplace_back(b.i, b.j);
    }

    std::set<std::vector<size_t>> unique;
    std::vector<size_t> dist(mol.atoms.size());
    std::vector<size_t> parent(mol.atoms.size());
    for (const auto& [s, t] : edges) {
        dist.assign(mol.atoms.size(), kNone);
        parent.assign(mol.atoms.size(), kNone);
        dist[s] = 0;
        std::deque<size_t> queue{s};
        while (!queue.empty() && dist[t] == kNone) {
            const size_t u = queue.front();
            queue.pop_front();
            if (dist[u] + 1 >= max_size) continue;  // cycle would exceed max_size
            for (size_t v : adj[u]) {
                if ((u == s && v == t) || (u == t && v == s)) continue;
                if (dist[v] != kNone) continue;
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
        if (dist[t] == kNone) continue;
        std::vector<size_t> cycle;
        for (size_t v = t; v != kNone; v = parent[v]) cycle.push_back(v);
        std::sort(cycle.begin(), cycle.end());
        unique.insert(std::move(cycle));
    }
    return {unique.begin(), unique.end()};
}

struct ChargedNitrogenRow {
    ResidueCode residue;
    std::string_view atom;
};

constexpr ChargedNitrogenRow kChargedNitrogens[] = {
    {ResidueCode::LYS, "NZ"},
    {ResidueCode::ARG, "NE"},
    {ResidueCode::ARG, "NH1"},
    {ResidueCode::ARG, "NH2"},
};

bool is_charged_nitrogen(const Atom& atom) {
    for (const auto& row : kChargedNitrogens)
        if (atom.residue == row.residue && atom.atom_name == row.atom) return true;
    return false;
}

struct RingTemplateRow {
    ResidueCode residue;
    std::initializer_list<std::string_view> atoms;
};

const RingTemplateRow kPocketRings[] = {
    {ResidueCode::PHE, {"CG", "CD1", "CD2", "CE1", "CE2", "CZ"}},
    {ResidueCode::TYR, {"CG", "CD1", "CD2", "CE1", "CE2", "CZ"}},
    {ResidueCode::TRP, {"CG", "CD1", "NE1", "CE2", "CD2"}},
    {ResidueCode::TRP, {"CD2", "CE2", "CZ2", "CH2", "CZ3", "CE3"}},
    {ResidueCode::HIS, {"CG", "ND1", "CE1", "NE2", "CD2"}},
};

}  // namespace

std::string_view interaction_category_name(InteractionCategory c) {
    switch (c) {
        case InteractionCategory::Hydrophobic: return "hydrophobic";
        case InteractionCategory::HydrogenBond: return "hydrogen-bond";
        case InteractionCategory::WaterBridge: return "water-bridge";
        case InteractionCategory::PiPi: return "pi-pi";
        case InteractionCategory::PiCation: return "pi-cation";
        case InteractionCategory::Halogen: return "halogen";
        case InteractionCategory::Metal: return "metal";
    }
    return "?";
}

VirtualEdgeGraph build_virtual_edges(const PocketStructure& pocket, const MolecularGraph& ligand,
                                     double threshold) {
    VirtualEdgeGraph graph;
    graph.threshold = threshold;
    for (size_t i = 0; i < pocket.atoms.size(); ++i) {
        if (!pocket.atoms[i].is_heavy()) continue;
        for (size_t j = 0; j < ligand.atoms.size(); ++j) {
            if (!ligand.atoms[j].is_heavy()) continue;
            const double d = distance(pocket.atoms[i].position, ligand.atoms[j].position);
            if (d < threshold) graph.edges.push_back({i, j, d});
        }
    }
    return graph;
}

std::vector<AromaticRing> ligand_aromatic_rings(const MolecularGraph& mol) {
    const auto positions = atom_positions(mol);
    std::vector<AromaticRing> rings;
    for (const auto& cycle : shortest_cycles(mol, 6)) {
        if (cycle.size() != 5 && cycle.size() != 6) continue;
        bool composition_ok = true;
        for (size_t i : cycle)
            if (!is_ring_capable(mol.atoms[i].element)) composition_ok = false;
        if (!composition_ok) continue;
        if (planarity_rms(cycle, positions) >= kPlanarityRms) continue;
        rings.push_back({cycle, centroid_of(cycle, positions)});
    }
    return rings;
}

std::vector<AromaticRing> pocket_aromatic_rings(const PocketStructure& pocket) {
    const auto positions = atom_positions(pocket);

    // Group atom indices by residue instance.
    std::map<std::tuple<char, int, ResidueCode>, std::vector<size_t>> residues;
    for (size_t i = 0; i < pocket.atoms.size(); ++i) {
        const Atom& a = pocket.atoms[i];
        if (!is_standard_residue(a.residue)) continue;
        residues[{a.chain_id, a.residue_seq, a.residue}].push_back(i);
    }

    std::vector<AromaticRing> rings;
    for (const auto& [key, members] : residues) {
        const ResidueCode code = std::get<2>(key);
        for (const auto& tmpl : kPocketRings) {
            if (tmpl.residue != code) continue;
            std::vector<size_t> ring;
            for (std::string_view name : tmpl.atoms) {
                for (size_t i : members)
                    if (pocket.atoms[i].atom_name == name) {
                        ring.push_back(i);
                        break;
                    }
            }
            if (ring.size() != tmpl.atoms.size()) continue;
            if (planarity_rms(ring, positions) >= kPlanarityRms) continue;
            std::sort(ring.begin(), ring.end());
            rings.push_back({ring, centroid_of(ring, positions)});
        }
    }
    return rings;
}

std::vector<InteractionRecord> classify_interactions(const PocketStructure& pocket,
                                                     const std::vector<AtomType>& pocket_types,
                                                     const MolecularGraph& ligand,
                                                     const std::vector<AtomType>& ligand_types,
                                                     const InteractionThresholds& gates) {
    if (pocket_types.size() != pocket.atoms.size() || ligand_types.size() != ligand.atoms.size())
        throw Error("type tables do not match atom counts");

    std::vector<InteractionRecord> records;
    auto add = [&records](InteractionCategory c, size_t lig, size_t poc, double d,
                          std::optional<double> centroid = std::nullopt) {
        records.push_back({c, lig, poc, d, centroid});
    };

    // Pairwise categories.
    for (size_t j = 0; j < ligand.atoms.size(); ++j) {
        const Atom& la = ligand.atoms[j];
        if (!la.is_heavy()) continue;
        const AtomType& lt = ligand_types[j];
        for (size_t i = 0; i < pocket.atoms.size(); ++i) {
            const Atom& pa = pocket.atoms[i];
            if (!pa.is_heavy()) continue;
            const AtomType& pt = pocket_types[i];
            const double d = distance(pa.position, la.position);
            const bool pocket_is_water = pa.residue == ResidueCode::WAT;

            if (d <= gates.hydrophobic && lt.is_hydrophobic && pt.is_hydrophobic)
                add(InteractionCategory::Hydrophobic, j, i, d);

            if (d <= gates.hydrogen_bond && !pocket_is_water && is_polar(la.element) &&
                is_polar(pa.element) &&
                ((lt.is_donor && pt.is_acceptor) || (lt.is_acceptor && pt.is_donor)))
                add(InteractionCategory::HydrogenBond, j, i, d);

            if (d <= gates.halogen && pt.is_acceptor && !pocket_is_water &&
                (la.element == Element::Cl || la.element == Element::Br ||
                 la.element == Element::I))
                add(InteractionCategory::Halogen, j, i, d);

            if (d <= gates.metal && is_metal(pa.element) &&
                (la.element == Element::N || la.element == Element::O ||
                 la.element == Element::S))
                add(InteractionCategory::Metal, j, i, d);
        }
    }

    // Water bridges: one record per (ligand polar atom, water oxygen)
    // pair that also has a receptor polar partner.
    std::vector<size_t> water_oxygens;
    for (size_t i = 0; i < pocket.atoms.size(); ++i)
        if (pocket.atoms[i].residue == ResidueCode::WAT && pocket.atoms[i].element == Element::O)
            water_oxygens.push_back(i);
    for (size_t w : water_oxygens) {
        bool receptor_partner = false;
        for (size_t i = 0; i < pocket.atoms.size() && !receptor_partner; ++i) {
            const Atom& pa = pocket.atoms[i];
            if (pa.residue == ResidueCode::WAT || !is_polar(pa.element)) continue;
            if (distance(pa.position, pocket.atoms[w].position) <= gates.water_bridge)
                receptor_partner = true;
        }
        if (!receptor_partner) continue;
        for (size_t j = 0; j < ligand.atoms.size(); ++j) {
            if (!is_polar(ligand.atoms[j].element)) continue;
            const double d = distance(ligand.atoms[j].position, pocket.atoms[w].position);
            if (d <= gates.water_bridge) add(InteractionCategory::WaterBridge, j, w, d);
        }
    }

    // Ring categories.
    const auto ligand_rings = ligand_aromatic_rings(ligand);
    const auto pocket_rings = pocket_aromatic_rings(pocket);
    for (const AromaticRing& lr : ligand_rings) {
        for (const AromaticRing& pr : pocket_rings) {
            const double cd = distance(lr.centroid, pr.centroid);
            if (cd > gates.pi_pi) continue;
            for (size_t lig : lr.atoms) {
                size_t closest = pr.atoms.front();
                double best = std::numeric_limits<double>::infinity();
                for (size_t poc : pr.atoms) {
                    const double d =
                        distance(ligand.atoms[lig].position, pocket.atoms[poc].position);
                    if (d < best) {
                        best = d;
                        closest = poc;
                    }
                }
                add(InteractionCategory::PiPi, lig, closest, best, cd);
            }
        }
        for (size_t i = 0; i < pocket.atoms.size(); ++i) {
            if (!is_charged_nitrogen(pocket.atoms[i])) continue;
            const double cd = distance(lr.centroid, pocket.atoms[i].position);
            if (cd > gates.pi_cation) continue;
            for (size_t lig : lr.atoms)
                add(InteractionCategory::PiCation, lig, i,
                    distance(ligand.atoms[lig].position, pocket.atoms[i].position), cd);
        }
    }

    return records;
}

ContextSummary summarize(const PocketStructure& pocket, const std::vector<AtomType>& pocket_types,
                         const MolecularGraph& ligand, const std::vector<AtomType>& ligand_types,
                         const MaskAssignment& mask, double edge_threshold,
                         const InteractionThresholds& gates) {
    std::vector<size_t> tally;
    if (mask.task == TaskKind::DN)
        tally = ligand.heavy_atom_indices();
    else
        for (size_t i : mask.context)
            if (ligand.atoms[i].is_heavy()) tally.push_back(i);
    if (tally.empty())
        throw DomainError("context summary undefined: empty tally set for task " +
                          std::string(task_name(mask.task)));

    std::vector<bool> in_tally(ligand.atoms.size(), false);
    for (size_t i : tally) in_tally[i] = true;

    const VirtualEdgeGraph graph = build_virtual_edges(pocket, ligand, edge_threshold);
    std::vector<size_t> degree(ligand.atoms.size(), 0);
    double edge_length_sum = 0.0;
    size_t edge_count = 0;
    for (const VirtualEdge& e : graph.edges) {
        ++degree[e.ligand_atom];
        if (in_tally[e.ligand_atom]) {
            edge_length_sum += e.dist;
            ++edge_count;
        }
    }

    const auto records = classify_interactions(pocket, pocket_types, ligand, ligand_types, gates);
    std::vector<std::set<InteractionCategory>> categories(ligand.atoms.size());
    std::vector<std::set<size_t>> partners(ligand.atoms.size());
    for (const InteractionRecord& r : records) {
        categories[r.ligand_atom].insert(r.category);
        partners[r.ligand_atom].insert(r.pocket_atom);
    }

    ContextSummary out;
    out.task = mask.task;
    out.context_size = tally.size();
    double n_sum = 0.0, t_sum = 0.0, k_sum = 0.0;
    for (size_t i : tally) {
        n_sum += static_cast<double>(degree[i]);
        t_sum += static_cast<double>(categories[i].size());
        k_sum += static_cast<double>(partners[i].size());
    }
    const double n = static_cast<double>(tally.size());
    out.n_bar = n_sum / n;
    out.t_bar = t_sum / n;
    out.k_bar = k_sum / n;
    if (edge_count > 0) out.d_bar = edge_length_sum / static_cast<double>(edge_count);
    return out;
}

}  // namespace posekit
