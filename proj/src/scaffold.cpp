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

#include "scaffold.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "error.hpp"

namespace posekit {

namespace {

constexpr size_t kNone = std::numeric_limits<size_t>::max();

// Heavy-atom graph with edge identities, for bridge detection.
struct HeavyGraph {
    std::vector<size_t> atoms;                    // local -> original index
    std::vector<size_t> local;                    // original -> local, kNone for H
    std::vector<std::pair<size_t, size_t>> edges;  // local endpoints
    std::vector<int> edge_order;
    std::vector<std::vector<std::pair<size_t, size_t>>> adj;  // (neighbor, edge id)

    explicit HeavyGraph(const MolecularGraph& mol) {
        local.assign(mol.atoms.size(), kNone);
        for (size_t i = 0; i < mol.atoms.size(); ++i) {
            if (!mol.atoms[i].is_heavy()) continue;
            local[i] = atoms.size();
            atoms.push_back(i);
        }
        adj.resize(atoms.size());
        for (const auto& b : mol.bonds) {
            size_t u = local[b.i];
            size_t v = local[b.j];
            if (u == kNone || v == kNone) continue;
            size_t e = edges.size();
            edges.emplace_back(u, v);
            edge_order.push_back(b.order);
            adj[u].emplace_back(v, e);
            adj[v].emplace_back(u, e);
        }
    }

    size_t size() const { return atoms.size(); }
};

// Tarjan bridge detection, iterative to keep stack use independent of
// molecule size.
std::vector<bool> find_bridges(const HeavyGraph& g) {
    const size_t n = g.size();
    std::vector<bool> is_bridge(g.edges.size(), false);
    std::vector<size_t> disc(n, 0), low(n, 0);
    size_t timer = 0;

    struct Frame {
        size_t u;
        size_t parent_edge;
        size_t next_child;
    };
    std::vector<Frame> stack;
    for (size_t root = 0; root < n; ++root) {
        if (disc[root] != 0) continue;
        disc[root] = low[root] = ++timer;
        stack.push_back({root, kNone, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next_child < g.adj[f.u].size()) {
                auto [v, e] = g.adj[f.u][f.next_child++];
                if (e == f.parent_edge) continue;
                if (disc[v] == 0) {
                    disc[v] = low[v] = ++timer;
                    stack.push_back({v, e, 0});
                } else {
                    low[f.u] = std::min(low[f.u], disc[v]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    Frame& p = stack.back();
                    low[p.u] = std::min(low[p.u], low[f.u]);
                    if (low[f.u] > disc[p.u]) is_bridge[f.parent_edge] = true;
                }
            }
        }
    }
    return is_bridge;
}

std::vector<bool> ring_atom_flags(const HeavyGraph& g, const std::vector<bool>& is_bridge) {
    std::vector<bool> ring(g.size(), false);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (is_bridge[e]) continue;
        ring[g.edges[e].first] = true;
        ring[g.edges[e].second] = true;
    }
    return ring;
}

// Components of the ring atoms under non-bridge edges; each sorted by
// original index, components ordered by their first atom.
std::vector<std::vector<size_t>> ring_components(const HeavyGraph& g,
                                                 const std::vector<bool>& is_bridge,
                                                 const std::vector<bool>& ring) {
    std::vector<size_t> comp(g.size(), kNone);
    size_t n_comp = 0;
    for (size_t s = 0; s < g.size(); ++s) {
        if (!ring[s] || comp[s] != kNone) continue;
        size_t id = n_comp++;
        std::deque<size_t> queue{s};
        comp[s] = id;
        while (!queue.empty()) {
            size_t u = queue.front();
            queue.pop_front();
            for (auto [v, e] : g.adj[u]) {
                if (is_bridge[e] || comp[v] != kNone) continue;
                comp[v] = id;
                queue.push_back(v);
            }
        }
    }
    std::vector<std::vector<size_t>> systems(n_comp);
    for (size_t u = 0; u < g.size(); ++u)
        if (comp[u] != kNone) systems[comp[u]].push_back(g.atoms[u]);
    for (auto& s : systems) std::sort(s.begin(), s.end());
    std::sort(systems.begin(), systems.end());
    return systems;
}

// Largest connected component of the heavy graph (ties broken by lowest
// atom index); returns per-vertex component id and the kept id.
std::pair<std::vector<size_t>, size_t> largest_component(const HeavyGraph& g) {
    std::vector<size_t> comp(g.size(), kNone);
    std::vector<size_t> comp_size;
    for (size_t s = 0; s < g.size(); ++s) {
        if (comp[s] != kNone) continue;
        size_t id = comp_size.size();
        comp_size.push_back(0);
        std::deque<size_t> queue{s};
        comp[s] = id;
        while (!queue.empty()) {
            size_t u = queue.front();
            queue.pop_front();
            ++comp_size[id];
            for (auto [v, e] : g.adj[u]) {
                (void)e;
                if (comp[v] != kNone) continue;
                comp[v] = id;
                queue.push_back(v);
            }
        }
    }
    size_t best = 0;
    for (size_t id = 1; id < comp_size.size(); ++id)
        if (comp_size[id] > comp_size[best]) best = id;
    return {std::move(comp), best};
}

// Distances from every atom of `sources` where only non-ring interior
// atoms are traversed; ring atoms outside the source system receive a
// distance but are not expanded.
std::vector<size_t> bfs_through_nonring(const HeavyGraph& g, const std::vector<size_t>& sources,
                                        const std::vector<bool>& ring,
                                        const std::vector<bool>& in_source) {
    std::vector<size_t> dist(g.size(), kNone);
    std::deque<size_t> queue;
    for (size_t s : sources) {
        dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        size_t u = queue.front();
        queue.pop_front();
        if (dist[u] != 0 && ring[u]) continue;  // interior must be non-ring
        for (auto [v, e] : g.adj[u]) {
            (void)e;
            if (dist[v] != kNone || in_source[v]) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

}  // namespace

std::string_view task_name(TaskKind task) {
    switch (task) {
        case TaskKind::SH: return "SH";
        case TaskKind::SC: return "SC";
        case TaskKind::DN: return "DN";
    }
    return "?";
}

std::optional<TaskKind> task_from_name(std::string_view name) {
    if (name == "SH" || name == "sh") return TaskKind::SH;
    if (name == "SC" || name == "sc") return TaskKind::SC;
    if (name == "DN" || name == "dn") return TaskKind::DN;
    return std::nullopt;
}

std::vector<std::vector<size_t>> find_ring_systems(const MolecularGraph& mol) {
    HeavyGraph g(mol);
    auto is_bridge = find_bridges(g);
    auto ring = ring_atom_flags(g, is_bridge);
    return ring_components(g, is_bridge, ring);
}

Decomposition decompose(const MolecularGraph& mol) {
    Decomposition out;
    HeavyGraph g(mol);
    if (g.size() == 0) return out;

    auto [comp, kept] = largest_component(g);
    for (size_t u = 0; u < g.size(); ++u)
        if (comp[u] != kept) out.dropped_fragment_atoms.push_back(g.atoms[u]);

    auto is_bridge = find_bridges(g);
    auto ring = ring_atom_flags(g, is_bridge);
    for (size_t u = 0; u < g.size(); ++u)
        if (comp[u] != kept) ring[u] = false;  // only the kept fragment decomposes

    auto systems = ring_components(g, is_bridge, ring);
    out.ring_systems = systems;

    std::vector<bool> core(g.size(), false);
    for (const auto& sys : systems)
        for (size_t orig : sys) core[g.local[orig]] = true;

    // Linkers: interior atoms of the unique non-ring path between each
    // pair of ring systems.
    std::vector<std::vector<size_t>> local_systems(systems.size());
    std::vector<std::vector<size_t>> dists(systems.size());
    for (size_t a = 0; a < systems.size(); ++a) {
        for (size_t orig : systems[a]) local_systems[a].push_back(g.local[orig]);
        std::vector<bool> in_source(g.size(), false);
        for (size_t u : local_systems[a]) in_source[u] = true;
        dists[a] = bfs_through_nonring(g, local_systems[a], ring, in_source);
    }
    std::vector<bool> linker(g.size(), false);
    for (size_t a = 0; a < systems.size(); ++a) {
        for (size_t b = a + 1; b < systems.size(); ++b) {
            size_t d_ab = kNone;
            for (size_t u : local_systems[b])
                if (dists[a][u] != kNone) d_ab = std::min(d_ab, dists[a][u]);
            if (d_ab == kNone) continue;
            for (size_t v = 0; v < g.size(); ++v) {
                if (ring[v] || dists[a][v] == kNone || dists[b][v] == kNone) continue;
                if (dists[a][v] + dists[b][v] == d_ab) linker[v] = true;
            }
        }
    }
    for (size_t v = 0; v < g.size(); ++v) {
        if (!linker[v]) continue;
        core[v] = true;
        out.linker_atoms.push_back(g.atoms[v]);
    }

    // Exo decorations: double bond straight into the ring/linker core.
    std::vector<bool> scaffold(core);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edge_order[e] != 2) continue;
        auto [u, v] = g.edges[e];
        if (comp[u] != kept) continue;
        if (core[u] && !core[v]) scaffold[v] = true;
        if (core[v] && !core[u]) scaffold[u] = true;
    }
    for (size_t u = 0; u < g.size(); ++u)
        if (scaffold[u] && !core[u]) out.exo_atoms.push_back(g.atoms[u]);

    for (size_t u = 0; u < g.size(); ++u) {
        if (scaffold[u])
            out.scaffold_atoms.push_back(g.atoms[u]);
        else
            out.sidechain_atoms.push_back(g.atoms[u]);
    }
    out.has_scaffold = !out.scaffold_atoms.empty();
    return out;
}

MaskAssignment make_mask(const Decomposition& decomp, TaskKind task) {
    if ((task == TaskKind::SH || task == TaskKind::SC) && !decomp.has_scaffold)
        throw DomainError(std::string(task_name(task)) +
                          " mask undefined for a molecule without a scaffold");
    MaskAssignment mask;
    mask.task = task;
    switch (task) {
        case TaskKind::SH:
            mask.target = decomp.scaffold_atoms;
            mask.context = decomp.sidechain_atoms;
            break;
        case TaskKind::SC:
            mask.target = decomp.sidechain_atoms;
            mask.context = decomp.scaffold_atoms;
            break;
        case TaskKind::DN:
            mask.target = decomp.scaffold_atoms;
            mask.target.insert(mask.target.end(), decomp.sidechain_atoms.begin(),
                               decomp.sidechain_atoms.end());
            std::sort(mask.target.begin(), mask.target.end());
            break;
    }
    return mask;
}

TaskKind sample_task(const Decomposition& decomp, SeededRng& rng) {
    if (!decomp.has_scaffold) {
        rng.next_u64();  // keep stream advancement uniform across inputs
        return TaskKind::DN;
    }
    static constexpr TaskKind kAll[] = {TaskKind::SH, TaskKind::SC, TaskKind::DN};
    return kAll[rng.uniform_index(3)];
}

void apply_mask(MolecularGraph& mol, const MaskAssignment& mask) {
    for (auto& atom : mol.atoms) atom.context_flag = false;
    for (size_t i : mask.context) mol.atoms[i].context_flag = true;
}

}  // namespace posekit
