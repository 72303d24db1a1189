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

#include "posekit/posekit.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "atom_types.hpp"
#include "diffusion.hpp"
#include "energy.hpp"
#include "error.hpp"
#include "interactions.hpp"
#include "pdb.hpp"
#include "refine.hpp"
#include "rigid.hpp"
#include "rng.hpp"
#include "scaffold.hpp"
#include "sdf.hpp"
#include "stats.hpp"
#include "types.hpp"

struct pk_pocket {
    posekit::PocketStructure pocket;
    std::vector<posekit::AtomType> types;
};

struct pk_ligand {
    posekit::MolecularGraph mol;
    std::vector<posekit::AtomType> types;
};

struct pk_decomp {
    posekit::Decomposition decomp;
};

struct pk_refine_result {
    posekit::RefineResult result;
    std::vector<posekit::Vec3> input_coords;
};

struct pk_density {
    posekit::DensityResult density;
};

struct pk_schedule {
    posekit::VarianceSchedule schedule;
};

namespace {

constexpr const char* kVersion = "1.0.0";

thread_local std::string t_last_error;

pk_status fail(pk_status code, const std::string& message) {
    t_last_error = message;
    return code;
}

pk_status bad_argument(const std::string& message) {
    return fail(PK_ERR_INVALID_ARGUMENT, message);
}

template <class Fn>
pk_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const posekit::ParseError& e) {
        return fail(PK_ERR_PARSE, e.what());
    } catch (const posekit::EvalError& e) {
        return fail(PK_ERR_EVAL, e.what());
    } catch (const posekit::DomainError& e) {
        return fail(PK_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(PK_ERR_INTERNAL, e.what());
    }
}

size_t* dup_indices(const std::vector<size_t>& v) {
    if (v.empty()) return nullptr;
    auto* p = static_cast<size_t*>(std::malloc(v.size() * sizeof(size_t)));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, v.data(), v.size() * sizeof(size_t));
    return p;
}

double* dup_doubles(const std::vector<double>& v) {
    if (v.empty()) return nullptr;
    auto* p = static_cast<double*>(std::malloc(v.size() * sizeof(double)));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, v.data(), v.size() * sizeof(double));
    return p;
}

char* dup_string(const std::string& s) {
    auto* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::array<double, 5> weights_or_default(const double* weights) {
    if (!weights) return posekit::kDefaultEnergyWeights;
    std::array<double, 5> w;
    std::copy(weights, weights + 5, w.begin());
    return w;
}

posekit::InteractionThresholds gates_or_default(const pk_interaction_thresholds* t) {
    posekit::InteractionThresholds gates;
    if (t) {
        gates.hydrophobic = t->hydrophobic;
        gates.hydrogen_bond = t->hydrogen_bond;
        gates.water_bridge = t->water_bridge;
        gates.pi_pi = t->pi_pi;
        gates.pi_cation = t->pi_cation;
        gates.halogen = t->halogen;
        gates.metal = t->metal;
    }
    return gates;
}

std::vector<posekit::Vec3> coords_of(const posekit::MolecularGraph& mol) {
    std::vector<posekit::Vec3> out;
    out.reserve(mol.atoms.size());
    for (const auto& a : mol.atoms) out.push_back(a.position);
    return out;
}

std::vector<posekit::Vec3> to_vec3(const double* xyz, size_t n) {
    std::vector<posekit::Vec3> out(n);
    for (size_t i = 0; i < n; ++i)
        out[i] = {xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
    return out;
}

void from_vec3(const std::vector<posekit::Vec3>& v, double* xyz) {
    for (size_t i = 0; i < v.size(); ++i) {
        xyz[3 * i] = v[i].x;
        xyz[3 * i + 1] = v[i].y;
        xyz[3 * i + 2] = v[i].z;
    }
}

pk_status task_from_int(int value, posekit::TaskKind& out) {
    switch (value) {
        case PK_TASK_SH: out = posekit::TaskKind::SH; return PK_OK;
        case PK_TASK_SC: out = posekit::TaskKind::SC; return PK_OK;
        case PK_TASK_DN: out = posekit::TaskKind::DN; return PK_OK;
        default: return bad_argument("unknown task value " + std::to_string(value));
    }
}

void summary_to_c(const posekit::ContextSummary& s, pk_context_summary* out) {
    out->task = static_cast<int>(s.task);
    out->n_bar = s.n_bar;
    out->has_d_bar = s.d_bar.has_value() ? 1 : 0;
    out->d_bar = s.d_bar.value_or(0.0);
    out->t_bar = s.t_bar;
    out->k_bar = s.k_bar;
    out->context_size = s.context_size;
}

pk_status summarize_impl(const pk_pocket* pocket, const pk_ligand* ligand, pk_task task,
                         double edge_threshold, const pk_interaction_thresholds* thresholds,
                         pk_context_summary* out) {
    if (!pocket || !ligand || !out) return bad_argument("null argument to pk_summarize");
    if (edge_threshold < 0.0) return bad_argument("edge threshold must be nonnegative");
    posekit::TaskKind kind;
    if (pk_status s = task_from_int(task, kind); s != PK_OK) return s;
    return guarded([&] {
        auto decomp = posekit::decompose(ligand->mol);
        auto mask = posekit::make_mask(decomp, kind);
        double threshold = edge_threshold > 0.0 ? edge_threshold : 6.0;
        auto summary = posekit::summarize(pocket->pocket, pocket->types, ligand->mol,
                                          ligand->types, mask, threshold,
                                          gates_or_default(thresholds));
        summary_to_c(summary, out);
        return PK_OK;
    });
}

}  // namespace

extern "C" {

const char* pk_version(void) { return kVersion; }

const char* pk_last_error(void) { return t_last_error.c_str(); }

void pk_string_free(char* s) { std::free(s); }

void pk_buffer_free(void* p) { std::free(p); }

/* ---------------------------------------------------------------- */

pk_status pk_pocket_parse(const char* pdb_text, pk_pocket** out) {
    if (!pdb_text || !out) return bad_argument("null argument to pk_pocket_parse");
    return guarded([&] {
        auto handle = std::make_unique<pk_pocket>();
        handle->pocket = posekit::parse_receptor(pdb_text);
        handle->types = posekit::assign_receptor_types(handle->pocket);
        *out = handle.release();
        return PK_OK;
    });
}

pk_status pk_pocket_parse_clipped(const char* pdb_text, double cx, double cy, double cz,
                                  double radius, pk_pocket** out) {
    if (!pdb_text || !out) return bad_argument("null argument to pk_pocket_parse_clipped");
    if (!(radius > 0.0)) return bad_argument("clip radius must be positive");
    return guarded([&] {
        auto handle = std::make_unique<pk_pocket>();
        posekit::ClipSphere clip{{cx, cy, cz}, radius};
        handle->pocket = posekit::parse_receptor(pdb_text, clip);
        handle->types = posekit::assign_receptor_types(handle->pocket);
        *out = handle.release();
        return PK_OK;
    });
}

void pk_pocket_free(pk_pocket* pocket) { delete pocket; }

size_t pk_pocket_atom_count(const pk_pocket* pocket) {
    return pocket ? pocket->pocket.atoms.size() : 0;
}

size_t pk_pocket_heavy_atom_count(const pk_pocket* pocket) {
    return pocket ? pocket->pocket.heavy_atom_count() : 0;
}

size_t pk_pocket_template_warnings(const pk_pocket* pocket) {
    return pocket ? pocket->pocket.template_warnings : 0;
}

/* ---------------------------------------------------------------- */

pk_status pk_ligand_parse_sdf(const char* sdf_text, pk_ligand** out) {
    if (!sdf_text || !out) return bad_argument("null argument to pk_ligand_parse_sdf");
    return guarded([&] {
        auto handle = std::make_unique<pk_ligand>();
        handle->mol = posekit::parse_sdf(sdf_text);
        handle->types = posekit::assign_ligand_types(handle->mol);
        *out = handle.release();
        return PK_OK;
    });
}

pk_status pk_ligand_parse_sdf_multi(const char* sdf_text, pk_ligand*** out, size_t* count) {
    if (!sdf_text || !out || !count)
        return bad_argument("null argument to pk_ligand_parse_sdf_multi");
    return guarded([&] {
        auto mols = posekit::parse_sdf_multi(sdf_text);
        if (mols.empty()) {
            *out = nullptr;
            *count = 0;
            return PK_OK;
        }
        std::vector<std::unique_ptr<pk_ligand>> handles;
        handles.reserve(mols.size());
        for (auto& mol : mols) {
            auto h = std::make_unique<pk_ligand>();
            h->mol = std::move(mol);
            h->types = posekit::assign_ligand_types(h->mol);
            handles.push_back(std::move(h));
        }
        auto** arr = static_cast<pk_ligand**>(std::malloc(handles.size() * sizeof(pk_ligand*)));
        if (!arr) throw std::bad_alloc();
        for (size_t i = 0; i < handles.size(); ++i) arr[i] = handles[i].release();
        *out = arr;
        *count = handles.size();
        return PK_OK;
    });
}

void pk_ligand_free(pk_ligand* ligand) { delete ligand; }

const char* pk_ligand_name(const pk_ligand* ligand) {
    return ligand ? ligand->mol.name.c_str() : "";
}

size_t pk_ligand_atom_count(const pk_ligand* ligand) {
    return ligand ? ligand->mol.atoms.size() : 0;
}

size_t pk_ligand_heavy_atom_count(const pk_ligand* ligand) {
    return ligand ? ligand->mol.heavy_atom_count() : 0;
}

pk_status pk_ligand_coords(const pk_ligand* ligand, double* xyz) {
    if (!ligand || !xyz) return bad_argument("null argument to pk_ligand_coords");
    from_vec3(coords_of(ligand->mol), xyz);
    return PK_OK;
}

pk_status pk_ligand_set_coords(pk_ligand* ligand, const double* xyz, size_t atom_count) {
    if (!ligand || !xyz) return bad_argument("null argument to pk_ligand_set_coords");
    if (atom_count != ligand->mol.atoms.size())
        return bad_argument("coordinate count " + std::to_string(atom_count) +
                            " does not match atom count " +
                            std::to_string(ligand->mol.atoms.size()));
    for (size_t i = 0; i < atom_count; ++i)
        ligand->mol.atoms[i].position = {xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
    return PK_OK;
}

pk_status pk_ligand_write_sdf(const pk_ligand* ligand, const char* const* field_names,
                              const char* const* field_values, size_t field_count,
                              char** out_text) {
    if (!ligand || !out_text) return bad_argument("null argument to pk_ligand_write_sdf");
    if (field_count > 0 && (!field_names || !field_values))
        return bad_argument("field arrays are null with nonzero field_count");
    return guarded([&] {
        std::vector<std::pair<std::string, std::string>> extra;
        extra.reserve(field_count);
        for (size_t i = 0; i < field_count; ++i) {
            if (!field_names[i] || !field_values[i])
                return bad_argument("null data field at index " + std::to_string(i));
            extra.emplace_back(field_names[i], field_values[i]);
        }
        *out_text = dup_string(posekit::write_sdf(ligand->mol, nullptr, &extra));
        return PK_OK;
    });
}

pk_status pk_ligand_subgraph(const pk_ligand* ligand, const size_t* atoms, size_t count,
                             pk_ligand** out) {
    if (!ligand || !out || (count > 0 && !atoms))
        return bad_argument("null argument to pk_ligand_subgraph");
    for (size_t i = 0; i < count; ++i)
        if (atoms[i] >= ligand->mol.atoms.size())
            return bad_argument("atom index " + std::to_string(atoms[i]) + " out of range");
    return guarded([&] {
        auto handle = std::make_unique<pk_ligand>();
        handle->mol =
            posekit::induced_subgraph(ligand->mol, std::vector<size_t>(atoms, atoms + count));
        handle->types = posekit::assign_ligand_types(handle->mol);
        *out = handle.release();
        return PK_OK;
    });
}

/* ---------------------------------------------------------------- */

pk_status pk_score(const pk_pocket* pocket, const pk_ligand* ligand, const double* weights,
                   pk_energy* out) {
    if (!pocket || !ligand || !out) return bad_argument("null argument to pk_score");
    return guarded([&] {
        posekit::EnergyModel model(pocket->pocket, pocket->types, weights_or_default(weights));
        auto breakdown = model.evaluate(ligand->mol, ligand->types, coords_of(ligand->mol));
        out->terms[0] = breakdown.e_g1;
        out->terms[1] = breakdown.e_g2;
        out->terms[2] = breakdown.e_rep;
        out->terms[3] = breakdown.e_hyd;
        out->terms[4] = breakdown.e_hd;
        std::copy(breakdown.weights.begin(), breakdown.weights.end(), out->weights);
        out->total = breakdown.total;
        out->pair_count = breakdown.pair_count;
        return PK_OK;
    });
}

/* ---------------------------------------------------------------- */

void pk_refine_options_init(pk_refine_options* options) {
    if (!options) return;
    posekit::RefineOptions defaults;
    options->max_iterations = defaults.max_iterations;
    options->step = defaults.step;
    options->epsilon = defaults.epsilon;
    options->memory = defaults.memory;
    options->gradient_tolerance = defaults.gradient_tolerance;
    options->central_differences = defaults.central_differences ? 1 : 0;
    std::copy(posekit::kDefaultEnergyWeights.begin(), posekit::kDefaultEnergyWeights.end(),
              options->weights);
}

pk_status pk_refine(const pk_pocket* pocket, const pk_ligand* ligand,
                    const pk_refine_options* options, pk_refine_result** out) {
    if (!pocket || !ligand || !out) return bad_argument("null argument to pk_refine");
    pk_refine_options defaults;
    pk_refine_options_init(&defaults);
    const pk_refine_options& opts = options ? *options : defaults;
    if (!(opts.step > 0.0)) return bad_argument("step must be positive");
    if (!(opts.epsilon > 0.0)) return bad_argument("epsilon must be positive");
    if (opts.memory == 0) return bad_argument("memory must be at least 1");
    if (!(opts.gradient_tolerance >= 0.0))
        return bad_argument("gradient tolerance must be nonnegative");
    return guarded([&] {
        posekit::EnergyModel model(pocket->pocket, pocket->types,
                                   weights_or_default(opts.weights));
        posekit::RefineOptions ropts;
        ropts.max_iterations = opts.max_iterations;
        ropts.step = opts.step;
        ropts.epsilon = opts.epsilon;
        ropts.memory = opts.memory;
        ropts.gradient_tolerance = opts.gradient_tolerance;
        ropts.central_differences = opts.central_differences != 0;
        auto handle = std::make_unique<pk_refine_result>();
        handle->input_coords = coords_of(ligand->mol);
        handle->result = posekit::refine_pose(model, ligand->mol, ligand->types, ropts);
        *out = handle.release();
        return PK_OK;
    });
}

void pk_refine_result_free(pk_refine_result* result) { delete result; }

double pk_refine_e_init(const pk_refine_result* result) {
    return result ? result->result.e_init : 0.0;
}

double pk_refine_e_opt(const pk_refine_result* result) {
    return result ? result->result.e_opt : 0.0;
}

int pk_refine_accepted(const pk_refine_result* result) {
    return result && result->result.accepted ? 1 : 0;
}

int pk_refine_aborted(const pk_refine_result* result) {
    return result && result->result.aborted ? 1 : 0;
}

size_t pk_refine_iterations(const pk_refine_result* result) {
    return result ? result->result.iterations_used : 0;
}

size_t pk_refine_trace_size(const pk_refine_result* result) {
    return result ? result->result.iterate_energies.size() : 0;
}

pk_status pk_refine_trace(const pk_refine_result* result, double* energies, double* best) {
    if (!result) return bad_argument("null argument to pk_refine_trace");
    const auto& r = result->result;
    if (energies)
        std::copy(r.iterate_energies.begin(), r.iterate_energies.end(), energies);
    if (best) std::copy(r.energy_trace.begin(), r.energy_trace.end(), best);
    return PK_OK;
}

pk_status pk_refine_apply(const pk_refine_result* result, pk_ligand* ligand) {
    if (!result || !ligand) return bad_argument("null argument to pk_refine_apply");
    if (ligand->mol.atoms.size() != result->input_coords.size())
        return bad_argument("ligand atom count does not match the refined structure");
    auto moved = posekit::apply_pose(result->result.best_pose, result->input_coords);
    for (size_t i = 0; i < moved.size(); ++i) ligand->mol.atoms[i].position = moved[i];
    return PK_OK;
}

/* ---------------------------------------------------------------- */

pk_status pk_decompose(const pk_ligand* ligand, pk_decomp** out) {
    if (!ligand || !out) return bad_argument("null argument to pk_decompose");
    return guarded([&] {
        auto handle = std::make_unique<pk_decomp>();
        handle->decomp = posekit::decompose(ligand->mol);
        *out = handle.release();
        return PK_OK;
    });
}

void pk_decomp_free(pk_decomp* decomp) { delete decomp; }

int pk_decomp_has_scaffold(const pk_decomp* decomp) {
    return decomp && decomp->decomp.has_scaffold ? 1 : 0;
}

pk_status pk_decomp_scaffold(const pk_decomp* decomp, size_t** atoms, size_t* count) {
    if (!decomp || !atoms || !count) return bad_argument("null argument to pk_decomp_scaffold");
    return guarded([&] {
        *atoms = dup_indices(decomp->decomp.scaffold_atoms);
        *count = decomp->decomp.scaffold_atoms.size();
        return PK_OK;
    });
}

pk_status pk_decomp_sidechains(const pk_decomp* decomp, size_t** atoms, size_t* count) {
    if (!decomp || !atoms || !count) return bad_argument("null argument to pk_decomp_sidechains");
    return guarded([&] {
        *atoms = dup_indices(decomp->decomp.sidechain_atoms);
        *count = decomp->decomp.sidechain_atoms.size();
        return PK_OK;
    });
}

pk_status pk_decomp_linkers(const pk_decomp* decomp, size_t** atoms, size_t* count) {
    if (!decomp || !atoms || !count) return bad_argument("null argument to pk_decomp_linkers");
    return guarded([&] {
        *atoms = dup_indices(decomp->decomp.linker_atoms);
        *count = decomp->decomp.linker_atoms.size();
        return PK_OK;
    });
}

size_t pk_decomp_ring_system_count(const pk_decomp* decomp) {
    return decomp ? decomp->decomp.ring_systems.size() : 0;
}

pk_status pk_decomp_ring_system(const pk_decomp* decomp, size_t index, size_t** atoms,
                                size_t* count) {
    if (!decomp || !atoms || !count) return bad_argument("null argument to pk_decomp_ring_system");
    if (index >= decomp->decomp.ring_systems.size())
        return bad_argument("ring system index " + std::to_string(index) + " out of range");
    return guarded([&] {
        *atoms = dup_indices(decomp->decomp.ring_systems[index]);
        *count = decomp->decomp.ring_systems[index].size();
        return PK_OK;
    });
}

pk_status pk_make_mask(const pk_decomp* decomp, pk_task task, size_t** target,
                       size_t* target_count, size_t** context, size_t* context_count) {
    if (!decomp || !target || !target_count || !context || !context_count)
        return bad_argument("null argument to pk_make_mask");
    posekit::TaskKind kind;
    if (pk_status s = task_from_int(task, kind); s != PK_OK) return s;
    return guarded([&] {
        auto mask = posekit::make_mask(decomp->decomp, kind);
        size_t* tgt = dup_indices(mask.target);
        size_t* ctx = nullptr;
        try {
            ctx = dup_indices(mask.context);
        } catch (...) {
            std::free(tgt);
            throw;
        }
        *target = tgt;
        *target_count = mask.target.size();
        *context = ctx;
        *context_count = mask.context.size();
        return PK_OK;
    });
}

pk_status pk_sample_task(const pk_decomp* decomp, uint64_t seed, pk_task* out) {
    if (!decomp || !out) return bad_argument("null argument to pk_sample_task");
    posekit::SeededRng rng(seed);
    *out = static_cast<pk_task>(posekit::sample_task(decomp->decomp, rng));
    return PK_OK;
}

/* ---------------------------------------------------------------- */

void pk_interaction_thresholds_init(pk_interaction_thresholds* thresholds) {
    if (!thresholds) return;
    posekit::InteractionThresholds defaults;
    thresholds->hydrophobic = defaults.hydrophobic;
    thresholds->hydrogen_bond = defaults.hydrogen_bond;
    thresholds->water_bridge = defaults.water_bridge;
    thresholds->pi_pi = defaults.pi_pi;
    thresholds->pi_cation = defaults.pi_cation;
    thresholds->halogen = defaults.halogen;
    thresholds->metal = defaults.metal;
}

pk_status pk_interaction_counts(const pk_pocket* pocket, const pk_ligand* ligand,
                                const pk_interaction_thresholds* thresholds,
                                size_t counts[PK_INTERACTION_CATEGORIES]) {
    if (!pocket || !ligand || !counts)
        return bad_argument("null argument to pk_interaction_counts");
    return guarded([&] {
        auto records = posekit::classify_interactions(pocket->pocket, pocket->types, ligand->mol,
                                                      ligand->types, gates_or_default(thresholds));
        std::fill(counts, counts + PK_INTERACTION_CATEGORIES, size_t{0});
        for (const auto& rec : records) ++counts[static_cast<int>(rec.category)];
        return PK_OK;
    });
}

pk_status pk_virtual_edge_count(const pk_pocket* pocket, const pk_ligand* ligand,
                                double threshold, size_t* out) {
    if (!pocket || !ligand || !out) return bad_argument("null argument to pk_virtual_edge_count");
    if (threshold < 0.0) return bad_argument("edge threshold must be nonnegative");
    return guarded([&] {
        double t = threshold > 0.0 ? threshold : 6.0;
        auto graph = posekit::build_virtual_edges(pocket->pocket, ligand->mol, t);
        *out = graph.edges.size();
        return PK_OK;
    });
}

pk_status pk_summarize(const pk_pocket* pocket, const pk_ligand* ligand, pk_task task,
                       pk_context_summary* out) {
    return summarize_impl(pocket, ligand, task, 0.0, nullptr, out);
}

pk_status pk_summarize_opts(const pk_pocket* pocket, const pk_ligand* ligand, pk_task task,
                            double edge_threshold, const pk_interaction_thresholds* thresholds,
                            pk_context_summary* out) {
    return summarize_impl(pocket, ligand, task, edge_threshold, thresholds, out);
}

/* ---------------------------------------------------------------- */

pk_status pk_information_density(const pk_context_summary* summaries, size_t count,
                                 pk_density** out) {
    if (!out || (!summaries && count > 0))
        return bad_argument("null argument to pk_information_density");
    std::vector<posekit::ContextSummary> converted(count);
    for (size_t i = 0; i < count; ++i) {
        posekit::TaskKind kind;
        if (pk_status s = task_from_int(summaries[i].task, kind); s != PK_OK) return s;
        converted[i].task = kind;
        converted[i].n_bar = summaries[i].n_bar;
        if (summaries[i].has_d_bar) converted[i].d_bar = summaries[i].d_bar;
        converted[i].t_bar = summaries[i].t_bar;
        converted[i].k_bar = summaries[i].k_bar;
        converted[i].context_size = summaries[i].context_size;
    }
    return guarded([&] {
        auto handle = std::make_unique<pk_density>();
        handle->density = posekit::information_density(converted);
        *out = handle.release();
        return PK_OK;
    });
}

void pk_density_free(pk_density* density) { delete density; }

pk_status pk_density_stats_get(const pk_density* density, pk_density_stats* out) {
    if (!density || !out) return bad_argument("null argument to pk_density_stats_get");
    const auto& d = density->density;
    out->has_rho = d.rho.has_value() ? 1 : 0;
    out->rho = d.rho.value_or(0.0);
    out->entropy = d.entropy.value_or(0.0);
    out->n = d.n;
    out->skipped_no_edges = d.skipped_no_edges;
    out->low_confidence = d.low_confidence ? 1 : 0;
    out->degenerate = d.degenerate ? 1 : 0;
    out->jittered = d.jittered ? 1 : 0;
    out->zero_knn_fraction = d.zero_knn_fraction;
    std::copy(d.axis_means.begin(), d.axis_means.end(), out->axis_means);
    return PK_OK;
}

size_t pk_density_hexbin_count(const pk_density* density, int plane) {
    if (!density) return 0;
    if (plane == 0) return density->density.distance_plane.size();
    if (plane == 1) return density->density.interaction_plane.size();
    return 0;
}

pk_status pk_density_hexbin(const pk_density* density, int plane, size_t index, double* cx,
                            double* cy, size_t* bin_count) {
    if (!density || !cx || !cy || !bin_count)
        return bad_argument("null argument to pk_density_hexbin");
    if (plane != 0 && plane != 1) return bad_argument("plane must be 0 or 1");
    const auto& cells =
        plane == 0 ? density->density.distance_plane : density->density.interaction_plane;
    if (index >= cells.size())
        return bad_argument("hexbin index " + std::to_string(index) + " out of range");
    *cx = cells[index].cx;
    *cy = cells[index].cy;
    *bin_count = cells[index].count;
    return PK_OK;
}

/* ---------------------------------------------------------------- */

pk_status pk_gradient_snr(const double* gradients, size_t count, size_t dim, size_t window,
                          size_t variance_window, double** snr, int** degenerate,
                          size_t* window_count, double** variance, size_t* variance_count) {
    if (!gradients || !snr || !degenerate || !window_count || !variance || !variance_count)
        return bad_argument("null argument to pk_gradient_snr");
    if (dim == 0) return bad_argument("gradient dimension must be positive");
    if (window == 1) return bad_argument("window must be at least 2");
    return guarded([&] {
        std::vector<std::vector<double>> vectors(count);
        for (size_t i = 0; i < count; ++i)
            vectors[i].assign(gradients + i * dim, gradients + (i + 1) * dim);
        posekit::GsnrOptions options;
        if (window > 0) options.window = window;
        if (variance_window > 0) options.variance_window = variance_window;
        auto result = posekit::gradient_snr(vectors, options);

        std::vector<double> snr_values;
        std::vector<double> variance_values = result.snr_variance;
        snr_values.reserve(result.windows.size());
        for (const auto& w : result.windows) snr_values.push_back(w.snr);

        double* snr_arr = dup_doubles(snr_values);
        int* flag_arr = nullptr;
        double* var_arr = nullptr;
        try {
            if (!result.windows.empty()) {
                flag_arr = static_cast<int*>(std::malloc(result.windows.size() * sizeof(int)));
                if (!flag_arr) throw std::bad_alloc();
                for (size_t i = 0; i < result.windows.size(); ++i)
                    flag_arr[i] = result.windows[i].degenerate ? 1 : 0;
            }
            var_arr = dup_doubles(variance_values);
        } catch (...) {
            std::free(snr_arr);
            std::free(flag_arr);
            throw;
        }
        *snr = snr_arr;
        *degenerate = flag_arr;
        *window_count = result.windows.size();
        *variance = var_arr;
        *variance_count = variance_values.size();
        return PK_OK;
    });
}

/* ---------------------------------------------------------------- */

pk_status pk_schedule_create(size_t steps, pk_schedule_kind kind, pk_schedule** out) {
    if (!out) return bad_argument("null argument to pk_schedule_create");
    posekit::ScheduleKind k;
    switch (kind) {
        case PK_SCHEDULE_LINEAR_BETA: k = posekit::ScheduleKind::LinearBeta; break;
        case PK_SCHEDULE_COSINE: k = posekit::ScheduleKind::Cosine; break;
        case PK_SCHEDULE_SIGMOID: k = posekit::ScheduleKind::Sigmoid; break;
        default:
            return bad_argument("unknown schedule kind " + std::to_string(static_cast<int>(kind)));
    }
    return guarded([&] {
        auto handle = std::make_unique<pk_schedule>();
        handle->schedule = posekit::make_schedule(steps, k);
        *out = handle.release();
        return PK_OK;
    });
}

void pk_schedule_free(pk_schedule* schedule) { delete schedule; }

size_t pk_schedule_steps(const pk_schedule* schedule) {
    return schedule ? schedule->schedule.steps : 0;
}

pk_status pk_schedule_row(const pk_schedule* schedule, size_t t, double* alpha, double* alpha_bar,
                          double* sigma_sq, double* lambda, double* gamma) {
    if (!schedule) return bad_argument("null argument to pk_schedule_row");
    if (t > schedule->schedule.steps)
        return bad_argument("step " + std::to_string(t) + " out of range");
    const auto& s = schedule->schedule;
    if (alpha) *alpha = s.alpha[t];
    if (alpha_bar) *alpha_bar = s.alpha_bar[t];
    if (sigma_sq) *sigma_sq = s.sigma_sq[t];
    if (lambda) *lambda = s.lambda[t];
    if (gamma) *gamma = s.gamma[t];
    return PK_OK;
}

pk_status pk_noise_coordinates(const pk_schedule* schedule, const double* x0, size_t atom_count,
                               size_t t, uint64_t seed, double* x_t, double* noise) {
    if (!schedule || !x0 || !x_t) return bad_argument("null argument to pk_noise_coordinates");
    return guarded([&] {
        auto result =
            posekit::noise_coordinates(to_vec3(x0, atom_count), t, schedule->schedule, seed);
        from_vec3(result.x_t, x_t);
        if (noise) from_vec3(result.noise, noise);
        return PK_OK;
    });
}

pk_status pk_type_noise_probs(const double* one_hot, size_t k, double alpha_bar, double* probs) {
    if (!one_hot || !probs) return bad_argument("null argument to pk_type_noise_probs");
    return guarded([&] {
        auto p = posekit::type_noise_probs(std::vector<double>(one_hot, one_hot + k), alpha_bar);
        std::copy(p.begin(), p.end(), probs);
        return PK_OK;
    });
}

pk_status pk_noise_types(const pk_schedule* schedule, const double* one_hot, size_t k, size_t t,
                         uint64_t seed, size_t* sample, double* probs) {
    if (!schedule || !one_hot || !sample) return bad_argument("null argument to pk_noise_types");
    return guarded([&] {
        auto result = posekit::noise_types(std::vector<double>(one_hot, one_hot + k), t,
                                           schedule->schedule, seed);
        *sample = result.sample;
        if (probs) std::copy(result.probs.begin(), result.probs.end(), probs);
        return PK_OK;
    });
}

pk_status pk_perturb_protein(const double* x, size_t atom_count, uint64_t seed, double sigma,
                             double* out) {
    if (!x || !out) return bad_argument("null argument to pk_perturb_protein");
    if (sigma < 0.0) return bad_argument("sigma must be nonnegative");
    return guarded([&] {
        auto moved = posekit::perturb_protein(to_vec3(x, atom_count), seed, sigma);
        from_vec3(moved, out);
        return PK_OK;
    });
}

pk_status pk_score_targets(const pk_schedule* schedule, const double* x0, const double* x_t,
                           size_t atom_count, size_t t, double* target, double* weight) {
    if (!schedule || !x0 || !x_t || !target)
        return bad_argument("null argument to pk_score_targets");
    return guarded([&] {
        auto result = posekit::score_targets(to_vec3(x0, atom_count), to_vec3(x_t, atom_count), t,
                                             schedule->schedule);
        from_vec3(result.target, target);
        if (weight) *weight = result.weight;
        return PK_OK;
    });
}

}  // extern "C"
