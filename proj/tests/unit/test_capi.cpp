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

/* Exercises the shared library strictly through its C surface: only
 * posekit/posekit.h is included here. */

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "posekit/posekit.h"

namespace {

std::string data_path(const std::string& name) {
    return std::string(POSEKIT_TEST_DATA) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open fixture " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

pk_pocket* must_parse_pocket(const std::string& file) {
    pk_pocket* pocket = nullptr;
    const pk_status s = pk_pocket_parse(read_file(data_path(file)).c_str(), &pocket);
    EXPECT_EQ(s, PK_OK) << pk_last_error();
    EXPECT_NE(pocket, nullptr);
    return pocket;
}

pk_ligand* must_parse_ligand(const std::string& file) {
    pk_ligand* ligand = nullptr;
    const pk_status s = pk_ligand_parse_sdf(read_file(data_path(file)).c_str(), &ligand);
    EXPECT_EQ(s, PK_OK) << pk_last_error();
    EXPECT_NE(ligand, nullptr);
    return ligand;
}

TEST(CApi, VersionString) {
    ASSERT_NE(pk_version(), nullptr);
    EXPECT_STREQ(pk_version(), "1.0.0");
}

TEST(CApi, PocketParseAndClip) {
    pk_pocket* pocket = must_parse_pocket("mini_receptor.pdb");
    EXPECT_EQ(pk_pocket_atom_count(pocket), 13u);
    EXPECT_EQ(pk_pocket_heavy_atom_count(pocket), 13u);
    EXPECT_EQ(pk_pocket_template_warnings(pocket), 1u);

    const std::string text = read_file(data_path("mini_receptor.pdb"));
    pk_pocket* everything = nullptr;
    ASSERT_EQ(pk_pocket_parse_clipped(text.c_str(), 0, 0, 0, 1e9, &everything), PK_OK);
    EXPECT_EQ(pk_pocket_atom_count(everything), 13u);

    pk_pocket* nothing = nullptr;
    ASSERT_EQ(pk_pocket_parse_clipped(text.c_str(), 1e6, 1e6, 1e6, 1.0, &nothing), PK_OK);
    EXPECT_EQ(pk_pocket_atom_count(nothing), 0u);

    pk_pocket* rejected = everything;
    EXPECT_EQ(pk_pocket_parse_clipped(text.c_str(), 0, 0, 0, 0.0, &rejected),
              PK_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(rejected, everything);  // failure leaves the output untouched

    pk_pocket_free(pocket);
    pk_pocket_free(everything);
    pk_pocket_free(nothing);
}

TEST(CApi, PocketParseErrorReportsLine) {
    const char* bad =
        "ATOM      1  CA  ALA A   1      xx.0000   0.000   0.000  1.00  0.00           C\n";
    pk_pocket* pocket = nullptr;
    EXPECT_EQ(pk_pocket_parse(bad, &pocket), PK_ERR_PARSE);
    EXPECT_EQ(pocket, nullptr);
    EXPECT_NE(std::strlen(pk_last_error()), 0u);
    EXPECT_NE(std::strstr(pk_last_error(), "line"), nullptr);

    EXPECT_EQ(pk_pocket_parse(nullptr, &pocket), PK_ERR_INVALID_ARGUMENT);
}

TEST(CApi, LigandParseCoordsAndWrite) {
    pk_ligand* lig = must_parse_ligand("aspirin.sdf");
    EXPECT_STREQ(pk_ligand_name(lig), "aspirin");
    ASSERT_EQ(pk_ligand_atom_count(lig), 13u);
    EXPECT_EQ(pk_ligand_heavy_atom_count(lig), 13u);

    std::vector<double> xyz(3 * 13);
    ASSERT_EQ(pk_ligand_coords(lig, xyz.data()), PK_OK);
    EXPECT_NEAR(xyz[0], 1.39, 1e-9);
    EXPECT_NEAR(xyz[1], 0.0, 1e-9);

    std::vector<double> shifted = xyz;
    for (size_t i = 0; i < shifted.size(); i += 3) shifted[i] += 1.0;
    ASSERT_EQ(pk_ligand_set_coords(lig, shifted.data(), 13), PK_OK);
    ASSERT_EQ(pk_ligand_coords(lig, xyz.data()), PK_OK);
    EXPECT_NEAR(xyz[0], 2.39, 1e-9);

    // A mismatched atom count is rejected without touching the pose.
    EXPECT_EQ(pk_ligand_set_coords(lig, shifted.data(), 12), PK_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(pk_ligand_coords(lig, xyz.data()), PK_OK);
    EXPECT_NEAR(xyz[0], 2.39, 1e-9);

    const char* names[] = {"stage"};
    const char* values[] = {"capi-roundtrip"};
    char* text = nullptr;
    ASSERT_EQ(pk_ligand_write_sdf(lig, names, values, 1, &text), PK_OK);
    ASSERT_NE(text, nullptr);
    EXPECT_NE(std::strstr(text, "aspirin"), nullptr);
    EXPECT_NE(std::strstr(text, "<stage>"), nullptr);
    EXPECT_NE(std::strstr(text, "capi-roundtrip"), nullptr);

    pk_ligand* reparsed = nullptr;
    ASSERT_EQ(pk_ligand_parse_sdf(text, &reparsed), PK_OK);
    EXPECT_EQ(pk_ligand_atom_count(reparsed), 13u);
    std::vector<double> back(3 * 13);
    ASSERT_EQ(pk_ligand_coords(reparsed, back.data()), PK_OK);
    for (size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back[i], xyz[i], 1e-4);

    pk_string_free(text);
    pk_ligand_free(reparsed);
    pk_ligand_free(lig);
}

TEST(CApi, LigandMultiRecord) {
    const std::string text = read_file(data_path("complexes/lig_multi.sdf"));
    pk_ligand** ligands = nullptr;
    size_t count = 0;
    ASSERT_EQ(pk_ligand_parse_sdf_multi(text.c_str(), &ligands, &count), PK_OK);
    ASSERT_EQ(count, 3u);
    EXPECT_STREQ(pk_ligand_name(ligands[0]), "multi_a_benzene");
    EXPECT_STREQ(pk_ligand_name(ligands[1]), "multi_b_aminopropane");
    EXPECT_STREQ(pk_ligand_name(ligands[2]), "multi_c_chlorobenzene");
    for (size_t i = 0; i < count; ++i) pk_ligand_free(ligands[i]);
    pk_buffer_free(ligands);
}

TEST(CApi, LigandParseErrors) {
    pk_ligand* lig = nullptr;
    EXPECT_EQ(pk_ligand_parse_sdf("not\nan\nsdf", &lig), PK_ERR_PARSE);
    EXPECT_EQ(lig, nullptr);
    EXPECT_NE(std::strlen(pk_last_error()), 0u);
}

TEST(CApi, SubgraphKeepsRing) {
    pk_ligand* lig = must_parse_ligand("aspirin.sdf");
    const size_t ring[] = {0, 1, 2, 3, 4, 5};
    pk_ligand* sub = nullptr;
    ASSERT_EQ(pk_ligand_subgraph(lig, ring, 6, &sub), PK_OK);
    EXPECT_EQ(pk_ligand_atom_count(sub), 6u);

    pk_decomp* decomp = nullptr;
    ASSERT_EQ(pk_decompose(sub, &decomp), PK_OK);
    EXPECT_EQ(pk_decomp_has_scaffold(decomp), 1);
    EXPECT_EQ(pk_decomp_ring_system_count(decomp), 1u);
    pk_decomp_free(decomp);

    const size_t bad[] = {99};
    pk_ligand* none = nullptr;
    EXPECT_EQ(pk_ligand_subgraph(lig, bad, 1, &none), PK_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(none, nullptr);

    pk_ligand_free(sub);
    pk_ligand_free(lig);
}

TEST(CApi, ScoreScalesWithWeights) {
    pk_pocket* pocket = must_parse_pocket("complexes/receptor_0.pdb");
    pk_ligand* lig = must_parse_ligand("complexes/lig_benzene.sdf");

    pk_energy base;
    ASSERT_EQ(pk_score(pocket, lig, nullptr, &base), PK_OK) << pk_last_error();
    EXPECT_GT(base.pair_count, 0u);
    EXPECT_TRUE(std::isfinite(base.total));

    double doubled[5];
    for (int i = 0; i < 5; ++i) doubled[i] = 2.0 * base.weights[i];
    pk_energy twice;
    ASSERT_EQ(pk_score(pocket, lig, doubled, &twice), PK_OK);
    EXPECT_EQ(twice.pair_count, base.pair_count);
    for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(twice.terms[i], base.terms[i]);
    EXPECT_NEAR(twice.total, 2.0 * base.total, 1e-12 * std::fabs(base.total) + 1e-15);

    // Failed calls leave the output untouched.
    pk_energy sentinel;
    sentinel.total = 123.25;
    EXPECT_EQ(pk_score(nullptr, lig, nullptr, &sentinel), PK_ERR_INVALID_ARGUMENT);
    EXPECT_DOUBLE_EQ(sentinel.total, 123.25);

    pk_ligand_free(lig);
    pk_pocket_free(pocket);
}

TEST(CApi, RefineImprovesAndApplies) {
    pk_pocket* pocket = must_parse_pocket("complexes/receptor_0.pdb");
    pk_ligand* lig = must_parse_ligand("complexes/lig_benzene.sdf");

    pk_refine_options options;
    pk_refine_options_init(&options);
    EXPECT_EQ(options.max_iterations, 100u);
    EXPECT_DOUBLE_EQ(options.step, 0.1);
    EXPECT_DOUBLE_EQ(options.epsilon, 1e-3);
    EXPECT_EQ(options.memory, 5u);
    EXPECT_DOUBLE_EQ(options.gradient_tolerance, 1e-6);
    EXPECT_EQ(options.central_differences, 0);

    options.max_iterations = 8;
    pk_refine_result* result = nullptr;
    ASSERT_EQ(pk_refine(pocket, lig, &options, &result), PK_OK) << pk_last_error();
    EXPECT_EQ(pk_refine_aborted(result), 0);
    EXPECT_EQ(pk_refine_accepted(result), 1);
    const double e_init = pk_refine_e_init(result);
    const double e_opt = pk_refine_e_opt(result);
    EXPECT_LE(e_opt, e_init);

    const size_t n = pk_refine_trace_size(result);
    EXPECT_EQ(n, pk_refine_iterations(result) + 1);
    std::vector<double> energies(n), best(n);
    ASSERT_EQ(pk_refine_trace(result, energies.data(), best.data()), PK_OK);
    EXPECT_DOUBLE_EQ(energies.front(), e_init);
    EXPECT_DOUBLE_EQ(best.back(), e_opt);
    for (size_t i = 1; i < n; ++i) EXPECT_LE(best[i], best[i - 1]);

    // Applying the result reproduces the reported optimum.
    pk_ligand* moved = must_parse_ligand("complexes/lig_benzene.sdf");
    ASSERT_EQ(pk_refine_apply(result, moved), PK_OK);
    pk_energy rescored;
    ASSERT_EQ(pk_score(pocket, moved, nullptr, &rescored), PK_OK);
    EXPECT_NEAR(rescored.total, e_opt, 1e-9);

    // Atom-count mismatch is rejected.
    const size_t ring[] = {0, 1, 2};
    pk_ligand* sub = nullptr;
    ASSERT_EQ(pk_ligand_subgraph(lig, ring, 3, &sub), PK_OK);
    EXPECT_EQ(pk_refine_apply(result, sub), PK_ERR_INVALID_ARGUMENT);

    pk_ligand_free(sub);
    pk_ligand_free(moved);
    pk_refine_result_free(result);
    pk_ligand_free(lig);
    pk_pocket_free(pocket);
}

TEST(CApi, DecomposeMasksAndTaskSampling) {
    pk_ligand* benzene = must_parse_ligand("complexes/lig_benzene.sdf");
    pk_decomp* ring = nullptr;
    ASSERT_EQ(pk_decompose(benzene, &ring), PK_OK);
    EXPECT_EQ(pk_decomp_has_scaffold(ring), 1);

    size_t* atoms = nullptr;
    size_t count = 0;
    ASSERT_EQ(pk_decomp_scaffold(ring, &atoms, &count), PK_OK);
    ASSERT_EQ(count, 6u);
    for (size_t i = 0; i < count; ++i) EXPECT_EQ(atoms[i], i);
    pk_buffer_free(atoms);

    ASSERT_EQ(pk_decomp_sidechains(ring, &atoms, &count), PK_OK);
    EXPECT_EQ(count, 0u);
    EXPECT_EQ(atoms, nullptr);

    ASSERT_EQ(pk_decomp_linkers(ring, &atoms, &count), PK_OK);
    EXPECT_EQ(count, 0u);

    ASSERT_EQ(pk_decomp_ring_system_count(ring), 1u);
    ASSERT_EQ(pk_decomp_ring_system(ring, 0, &atoms, &count), PK_OK);
    EXPECT_EQ(count, 6u);
    pk_buffer_free(atoms);
    EXPECT_EQ(pk_decomp_ring_system(ring, 1, &atoms, &count), PK_ERR_INVALID_ARGUMENT);

    size_t *target = nullptr, *context = nullptr;
    size_t target_count = 0, context_count = 0;
    ASSERT_EQ(pk_make_mask(ring, PK_TASK_SH, &target, &target_count, &context, &context_count),
              PK_OK);
    EXPECT_EQ(target_count, 6u);
    EXPECT_EQ(context_count, 0u);
    pk_buffer_free(target);
    pk_buffer_free(context);

    EXPECT_EQ(pk_make_mask(ring, static_cast<pk_task>(7), &target, &target_count, &context,
                           &context_count),
              PK_ERR_INVALID_ARGUMENT);

    // All three tasks are reachable for a cyclic molecule.
    bool seen[3] = {false, false, false};
    for (uint64_t seed = 0; seed < 64; ++seed) {
        pk_task task;
        ASSERT_EQ(pk_sample_task(ring, seed, &task), PK_OK);
        seen[static_cast<int>(task)] = true;
    }
    EXPECT_TRUE(seen[0]);
    EXPECT_TRUE(seen[1]);
    EXPECT_TRUE(seen[2]);
    pk_decomp_free(ring);

    // Acyclic: no scaffold, SH/SC are domain errors, DN always drawn.
    pk_ligand* butanol = must_parse_ligand("complexes/lig_butanol.sdf");
    pk_decomp* chain = nullptr;
    ASSERT_EQ(pk_decompose(butanol, &chain), PK_OK);
    EXPECT_EQ(pk_decomp_has_scaffold(chain), 0);
    EXPECT_EQ(pk_make_mask(chain, PK_TASK_SH, &target, &target_count, &context, &context_count),
              PK_ERR_DOMAIN);
    EXPECT_EQ(pk_make_mask(chain, PK_TASK_DN, &target, &target_count, &context, &context_count),
              PK_OK);
    EXPECT_EQ(target_count, pk_ligand_heavy_atom_count(butanol));
    EXPECT_EQ(context_count, 0u);
    pk_buffer_free(target);
    pk_buffer_free(context);
    for (uint64_t seed = 0; seed < 16; ++seed) {
        pk_task task;
        ASSERT_EQ(pk_sample_task(chain, seed, &task), PK_OK);
        EXPECT_EQ(task, PK_TASK_DN);
    }
    pk_decomp_free(chain);
    pk_ligand_free(butanol);
    pk_ligand_free(benzene);
}

TEST(CApi, InteractionsEdgesAndSummaries) {
    pk_interaction_thresholds gates;
    pk_interaction_thresholds_init(&gates);
    EXPECT_DOUBLE_EQ(gates.hydrophobic, 4.0);
    EXPECT_DOUBLE_EQ(gates.hydrogen_bond, 3.5);
    EXPECT_DOUBLE_EQ(gates.water_bridge, 3.5);
    EXPECT_DOUBLE_EQ(gates.pi_pi, 5.5);
    EXPECT_DOUBLE_EQ(gates.pi_cation, 6.0);
    EXPECT_DOUBLE_EQ(gates.halogen, 3.5);
    EXPECT_DOUBLE_EQ(gates.metal, 3.0);

    pk_pocket* pocket = must_parse_pocket("complexes/receptor_0.pdb");
    pk_ligand* lig = must_parse_ligand("complexes/lig_chlorophenol.sdf");

    size_t counts[PK_INTERACTION_CATEGORIES];
    ASSERT_EQ(pk_interaction_counts(pocket, lig, nullptr, counts), PK_OK);
    size_t again[PK_INTERACTION_CATEGORIES];
    ASSERT_EQ(pk_interaction_counts(pocket, lig, &gates, again), PK_OK);
    for (int i = 0; i < PK_INTERACTION_CATEGORIES; ++i) EXPECT_EQ(counts[i], again[i]);

    size_t e_default = 0, e_six = 0, e_two = 0, e_twelve = 0;
    ASSERT_EQ(pk_virtual_edge_count(pocket, lig, 0.0, &e_default), PK_OK);
    ASSERT_EQ(pk_virtual_edge_count(pocket, lig, 6.0, &e_six), PK_OK);
    ASSERT_EQ(pk_virtual_edge_count(pocket, lig, 2.0, &e_two), PK_OK);
    ASSERT_EQ(pk_virtual_edge_count(pocket, lig, 12.0, &e_twelve), PK_OK);
    EXPECT_EQ(e_default, e_six);
    EXPECT_LE(e_two, e_six);
    EXPECT_LE(e_six, e_twelve);
    EXPECT_GT(e_twelve, 0u);
    EXPECT_EQ(pk_virtual_edge_count(pocket, lig, -1.0, &e_six), PK_ERR_INVALID_ARGUMENT);

    pk_ligand* benzene = must_parse_ligand("complexes/lig_benzene.sdf");
    pk_context_summary summary;
    ASSERT_EQ(pk_summarize(pocket, benzene, PK_TASK_DN, &summary), PK_OK) << pk_last_error();
    EXPECT_EQ(summary.task, PK_TASK_DN);
    EXPECT_EQ(summary.context_size, 6u);
    EXPECT_GE(summary.n_bar, 0.0);

    // Benzene has no side chains: the SH tally set is empty.
    pk_context_summary untouched;
    untouched.context_size = 424242;
    EXPECT_EQ(pk_summarize(pocket, benzene, PK_TASK_SH, &untouched), PK_ERR_DOMAIN);
    EXPECT_EQ(untouched.context_size, 424242u);

    // SC flips the tally to the scaffold.
    ASSERT_EQ(pk_summarize(pocket, benzene, PK_TASK_SC, &summary), PK_OK);
    EXPECT_EQ(summary.context_size, 6u);

    pk_context_summary narrow;
    ASSERT_EQ(pk_summarize_opts(pocket, benzene, PK_TASK_DN, 2.0, &gates, &narrow), PK_OK);
    ASSERT_EQ(pk_summarize(pocket, benzene, PK_TASK_DN, &summary), PK_OK);
    EXPECT_LE(narrow.n_bar, summary.n_bar);

    EXPECT_EQ(pk_summarize(pocket, benzene, static_cast<pk_task>(9), &summary),
              PK_ERR_INVALID_ARGUMENT);

    pk_ligand_free(benzene);
    pk_ligand_free(lig);
    pk_pocket_free(pocket);
}

TEST(CApi, InformationDensityRoundTrip) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<pk_context_summary> summaries;
    for (int i = 0; i < 60; ++i) {
        pk_context_summary s{};
        s.task = PK_TASK_DN;
        s.n_bar = 2.0 + 10.0 * uni(rng);
        s.d_bar = 3.0 + 3.0 * uni(rng);
        s.has_d_bar = 1;
        s.t_bar = 3.0 * uni(rng);
        s.k_bar = 8.0 * uni(rng);
        s.context_size = 12;
        summaries.push_back(s);
    }
    for (int i = 0; i < 5; ++i) {
        pk_context_summary s{};
        s.task = PK_TASK_DN;
        s.has_d_bar = 0;
        summaries.push_back(s);
    }

    pk_density* density = nullptr;
    ASSERT_EQ(pk_information_density(summaries.data(), summaries.size(), &density), PK_OK)
        << pk_last_error();
    pk_density_stats stats;
    ASSERT_EQ(pk_density_stats_get(density, &stats), PK_OK);
    EXPECT_EQ(stats.n, 60u);
    EXPECT_EQ(stats.skipped_no_edges, 5u);
    EXPECT_EQ(stats.low_confidence, 0);
    EXPECT_EQ(stats.degenerate, 0);
    ASSERT_EQ(stats.has_rho, 1);
    EXPECT_DOUBLE_EQ(stats.rho, stats.entropy / 4.0);

    for (int plane = 0; plane < 2; ++plane) {
        const size_t cells = pk_density_hexbin_count(density, plane);
        ASSERT_GT(cells, 0u);
        size_t total = 0;
        double prev_cx = -1e300, prev_cy = -1e300;
        for (size_t i = 0; i < cells; ++i) {
            double cx = 0, cy = 0;
            size_t n = 0;
            ASSERT_EQ(pk_density_hexbin(density, plane, i, &cx, &cy, &n), PK_OK);
            EXPECT_TRUE(cx > prev_cx || (cx == prev_cx && cy > prev_cy));
            prev_cx = cx;
            prev_cy = cy;
            total += n;
        }
        EXPECT_EQ(total, 60u);
    }
    EXPECT_EQ(pk_density_hexbin_count(density, 2), 0u);
    double cx, cy;
    size_t n;
    EXPECT_EQ(pk_density_hexbin(density, 2, 0, &cx, &cy, &n), PK_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(pk_density_hexbin(density, 0, 1u << 20, &cx, &cy, &n), PK_ERR_INVALID_ARGUMENT);
    pk_density_free(density);

    // Nothing usable: domain error.
    pk_context_summary empty{};
    empty.task = PK_TASK_DN;
    empty.has_d_bar = 0;
    pk_density* none = nullptr;
    EXPECT_EQ(pk_information_density(&empty, 1, &none), PK_ERR_DOMAIN);
    EXPECT_EQ(none, nullptr);
}

TEST(CApi, GradientSnrRoundTrip) {
    const double gradients[] = {
        1.0, 0.0,  // window 0
        3.0, 0.0,
        0.0, 5.0,  // window 1: identical pair
        0.0, 5.0,
        1.0, 1.0,  // partial trailing window, dropped
    };
    double* snr = nullptr;
    int* degenerate = nullptr;
    double* variance = nullptr;
    size_t window_count = 0, variance_count = 0;
    ASSERT_EQ(pk_gradient_snr(gradients, 5, 2, 2, 2, &snr, &degenerate, &window_count, &variance,
                              &variance_count),
              PK_OK)
        << pk_last_error();
    ASSERT_EQ(window_count, 2u);
    EXPECT_NEAR(snr[0], 2.0, 1e-9);
    EXPECT_EQ(degenerate[0], 0);
    EXPECT_EQ(degenerate[1], 1);
    EXPECT_EQ(variance_count, 1u);
    pk_buffer_free(snr);
    pk_buffer_free(degenerate);
    pk_buffer_free(variance);

    // Defaults (window 32): five vectors yield no complete window.
    ASSERT_EQ(pk_gradient_snr(gradients, 5, 2, 0, 0, &snr, &degenerate, &window_count, &variance,
                              &variance_count),
              PK_OK);
    EXPECT_EQ(window_count, 0u);
    EXPECT_EQ(variance_count, 0u);
    EXPECT_EQ(snr, nullptr);
    EXPECT_EQ(variance, nullptr);

    EXPECT_EQ(pk_gradient_snr(gradients, 5, 2, 1, 2, &snr, &degenerate, &window_count, &variance,
                              &variance_count),
              PK_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(pk_gradient_snr(gradients, 5, 0, 2, 2, &snr, &degenerate, &window_count, &variance,
                              &variance_count),
              PK_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ScheduleRowsAndNoisingChannels) {
    pk_schedule* schedule = nullptr;
    ASSERT_EQ(pk_schedule_create(16, PK_SCHEDULE_LINEAR_BETA, &schedule), PK_OK);
    EXPECT_EQ(pk_schedule_steps(schedule), 16u);

    double alpha, alpha_bar, sigma_sq, lambda, gamma;
    ASSERT_EQ(pk_schedule_row(schedule, 0, &alpha, &alpha_bar, &sigma_sq, &lambda, &gamma), PK_OK);
    EXPECT_DOUBLE_EQ(alpha, 1.0);
    EXPECT_DOUBLE_EQ(alpha_bar, 1.0);
    EXPECT_DOUBLE_EQ(sigma_sq, 0.0);
    EXPECT_DOUBLE_EQ(lambda, 0.0);
    EXPECT_DOUBLE_EQ(gamma, 0.0);

    double prev_bar = 1.0;
    for (size_t t = 1; t <= 16; ++t) {
        ASSERT_EQ(pk_schedule_row(schedule, t, &alpha, &alpha_bar, &sigma_sq, &lambda, &gamma),
                  PK_OK);
        EXPECT_GT(alpha, 0.0);
        EXPECT_LT(alpha, 1.0);
        EXPECT_DOUBLE_EQ(alpha_bar, prev_bar * alpha);
        EXPECT_DOUBLE_EQ(sigma_sq, 1.0 - alpha);
        EXPECT_DOUBLE_EQ(lambda, sigma_sq / (alpha * alpha));
        EXPECT_DOUBLE_EQ(gamma, 1.0 - alpha_bar);
        prev_bar = alpha_bar;
    }
    EXPECT_EQ(pk_schedule_row(schedule, 17, &alpha, nullptr, nullptr, nullptr, nullptr),
              PK_ERR_INVALID_ARGUMENT);

    pk_schedule* rejected = nullptr;
    EXPECT_EQ(pk_schedule_create(0, PK_SCHEDULE_LINEAR_BETA, &rejected), PK_ERR_DOMAIN);
    EXPECT_EQ(pk_schedule_create(8, static_cast<pk_schedule_kind>(9), &rejected),
              PK_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(rejected, nullptr);

    // Coordinate channel.
    const double x0[] = {1.0, 2.0, 3.0, -1.0, 0.5, 0.0};
    double x_t[6], noise[6], x_t2[6];
    ASSERT_EQ(pk_noise_coordinates(schedule, x0, 2, 0, 7, x_t, nullptr), PK_OK);
    for (int i = 0; i < 6; ++i) EXPECT_EQ(x_t[i], x0[i]);

    ASSERT_EQ(pk_noise_coordinates(schedule, x0, 2, 9, 7, x_t, noise), PK_OK);
    ASSERT_EQ(pk_noise_coordinates(schedule, x0, 2, 9, 7, x_t2, nullptr), PK_OK);
    ASSERT_EQ(pk_schedule_row(schedule, 9, nullptr, &alpha_bar, nullptr, &lambda, nullptr), PK_OK);
    for (int i = 0; i < 6; ++i) {
        EXPECT_EQ(x_t[i], x_t2[i]);
        EXPECT_NEAR(x_t[i], std::sqrt(alpha_bar) * x0[i] + std::sqrt(1.0 - alpha_bar) * noise[i],
                    1e-12);
    }
    EXPECT_EQ(pk_noise_coordinates(schedule, x0, 2, 17, 7, x_t, noise), PK_ERR_DOMAIN);

    // Score targets recover the negated scaled noise.
    double target[6], weight = 0.0;
    ASSERT_EQ(pk_score_targets(schedule, x0, x_t, 2, 9, target, &weight), PK_OK);
    EXPECT_DOUBLE_EQ(weight, lambda);
    const double inv_sd = 1.0 / std::sqrt(1.0 - alpha_bar);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(target[i], -noise[i] * inv_sd, 1e-9);
    EXPECT_EQ(pk_score_targets(schedule, x0, x_t, 2, 0, target, &weight), PK_ERR_DOMAIN);

    // Type channel.
    const double one_hot[] = {0.0, 0.0, 1.0, 0.0};
    double probs[4];
    ASSERT_EQ(pk_type_noise_probs(one_hot, 4, 0.0, probs), PK_OK);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(probs[i], 0.25, 1e-12);
    const double not_hot[] = {0.5, 0.5, 0.0, 0.0};
    EXPECT_EQ(pk_type_noise_probs(not_hot, 4, 0.5, probs), PK_ERR_DOMAIN);

    size_t sample = 999;
    ASSERT_EQ(pk_noise_types(schedule, one_hot, 4, 0, 3, &sample, probs), PK_OK);
    EXPECT_EQ(sample, 2u);
    double prob_sum = 0.0;
    for (int i = 0; i < 4; ++i) prob_sum += probs[i];
    EXPECT_NEAR(prob_sum, 1.0, 1e-12);
    EXPECT_EQ(pk_noise_types(schedule, one_hot, 4, 17, 3, &sample, nullptr), PK_ERR_DOMAIN);

    // Backbone jitter.
    double moved[6];
    ASSERT_EQ(pk_perturb_protein(x0, 2, 5, 0.0, moved), PK_OK);
    for (int i = 0; i < 6; ++i) EXPECT_EQ(moved[i], x0[i]);
    ASSERT_EQ(pk_perturb_protein(x0, 2, 5, 0.2, moved), PK_OK);
    EXPECT_NE(moved[0], x0[0]);
    EXPECT_EQ(pk_perturb_protein(x0, 2, 5, -0.1, moved), PK_ERR_INVALID_ARGUMENT);

    pk_schedule_free(schedule);
}

}  // namespace
