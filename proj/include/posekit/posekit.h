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

/* Public C interface of the posekit shared library.
 *
 * Conventions:
 *   - Every fallible call returns a pk_status; PK_OK means success and
 *     any other value leaves the outputs untouched.
 *   - pk_last_error() describes the most recent failure on the calling
 *     thread.
 *   - Objects created by pk_*_parse / pk_*_create are released with the
 *     matching pk_*_free. Arrays and strings returned through output
 *     parameters are released with pk_buffer_free / pk_string_free.
 *   - Coordinate buffers are flat row-major [x0 y0 z0 x1 y1 z1 ...] in
 *     Angstrom.
 */

#ifndef POSEKIT_H
#define POSEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PK_API __declspec(dllexport)
#else
#define PK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pk_status {
    PK_OK = 0,
    PK_ERR_INVALID_ARGUMENT = 1, /* null handle, bad size, bad enum value */
    PK_ERR_PARSE = 2,            /* malformed PDB/SDF input */
    PK_ERR_DOMAIN = 3,           /* valid input outside an operation's domain */
    PK_ERR_EVAL = 4,             /* non-finite energy during refinement probes */
    PK_ERR_INTERNAL = 5,
} pk_status;

/* Library version as "major.minor.patch"; static storage, do not free. */
PK_API const char* pk_version(void);

/* Thread-local message for the last failed call; static storage. */
PK_API const char* pk_last_error(void);

PK_API void pk_string_free(char* s);
PK_API void pk_buffer_free(void* p);

/* ---------------------------------------------------------------- */
/* Structures                                                       */
/* ---------------------------------------------------------------- */

typedef struct pk_pocket pk_pocket;
typedef struct pk_ligand pk_ligand;
typedef struct pk_decomp pk_decomp;
typedef struct pk_refine_result pk_refine_result;
typedef struct pk_density pk_density;
typedef struct pk_schedule pk_schedule;

/* Parses ATOM/HETATM records of PDB text (first model, altLoc ' '/'A'). */
PK_API pk_status pk_pocket_parse(const char* pdb_text, pk_pocket** out);

/* Same, keeping only atoms within `radius` of (cx, cy, cz). */
PK_API pk_status pk_pocket_parse_clipped(const char* pdb_text, double cx, double cy, double cz,
                                         double radius, pk_pocket** out);

PK_API void pk_pocket_free(pk_pocket* pocket);

PK_API size_t pk_pocket_atom_count(const pk_pocket* pocket);
PK_API size_t pk_pocket_heavy_atom_count(const pk_pocket* pocket);

/* Atoms whose residue/name pair had no typing template (element
 * defaults were used). */
PK_API size_t pk_pocket_template_warnings(const pk_pocket* pocket);

/* Parses the first record of a V2000 SDF/MOL block. */
PK_API pk_status pk_ligand_parse_sdf(const char* sdf_text, pk_ligand** out);

/* Parses every "$$$$"-separated record. On success *out is a malloc'd
 * array of *count handles; free each handle, then the array. */
PK_API pk_status pk_ligand_parse_sdf_multi(const char* sdf_text, pk_ligand*** out, size_t* count);

PK_API void pk_ligand_free(pk_ligand* ligand);

/* Borrowed pointer, valid while the handle lives. */
PK_API const char* pk_ligand_name(const pk_ligand* ligand);

PK_API size_t pk_ligand_atom_count(const pk_ligand* ligand);
PK_API size_t pk_ligand_heavy_atom_count(const pk_ligand* ligand);

/* Copies all atom positions into xyz (3 * atom_count doubles). */
PK_API pk_status pk_ligand_coords(const pk_ligand* ligand, double* xyz);

/* Replaces all atom positions; atom_count must match exactly. */
PK_API pk_status pk_ligand_set_coords(pk_ligand* ligand, const double* xyz, size_t atom_count);

/* Serializes one SDF record. `field_names`/`field_values` append
 * `field_count` extra data fields (both NULL when field_count is 0). */
PK_API pk_status pk_ligand_write_sdf(const pk_ligand* ligand, const char* const* field_names,
                                     const char* const* field_values, size_t field_count,
                                     char** out_text);

/* New ligand restricted to the given atom indices (bonds reindexed). */
PK_API pk_status pk_ligand_subgraph(const pk_ligand* ligand, const size_t* atoms, size_t count,
                                    pk_ligand** out);

/* ---------------------------------------------------------------- */
/* Contact energy                                                   */
/* ---------------------------------------------------------------- */

typedef struct pk_energy {
    double terms[5]; /* unweighted sums: g1, g2, rep, hyd, hd */
    double weights[5];
    double total; /* kcal/mol-scale score, lower is better */
    size_t pair_count;
} pk_energy;

/* Scores the ligand pose against the pocket; `weights` overrides the
 * five term weights when non-NULL. */
PK_API pk_status pk_score(const pk_pocket* pocket, const pk_ligand* ligand, const double* weights,
                          pk_energy* out);

/* ---------------------------------------------------------------- */
/* Rigid refinement                                                 */
/* ---------------------------------------------------------------- */

typedef struct pk_refine_options {
    size_t max_iterations;     /* L-BFGS update steps (0 = evaluate only) */
    double step;               /* fixed step length along the direction */
    double epsilon;            /* finite-difference probe length */
    size_t memory;             /* stored curvature pairs */
    double gradient_tolerance; /* stop below this gradient inf-norm */
    int central_differences;   /* nonzero: central instead of forward */
    double weights[5];         /* energy term weights */
} pk_refine_options;

/* Fills the documented defaults (100 iterations, step 0.1, eps 1e-3,
 * memory 5, tolerance 1e-6, forward differences, standard weights). */
PK_API void pk_refine_options_init(pk_refine_options* options);

/* Runs rigid-pose refinement; `options` NULL means defaults. */
PK_API pk_status pk_refine(const pk_pocket* pocket, const pk_ligand* ligand,
                           const pk_refine_options* options, pk_refine_result** out);

PK_API void pk_refine_result_free(pk_refine_result* result);

PK_API double pk_refine_e_init(const pk_refine_result* result);
PK_API double pk_refine_e_opt(const pk_refine_result* result);
PK_API int pk_refine_accepted(const pk_refine_result* result);
PK_API int pk_refine_aborted(const pk_refine_result* result);
PK_API size_t pk_refine_iterations(const pk_refine_result* result);

/* Number of evaluated iterates (max_iterations + 1 on a clean run). */
PK_API size_t pk_refine_trace_size(const pk_refine_result* result);

/* Copies the per-iterate energies and/or the running best; either
 * output may be NULL, the other must hold trace_size doubles. */
PK_API pk_status pk_refine_trace(const pk_refine_result* result, double* energies, double* best);

/* Writes the best pose's coordinates into the ligand (all atoms move
 * rigidly, hydrogens included). */
PK_API pk_status pk_refine_apply(const pk_refine_result* result, pk_ligand* ligand);

/* ---------------------------------------------------------------- */
/* Scaffold decomposition and masks                                 */
/* ---------------------------------------------------------------- */

typedef enum pk_task {
    PK_TASK_SH = 0, /* regenerate scaffold, side chains fixed */
    PK_TASK_SC = 1, /* regenerate side chains, scaffold fixed */
    PK_TASK_DN = 2, /* regenerate everything */
} pk_task;

PK_API pk_status pk_decompose(const pk_ligand* ligand, pk_decomp** out);
PK_API void pk_decomp_free(pk_decomp* decomp);

PK_API int pk_decomp_has_scaffold(const pk_decomp* decomp);

/* Each returns a malloc'd ascending index array (may be empty). */
PK_API pk_status pk_decomp_scaffold(const pk_decomp* decomp, size_t** atoms, size_t* count);
PK_API pk_status pk_decomp_sidechains(const pk_decomp* decomp, size_t** atoms, size_t* count);
PK_API pk_status pk_decomp_linkers(const pk_decomp* decomp, size_t** atoms, size_t* count);

PK_API size_t pk_decomp_ring_system_count(const pk_decomp* decomp);
PK_API pk_status pk_decomp_ring_system(const pk_decomp* decomp, size_t index, size_t** atoms,
                                       size_t* count);

/* Target/context split for a task. SH/SC on an acyclic molecule fail
 * with PK_ERR_DOMAIN. */
PK_API pk_status pk_make_mask(const pk_decomp* decomp, pk_task task, size_t** target,
                              size_t* target_count, size_t** context, size_t* context_count);

/* Seeded uniform draw over the tasks valid for this decomposition. */
PK_API pk_status pk_sample_task(const pk_decomp* decomp, uint64_t seed, pk_task* out);

/* ---------------------------------------------------------------- */
/* Interaction profiling and context summaries                      */
/* ---------------------------------------------------------------- */

/* Category order used by pk_interaction_counts:
 * hydrophobic, hydrogen-bond, water-bridge, pi-pi, pi-cation, halogen,
 * metal. */
#define PK_INTERACTION_CATEGORIES 7

typedef struct pk_interaction_thresholds {
    double hydrophobic;
    double hydrogen_bond;
    double water_bridge;
    double pi_pi;
    double pi_cation;
    double halogen;
    double metal;
} pk_interaction_thresholds;

/* Fills the documented defaults (4.0, 3.5, 3.5, 5.5, 6.0, 3.5, 3.0). */
PK_API void pk_interaction_thresholds_init(pk_interaction_thresholds* thresholds);

/* Records per category satisfied by the complex; `thresholds` NULL
 * means defaults. */
PK_API pk_status pk_interaction_counts(const pk_pocket* pocket, const pk_ligand* ligand,
                                       const pk_interaction_thresholds* thresholds,
                                       size_t counts[PK_INTERACTION_CATEGORIES]);

/* Pocket/ligand heavy-atom pairs strictly closer than `threshold`
 * (pass 0 for the 6 A default). */
PK_API pk_status pk_virtual_edge_count(const pk_pocket* pocket, const pk_ligand* ligand,
                                       double threshold, size_t* out);

typedef struct pk_context_summary {
    int task;      /* pk_task value */
    double n_bar;  /* mean virtual-edge degree over the tally atoms */
    double d_bar;  /* mean incident edge length; valid iff has_d_bar */
    int has_d_bar;
    double t_bar;  /* mean distinct interaction categories */
    double k_bar;  /* mean distinct pocket partners */
    size_t context_size;
} pk_context_summary;

/* Context summary for a task with default thresholds. */
PK_API pk_status pk_summarize(const pk_pocket* pocket, const pk_ligand* ligand, pk_task task,
                              pk_context_summary* out);

/* Same with an explicit virtual-edge threshold (0 = default) and
 * interaction thresholds (NULL = defaults). */
PK_API pk_status pk_summarize_opts(const pk_pocket* pocket, const pk_ligand* ligand, pk_task task,
                                   double edge_threshold,
                                   const pk_interaction_thresholds* thresholds,
                                   pk_context_summary* out);

/* ---------------------------------------------------------------- */
/* Information density                                              */
/* ---------------------------------------------------------------- */

typedef struct pk_density_stats {
    double rho;     /* entropy / 4; valid iff has_rho */
    int has_rho;
    double entropy; /* nats; valid iff has_rho */
    size_t n;                /* summaries embedded */
    size_t skipped_no_edges; /* summaries without a mean edge length */
    int low_confidence;      /* fewer than 50 usable summaries */
    int degenerate;          /* all points identical */
    int jittered;            /* duplicate ties broken by jitter */
    double zero_knn_fraction;
    double axis_means[4]; /* mean n_bar, d_bar, t_bar, k_bar */
} pk_density_stats;

/* Estimates the information density of a batch of context summaries.
 * Fails with PK_ERR_DOMAIN when no summary carries a mean edge
 * length. */
PK_API pk_status pk_information_density(const pk_context_summary* summaries, size_t count,
                                        pk_density** out);

PK_API void pk_density_free(pk_density* density);

PK_API pk_status pk_density_stats_get(const pk_density* density, pk_density_stats* out);

/* Hexbin cells of a projection plane: 0 = (n_bar, d_bar), 1 = (t_bar,
 * k_bar). */
PK_API size_t pk_density_hexbin_count(const pk_density* density, int plane);
PK_API pk_status pk_density_hexbin(const pk_density* density, int plane, size_t index, double* cx,
                                   double* cy, size_t* bin_count);

/* ---------------------------------------------------------------- */
/* Gradient signal-to-noise                                         */
/* ---------------------------------------------------------------- */

/* Splits `count` gradient vectors of dimension `dim` (flat row-major in
 * `gradients`) into non-overlapping windows of `window` vectors and
 * reports per-window SNR = |mean|^2 / (trace cov + 1e-12), a degenerate
 * flag (zero trace), and the rolling sample variance of the SNR series
 * over `variance_window` entries. Passing 0 for `window` or
 * `variance_window` selects the defaults (32 and 10). Output arrays are
 * malloc'd; a trailing partial window is dropped. */
PK_API pk_status pk_gradient_snr(const double* gradients, size_t count, size_t dim, size_t window,
                                 size_t variance_window, double** snr, int** degenerate,
                                 size_t* window_count, double** variance, size_t* variance_count);

/* ---------------------------------------------------------------- */
/* Diffusion schedules and noising channels                         */
/* ---------------------------------------------------------------- */

typedef enum pk_schedule_kind {
    PK_SCHEDULE_LINEAR_BETA = 0,
    PK_SCHEDULE_COSINE = 1,
    PK_SCHEDULE_SIGMOID = 2,
} pk_schedule_kind;

/* Builds a T-step schedule (rows 0..T, row 0 the identity). */
PK_API pk_status pk_schedule_create(size_t steps, pk_schedule_kind kind, pk_schedule** out);

PK_API void pk_schedule_free(pk_schedule* schedule);

PK_API size_t pk_schedule_steps(const pk_schedule* schedule);

/* Copies row t; any output pointer may be NULL. */
PK_API pk_status pk_schedule_row(const pk_schedule* schedule, size_t t, double* alpha,
                                 double* alpha_bar, double* sigma_sq, double* lambda,
                                 double* gamma);

/* x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps with seeded standard
 * normals; x_t and noise each take 3 * atom_count doubles (noise may be
 * NULL). */
PK_API pk_status pk_noise_coordinates(const pk_schedule* schedule, const double* x0,
                                      size_t atom_count, size_t t, uint64_t seed, double* x_t,
                                      double* noise);

/* p = abar v0 + (1 - abar) / k for a strict one-hot v0 of length k. */
PK_API pk_status pk_type_noise_probs(const double* one_hot, size_t k, double alpha_bar,
                                     double* probs);

/* Noises a one-hot type at step t and draws one categorical sample;
 * probs may be NULL. */
PK_API pk_status pk_noise_types(const pk_schedule* schedule, const double* one_hot, size_t k,
                                size_t t, uint64_t seed, size_t* sample, double* probs);

/* Adds isotropic N(0, sigma^2) noise to each coordinate. */
PK_API pk_status pk_perturb_protein(const double* x, size_t atom_count, uint64_t seed,
                                    double sigma, double* out);

/* Closed-form score target -(x_t - sqrt(abar_t) x0) / (1 - abar_t) and
 * its loss weight lambda_t; requires 1 <= t <= T. */
PK_API pk_status pk_score_targets(const pk_schedule* schedule, const double* x0, const double* x_t,
                                  size_t atom_count, size_t t, double* target, double* weight);

#ifdef __cplusplus
}
#endif

#endif /* POSEKIT_H */
