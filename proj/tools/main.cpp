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

#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "posekit/posekit.h"

namespace {

void add_input_options(CLI::App* cmd, pkcli::InputArgs& in, bool need_receptor) {
    if (need_receptor) cmd->add_option("--receptor,-r", in.receptor, "Receptor PDB file");
    cmd->add_option("--ligand,-l", in.ligand, "Ligand SDF file (may hold several records)");
    cmd->add_option("--manifest,-m", in.manifest,
                    "Batch manifest: one 'receptor<TAB>ligand' line per complex, paths "
                    "relative to the manifest");
    if (need_receptor) {
        cmd->add_option("--center", in.clip_center, "Pocket clip sphere center (x y z)")
            ->expected(3);
        cmd->add_option("--radius", in.clip_radius, "Pocket clip sphere radius in Angstrom");
    }
    cmd->add_option("--jobs,-j", in.jobs, "Worker threads for batch runs (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("posekit ") + pk_version() +
                 " - pocket-aware ligand structure toolkit"};
    app.set_config("--config", "", "Key-value config file merged under command-line flags");
    app.require_subcommand(1);

    pkcli::RefineArgs refine;
    CLI::App* cmd_refine =
        app.add_subcommand("refine", "Rigid-pose refinement against the pocket contact energy");
    add_input_options(cmd_refine, refine.in, true);
    cmd_refine->add_option("--epochs", refine.epochs,
                           "Optimizer update steps (0 evaluates the input pose only)");
    cmd_refine->add_option("--step", refine.step, "Fixed step length");
    cmd_refine->add_option("--eps", refine.eps, "Finite-difference probe length");
    cmd_refine->add_option("--memory", refine.memory, "Curvature pairs kept by the optimizer");
    cmd_refine->add_option("--gtol", refine.gtol, "Gradient infinity-norm stopping tolerance");
    cmd_refine->add_flag("--central", refine.central,
                         "Use central instead of forward differences");
    cmd_refine->add_option("--weights", refine.weights, "Five energy term weights")->expected(5);
    cmd_refine->add_option("--out,-o", refine.out, "Refined SDF path (single-pair mode)");
    cmd_refine->add_option("--out-dir", refine.out_dir, "Output directory (batch mode)");
    cmd_refine->add_option("--trace", refine.trace, "Energy trace CSV path (single-pair mode)");
    cmd_refine->add_flag("--traces", refine.traces, "Write per-ligand trace CSVs (batch mode)");
    cmd_refine->add_option("--summary", refine.summary,
                           "Summary JSON path (default: stdout, or summary.json in the "
                           "output directory for batch runs)");

    pkcli::ScoreArgs score;
    CLI::App* cmd_score = app.add_subcommand("score", "Contact-energy scoring of ligand poses");
    add_input_options(cmd_score, score.in, true);
    cmd_score->add_option("--weights", score.weights, "Five energy term weights")->expected(5);
    cmd_score->add_option("--out,-o", score.out, "JSON output path (default: stdout)");

    pkcli::DecomposeArgs decompose;
    CLI::App* cmd_decompose =
        app.add_subcommand("decompose", "Scaffold/side-chain decomposition of a ligand");
    cmd_decompose->add_option("--ligand,-l", decompose.ligand, "Ligand SDF file")->required();
    cmd_decompose->add_option("--out,-o", decompose.out, "JSON output path (default: stdout)");

    pkcli::MaskArgs mask;
    CLI::App* cmd_mask =
        app.add_subcommand("mask", "Target/context masks for the generation tasks");
    cmd_mask->add_option("--ligand,-l", mask.ligand, "Ligand SDF file")->required();
    cmd_mask->add_option("--task", mask.task, "Task: SH, SC, or DN");
    cmd_mask->add_flag("--sample", mask.sample, "Draw the task uniformly among valid ones");
    cmd_mask->add_option("--seed", mask.seed, "Seed for --sample (per record: seed + index)");
    cmd_mask->add_option("--out,-o", mask.out, "JSON output path (default: stdout)");

    pkcli::AnalyzeArgs analyze;
    CLI::App* cmd_analyze = app.add_subcommand(
        "analyze", "Context summaries and information density over a complex corpus");
    add_input_options(cmd_analyze, analyze.in, true);
    cmd_analyze->add_option("--tasks", analyze.tasks,
                            "Tasks to summarize (subset of SH SC DN)");
    cmd_analyze->add_option("--edge-threshold", analyze.edge_threshold,
                            "Virtual-edge distance threshold (0 = default 6)");
    cmd_analyze
        ->add_option("--gates", analyze.gates,
                     "Seven interaction gates: hydrophobic hbond water-bridge pi-pi "
                     "pi-cation halogen metal")
        ->expected(7);
    cmd_analyze->add_option("--csv", analyze.csv, "Per-complex summary CSV path");
    cmd_analyze->add_option("--json", analyze.json, "Corpus density JSON path");

    pkcli::GsnrArgs gsnr;
    CLI::App* cmd_gsnr = app.add_subcommand(
        "gsnr", "Gradient signal-to-noise over windows of recorded gradient vectors");
    cmd_gsnr->add_option("--input,-i", gsnr.input, "CSV of flattened gradient vectors")
        ->required();
    cmd_gsnr->add_option("--window", gsnr.window, "Vectors per non-overlapping window");
    cmd_gsnr->add_option("--variance-window", gsnr.variance_window,
                         "Rolling-variance length over the SNR series");
    cmd_gsnr->add_option("--out,-o", gsnr.out, "CSV output path (default: stdout)");

    pkcli::ScheduleArgs schedule;
    CLI::App* cmd_schedule =
        app.add_subcommand("schedule", "Print a diffusion variance schedule table");
    cmd_schedule->add_option("--steps", schedule.steps, "Schedule length T");
    cmd_schedule
        ->add_option("--kind", schedule.kind, "Schedule family")
        ->check(CLI::IsMember({"linear-beta", "cosine", "sigmoid"}));
    cmd_schedule->add_option("--out,-o", schedule.out, "CSV output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (cmd_refine->parsed()) return pkcli::run_refine(refine);
    if (cmd_score->parsed()) return pkcli::run_score(score);
    if (cmd_decompose->parsed()) return pkcli::run_decompose(decompose);
    if (cmd_mask->parsed()) return pkcli::run_mask(mask);
    if (cmd_analyze->parsed()) return pkcli::run_analyze(analyze);
    if (cmd_gsnr->parsed()) return pkcli::run_gsnr(gsnr);
    if (cmd_schedule->parsed()) return pkcli::run_schedule(schedule);
    return 2;
}
