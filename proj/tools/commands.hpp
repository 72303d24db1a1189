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

#ifndef POSEKIT_TOOLS_COMMANDS_HPP
#define POSEKIT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pkcli {

// Input selection shared by the complex-processing commands: either an
// explicit receptor/ligand pair or a manifest of tab-separated pairs
// (paths resolved relative to the manifest's directory).
struct InputArgs {
    std::string receptor;
    std::string ligand;
    std::string manifest;
    std::vector<double> clip_center;  // empty, or x y z
    double clip_radius = 0.0;
    unsigned jobs = 0;  // 0 = hardware concurrency
};

struct RefineArgs {
    InputArgs in;
    std::size_t epochs = 100;
    double step = 0.1;
    double eps = 1e-3;
    std::size_t memory = 5;
    double gtol = 1e-6;
    bool central = false;
    std::vector<double> weights;  // empty, or the five term weights
    std::string out = "refined.sdf";
    std::string out_dir = "refine_out";
    bool traces = false;      // batch mode: write per-ligand trace CSVs
    std::string trace;        // single mode: trace CSV path
    std::string summary;      // summary JSON path (single mode default: stdout)
};

struct ScoreArgs {
    InputArgs in;
    std::vector<double> weights;
    std::string out;  // JSON path; empty = stdout
};

struct DecomposeArgs {
    std::string ligand;
    std::string out;  // JSON path; empty = stdout
};

struct MaskArgs {
    std::string ligand;
    std::string task;  // SH | SC | DN; empty with sample = draw one
    bool sample = false;
    std::uint64_t seed = 0;
    std::string out;  // JSON path; empty = stdout
};

struct AnalyzeArgs {
    InputArgs in;
    std::vector<std::string> tasks = {"SH", "SC", "DN"};
    double edge_threshold = 0.0;  // 0 = library default
    std::vector<double> gates;    // empty, or the seven category gates
    std::string csv = "analyze_summaries.csv";
    std::string json = "analyze_density.json";
};

struct GsnrArgs {
    std::string input;
    std::size_t window = 32;
    std::size_t variance_window = 10;
    std::string out;  // CSV path; empty = stdout
};

struct ScheduleArgs {
    std::size_t steps = 1000;
    std::string kind = "sigmoid";
    std::string out;  // CSV path; empty = stdout
};

int run_refine(const RefineArgs& args);
int run_score(const ScoreArgs& args);
int run_decompose(const DecomposeArgs& args);
int run_mask(const MaskArgs& args);
int run_analyze(const AnalyzeArgs& args);
int run_gsnr(const GsnrArgs& args);
int run_schedule(const ScheduleArgs& args);

}  // namespace pkcli

#endif
