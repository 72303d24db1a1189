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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "posekit/posekit.h"

namespace pkcli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct PocketDeleter {
    void operator()(pk_pocket* p) const { pk_pocket_free(p); }
};
struct LigandDeleter {
    void operator()(pk_ligand* p) const { pk_ligand_free(p); }
};
struct DecompDeleter {
    void operator()(pk_decomp* p) const { pk_decomp_free(p); }
};
struct RefineDeleter {
    void operator()(pk_refine_result* p) const { pk_refine_result_free(p); }
};
struct ScheduleDeleter {
    void operator()(pk_schedule* p) const { pk_schedule_free(p); }
};
struct BufferDeleter {
    void operator()(void* p) const { pk_buffer_free(p); }
};

using PocketPtr = std::unique_ptr<pk_pocket, PocketDeleter>;
using LigandPtr = std::unique_ptr<pk_ligand, LigandDeleter>;
using DecompPtr = std::unique_ptr<pk_decomp, DecompDeleter>;
using RefinePtr = std::unique_ptr<pk_refine_result, RefineDeleter>;
using SchedulePtr = std::unique_ptr<pk_schedule, ScheduleDeleter>;

std::string last_error() { return pk_last_error(); }

json tool_block() { return json{{"name", "posekit"}, {"version", pk_version()}}; }

std::string fmt(double v, const char* spec = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string zero_pad(size_t v, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
            out += c;
        else
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? "ligand" : out;
}

bool read_file(const std::string& path, std::string& out, std::string& error) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        error = "cannot read " + path;
        return false;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    out = ss.str();
    return true;
}

bool write_text(const std::string& path, const std::string& text, std::string& error) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return true;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        error = "cannot write " + path;
        return false;
    }
    f << text;
    if (!f.good()) {
        error = "cannot write " + path;
        return false;
    }
    return true;
}

int exit_for(size_t failures) {
    if (failures == 0) return 0;
    return static_cast<int>(std::min<size_t>(failures, 125));
}

int usage_error(const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    return 2;
}

bool check_weights(const std::vector<double>& w, std::string& error) {
    if (!w.empty() && w.size() != 5) {
        error = "--weights takes exactly 5 values";
        return false;
    }
    return true;
}

bool check_clip(const InputArgs& in, std::string& error) {
    if (in.clip_center.empty() && in.clip_radius == 0.0) return true;
    if (in.clip_center.size() != 3) {
        error = "--center takes exactly 3 values";
        return false;
    }
    if (!(in.clip_radius > 0.0)) {
        error = "--radius must be positive when clipping";
        return false;
    }
    return true;
}

const double* weights_ptr(const std::vector<double>& w) { return w.empty() ? nullptr : w.data(); }

bool task_from_string(const std::string& name, pk_task& out) {
    if (name == "SH" || name == "sh") {
        out = PK_TASK_SH;
        return true;
    }
    if (name == "SC" || name == "sc") {
        out = PK_TASK_SC;
        return true;
    }
    if (name == "DN" || name == "dn") {
        out = PK_TASK_DN;
        return true;
    }
    return false;
}

const char* task_label(pk_task task) {
    switch (task) {
        case PK_TASK_SH: return "SH";
        case PK_TASK_SC: return "SC";
        default: return "DN";
    }
}

/* ------------------------------------------------------------------ */
/* Input pipeline                                                     */
/* ------------------------------------------------------------------ */

struct PairEntry {
    std::string receptor;
    std::string ligand;
};

bool collect_pairs(const InputArgs& in, bool need_receptor, std::vector<PairEntry>& pairs,
                   std::string& error) {
    const bool pair_mode = !in.ligand.empty() || !in.receptor.empty();
    const bool manifest_mode = !in.manifest.empty();
    if (pair_mode == manifest_mode) {
        error = need_receptor ? "give either --receptor and --ligand, or --manifest"
                              : "give either --ligand or --manifest";
        return false;
    }
    if (pair_mode) {
        if (need_receptor && in.receptor.empty()) {
            error = "--receptor is required";
            return false;
        }
        if (in.ligand.empty()) {
            error = "--ligand is required";
            return false;
        }
        pairs.push_back({in.receptor, in.ligand});
        return true;
    }
    std::string text;
    if (!read_file(in.manifest, text, error)) return false;
    const fs::path base = fs::path(in.manifest).parent_path();
    std::istringstream lines(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            error = in.manifest + ":" + std::to_string(line_no) +
                    ": expected two tab-separated paths";
            return false;
        }
        PairEntry entry;
        entry.receptor = (base / line.substr(0, tab)).generic_string();
        entry.ligand = (base / line.substr(tab + 1)).generic_string();
        pairs.push_back(entry);
    }
    return true;
}

json failure_record(size_t pair, const PairEntry& entry, int record, const std::string& message) {
    json rec{{"pair", pair}, {"ligand", entry.ligand}, {"error", message}};
    if (!entry.receptor.empty()) rec["receptor"] = entry.receptor;
    if (record >= 0) rec["record"] = record;
    return rec;
}

struct LoadedInputs {
    std::map<std::string, PocketPtr> pockets;
    std::vector<std::vector<LigandPtr>> ligands;  // per pair; empty after a failure
    std::vector<json> failures;
};

bool parse_ligand_file(const std::string& path, std::vector<LigandPtr>& out, std::string& error) {
    std::string text;
    if (!read_file(path, text, error)) return false;
    pk_ligand** arr = nullptr;
    size_t n = 0;
    if (pk_ligand_parse_sdf_multi(text.c_str(), &arr, &n) != PK_OK) {
        error = path + ": " + last_error();
        return false;
    }
    for (size_t i = 0; i < n; ++i) out.emplace_back(arr[i]);
    pk_buffer_free(arr);
    if (out.empty()) {
        error = path + ": no molecule records";
        return false;
    }
    return true;
}

PocketPtr parse_pocket_file(const std::string& path, const InputArgs& in, std::string& error) {
    std::string text;
    if (!read_file(path, text, error)) return nullptr;
    pk_pocket* pocket = nullptr;
    pk_status status;
    if (in.clip_center.size() == 3)
        status = pk_pocket_parse_clipped(text.c_str(), in.clip_center[0], in.clip_center[1],
                                         in.clip_center[2], in.clip_radius, &pocket);
    else
        status = pk_pocket_parse(text.c_str(), &pocket);
    if (status != PK_OK) {
        error = path + ": " + last_error();
        return nullptr;
    }
    return PocketPtr(pocket);
}

// Parses every unique receptor once and every ligand file; failures are
// recorded per pair and leave that pair's ligand list empty.
LoadedInputs load_inputs(const std::vector<PairEntry>& pairs, const InputArgs& in,
                         bool need_receptor) {
    LoadedInputs loaded;
    loaded.ligands.resize(pairs.size());

    std::map<std::string, std::string> pocket_errors;
    if (need_receptor) {
        for (const auto& pair : pairs) {
            if (loaded.pockets.count(pair.receptor) || pocket_errors.count(pair.receptor))
                continue;
            std::string error;
            PocketPtr pocket = parse_pocket_file(pair.receptor, in, error);
            if (pocket)
                loaded.pockets.emplace(pair.receptor, std::move(pocket));
            else
                pocket_errors.emplace(pair.receptor, error);
        }
    }

    for (size_t i = 0; i < pairs.size(); ++i) {
        if (need_receptor) {
            auto bad = pocket_errors.find(pairs[i].receptor);
            if (bad != pocket_errors.end()) {
                loaded.failures.push_back(failure_record(i, pairs[i], -1, bad->second));
                continue;
            }
        }
        std::string error;
        if (!parse_ligand_file(pairs[i].ligand, loaded.ligands[i], error))
            loaded.failures.push_back(failure_record(i, pairs[i], -1, error));
    }
    return loaded;
}

struct JobRef {
    size_t pair = 0;
    size_t record = 0;
    size_t records_in_pair = 1;
    pk_pocket* pocket = nullptr;
    pk_ligand* ligand = nullptr;
};

std::vector<JobRef> flatten_jobs(const std::vector<PairEntry>& pairs, LoadedInputs& loaded,
                                 bool need_receptor) {
    std::vector<JobRef> jobs;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const auto& records = loaded.ligands[i];
        for (size_t r = 0; r < records.size(); ++r) {
            JobRef job;
            job.pair = i;
            job.record = r;
            job.records_in_pair = records.size();
            job.ligand = records[r].get();
            if (need_receptor) job.pocket = loaded.pockets.at(pairs[i].receptor).get();
            jobs.push_back(job);
        }
    }
    return jobs;
}

void run_pool(size_t job_count, unsigned requested, const std::function<void(size_t)>& work) {
    unsigned hw = std::thread::hardware_concurrency();
    size_t n = requested ? requested : (hw ? hw : 1);
    n = std::min<size_t>(n, job_count);
    if (n <= 1) {
        for (size_t i = 0; i < job_count; ++i) work(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(n);
    for (size_t t = 0; t < n; ++t)
        threads.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < job_count;) work(i);
        });
    for (auto& thread : threads) thread.join();
}

struct JobResult {
    bool failed = false;
    json value;  // success payload or failure record
};

void report_failures(const std::vector<json>& failures) {
    for (const auto& f : failures)
        std::fprintf(stderr, "error: %s: %s\n",
                     f.value("ligand", std::string("<input>")).c_str(),
                     f.value("error", std::string("unknown")).c_str());
}

json input_config(const InputArgs& in) {
    json cfg;
    if (!in.receptor.empty()) cfg["receptor"] = in.receptor;
    if (!in.ligand.empty()) cfg["ligand"] = in.ligand;
    if (!in.manifest.empty()) cfg["manifest"] = in.manifest;
    if (in.clip_center.size() == 3) {
        cfg["center"] = in.clip_center;
        cfg["radius"] = in.clip_radius;
    }
    cfg["jobs"] = in.jobs;
    return cfg;
}

}  // namespace

/* ------------------------------------------------------------------ */
/* refine                                                             */
/* ------------------------------------------------------------------ */

int run_refine(const RefineArgs& args) {
    std::string error;
    if (!check_weights(args.weights, error) || !check_clip(args.in, error))
        return usage_error(error);
    std::vector<PairEntry> pairs;
    if (!collect_pairs(args.in, true, pairs, error)) return usage_error(error);

    LoadedInputs loaded = load_inputs(pairs, args.in, true);
    std::vector<JobRef> jobs = flatten_jobs(pairs, loaded, true);

    const bool batch = !args.in.manifest.empty() || jobs.size() > 1;
    if (batch) {
        std::error_code ec;
        fs::create_directories(args.out_dir, ec);
        if (ec) return usage_error("cannot create " + args.out_dir + ": " + ec.message());
    }

    pk_refine_options options;
    pk_refine_options_init(&options);
    options.max_iterations = args.epochs;
    options.step = args.step;
    options.epsilon = args.eps;
    options.memory = args.memory;
    options.gradient_tolerance = args.gtol;
    options.central_differences = args.central ? 1 : 0;
    if (!args.weights.empty())
        std::copy(args.weights.begin(), args.weights.end(), options.weights);

    std::vector<JobResult> results(jobs.size());
    run_pool(jobs.size(), args.in.jobs, [&](size_t i) {
        const JobRef& job = jobs[i];
        JobResult& slot = results[i];
        const PairEntry& entry = pairs[job.pair];

        std::string sdf_path = args.out;
        std::string trace_path = args.trace;
        if (batch) {
            std::string stem = zero_pad(job.pair, 3) + "_" + sanitize(pk_ligand_name(job.ligand));
            if (job.records_in_pair > 1) stem += "_r" + std::to_string(job.record);
            sdf_path = (fs::path(args.out_dir) / (stem + ".sdf")).generic_string();
            trace_path = args.traces
                             ? (fs::path(args.out_dir) / (stem + "_trace.csv")).generic_string()
                             : "";
        }

        pk_refine_result* raw = nullptr;
        if (pk_refine(job.pocket, job.ligand, &options, &raw) != PK_OK) {
            slot.failed = true;
            slot.value = failure_record(job.pair, entry, static_cast<int>(job.record),
                                        last_error());
            return;
        }
        RefinePtr result(raw);

        const double e_init = pk_refine_e_init(result.get());
        const double e_opt = pk_refine_e_opt(result.get());
        const bool accepted = pk_refine_accepted(result.get()) != 0;
        const bool aborted = pk_refine_aborted(result.get()) != 0;
        const size_t iterations = pk_refine_iterations(result.get());
        const size_t evaluations = pk_refine_trace_size(result.get());

        std::string job_error;
        if (pk_refine_apply(result.get(), job.ligand) != PK_OK) {
            job_error = last_error();
        } else {
            const char* names[4] = {"E_init", "E_opt", "accepted", "iterations"};
            const std::string e0 = fmt(e_init, "%.6f");
            const std::string e1 = fmt(e_opt, "%.6f");
            const std::string it = std::to_string(iterations);
            const char* values[4] = {e0.c_str(), e1.c_str(), accepted ? "true" : "false",
                                     it.c_str()};
            char* text = nullptr;
            if (pk_ligand_write_sdf(job.ligand, names, values, 4, &text) != PK_OK) {
                job_error = last_error();
            } else {
                std::string sdf(text);
                pk_string_free(text);
                write_text(sdf_path, sdf, job_error);
            }
        }

        if (job_error.empty() && !trace_path.empty()) {
            std::vector<double> energies(evaluations), best(evaluations);
            pk_refine_trace(result.get(), energies.data(), best.data());
            std::string csv = "# posekit " + std::string(pk_version()) + "\n";
            csv += "iteration,energy,best_energy\n";
            for (size_t k = 0; k < evaluations; ++k)
                csv += std::to_string(k) + "," + fmt(energies[k]) + "," + fmt(best[k]) + "\n";
            write_text(trace_path, csv, job_error);
        }

        if (!job_error.empty()) {
            slot.failed = true;
            slot.value = failure_record(job.pair, entry, static_cast<int>(job.record), job_error);
            return;
        }

        slot.value = json{{"pair", job.pair},
                          {"record", job.record},
                          {"receptor", entry.receptor},
                          {"ligand", entry.ligand},
                          {"name", pk_ligand_name(job.ligand)},
                          {"output", sdf_path},
                          {"e_init", e_init},
                          {"e_opt", e_opt},
                          {"accepted", accepted},
                          {"aborted", aborted},
                          {"iterations", iterations},
                          {"evaluations", evaluations}};
        if (!trace_path.empty()) slot.value["trace"] = trace_path;
    });

    json summary_results = json::array();
    json failures = loaded.failures;
    for (const auto& slot : results) {
        if (slot.failed)
            failures.push_back(slot.value);
        else
            summary_results.push_back(slot.value);
    }

    json config = input_config(args.in);
    config["epochs"] = args.epochs;
    config["step"] = args.step;
    config["eps"] = args.eps;
    config["memory"] = args.memory;
    config["gtol"] = args.gtol;
    config["central"] = args.central;
    config["weights"] = args.weights.empty()
                            ? json(json::array())
                            : json(args.weights);
    json summary{{"tool", tool_block()},
                 {"command", "refine"},
                 {"config", config},
                 {"results", summary_results},
                 {"failures", failures},
                 {"counts",
                  {{"jobs", jobs.size() + loaded.failures.size()},
                   {"succeeded", summary_results.size()},
                   {"failed", failures.size()}}}};

    std::string summary_path = args.summary;
    if (batch && summary_path.empty())
        summary_path = (fs::path(args.out_dir) / "summary.json").generic_string();
    std::string write_err;
    if (!write_text(summary_path, summary.dump(2) + "\n", write_err)) {
        std::fprintf(stderr, "error: %s\n", write_err.c_str());
        return exit_for(failures.size() + 1);
    }
    report_failures(failures);
    return exit_for(failures.size());
}

/* ------------------------------------------------------------------ */
/* score                                                              */
/* ------------------------------------------------------------------ */

int run_score(const ScoreArgs& args) {
    std::string error;
    if (!check_weights(args.weights, error) || !check_clip(args.in, error))
        return usage_error(error);
    std::vector<PairEntry> pairs;
    if (!collect_pairs(args.in, true, pairs, error)) return usage_error(error);

    LoadedInputs loaded = load_inputs(pairs, args.in, true);
    std::vector<JobRef> jobs = flatten_jobs(pairs, loaded, true);

    std::vector<JobResult> results(jobs.size());
    run_pool(jobs.size(), args.in.jobs, [&](size_t i) {
        const JobRef& job = jobs[i];
        const PairEntry& entry = pairs[job.pair];
        pk_energy energy;
        if (pk_score(job.pocket, job.ligand, weights_ptr(args.weights), &energy) != PK_OK) {
            results[i].failed = true;
            results[i].value =
                failure_record(job.pair, entry, static_cast<int>(job.record), last_error());
            return;
        }
        results[i].value = json{
            {"pair", job.pair},
            {"record", job.record},
            {"receptor", entry.receptor},
            {"ligand", entry.ligand},
            {"name", pk_ligand_name(job.ligand)},
            {"total", energy.total},
            {"pairs", energy.pair_count},
            {"terms",
             {{"g1", energy.terms[0]},
              {"g2", energy.terms[1]},
              {"rep", energy.terms[2]},
              {"hyd", energy.terms[3]},
              {"hd", energy.terms[4]}}},
            {"weights", std::vector<double>(energy.weights, energy.weights + 5)}};
    });

    json out_results = json::array();
    json failures = loaded.failures;
    for (const auto& slot : results) {
        if (slot.failed)
            failures.push_back(slot.value);
        else
            out_results.push_back(slot.value);
    }

    json config = input_config(args.in);
    config["weights"] = args.weights.empty() ? json(json::array()) : json(args.weights);
    json doc{{"tool", tool_block()},
             {"command", "score"},
             {"config", config},
             {"results", out_results},
             {"failures", failures}};

    std::string write_err;
    if (!write_text(args.out, doc.dump(2) + "\n", write_err)) {
        std::fprintf(stderr, "error: %s\n", write_err.c_str());
        return exit_for(failures.size() + 1);
    }
    report_failures(failures);
    return exit_for(failures.size());
}

/* ------------------------------------------------------------------ */
/* decompose                                                          */
/* ------------------------------------------------------------------ */

namespace {

json indices_json(const size_t* data, size_t count) {
    json arr = json::array();
    for (size_t i = 0; i < count; ++i) arr.push_back(data[i]);
    return arr;
}

json decomp_json(const pk_decomp* decomp) {
    json out;
    out["has_scaffold"] = pk_decomp_has_scaffold(decomp) != 0;

    size_t* atoms = nullptr;
    size_t count = 0;
    pk_decomp_scaffold(decomp, &atoms, &count);
    out["scaffold"] = indices_json(atoms, count);
    pk_buffer_free(atoms);

    pk_decomp_sidechains(decomp, &atoms, &count);
    out["sidechains"] = indices_json(atoms, count);
    pk_buffer_free(atoms);

    pk_decomp_linkers(decomp, &atoms, &count);
    out["linkers"] = indices_json(atoms, count);
    pk_buffer_free(atoms);

    json rings = json::array();
    const size_t n_rings = pk_decomp_ring_system_count(decomp);
    for (size_t k = 0; k < n_rings; ++k) {
        pk_decomp_ring_system(decomp, k, &atoms, &count);
        rings.push_back(indices_json(atoms, count));
        pk_buffer_free(atoms);
    }
    out["ring_systems"] = rings;
    return out;
}

}  // namespace

int run_decompose(const DecomposeArgs& args) {
    if (args.ligand.empty()) return usage_error("--ligand is required");

    std::vector<LigandPtr> records;
    std::string error;
    if (!parse_ligand_file(args.ligand, records, error)) {
        std::fprintf(stderr, "error: %s\n", error.c_str());
        return 1;
    }

    json results = json::array();
    json failures = json::array();
    for (size_t r = 0; r < records.size(); ++r) {
        pk_decomp* raw = nullptr;
        if (pk_decompose(records[r].get(), &raw) != PK_OK) {
            failures.push_back(json{{"record", r}, {"error", last_error()}});
            continue;
        }
        DecompPtr decomp(raw);
        json rec = decomp_json(decomp.get());
        rec["record"] = r;
        rec["name"] = pk_ligand_name(records[r].get());
        rec["heavy_atoms"] = pk_ligand_heavy_atom_count(records[r].get());
        results.push_back(rec);
    }

    json doc{{"tool", tool_block()},
             {"command", "decompose"},
             {"config", {{"ligand", args.ligand}}},
             {"results", results},
             {"failures", failures}};
    std::string write_err;
    if (!write_text(args.out, doc.dump(2) + "\n", write_err)) {
        std::fprintf(stderr, "error: %s\n", write_err.c_str());
        return exit_for(failures.size() + 1);
    }
    return exit_for(failures.size());
}

/* ------------------------------------------------------------------ */
/* mask                                                               */
/* ------------------------------------------------------------------ */

int run_mask(const MaskArgs& args) {
    if (args.ligand.empty()) return usage_error("--ligand is required");
    if (args.task.empty() && !args.sample)
        return usage_error("give --task SH|SC|DN or --sample");
    if (!args.task.empty() && args.sample)
        return usage_error("--task and --sample are mutually exclusive");
    pk_task fixed_task = PK_TASK_DN;
    if (!args.task.empty() && !task_from_string(args.task, fixed_task))
        return usage_error("unknown task '" + args.task + "'");

    std::vector<LigandPtr> records;
    std::string error;
    if (!parse_ligand_file(args.ligand, records, error)) {
        std::fprintf(stderr, "error: %s\n", error.c_str());
        return 1;
    }

    json results = json::array();
    json failures = json::array();
    for (size_t r = 0; r < records.size(); ++r) {
        pk_decomp* raw = nullptr;
        if (pk_decompose(records[r].get(), &raw) != PK_OK) {
            failures.push_back(json{{"record", r}, {"error", last_error()}});
            continue;
        }
        DecompPtr decomp(raw);

        pk_task task = fixed_task;
        if (args.sample &&
            pk_sample_task(decomp.get(), args.seed + r, &task) != PK_OK) {
            failures.push_back(json{{"record", r}, {"error", last_error()}});
            continue;
        }

        size_t* target = nullptr;
        size_t target_count = 0;
        size_t* context = nullptr;
        size_t context_count = 0;
        if (pk_make_mask(decomp.get(), task, &target, &target_count, &context, &context_count) !=
            PK_OK) {
            failures.push_back(
                json{{"record", r}, {"task", task_label(task)}, {"error", last_error()}});
            continue;
        }
        json rec{{"record", r},
                 {"name", pk_ligand_name(records[r].get())},
                 {"task", task_label(task)},
                 {"sampled", args.sample},
                 {"target", indices_json(target, target_count)},
                 {"context", indices_json(context, context_count)}};
        pk_buffer_free(target);
        pk_buffer_free(context);
        results.push_back(rec);
    }

    json config{{"ligand", args.ligand}, {"sample", args.sample}};
    if (!args.task.empty()) config["task"] = args.task;
    if (args.sample) config["seed"] = args.seed;
    json doc{{"tool", tool_block()},
             {"command", "mask"},
             {"config", config},
             {"results", results},
             {"failures", failures}};
    std::string write_err;
    if (!write_text(args.out, doc.dump(2) + "\n", write_err)) {
        std::fprintf(stderr, "error: %s\n", write_err.c_str());
        return exit_for(failures.size() + 1);
    }
    return exit_for(failures.size());
}

/* ------------------------------------------------------------------ */
/* analyze                                                            */
/* ------------------------------------------------------------------ */

int run_analyze(const AnalyzeArgs& args) {
    std::string error;
    if (!check_clip(args.in, error)) return usage_error(error);
    if (!args.gates.empty() && args.gates.size() != 7)
        return usage_error("--gates takes exactly 7 values");
    if (args.tasks.empty()) return usage_error("--tasks must name at least one task");
    std::vector<pk_task> tasks;
    for (const auto& name : args.tasks) {
        pk_task task;
        if (!task_from_string(name, task)) return usage_error("unknown task '" + name + "'");
        tasks.push_back(task);
    }

    std::vector<PairEntry> pairs;
    if (!collect_pairs(args.in, true, pairs, error)) return usage_error(error);

    LoadedInputs loaded = load_inputs(pairs, args.in, true);
    std::vector<JobRef> jobs = flatten_jobs(pairs, loaded, true);

    pk_interaction_thresholds gates;
    pk_interaction_thresholds_init(&gates);
    if (args.gates.size() == 7) {
        gates.hydrophobic = args.gates[0];
        gates.hydrogen_bond = args.gates[1];
        gates.water_bridge = args.gates[2];
        gates.pi_pi = args.gates[3];
        gates.pi_cation = args.gates[4];
        gates.halogen = args.gates[5];
        gates.metal = args.gates[6];
    }

    struct AnalyzeRow {
        bool ok = false;
        pk_context_summary summary{};
        std::string error;
    };
    std::vector<std::vector<AnalyzeRow>> rows(jobs.size());

    run_pool(jobs.size(), args.in.jobs, [&](size_t i) {
        rows[i].resize(tasks.size());
        for (size_t t = 0; t < tasks.size(); ++t) {
            AnalyzeRow& row = rows[i][t];
            if (pk_summarize_opts(jobs[i].pocket, jobs[i].ligand, tasks[t], args.edge_threshold,
                                  &gates, &row.summary) != PK_OK)
                row.error = last_error();
            else
                row.ok = true;
        }
    });

    std::string csv = "# posekit " + std::string(pk_version()) + "\n";
    csv += "# tasks=";
    for (size_t t = 0; t < tasks.size(); ++t)
        csv += std::string(t ? "," : "") + task_label(tasks[t]);
    csv += "\n";
    csv += "receptor,ligand,record,name,task,n_bar,d_bar,t_bar,k_bar,context_size\n";

    json failures = loaded.failures;
    std::vector<pk_context_summary> usable;
    for (size_t i = 0; i < jobs.size(); ++i) {
        const JobRef& job = jobs[i];
        const PairEntry& entry = pairs[job.pair];
        for (size_t t = 0; t < rows[i].size(); ++t) {
            const AnalyzeRow& row = rows[i][t];
            if (!row.ok) {
                json rec = failure_record(job.pair, entry, static_cast<int>(job.record),
                                          row.error);
                rec["task"] = task_label(tasks[t]);
                failures.push_back(rec);
                continue;
            }
            usable.push_back(row.summary);
            csv += csv_field(entry.receptor) + "," + csv_field(entry.ligand) + "," +
                   std::to_string(job.record) + "," +
                   csv_field(pk_ligand_name(job.ligand)) + "," + task_label(tasks[t]) + "," +
                   fmt(row.summary.n_bar) + "," +
                   (row.summary.has_d_bar ? fmt(row.summary.d_bar) : std::string()) + "," +
                   fmt(row.summary.t_bar) + "," + fmt(row.summary.k_bar) + "," +
                   std::to_string(row.summary.context_size) + "\n";
        }
    }

    std::string write_err;
    if (!write_text(args.csv, csv, write_err)) {
        std::fprintf(stderr, "error: %s\n", write_err.c_str());
        return exit_for(failures.size() + 1);
    }

    json config = input_config(args.in);
    {
        json task_names = json::array();
        for (pk_task t : tasks) task_names.push_back(task_label(t));
        config["tasks"] = task_names;
        config["edge_threshold"] = args.edge_threshold;
        config["gates"] = args.gates.empty() ? json(json::array()) : json(args.gates);
    }

    json doc{{"tool", tool_block()}, {"command", "analyze"}, {"config", config}};
    doc["rho"] = nullptr;
    doc["entropy"] = nullptr;
    doc["n"] = 0;
    doc["hexbins"] = json{{"distance_plane", json::array()},
                          {"interaction_plane", json::array()}};

    pk_density* raw = nullptr;
    if (!usable.empty() &&
        pk_information_density(usable.data(), usable.size(), &raw) == PK_OK) {
        std::unique_ptr<pk_density, void (*)(pk_density*)> density(raw, pk_density_free);
        pk_density_stats stats;
        pk_density_stats_get(density.get(), &stats);
        if (stats.has_rho) {
            doc["rho"] = stats.rho;
            doc["entropy"] = stats.entropy;
        }
        doc["n"] = stats.n;
        doc["skipped_no_edges"] = stats.skipped_no_edges;
        doc["low_confidence"] = stats.low_confidence != 0;
        doc["degenerate"] = stats.degenerate != 0;
        doc["jittered"] = stats.jittered != 0;
        doc["zero_knn_fraction"] = stats.zero_knn_fraction;
        doc["axis_means"] = std::vector<double>(stats.axis_means, stats.axis_means + 4);
        for (int plane = 0; plane < 2; ++plane) {
            json cells = json::array();
            const size_t n_cells = pk_density_hexbin_count(density.get(), plane);
            for (size_t k = 0; k < n_cells; ++k) {
                double cx = 0.0, cy = 0.0;
                size_t count = 0;
                pk_density_hexbin(density.get(), plane, k, &cx, &cy, &count);
                cells.push_back(json::array({cx, cy, count}));
            }
            doc["hexbins"][plane == 0 ? "distance_plane" : "interaction_plane"] = cells;
        }
        if (stats.zero_knn_fraction > 0.10)
            std::fprintf(stderr,
                         "warning: %.1f%% of entropy neighbor distances were zero before "
                         "jittering; the estimate may be unreliable\n",
                         100.0 * stats.zero_knn_fraction);
    } else if (!usable.empty()) {
        doc["note"] = last_error();
    } else {
        doc["note"] = "no usable summaries";
    }
    doc["failures"] = failures;

    if (!write_text(args.json, doc.dump(2) + "\n", write_err)) {
        std::fprintf(stderr, "error: %s\n", write_err.c_str());
        return exit_for(failures.size() + 1);
    }
    report_failures(failures);
    return exit_for(failures.size());
}

/* ------------------------------------------------------------------ */
/* gsnr                                                               */
/* ------------------------------------------------------------------ */

int run_gsnr(const GsnrArgs& args) {
    if (args.input.empty()) return usage_error("--input is required");
    if (args.window < 2) return usage_error("--window must be at least 2");
    if (args.variance_window < 2) return usage_error("--variance-window must be at least 2");

    std::string text, error;
    if (!read_file(args.input, text, error)) {
        std::fprintf(stderr, "error: %s\n", error.c_str());
        return 1;
    }

    std::vector<double> flat;
    size_t dim = 0, count = 0;
    {
        std::istringstream lines(text);
        std::string line;
        size_t line_no = 0;
        while (std::getline(lines, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            for (char& c : line)
                if (c == ',' || c == '\t' || c == ';') c = ' ';
            std::istringstream fields(line);
            size_t row_dim = 0;
            double v;
            while (fields >> v) {
                flat.push_back(v);
                ++row_dim;
            }
            if (row_dim == 0) continue;
            if (dim == 0) dim = row_dim;
            if (row_dim != dim) {
                std::fprintf(stderr, "error: %s:%zu: expected %zu values, found %zu\n",
                             args.input.c_str(), line_no, dim, row_dim);
                return 1;
            }
            ++count;
        }
    }
    if (count == 0) {
        std::fprintf(stderr, "error: %s: no gradient vectors\n", args.input.c_str());
        return 1;
    }

    double* snr = nullptr;
    int* degenerate = nullptr;
    double* variance = nullptr;
    size_t n_windows = 0, n_variance = 0;
    if (pk_gradient_snr(flat.data(), count, dim, args.window, args.variance_window, &snr,
                        &degenerate, &n_windows, &variance, &n_variance) != PK_OK) {
        std::fprintf(stderr, "error: %s\n", last_error().c_str());
        return 1;
    }
    std::unique_ptr<double, BufferDeleter> snr_guard(snr);
    std::unique_ptr<int, BufferDeleter> flag_guard(degenerate);
    std::unique_ptr<double, BufferDeleter> var_guard(variance);

    std::string csv = "# posekit " + std::string(pk_version()) + "\n";
    csv += "# window=" + std::to_string(args.window) +
           " variance_window=" + std::to_string(args.variance_window) +
           " vectors=" + std::to_string(count) + " dim=" + std::to_string(dim) + "\n";
    csv += "window,start,snr,degenerate,snr_variance\n";
    for (size_t w = 0; w < n_windows; ++w) {
        csv += std::to_string(w) + "," + std::to_string(w * args.window) + "," + fmt(snr[w]) +
               "," + (degenerate[w] ? "1" : "0") + ",";
        if (w + 1 >= args.variance_window && (w + 1 - args.variance_window) < n_variance)
            csv += fmt(variance[w + 1 - args.variance_window]);
        csv += "\n";
    }

    std::string write_err;
    if (!write_text(args.out, csv, write_err)) {
        std::fprintf(stderr, "error: %s\n", write_err.c_str());
        return 1;
    }
    return 0;
}

/* ------------------------------------------------------------------ */
/* schedule                                                           */
/* ------------------------------------------------------------------ */

int run_schedule(const ScheduleArgs& args) {
    pk_schedule_kind kind;
    if (args.kind == "linear-beta")
        kind = PK_SCHEDULE_LINEAR_BETA;
    else if (args.kind == "cosine")
        kind = PK_SCHEDULE_COSINE;
    else if (args.kind == "sigmoid")
        kind = PK_SCHEDULE_SIGMOID;
    else
        return usage_error("unknown schedule kind '" + args.kind + "'");

    pk_schedule* raw = nullptr;
    if (pk_schedule_create(args.steps, kind, &raw) != PK_OK) {
        std::fprintf(stderr, "error: %s\n", last_error().c_str());
        return 1;
    }
    SchedulePtr schedule(raw);

    std::string csv = "# posekit " + std::string(pk_version()) + "\n";
    csv += "# steps=" + std::to_string(args.steps) + " kind=" + args.kind + "\n";
    csv += "t,alpha,alpha_bar,lambda,gamma\n";
    for (size_t t = 0; t <= pk_schedule_steps(schedule.get()); ++t) {
        double alpha, alpha_bar, sigma_sq, lambda, gamma;
        pk_schedule_row(schedule.get(), t, &alpha, &alpha_bar, &sigma_sq, &lambda, &gamma);
        csv += std::to_string(t) + "," + fmt(alpha, "%.12g") + "," + fmt(alpha_bar, "%.12g") +
               "," + fmt(lambda, "%.12g") + "," + fmt(gamma, "%.12g") + "\n";
    }

    std::string write_err;
    if (!write_text(args.out, csv, write_err)) {
        std::fprintf(stderr, "error: %s\n", write_err.c_str());
        return 1;
    }
    return 0;
}

}  // namespace pkcli
