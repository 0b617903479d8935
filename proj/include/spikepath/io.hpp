#pragma once

#include "spikepath/analysis.hpp"
#include "spikepath/canonical_json.hpp"
#include "spikepath/engine.hpp"
#include "spikepath/network.hpp"

#include <filesystem>
#include <string>

namespace spikepath
{
    Json timing_to_json(const TimingParams &tp);
    TimingParams timing_from_json(const Json &j, TimingParams defaults = {});

    Json gen_params_to_json(const GenParams &gp);
    GenParams gen_params_from_json(const Json &j, GenParams defaults = {});

    // {seed, gen_params, environment, positions, edges, source, targets}; edges sorted.
    Json network_to_json(const GeneratedNetwork &g);
    GeneratedNetwork network_from_json(const Json &j);

    Json iteration_to_json(const IterationRecord &rec);
    IterationRecord iteration_from_json(const Json &j);

    Json run_config_to_json(const RunConfig &cfg, std::size_t n);
    RunConfig run_config_from_json(const Json &j);

    // run.json; network_hash is the content hash of the network.json bytes.
    Json run_to_json(const RunResult &run, std::size_t n, const std::string &network_hash);
    RunResult run_from_json(const Json &j);

    // One row per iteration, the readout included.
    std::string metrics_csv(const RunResult &run);

    // One trace.jsonl line, without the newline.
    std::string trace_line(std::size_t iteration, const Event &ev);

    Json oracle_report_to_json(const OracleReport &rep);
    Json audit_to_json(const InductionAudit &audit);

    std::string read_text(const std::filesystem::path &path);
    Json read_json(const std::filesystem::path &path);
    void write_text(const std::filesystem::path &path, std::string_view text);
}
