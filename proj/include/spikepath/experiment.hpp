#pragma once

#include "spikepath/analysis.hpp"
#include "spikepath/canonical_json.hpp"
#include "spikepath/engine.hpp"
#include "spikepath/network.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace spikepath
{
    // Source or target placement in a config: a named corner of the environment bbox,
    // a point (nearest neuron), or an explicit neuron id.
    using AnchorSpec = std::variant<std::string, Point2, NodeId>;

    struct PlotOptions
    {
        bool render = false;
        std::size_t resolution = 200; // contour raster, cells per axis
        std::size_t n_levels = 12;
        std::size_t heat_cells = 50; // background raster, cells per axis
        std::optional<double> influence_radius; // default: d_max of the network
    };

    struct ExperimentConfig
    {
        std::string environment = "square"; // preset name or environment file
        GenParams gen;
        TimingParams timing;
        InhibitionMode inhibition = InhibitionMode::global;
        AnchorSpec source = std::string("bottom_left");
        std::vector<AnchorSpec> targets{std::string("top_right")};
        std::optional<std::size_t> max_iterations;
        std::optional<Millis> t_max_per_iteration;
        std::size_t connect_retries = 20; // further seeds tried when a target is unreachable
        std::filesystem::path outputs = "out";
        bool trace = false;
        PlotOptions plot;

        void validate() const; // ConfigError
    };

    // Unknown keys are rejected. Relative environment paths resolve against base_dir.
    ExperimentConfig experiment_from_json(const Json &j, const std::filesystem::path &base_dir = {});
    Json experiment_to_json(const ExperimentConfig &cfg);
    ExperimentConfig load_experiment(const std::filesystem::path &path);

    NodeAnchor resolve_anchor_spec(const Environment &env, const AnchorSpec &spec);

    struct SweepSpec
    {
        ExperimentConfig base;
        std::vector<std::uint64_t> seeds;
        std::size_t parallelism = 1;

        void validate() const; // ConfigError on duplicate seeds or zero parallelism
    };

    // Reads the "sweep" block ({seeds, parallelism}) next to the experiment keys.
    SweepSpec sweep_from_json(const Json &j, const std::filesystem::path &base_dir = {});
    SweepSpec load_sweep(const std::filesystem::path &path);

    struct Experiment
    {
        GeneratedNetwork network;
        std::string network_json; // canonical bytes of network.json
        RunResult run;
    };

    GeneratedNetwork generate_network(const ExperimentConfig &cfg);
    RunConfig run_config_for(const ExperimentConfig &cfg, const GeneratedNetwork &g);
    Experiment run_experiment(const ExperimentConfig &cfg, TraceFn trace = {});

    // Readout vs shortest-path set; with several targets the union of their sets.
    NodeSet oracle_set(const Adjacency &adj, NodeId source, std::span<const NodeId> targets);

    // One SVG per recorded iteration (readout included) into dir; returns the file names.
    std::vector<std::string> write_panels(const GeneratedNetwork &g, const RunResult &run, const PlotOptions &opts,
                                          const std::filesystem::path &dir);

    enum ExitCode : int
    {
        exit_ok = 0,
        exit_verification_failed = 1,
        exit_not_converged = 2,
        exit_unreachable = 3,
        exit_config_error = 4,
        exit_hash_mismatch = 5,
        exit_sweep_failed = 6,
        exit_internal_error = 70,
    };

    // Exit status for an exception escaping a command.
    int exit_code_for(std::exception_ptr e);

    // Runs fn and maps escaping exceptions to exit codes; messages go to stderr.
    int guarded(const std::function<int()> &fn);

    int cmd_generate(const ExperimentConfig &cfg);
    int cmd_run(const ExperimentConfig &cfg);
    int cmd_verify(const std::filesystem::path &run_path, const std::filesystem::path &network_path,
                   const std::filesystem::path &out_dir);
    int cmd_sweep(const SweepSpec &spec);
    int cmd_plot(const std::filesystem::path &run_path, const std::filesystem::path &network_path,
                 const PlotOptions &opts, const std::filesystem::path &out_dir);
}
