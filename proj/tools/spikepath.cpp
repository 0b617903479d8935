#include "spikepath/experiment.hpp"
#include "spikepath/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace sp = spikepath;
namespace fs = std::filesystem;

namespace
{
    struct Overrides
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> env;
        std::optional<std::string> inhibition;
        std::optional<std::string> out;
        bool trace = false;
        bool plot = false;
    };

    void add_common(CLI::App *cmd, Overrides &o)
    {
        cmd->add_option("--config", o.config, "experiment config (JSON)")->check(CLI::ExistingFile);
        cmd->add_option("--seed", o.seed, "network seed");
        cmd->add_option("--env", o.env, "environment preset or file");
        cmd->add_option("--inhibition", o.inhibition, "global, local or none");
        cmd->add_option("--out", o.out, "output directory");
    }

    sp::Json config_json(const Overrides &o, fs::path &base_dir)
    {
        if (o.config.empty())
            return sp::Json::object();
        base_dir = fs::path(o.config).parent_path();
        return sp::read_json(o.config);
    }

    void apply(const Overrides &o, sp::ExperimentConfig &cfg)
    {
        if (o.seed)
            cfg.gen.seed = *o.seed;
        if (o.env)
            cfg.environment = *o.env;
        if (o.inhibition)
            cfg.inhibition = sp::parse_inhibition_mode(*o.inhibition);
        if (o.out)
            cfg.outputs = *o.out;
        if (o.trace)
            cfg.trace = true;
        if (o.plot)
            cfg.plot.render = true;
        cfg.validate();
    }

    sp::ExperimentConfig load(const Overrides &o)
    {
        fs::path base;
        const sp::Json j = config_json(o, base);
        sp::ExperimentConfig cfg = sp::experiment_from_json(j, base);
        apply(o, cfg);
        return cfg;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Shortest-path search with spiking wavefronts on spatial networks"};
    app.require_subcommand(1);

    Overrides o;
    std::string run_path, network_path;
    std::vector<std::uint64_t> seeds;
    std::optional<std::size_t> parallelism;

    auto *generate = app.add_subcommand("generate", "generate a network and write network.json");
    add_common(generate, o);

    auto *run = app.add_subcommand("run", "simulate until the source is tagged");
    add_common(run, o);
    run->add_flag("--trace", o.trace, "write trace.jsonl");
    run->add_flag("--plot", o.plot, "render one SVG panel per iteration");

    auto *verify = app.add_subcommand("verify", "compare a run with the shortest-path oracle");
    add_common(verify, o);
    verify->add_option("--run", run_path, "run.json (default: <out>/run.json)");
    verify->add_option("--network", network_path, "network.json (default: <out>/network.json)");

    auto *sweep = app.add_subcommand("sweep", "run one experiment per seed");
    add_common(sweep, o);
    sweep->add_option("--seeds", seeds, "seeds (overrides the config's sweep block)");
    sweep->add_option("--parallelism", parallelism, "concurrent runs");
    sweep->add_flag("--trace", o.trace, "write trace.jsonl per seed");

    auto *plot = app.add_subcommand("plot", "render SVG panels for a finished run");
    add_common(plot, o);
    plot->add_option("--run", run_path, "run.json (default: <out>/run.json)");
    plot->add_option("--network", network_path, "network.json (default: <out>/network.json)");

    CLI11_PARSE(app, argc, argv);

    return sp::guarded([&]() -> int {
        if (generate->parsed())
            return sp::cmd_generate(load(o));
        if (run->parsed())
            return sp::cmd_run(load(o));
        if (sweep->parsed())
        {
            fs::path base;
            const sp::Json j = config_json(o, base);
            sp::SweepSpec spec = sp::sweep_from_json(j, base);
            apply(o, spec.base);
            if (!seeds.empty())
                spec.seeds = seeds;
            if (parallelism)
                spec.parallelism = *parallelism;
            return sp::cmd_sweep(spec);
        }

        const sp::ExperimentConfig cfg = load(o);
        const fs::path rp = run_path.empty() ? cfg.outputs / "run.json" : fs::path(run_path);
        const fs::path np = network_path.empty() ? cfg.outputs / "network.json" : fs::path(network_path);
        if (verify->parsed())
            return sp::cmd_verify(rp, np, cfg.outputs);
        return sp::cmd_plot(rp, np, cfg.plot, cfg.outputs / "panels");
    });
}
