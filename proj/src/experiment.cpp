#include "spikepath/experiment.hpp"

#include "spikepath/io.hpp"
#include "spikepath/oracle.hpp"
#include "spikepath/svg.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <thread>

namespace spikepath
{
    namespace fs = std::filesystem;

    namespace
    {
        const std::set<std::string> experiment_keys{
            "environment", "gen_params", "timing",  "inhibition", "source",  "targets",
            "max_iterations", "t_max_per_iteration", "connect_retries", "outputs", "trace", "plot", "sweep",
        };

        AnchorSpec anchor_from_json(const Json &j)
        {
            if (j.is_string())
                return j.get<std::string>();
            if (j.is_array() && j.size() == 2)
                return Point2{j.at(0).get<double>(), j.at(1).get<double>()};
            if (j.is_object() && j.contains("node"))
                return NodeId{j.at("node").get<std::uint32_t>()};
            throw ConfigError("anchor must be a corner name, [x, y] or {\"node\": id}: " + j.dump());
        }

        Json anchor_to_json(const AnchorSpec &a)
        {
            if (const auto *s = std::get_if<std::string>(&a))
                return *s;
            if (const auto *p = std::get_if<Point2>(&a))
                return Json::array({p->x, p->y});
            return Json{{"node", std::get<NodeId>(a).value}};
        }

        PlotOptions plot_from_json(const Json &j)
        {
            PlotOptions p;
            for (const auto &[k, v] : j.items())
            {
                if (k == "render")
                    p.render = v.get<bool>();
                else if (k == "resolution")
                    p.resolution = v.get<std::size_t>();
                else if (k == "n_levels")
                    p.n_levels = v.get<std::size_t>();
                else if (k == "heat_cells")
                    p.heat_cells = v.get<std::size_t>();
                else if (k == "influence_radius")
                {
                    if (!v.is_null())
                        p.influence_radius = v.get<double>();
                }
                else
                    throw ConfigError("unknown plot option '" + k + "'");
            }
            return p;
        }

        Json plot_to_json(const PlotOptions &p)
        {
            return {
                {"render", p.render},
                {"resolution", p.resolution},
                {"n_levels", p.n_levels},
                {"heat_cells", p.heat_cells},
                {"influence_radius", p.influence_radius ? Json(*p.influence_radius) : Json(nullptr)},
            };
        }

        std::string fmt_ms(const std::optional<Millis> &v)
        {
            if (!v)
                return "-";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.9g", *v);
            return buf;
        }

        std::string iteration_file(std::size_t index)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "iteration_%03zu.svg", index);
            return buf;
        }

        // Cells whose centre lies outside the admissible region carry no value.
        FieldGrid clipped(FieldGrid g, const Environment &env)
        {
            for (std::size_t iy = 0; iy < g.resolution; ++iy)
                for (std::size_t ix = 0; ix < g.resolution; ++ix)
                    if (!env.contains(g.cell_center(ix, iy)))
                        g.values[iy * g.resolution + ix].reset();
            return g;
        }

        struct MemberOutcome
        {
            std::uint64_t seed = 0;
            std::optional<std::string> error;
            int exit_code = exit_ok;
            std::optional<Experiment> result;
            std::optional<OracleReport> oracle;
            double wall_time_s = 0.0;
        };

        void write_run_artifacts(const ExperimentConfig &cfg, const Experiment &ex, const std::string &trace)
        {
            const fs::path out = cfg.outputs;
            write_text(out / "network.json", ex.network_json);
            write_text(out / "run.json",
                       canonical_dump(run_to_json(ex.run, ex.network.net.size(), content_hash(ex.network_json))));
            write_text(out / "metrics.csv", metrics_csv(ex.run));
            if (cfg.trace)
                write_text(out / "trace.jsonl", trace);
            if (cfg.plot.render)
                write_panels(ex.network, ex.run, cfg.plot, out / "panels");
        }

        Experiment execute(const ExperimentConfig &cfg, std::string *trace)
        {
            TraceFn fn;
            if (trace)
                fn = [trace](std::size_t it, const Event &ev) {
                    *trace += trace_line(it, ev);
                    *trace += '\n';
                };
            return run_experiment(cfg, fn);
        }
    }

    void ExperimentConfig::validate() const
    {
        gen.validate();
        timing.validate();
        if (targets.empty())
            throw ConfigError("at least one target is required");
        if (max_iterations && *max_iterations == 0)
            throw ConfigError("max_iterations must be positive");
        if (t_max_per_iteration && !(*t_max_per_iteration > 0.0))
            throw ConfigError("t_max_per_iteration must be positive");
        if (plot.resolution < 8 || plot.heat_cells < 8)
            throw ConfigError("plot resolution and heat_cells must be at least 8");
        if (plot.n_levels < 2)
            throw ConfigError("plot n_levels must be at least 2");
        if (plot.influence_radius && !(*plot.influence_radius > 0.0))
            throw ConfigError("plot influence_radius must be positive");
    }

    ExperimentConfig experiment_from_json(const Json &j, const fs::path &base_dir)
    {
        if (!j.is_object())
            throw ConfigError("config must be a JSON object");
        ExperimentConfig cfg;
        try
        {
            for (const auto &[k, v] : j.items())
            {
                if (!experiment_keys.contains(k))
                    throw ConfigError("unknown config key '" + k + "'");
                if (k == "environment")
                {
                    cfg.environment = v.get<std::string>();
                    const auto &presets = preset_names();
                    const bool preset = std::find(presets.begin(), presets.end(), cfg.environment) != presets.end();
                    if (!preset && fs::path(cfg.environment).is_relative() && !base_dir.empty() &&
                        fs::exists(base_dir / cfg.environment))
                        cfg.environment = (base_dir / cfg.environment).string();
                }
                else if (k == "gen_params")
                    cfg.gen = gen_params_from_json(v);
                else if (k == "timing")
                    cfg.timing = timing_from_json(v);
                else if (k == "inhibition")
                    cfg.inhibition = parse_inhibition_mode(v.get<std::string>());
                else if (k == "source")
                    cfg.source = anchor_from_json(v);
                else if (k == "targets")
                {
                    cfg.targets.clear();
                    for (const auto &t : v)
                        cfg.targets.push_back(anchor_from_json(t));
                }
                else if (k == "max_iterations")
                {
                    if (!v.is_null())
                        cfg.max_iterations = v.get<std::size_t>();
                }
                else if (k == "t_max_per_iteration")
                {
                    if (!v.is_null())
                        cfg.t_max_per_iteration = v.get<Millis>();
                }
                else if (k == "connect_retries")
                    cfg.connect_retries = v.get<std::size_t>();
                else if (k == "outputs")
                    cfg.outputs = v.get<std::string>();
                else if (k == "trace")
                    cfg.trace = v.get<bool>();
                else if (k == "plot")
                    cfg.plot = plot_from_json(v);
            }
        }
        catch (const Json::exception &e)
        {
            throw ConfigError(std::string("bad config value: ") + e.what());
        }
        cfg.validate();
        return cfg;
    }

    Json experiment_to_json(const ExperimentConfig &cfg)
    {
        Json targets = Json::array();
        for (const auto &t : cfg.targets)
            targets.push_back(anchor_to_json(t));
        return {
            {"environment", cfg.environment},
            {"gen_params", gen_params_to_json(cfg.gen)},
            {"timing", timing_to_json(cfg.timing)},
            {"inhibition", std::string(to_string(cfg.inhibition))},
            {"source", anchor_to_json(cfg.source)},
            {"targets", std::move(targets)},
            {"max_iterations", cfg.max_iterations ? Json(*cfg.max_iterations) : Json(nullptr)},
            {"t_max_per_iteration", cfg.t_max_per_iteration ? Json(*cfg.t_max_per_iteration) : Json(nullptr)},
            {"connect_retries", cfg.connect_retries},
            {"outputs", cfg.outputs.string()},
            {"trace", cfg.trace},
            {"plot", plot_to_json(cfg.plot)},
        };
    }

    ExperimentConfig load_experiment(const fs::path &path)
    {
        return experiment_from_json(read_json(path), path.parent_path());
    }

    NodeAnchor resolve_anchor_spec(const Environment &env, const AnchorSpec &spec)
    {
        if (const auto *s = std::get_if<std::string>(&spec))
            return corner_point(env, *s);
        if (const auto *p = std::get_if<Point2>(&spec))
            return *p;
        return std::get<NodeId>(spec);
    }

    void SweepSpec::validate() const
    {
        base.validate();
        if (seeds.empty())
            throw ConfigError("sweep needs at least one seed");
        if (parallelism == 0)
            throw ConfigError("sweep parallelism must be at least 1");
        std::set<std::uint64_t> seen;
        for (const auto s : seeds)
            if (!seen.insert(s).second)
                throw ConfigError("duplicate seed " + std::to_string(s) + " in sweep");
    }

    SweepSpec sweep_from_json(const Json &j, const fs::path &base_dir)
    {
        SweepSpec spec;
        spec.base = experiment_from_json(j, base_dir);
        if (auto it = j.find("sweep"); it != j.end())
        {
            try
            {
                for (const auto &[k, v] : it->items())
                {
                    if (k == "seeds")
                        spec.seeds = v.get<std::vector<std::uint64_t>>();
                    else if (k == "parallelism")
                        spec.parallelism = v.get<std::size_t>();
                    else
                        throw ConfigError("unknown sweep key '" + k + "'");
                }
            }
            catch (const Json::exception &e)
            {
                throw ConfigError(std::string("bad sweep value: ") + e.what());
            }
        }
        return spec;
    }

    SweepSpec load_sweep(const fs::path &path)
    {
        return sweep_from_json(read_json(path), path.parent_path());
    }

    GeneratedNetwork generate_network(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const Environment env = resolve_environment(cfg.environment);
        const NodeAnchor source = resolve_anchor_spec(env, cfg.source);
        std::vector<NodeAnchor> targets;
        for (const auto &t : cfg.targets)
            targets.push_back(resolve_anchor_spec(env, t));
        return generate_connected_network(env, cfg.gen, source, targets, cfg.connect_retries);
    }

    RunConfig run_config_for(const ExperimentConfig &cfg, const GeneratedNetwork &g)
    {
        RunConfig rc;
        rc.timing = cfg.timing;
        rc.mode = cfg.inhibition;
        rc.source = g.source;
        rc.targets = g.targets;
        rc.max_iterations = cfg.max_iterations;
        rc.t_max_per_iteration = cfg.t_max_per_iteration;
        return rc;
    }

    Experiment run_experiment(const ExperimentConfig &cfg, TraceFn trace)
    {
        Experiment ex;
        ex.network = generate_network(cfg);
        ex.network_json = canonical_dump(network_to_json(ex.network));
        ex.run = run_until_converged(ex.network.net, run_config_for(cfg, ex.network), std::move(trace));
        return ex;
    }

    NodeSet oracle_set(const Adjacency &adj, NodeId source, std::span<const NodeId> targets)
    {
        NodeSet all;
        for (const NodeId t : targets)
        {
            const NodeSet s = shortest_path_node_set(adj, source, t);
            all.insert(s.begin(), s.end());
        }
        return all;
    }

    std::vector<std::string> write_panels(const GeneratedNetwork &g, const RunResult &run, const PlotOptions &opts,
                                          const fs::path &dir)
    {
        std::vector<const IterationRecord *> records;
        for (const auto &rec : run.iterations)
            records.push_back(&rec);
        if (run.readout_record)
            records.push_back(&*run.readout_record);

        // Run-wide time range so that levels and colours agree across panels.
        std::optional<std::pair<double, double>> range;
        for (const auto *rec : records)
            for (const auto &t : rec->spike_time)
                if (t)
                    range = range ? std::pair{std::min(range->first, *t), std::max(range->second, *t)}
                                  : std::pair{*t, *t};
        const std::vector<double> levels =
            range && range->first < range->second ? contour_levels(range->first, range->second, opts.n_levels)
                                                  : std::vector<double>{};
        const double radius = opts.influence_radius.value_or(g.gen.d_max);
        const BBox bbox = g.net.environment.bbox;

        std::vector<std::string> files;
        for (const auto *rec : records)
        {
            const SpikeField field = spike_field(*rec, g.net.positions);
            const Environment &env = g.net.environment;
            const FieldGrid heat = clipped(rasterize_field(field, bbox, opts.heat_cells, radius), env);
            const std::vector<ContourLevel> contours =
                levels.empty()
                    ? std::vector<ContourLevel>{}
                    : contour_lines(clipped(rasterize_field(field, bbox, opts.resolution, radius), env), levels);

            Panel panel;
            panel.net = &g.net;
            panel.record = rec;
            panel.source = run.config.source;
            panel.targets = run.config.targets;
            panel.heat = &heat;
            panel.contours = &contours;
            panel.time_range = range.value_or(std::pair{0.0, 1.0});
            const bool readout = run.readout_record && rec == &*run.readout_record;
            panel.title = (readout ? "readout, iteration " : "iteration ") + std::to_string(rec->index) +
                          ", TTT " + fmt_ms(rec->ttt) + " ms";

            const std::string name = iteration_file(rec->index);
            write_text(dir / name, render_panel_svg(panel));
            files.push_back(name);
        }
        return files;
    }

    int exit_code_for(std::exception_ptr e)
    {
        try
        {
            std::rethrow_exception(e);
        }
        catch (const HashMismatch &)
        {
            return exit_hash_mismatch;
        }
        catch (const Unreachable &)
        {
            return exit_unreachable;
        }
        catch (const IterationTimeout &)
        {
            return exit_not_converged;
        }
        catch (const ConfigError &)
        {
            return exit_config_error;
        }
        catch (const PlacementExhausted &)
        {
            return exit_config_error;
        }
        catch (...)
        {
            return exit_internal_error;
        }
    }

    int guarded(const std::function<int()> &fn)
    {
        try
        {
            return fn();
        }
        catch (const std::exception &e)
        {
            std::cerr << "spikepath: " << e.what() << "\n";
            return exit_code_for(std::current_exception());
        }
    }

    int cmd_generate(const ExperimentConfig &cfg)
    {
        const GeneratedNetwork g = generate_network(cfg);
        const fs::path path = cfg.outputs / "network.json";
        write_text(path, canonical_dump(network_to_json(g)));
        std::cout << "generated " << g.net.size() << " neurons, " << g.net.edge_count() << " edges (seed "
                  << g.gen.seed << ") -> " << path.string() << "\n";
        return exit_ok;
    }

    int cmd_run(const ExperimentConfig &cfg)
    {
        std::string trace;
        const Experiment ex = execute(cfg, cfg.trace ? &trace : nullptr);
        write_run_artifacts(cfg, ex, trace);
        const RunResult &run = ex.run;
        if (run.converged)
            std::cout << "converged after " << *run.convergence_iteration << " iterations; readout "
                      << run.readout_spiking.size() << " neurons -> " << cfg.outputs.string() << "\n";
        else
            std::cout << "not converged after " << run.iterations.size() << " iterations -> "
                      << cfg.outputs.string() << "\n";
        return run.converged ? exit_ok : exit_not_converged;
    }

    int cmd_verify(const fs::path &run_path, const fs::path &network_path, const fs::path &out_dir)
    {
        const std::string network_text = read_text(network_path);
        const Json run_json = read_json(run_path);
        const std::string expected = run_json.value("network_hash", std::string());
        const std::string actual = content_hash(network_text);
        if (expected != actual)
            throw HashMismatch("run file refers to network " + expected + " but " + network_path.string() +
                               " hashes to " + actual);

        GeneratedNetwork g;
        try
        {
            g = network_from_json(Json::parse(network_text));
        }
        catch (const Json::parse_error &e)
        {
            throw ConfigError(network_path.string() + ": " + e.what());
        }
        const RunResult run = run_from_json(run_json);
        const NodeSet oracle = oracle_set(g.net.adjacency, run.config.source, run.config.targets);
        const OracleReport rep = compare_to_oracle(run.readout_spiking, oracle);
        write_text(out_dir / "oracle.json", canonical_dump(oracle_report_to_json(rep)));

        Json audit_json;
        bool audit_ok = true;
        if (run.config.targets.size() == 1 && run.config.mode == InhibitionMode::global)
        {
            const InductionAudit audit =
                audit_induction(run, g.net.adjacency, run.config.source, run.config.targets.front());
            audit_ok = audit.passed;
            audit_json = audit_to_json(audit);
        }
        else
        {
            audit_json = {{"passed", nullptr}, {"skipped", "audit applies to single-target global-inhibition runs"}};
        }
        write_text(out_dir / "audit.json", canonical_dump(audit_json));

        std::cout << "oracle: " << (rep.exact_match ? "exact match" : "mismatch") << " (jaccard " << rep.jaccard
                  << ", missing " << rep.missing.size() << ", extra " << rep.extra.size() << "); audit: "
                  << (audit_json["passed"].is_null() ? "skipped" : audit_ok ? "passed" : "failed") << "\n";
        return rep.exact_match && audit_ok ? exit_ok : exit_verification_failed;
    }

    int cmd_sweep(const SweepSpec &spec)
    {
        spec.validate();
        std::vector<MemberOutcome> outcomes(spec.seeds.size());
        std::atomic<std::size_t> next{0};

        const auto worker = [&] {
            for (std::size_t i = next++; i < spec.seeds.size(); i = next++)
            {
                MemberOutcome &o = outcomes[i];
                o.seed = spec.seeds[i];
                ExperimentConfig cfg = spec.base;
                cfg.gen.seed = o.seed;
                cfg.outputs = spec.base.outputs / ("seed_" + std::to_string(o.seed));
                const auto t0 = std::chrono::steady_clock::now();
                try
                {
                    std::string trace;
                    Experiment ex = execute(cfg, cfg.trace ? &trace : nullptr);
                    write_run_artifacts(cfg, ex, trace);
                    if (ex.run.converged)
                        o.oracle = compare_to_oracle(
                            ex.run.readout_spiking,
                            oracle_set(ex.network.net.adjacency, ex.run.config.source, ex.run.config.targets));
                    o.exit_code = ex.run.converged ? exit_ok : exit_not_converged;
                    o.result = std::move(ex);
                }
                catch (const std::exception &e)
                {
                    o.error = e.what();
                    o.exit_code = exit_code_for(std::current_exception());
                }
                o.wall_time_s =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            }
        };

        const std::size_t n_threads = std::min(spec.parallelism, spec.seeds.size());
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < n_threads; ++t)
            pool.emplace_back(worker);
        worker();
        pool.clear();

        Json runs = Json::array();
        bool failed = false;
        for (const auto &o : outcomes)
        {
            Json row = {
                {"seed", o.seed},
                {"status", o.error ? "error" : "ok"},
                {"exit_code", o.exit_code},
                {"wall_time_s", o.wall_time_s},
            };
            if (o.error)
            {
                failed = true;
                row["error"] = *o.error;
            }
            if (o.result)
            {
                const RunResult &run = o.result->run;
                row["network_seed"] = o.result->network.gen.seed;
                row["converged"] = run.converged;
                row["iterations"] = run.convergence_iteration ? Json(*run.convergence_iteration) : Json(nullptr);
                row["readout_size"] = run.readout_spiking.size();
            }
            row["exact_match"] = o.oracle ? Json(o.oracle->exact_match) : Json(nullptr);
            row["jaccard"] = o.oracle ? Json(o.oracle->jaccard) : Json(nullptr);
            runs.push_back(std::move(row));
        }
        const Json summary = {{"base", experiment_to_json(spec.base)}, {"runs", std::move(runs)}};
        write_text(spec.base.outputs / "summary.json", canonical_dump(summary));

        std::size_t converged = 0, exact = 0;
        for (const auto &o : outcomes)
        {
            converged += o.result && o.result->run.converged;
            exact += o.oracle && o.oracle->exact_match;
        }
        std::cout << "sweep: " << outcomes.size() << " seeds, " << converged << " converged, " << exact
                  << " exact matches -> " << (spec.base.outputs / "summary.json").string() << "\n";
        return failed ? exit_sweep_failed : exit_ok;
    }

    int cmd_plot(const fs::path &run_path, const fs::path &network_path, const PlotOptions &opts,
                 const fs::path &out_dir)
    {
        const std::string network_text = read_text(network_path);
        const Json run_json = read_json(run_path);
        if (run_json.value("network_hash", std::string()) != content_hash(network_text))
            throw HashMismatch("run and network files disagree");
        const GeneratedNetwork g = network_from_json(Json::parse(network_text));
        const RunResult run = run_from_json(run_json);
        const auto files = write_panels(g, run, opts, out_dir);
        std::cout << "wrote " << files.size() << " panels -> " << out_dir.string() << "\n";
        return exit_ok;
    }
}
