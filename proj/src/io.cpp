#include "spikepath/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace spikepath
{
    namespace
    {
        Json ids(const NodeSet &s)
        {
            Json out = Json::array();
            for (const NodeId v : s)
                out.push_back(v.value);
            return out;
        }

        NodeSet ids_from(const Json &j)
        {
            NodeSet s;
            for (const auto &v : j)
                s.insert(NodeId{v.get<std::uint32_t>()});
            return s;
        }

        Json optional_ms(const std::optional<Millis> &v)
        {
            return v ? Json(*v) : Json(nullptr);
        }

        std::optional<Millis> optional_ms_from(const Json &j)
        {
            if (j.is_null())
                return std::nullopt;
            return j.get<Millis>();
        }

        template <class T>
        void read_field(const Json &j, const char *key, T &out)
        {
            if (auto it = j.find(key); it != j.end())
                out = it->template get<T>();
        }

        std::string fmt_g9(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", v);
            return buf;
        }
    }

    Json timing_to_json(const TimingParams &tp)
    {
        return {
            {"tau_proc_0", tp.tau_proc_0}, {"tau_proc_plus", tp.tau_proc_plus}, {"dt_i", tp.dt_i},
            {"dt_e", tp.dt_e},             {"tau_inh", tp.tau_inh},             {"tau_spike", tp.tau_spike},
            {"tau_ref", tp.tau_ref},       {"dt_dendritic", tp.dt_dendritic},
        };
    }

    TimingParams timing_from_json(const Json &j, TimingParams tp)
    {
        read_field(j, "tau_proc_0", tp.tau_proc_0);
        read_field(j, "tau_proc_plus", tp.tau_proc_plus);
        read_field(j, "dt_i", tp.dt_i);
        read_field(j, "dt_e", tp.dt_e);
        read_field(j, "tau_inh", tp.tau_inh);
        read_field(j, "tau_spike", tp.tau_spike);
        read_field(j, "tau_ref", tp.tau_ref);
        read_field(j, "dt_dendritic", tp.dt_dendritic);
        return tp;
    }

    Json gen_params_to_json(const GenParams &gp)
    {
        return {
            {"n_neurons", gp.n_neurons}, {"p_min", gp.p_min}, {"d_min", gp.d_min},
            {"d_max", gp.d_max},         {"seed", gp.seed},   {"attempts_per_point", gp.attempts_per_point},
        };
    }

    GenParams gen_params_from_json(const Json &j, GenParams gp)
    {
        read_field(j, "n_neurons", gp.n_neurons);
        read_field(j, "p_min", gp.p_min);
        read_field(j, "d_min", gp.d_min);
        read_field(j, "d_max", gp.d_max);
        read_field(j, "seed", gp.seed);
        read_field(j, "attempts_per_point", gp.attempts_per_point);
        return gp;
    }

    Json network_to_json(const GeneratedNetwork &g)
    {
        Json positions = Json::array();
        for (const Point2 p : g.net.positions)
            positions.push_back({p.x, p.y});
        Json edges = Json::array();
        for (std::size_t u = 0; u < g.net.adjacency.size(); ++u)
            for (const NodeId v : g.net.adjacency[u])
                edges.push_back({u, v.value});
        Json targets = Json::array();
        for (const NodeId t : g.targets)
            targets.push_back(t.value);
        return {
            {"seed", g.gen.seed},
            {"gen_params", gen_params_to_json(g.gen)},
            {"environment", environment_to_json(g.net.environment)},
            {"positions", std::move(positions)},
            {"edges", std::move(edges)},
            {"source", g.source.value},
            {"targets", std::move(targets)},
        };
    }

    GeneratedNetwork network_from_json(const Json &j)
    {
        try
        {
            GeneratedNetwork g;
            g.gen = gen_params_from_json(j.at("gen_params"));
            g.gen.seed = j.at("seed").get<std::uint64_t>();
            std::vector<Point2> positions;
            for (const auto &p : j.at("positions"))
                positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            std::vector<std::pair<NodeId, NodeId>> edges;
            for (const auto &e : j.at("edges"))
            {
                const auto u = e.at(0).get<std::uint32_t>();
                const auto v = e.at(1).get<std::uint32_t>();
                if (u >= positions.size() || v >= positions.size())
                    throw ConfigError("network file: edge endpoint out of range");
                edges.push_back({NodeId{u}, NodeId{v}});
            }
            g.net = SpatialNetwork::from_edges(std::move(positions), edges, false);
            if (auto it = j.find("environment"); it != j.end())
                g.net.environment = environment_from_json(*it);
            g.source = NodeId{j.at("source").get<std::uint32_t>()};
            for (const auto &t : j.at("targets"))
                g.targets.push_back(NodeId{t.get<std::uint32_t>()});
            return g;
        }
        catch (const Json::exception &e)
        {
            throw ConfigError(std::string("malformed network file: ") + e.what());
        }
    }

    Json iteration_to_json(const IterationRecord &rec)
    {
        Json spikes = Json::array();
        for (const auto &t : rec.spike_time)
            spikes.push_back(optional_ms(t));
        return {
            {"index", rec.index},
            {"ttt", optional_ms(rec.ttt)},
            {"spike_time", std::move(spikes)},
            {"tagged_after", ids(rec.tagged_after)},
            {"newly_tagged", ids(rec.newly_tagged)},
            {"quiesced_at", rec.quiesced_at},
            {"emissions", rec.emissions},
            {"deliveries", rec.deliveries},
        };
    }

    IterationRecord iteration_from_json(const Json &j)
    {
        IterationRecord rec;
        rec.index = j.at("index").get<std::size_t>();
        rec.ttt = optional_ms_from(j.at("ttt"));
        for (const auto &t : j.at("spike_time"))
            rec.spike_time.push_back(optional_ms_from(t));
        rec.tagged_after = ids_from(j.at("tagged_after"));
        rec.newly_tagged = ids_from(j.at("newly_tagged"));
        read_field(j, "quiesced_at", rec.quiesced_at);
        read_field(j, "emissions", rec.emissions);
        read_field(j, "deliveries", rec.deliveries);
        return rec;
    }

    Json run_config_to_json(const RunConfig &cfg, std::size_t n)
    {
        Json targets = Json::array();
        for (const NodeId t : cfg.targets)
            targets.push_back(t.value);
        return {
            {"timing", timing_to_json(cfg.timing)},
            {"inhibition", std::string(to_string(cfg.mode))},
            {"source", cfg.source.value},
            {"targets", std::move(targets)},
            {"max_iterations", cfg.iteration_budget(n)},
            {"t_max_per_iteration", cfg.time_budget(n)},
        };
    }

    RunConfig run_config_from_json(const Json &j)
    {
        RunConfig cfg;
        cfg.timing = timing_from_json(j.at("timing"));
        cfg.mode = parse_inhibition_mode(j.at("inhibition").get<std::string>());
        cfg.source = NodeId{j.at("source").get<std::uint32_t>()};
        for (const auto &t : j.at("targets"))
            cfg.targets.push_back(NodeId{t.get<std::uint32_t>()});
        cfg.max_iterations = j.at("max_iterations").get<std::size_t>();
        cfg.t_max_per_iteration = j.at("t_max_per_iteration").get<Millis>();
        return cfg;
    }

    Json run_to_json(const RunResult &run, std::size_t n, const std::string &network_hash)
    {
        Json iterations = Json::array();
        for (const auto &rec : run.iterations)
            iterations.push_back(iteration_to_json(rec));
        return {
            {"config", run_config_to_json(run.config, n)},
            {"network_hash", network_hash},
            {"iterations", std::move(iterations)},
            {"readout", run.readout_record ? iteration_to_json(*run.readout_record) : Json(nullptr)},
            {"converged", run.converged},
            {"convergence_iteration",
             run.convergence_iteration ? Json(*run.convergence_iteration) : Json(nullptr)},
            {"readout_spiking", ids(run.readout_spiking)},
        };
    }

    RunResult run_from_json(const Json &j)
    {
        try
        {
            RunResult run;
            run.config = run_config_from_json(j.at("config"));
            for (const auto &it : j.at("iterations"))
                run.iterations.push_back(iteration_from_json(it));
            if (const auto &r = j.at("readout"); !r.is_null())
                run.readout_record = iteration_from_json(r);
            run.converged = j.at("converged").get<bool>();
            if (const auto &c = j.at("convergence_iteration"); !c.is_null())
                run.convergence_iteration = c.get<std::size_t>();
            run.readout_spiking = ids_from(j.at("readout_spiking"));
            return run;
        }
        catch (const Json::exception &e)
        {
            throw ConfigError(std::string("malformed run file: ") + e.what());
        }
    }

    std::string metrics_csv(const RunResult &run)
    {
        std::ostringstream os;
        os << "index,ttt_ms,n_spiked,n_tagged,n_newly_tagged,quiesced_at_ms\n";
        const auto row = [&](const IterationRecord &rec) {
            os << rec.index << ',' << (rec.ttt ? fmt_g9(*rec.ttt) : std::string()) << ',' << rec.spiked_count()
               << ',' << rec.tagged_after.size() << ',' << rec.newly_tagged.size() << ','
               << fmt_g9(rec.quiesced_at) << '\n';
        };
        for (const auto &rec : run.iterations)
            row(rec);
        if (run.readout_record)
            row(*run.readout_record);
        return os.str();
    }

    std::string trace_line(std::size_t iteration, const Event &ev)
    {
        Json j = {
            {"iter", iteration},
            {"t", ev.time},
            {"prio", static_cast<int>(ev.priority)},
            {"seq", ev.seq},
            {"kind", ev.is_timer() ? std::string("timer") : std::string(to_string(ev.kind()))},
            {"from", ev.from.value},
            {"to", ev.node.value},
        };
        return j.dump();
    }

    Json oracle_report_to_json(const OracleReport &rep)
    {
        return {
            {"exact_match", rep.exact_match},
            {"missing", ids(rep.missing)},
            {"extra", ids(rep.extra)},
            {"jaccard", rep.jaccard},
        };
    }

    Json audit_to_json(const InductionAudit &audit)
    {
        Json entries = Json::array();
        for (const auto &e : audit.entries)
            entries.push_back({
                {"iteration", e.iteration},
                {"passed", e.passed},
                {"missing", ids(e.missing)},
                {"unexpected", ids(e.unexpected)},
            });
        return {
            {"passed", audit.passed},
            {"first_failure", audit.first_failure ? Json(*audit.first_failure) : Json(nullptr)},
            {"entries", std::move(entries)},
        };
    }

    std::string read_text(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot read " + path.string());
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    Json read_json(const std::filesystem::path &path)
    {
        try
        {
            return Json::parse(read_text(path));
        }
        catch (const Json::parse_error &e)
        {
            throw ConfigError(path.string() + ": " + e.what());
        }
    }

    void write_text(const std::filesystem::path &path, std::string_view text)
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + path.string());
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
}
