#include "spikepath/analysis.hpp"
#include "spikepath/experiment.hpp"
#include "spikepath/io.hpp"
#include "spikepath/oracle.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
namespace sp = spikepath;

namespace
{
    // Python containers cross the boundary as JSON documents.
    sp::Json to_json(const py::object &obj)
    {
        const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
        return sp::Json::parse(text);
    }

    py::object to_python(const sp::Json &j)
    {
        return py::module_::import("json").attr("loads")(j.dump());
    }

    sp::ExperimentConfig config_from(const py::object &cfg)
    {
        return sp::experiment_from_json(cfg.is_none() ? sp::Json::object() : to_json(cfg));
    }

    sp::SpatialNetwork graph_from(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges,
                                  bool symmetric)
    {
        std::vector<std::pair<sp::NodeId, sp::NodeId>> e;
        for (const auto &[u, v] : edges)
        {
            if (u >= n || v >= n)
                throw sp::ConfigError("edge endpoint out of range");
            e.push_back({sp::NodeId{u}, sp::NodeId{v}});
        }
        return sp::SpatialNetwork::from_edges(std::vector<sp::Point2>(n), e, symmetric);
    }

    std::vector<std::uint32_t> ids(const sp::NodeSet &s)
    {
        std::vector<std::uint32_t> out;
        for (const auto v : s)
            out.push_back(v.value);
        return out;
    }

    sp::NodeSet set_from(const std::vector<std::uint32_t> &v)
    {
        sp::NodeSet s;
        for (const auto x : v)
            s.insert(sp::NodeId{x});
        return s;
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "spikepath core: spatial networks, the spiking search protocol and its analysis";

    static py::exception<sp::Error> base(m, "SpikepathError", PyExc_RuntimeError);
    static py::exception<sp::ConfigError> config_error(m, "ConfigError", base.ptr());
    static py::exception<sp::Unreachable> unreachable(m, "Unreachable", base.ptr());
    static py::exception<sp::IterationTimeout> timeout(m, "IterationTimeout", base.ptr());
    static py::exception<sp::PlacementExhausted> exhausted(m, "PlacementExhausted", base.ptr());
    static py::exception<sp::HashMismatch> mismatch(m, "HashMismatch", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try
        {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const sp::ConfigError &e)
        {
            PyErr_SetString(config_error.ptr(), e.what());
        }
        catch (const sp::Unreachable &e)
        {
            PyErr_SetString(unreachable.ptr(), e.what());
        }
        catch (const sp::IterationTimeout &e)
        {
            PyErr_SetString(timeout.ptr(), e.what());
        }
        catch (const sp::PlacementExhausted &e)
        {
            PyErr_SetString(exhausted.ptr(), e.what());
        }
        catch (const sp::HashMismatch &e)
        {
            PyErr_SetString(mismatch.ptr(), e.what());
        }
        catch (const sp::Error &e)
        {
            PyErr_SetString(base.ptr(), e.what());
        }
    });

    m.def("preset_names", &sp::preset_names);

    m.def(
        "default_config", [] { return to_python(sp::experiment_to_json(sp::ExperimentConfig{})); },
        "Experiment config with every default filled in.");

    m.def(
        "generate_network",
        [](const py::object &cfg) {
            return to_python(sp::network_to_json(sp::generate_network(config_from(cfg))));
        },
        py::arg("config") = py::none(), "Generate a network; returns the network.json document.");

    m.def(
        "run_experiment",
        [](const py::object &cfg) {
            const auto config = config_from(cfg);
            sp::Experiment ex;
            {
                py::gil_scoped_release release;
                ex = sp::run_experiment(config);
            }
            const std::string hash = sp::content_hash(ex.network_json);
            py::dict out;
            out["network"] = to_python(sp::Json::parse(ex.network_json));
            out["run"] = to_python(sp::run_to_json(ex.run, ex.network.net.size(), hash));
            out["metrics_csv"] = sp::metrics_csv(ex.run);
            return out;
        },
        py::arg("config") = py::none(), "Generate and simulate; returns {network, run, metrics_csv}.");

    m.def(
        "simulate",
        [](std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges, std::uint32_t source,
           const std::vector<std::uint32_t> &targets, const std::string &inhibition, const py::object &timing,
           bool symmetric, std::optional<std::size_t> max_iterations) {
            const sp::SpatialNetwork net = graph_from(n, edges, symmetric);
            sp::RunConfig cfg;
            cfg.timing = timing.is_none() ? sp::TimingParams{} : sp::timing_from_json(to_json(timing));
            cfg.mode = sp::parse_inhibition_mode(inhibition);
            cfg.source = sp::NodeId{source};
            for (const auto t : targets)
                cfg.targets.push_back(sp::NodeId{t});
            cfg.max_iterations = max_iterations;
            sp::RunResult run;
            {
                py::gil_scoped_release release;
                run = sp::run_until_converged(net, cfg);
            }
            return to_python(sp::run_to_json(run, n, ""));
        },
        py::arg("n"), py::arg("edges"), py::arg("source"), py::arg("targets"), py::arg("inhibition") = "global",
        py::arg("timing") = py::none(), py::arg("symmetric") = true, py::arg("max_iterations") = py::none(),
        "Run the protocol on an explicit graph; returns the run.json document.");

    m.def(
        "bfs_distances",
        [](std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges, std::uint32_t root,
           bool symmetric) {
            const auto d = sp::bfs_distances(graph_from(n, edges, symmetric).adjacency, sp::NodeId{root});
            std::vector<std::optional<std::uint32_t>> out;
            for (const auto x : d)
                out.push_back(x == sp::unreachable_hops ? std::nullopt : std::optional(x));
            return out;
        },
        py::arg("n"), py::arg("edges"), py::arg("root"), py::arg("symmetric") = true);

    m.def(
        "shortest_path_node_set",
        [](std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges, std::uint32_t source,
           std::uint32_t target, bool symmetric) {
            return ids(sp::shortest_path_node_set(graph_from(n, edges, symmetric).adjacency, sp::NodeId{source},
                                                  sp::NodeId{target}));
        },
        py::arg("n"), py::arg("edges"), py::arg("source"), py::arg("target"), py::arg("symmetric") = true,
        "Nodes lying on at least one shortest source-target path, ascending.");

    m.def(
        "compare_to_oracle",
        [](const std::vector<std::uint32_t> &readout, const std::vector<std::uint32_t> &oracle) {
            return to_python(sp::oracle_report_to_json(sp::compare_to_oracle(set_from(readout), set_from(oracle))));
        },
        py::arg("readout"), py::arg("oracle"));

    m.def(
        "tag_window",
        [](const py::object &timing) {
            const auto tp = timing.is_none() ? sp::TimingParams{} : sp::timing_from_json(to_json(timing));
            tp.validate();
            const auto w = sp::tag_window(tp);
            py::dict out;
            out["latest"] = w.latest;
            out["earliest_e"] = w.earliest_e;
            out["earliest_i"] = w.earliest_i;
            return out;
        },
        py::arg("timing") = py::none());

    m.def(
        "contour_lines",
        [](const std::vector<std::vector<std::optional<double>>> &rows, std::array<double, 4> bbox,
           const std::vector<double> &levels) {
            sp::FieldGrid g;
            g.resolution = rows.size();
            g.bbox = {{bbox[0], bbox[1]}, {bbox[2], bbox[3]}};
            for (const auto &row : rows)
            {
                if (row.size() != g.resolution)
                    throw sp::ConfigError("grid must be square");
                g.values.insert(g.values.end(), row.begin(), row.end());
            }
            std::vector<std::pair<double, std::vector<std::vector<std::pair<double, double>>>>> out;
            for (const auto &lvl : sp::contour_lines(g, levels))
            {
                std::vector<std::vector<std::pair<double, double>>> lines;
                for (const auto &pl : lvl.polylines)
                {
                    auto &line = lines.emplace_back();
                    for (const auto p : pl)
                        line.push_back({p.x, p.y});
                }
                out.push_back({lvl.level, std::move(lines)});
            }
            return out;
        },
        py::arg("rows"), py::arg("bbox"), py::arg("levels"),
        "Isolines of a square grid (rows bottom to top, None = masked) over bbox [minx, miny, maxx, maxy].");

    m.def(
        "content_hash", [](const std::string &text) { return sp::content_hash(text); }, py::arg("text"));

    m.def(
        "canonical_dump", [](const py::object &obj) { return sp::canonical_dump(to_json(obj)); }, py::arg("obj"));

    m.def(
        "cmd",
        [](const std::string &command, const py::object &cfg) {
            const sp::Json j = cfg.is_none() ? sp::Json::object() : to_json(cfg);
            py::gil_scoped_release release;
            return sp::guarded([&]() -> int {
                if (command == "sweep")
                    return sp::cmd_sweep(sp::sweep_from_json(j));
                const auto c = sp::experiment_from_json(j);
                if (command == "generate")
                    return sp::cmd_generate(c);
                if (command == "run")
                    return sp::cmd_run(c);
                if (command == "verify")
                    return sp::cmd_verify(c.outputs / "run.json", c.outputs / "network.json", c.outputs);
                if (command == "plot")
                    return sp::cmd_plot(c.outputs / "run.json", c.outputs / "network.json", c.plot,
                                        c.outputs / "panels");
                throw sp::ConfigError("unknown command '" + command + "'");
            });
        },
        py::arg("command"), py::arg("config") = py::none(),
        "Run a CLI command in-process; returns its exit status.");
}
