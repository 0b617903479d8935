#include "spikepath/canonical_json.hpp"
#include "spikepath/experiment.hpp"
#include "spikepath/io.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace spikepath;

TEST(CanonicalJson, SortedKeysAndNineDigits)
{
    const Json j = {{"b", 1}, {"a", 0.123456789012}, {"c", {{"z", 2.0}, {"y", nullptr}}}};
    EXPECT_EQ(canonical_dump(j), "{\n  \"a\": 0.123456789,\n  \"b\": 1,\n  \"c\": {\n    \"y\": null,\n    \"z\": "
                                 "2.0\n  }\n}\n");
}

TEST(CanonicalJson, RoundSignificant)
{
    EXPECT_EQ(round_significant(10.1), 10.1);
    EXPECT_EQ(round_significant(1.0 / 3.0), 0.333333333);
    EXPECT_EQ(round_significant(123456789.4), 123456789.0);
    EXPECT_EQ(round_significant(0.0), 0.0);
    EXPECT_EQ(round_significant(-2.5e-12), -2.5e-12);
}

TEST(CanonicalJson, DumpIsIdempotent)
{
    const Json j = {{"x", {0.1 + 0.2, 1e-7 / 3, 12345.678901234}}};
    const auto once = canonical_dump(j);
    EXPECT_EQ(canonical_dump(Json::parse(once)), once);
}

TEST(Hash, Fnv1a64KnownValues)
{
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(content_hash("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(content_hash("foobar"), "85944171f73967e8");
}

TEST(Io, RunJsonRoundTrip)
{
    const auto net = fixtures::path_graph(5);
    const auto r = run_until_converged(net, fixtures::run_config(node(0), {node(4)}));
    const Json j = run_to_json(r, net.size(), "abc");
    const auto text = canonical_dump(j);
    const auto back = run_from_json(Json::parse(text));
    EXPECT_EQ(back.converged, r.converged);
    EXPECT_EQ(back.convergence_iteration, r.convergence_iteration);
    EXPECT_EQ(back.readout_spiking, r.readout_spiking);
    ASSERT_EQ(back.iterations.size(), r.iterations.size());
    for (std::size_t i = 0; i < r.iterations.size(); ++i)
    {
        EXPECT_EQ(back.iterations[i].tagged_after, r.iterations[i].tagged_after);
        EXPECT_EQ(back.iterations[i].spike_time, r.iterations[i].spike_time);
        EXPECT_EQ(back.iterations[i].ttt, r.iterations[i].ttt);
    }
    EXPECT_EQ(back.config.source, r.config.source);
    EXPECT_EQ(back.config.targets, r.config.targets);
    EXPECT_EQ(back.config.max_iterations, 5u);
    EXPECT_EQ(canonical_dump(run_to_json(back, net.size(), "abc")), text);

    for (const char *key : {"config", "network_hash", "iterations", "readout", "converged", "convergence_iteration",
                            "readout_spiking"})
        EXPECT_TRUE(j.contains(key)) << key;
    for (const char *key : {"index", "ttt", "spike_time", "tagged_after", "newly_tagged"})
        EXPECT_TRUE(j["iterations"][0].contains(key)) << key;
    EXPECT_EQ(j["iterations"][0]["spike_time"].size(), 5u);
}

TEST(Io, MetricsCsv)
{
    const auto net = fixtures::path_graph(2);
    const auto r = run_until_converged(net, fixtures::run_config(node(0), {node(1)}));
    EXPECT_EQ(metrics_csv(r), "index,ttt_ms,n_spiked,n_tagged,n_newly_tagged,quiesced_at_ms\n"
                              "1,21.2,2,2,1,34.2\n"
                              "2,16.2,2,2,0,29.2\n");
}

TEST(Io, TraceLine)
{
    Event ev;
    ev.time = 16.1;
    ev.priority = EventPriority::deliver_e;
    ev.seq = 3;
    ev.node = node(1);
    ev.from = node(0);
    EXPECT_EQ(trace_line(1, ev), R"({"from":0,"iter":1,"kind":"E","prio":1,"seq":3,"t":16.1,"to":1})");
}

TEST(Config, DefaultTimingValues)
{
    const ExperimentConfig cfg = experiment_from_json(Json::object());
    EXPECT_EQ(cfg.environment, "square");
    EXPECT_EQ(cfg.gen.n_neurons, 1000u);
    EXPECT_EQ(cfg.gen.p_min, 0.01);
    EXPECT_EQ(cfg.gen.d_min, 0.05);
    EXPECT_EQ(cfg.gen.d_max, 0.15);
    EXPECT_EQ(cfg.timing.tau_proc_0, 10.0);
    EXPECT_EQ(cfg.timing.tau_proc_plus, 5.0);
    EXPECT_EQ(cfg.timing.dt_i, 2.0);
    EXPECT_EQ(cfg.timing.dt_e, 5.0);
    EXPECT_EQ(cfg.timing.tau_inh, 10.0);
    EXPECT_EQ(cfg.timing.tau_spike, 0.1);
    EXPECT_EQ(cfg.timing.tau_ref, 2.0);
    EXPECT_EQ(cfg.timing.dt_dendritic, 1.0);
    EXPECT_EQ(cfg.inhibition, InhibitionMode::global);
    EXPECT_EQ(std::get<std::string>(cfg.source), "bottom_left");
    EXPECT_EQ(std::get<std::string>(cfg.targets.at(0)), "top_right");
    EXPECT_EQ(cfg.plot.resolution, 200u);
    EXPECT_EQ(cfg.plot.n_levels, 12u);
}

TEST(Config, AnchorsAndRoundTrip)
{
    const auto cfg = experiment_from_json(Json::parse(R"({
        "environment": "a_maze", "inhibition": "local",
        "source": [0.1, 0.2], "targets": ["top_right", {"node": 17}],
        "gen_params": {"seed": 9, "n_neurons": 500},
        "timing": {"dt_dendritic": 0.0},
        "max_iterations": 40, "plot": {"render": true, "n_levels": 6}
    })"));
    EXPECT_EQ(std::get<Point2>(cfg.source), (Point2{0.1, 0.2}));
    EXPECT_EQ(std::get<NodeId>(cfg.targets[1]), node(17));
    EXPECT_EQ(cfg.gen.seed, 9u);
    EXPECT_EQ(cfg.gen.d_max, 0.15);
    EXPECT_EQ(cfg.timing.dt_dendritic, 0.0);
    EXPECT_EQ(cfg.timing.dt_e, 5.0);
    EXPECT_EQ(cfg.max_iterations, 40u);
    EXPECT_EQ(cfg.plot.n_levels, 6u);

    const auto again = experiment_from_json(experiment_to_json(cfg));
    EXPECT_EQ(experiment_to_json(again), experiment_to_json(cfg));
}

TEST(Config, Rejections)
{
    EXPECT_THROW(experiment_from_json(Json::parse(R"({"enviroment": "square"})")), ConfigError);
    EXPECT_THROW(experiment_from_json(Json::parse(R"({"inhibition": "partial"})")), ConfigError);
    EXPECT_THROW(experiment_from_json(Json::parse(R"({"targets": []})")), ConfigError);
    EXPECT_THROW(experiment_from_json(Json::parse(R"({"source": 3})")), ConfigError);
    EXPECT_THROW(experiment_from_json(Json::parse(R"({"plot": {"n_levels": 1}})")), ConfigError);
    EXPECT_THROW(experiment_from_json(Json::parse(R"({"timing": {"tau_proc_plus": 10}})")), ConfigError);
    EXPECT_THROW(experiment_from_json(Json::parse(R"({"gen_params": {"n_neurons": "many"}})")), ConfigError);
}

TEST(Config, SweepSeedsMustBeDistinct)
{
    auto spec = sweep_from_json(Json::parse(R"({"sweep": {"seeds": [1, 2, 2]}})"));
    EXPECT_THROW(spec.validate(), ConfigError);
    spec.seeds = {1, 2, 3};
    EXPECT_NO_THROW(spec.validate());
    spec.parallelism = 0;
    EXPECT_THROW(spec.validate(), ConfigError);
}

TEST(Config, ShippedConfigsLoad)
{
    for (const auto &entry : std::filesystem::directory_iterator(std::filesystem::path(SPIKEPATH_DATA_DIR) / "configs"))
        EXPECT_NO_THROW(load_sweep(entry.path())) << entry.path();
}
