import json
import pathlib

import pytest

import spikepath


def path_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def test_presets_and_defaults(validate):
    assert {"square", "circle", "t_maze", "a_maze"} <= set(spikepath.preset_names())
    cfg = spikepath.default_config()
    validate(cfg, "config")
    assert cfg["inhibition"] == "global"
    assert cfg["gen_params"]["n_neurons"] == 1000


def test_tag_window():
    w = spikepath.tag_window()
    assert w["latest"] == pytest.approx(17.1)
    bare = spikepath.tag_window({"dt_dendritic": 0.0, "tau_spike": 0.0})
    assert bare["latest"] == pytest.approx(15.0)
    with pytest.raises(spikepath.ConfigError):
        spikepath.tag_window({"tau_proc_plus": 20.0})


@pytest.mark.parametrize("k", [1, 2, 5, 9])
def test_path_graph_converges_in_k(k):
    run = spikepath.simulate(k + 1, path_edges(k + 1), 0, [k])
    assert run["converged"]
    assert run["convergence_iteration"] == k
    assert run["readout_spiking"] == list(range(k + 1))
    ttts = [it["ttt"] for it in run["iterations"]] + [run["readout"]["ttt"]]
    assert all(b <= a + 1e-9 for a, b in zip(ttts, ttts[1:]))


def test_no_inhibition_never_converges():
    run = spikepath.simulate(4, path_edges(4), 0, [3], inhibition="none", max_iterations=6)
    assert not run["converged"]
    assert len(run["iterations"]) == 6
    assert all(it["tagged_after"] == [3] for it in run["iterations"])


def test_oracle_helpers():
    # 2x3 grid: two shortest paths from corner to corner
    edges = [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]
    assert spikepath.bfs_distances(6, edges, 0) == [0, 1, 2, 1, 2, 3]
    assert spikepath.shortest_path_node_set(6, edges, 0, 5) == [0, 1, 2, 3, 4, 5]
    assert spikepath.shortest_path_node_set(6, edges, 0, 4) == [0, 1, 3, 4]
    assert spikepath.bfs_distances(3, [(0, 1)], 0)[2] is None
    rep = spikepath.compare_to_oracle([0, 1, 2], [0, 1, 3])
    assert rep == {"exact_match": False, "missing": [3], "extra": [2], "jaccard": 0.5}


def test_contour_lines_of_a_ramp():
    rows = [[float(x) for x in range(4)] for _ in range(4)]
    (level, lines), = spikepath.contour_lines(rows, [0, 0, 1, 1], [1.5])
    assert level == 1.5
    assert len(lines) == 1
    xs = {round(x, 9) for x, _ in lines[0]}
    assert xs == {0.5}


def test_canonical_json_and_hash():
    text = spikepath.canonical_dump({"b": 1, "a": 0.1 + 0.2})
    assert text == '{\n  "a": 0.3,\n  "b": 1\n}\n'
    assert spikepath.content_hash("a") == "af63dc4c8601ec8c"


def test_run_experiment(small_config, validate):
    out = spikepath.run_experiment(small_config)
    validate(out["network"], "network")
    validate(out["run"], "run")
    assert out["run"]["converged"]
    assert out["metrics_csv"].splitlines()[0] == "index,ttt_ms,n_spiked,n_tagged,n_newly_tagged,quiesced_at_ms"


def test_errors_map_to_exceptions(small_config):
    with pytest.raises(spikepath.ConfigError):
        spikepath.run_experiment({"enviroment": "square"})
    with pytest.raises(spikepath.SpikepathError):
        spikepath.generate_network({"gen_params": {"n_neurons": 50, "d_max": 0.01}, "connect_retries": 1})


def test_commands_and_emitted_files(small_config, validate):
    out = pathlib.Path(small_config["outputs"])
    assert spikepath.cmd("run", small_config) == spikepath.EXIT_CODES["ok"]
    assert spikepath.cmd("verify", small_config) == spikepath.EXIT_CODES["ok"]

    validate(json.loads((out / "network.json").read_text()), "network")
    run = json.loads((out / "run.json").read_text())
    validate(run, "run")
    validate(json.loads((out / "oracle.json").read_text()), "oracle")
    validate(json.loads((out / "audit.json").read_text()), "audit")
    with open(out / "trace.jsonl") as fh:
        for i, line in enumerate(fh):
            event = json.loads(line)
            if i % 1000 == 0:
                validate(event, "trace_line")
    panels = sorted((out / "panels").glob("iteration_*.svg"))
    assert len(panels) == len(run["iterations"]) + 1
    assert panels[0].read_text().startswith("<svg")

    assert spikepath.cmd("plot", small_config) == spikepath.EXIT_CODES["ok"]

    net = json.loads((out / "network.json").read_text())
    net["source"] = (net["source"] + 1) % len(net["positions"])
    (out / "network.json").write_text(spikepath.canonical_dump(net))
    assert spikepath.cmd("verify", small_config) == spikepath.EXIT_CODES["hash_mismatch"]

    assert spikepath.cmd("run", {"inhibition": "sideways"}) == spikepath.EXIT_CODES["config_error"]


def test_sweep(small_config, validate):
    cfg = dict(small_config, trace=False, plot={"render": False}, sweep={"seeds": [3, 1], "parallelism": 2})
    assert spikepath.cmd("sweep", cfg) == 0
    summary = json.loads((pathlib.Path(cfg["outputs"]) / "summary.json").read_text())
    validate(summary, "summary")
    assert [r["seed"] for r in summary["runs"]] == [3, 1]
    assert all(r["status"] == "ok" for r in summary["runs"])
