"""Shortest-path search with spiking wavefronts on spatial networks."""

from ._core import (
    ConfigError,
    HashMismatch,
    IterationTimeout,
    PlacementExhausted,
    SpikepathError,
    Unreachable,
    bfs_distances,
    canonical_dump,
    cmd,
    compare_to_oracle,
    content_hash,
    contour_lines,
    default_config,
    generate_network,
    preset_names,
    run_experiment,
    shortest_path_node_set,
    simulate,
    tag_window,
)

EXIT_CODES = {
    "ok": 0,
    "verification_failed": 1,
    "not_converged": 2,
    "unreachable": 3,
    "config_error": 4,
    "hash_mismatch": 5,
    "sweep_failed": 6,
    "internal_error": 70,
}

__all__ = [
    "ConfigError",
    "EXIT_CODES",
    "HashMismatch",
    "IterationTimeout",
    "PlacementExhausted",
    "SpikepathError",
    "Unreachable",
    "bfs_distances",
    "canonical_dump",
    "cmd",
    "compare_to_oracle",
    "content_hash",
    "contour_lines",
    "default_config",
    "generate_network",
    "preset_names",
    "run_experiment",
    "shortest_path_node_set",
    "simulate",
    "tag_window",
]
