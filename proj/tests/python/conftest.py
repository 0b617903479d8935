import json
import os
import pathlib

import jsonschema
import pytest

SCHEMAS = pathlib.Path(os.environ.get("SPIKEPATH_SCHEMAS", pathlib.Path(__file__).parents[2] / "schemas"))


@pytest.fixture(scope="session")
def validate():
    cache = {}

    def check(doc, name):
        if name not in cache:
            cache[name] = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
        jsonschema.validate(doc, cache[name])

    return check


@pytest.fixture
def small_config(tmp_path):
    return {
        "environment": "square",
        "gen_params": {"seed": 4, "n_neurons": 300, "d_max": 0.2},
        "outputs": str(tmp_path / "out"),
        "trace": True,
        "plot": {"render": True, "resolution": 60, "heat_cells": 20, "n_levels": 5},
    }
