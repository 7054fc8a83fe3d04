"""Bohr radius computations for power series on Reinhardt domains."""

import json

from ._bohrlab import (
    RadiusEstimate,
    Series,
    __version__,
    compose_linear,
    default_config,
    function_radius,
    hull_distance,
    mobius_infimum,
    mobius_series,
    monomial_sup,
    r1_norm,
    r2_norm,
    witness_upper_bound_l1,
)
from ._bohrlab import run_experiment as _run_experiment


def run_experiment(command, **overrides):
    """Run a named experiment and return the record as a dict."""
    config = json.loads(default_config())
    config["command"] = command
    config.update(overrides)
    return json.loads(_run_experiment(json.dumps(config)))


__all__ = [
    "RadiusEstimate",
    "Series",
    "__version__",
    "compose_linear",
    "function_radius",
    "hull_distance",
    "mobius_infimum",
    "mobius_series",
    "monomial_sup",
    "r1_norm",
    "r2_norm",
    "run_experiment",
    "witness_upper_bound_l1",
]
