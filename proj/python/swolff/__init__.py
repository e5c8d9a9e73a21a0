"""Effective Hamiltonians by Schrieffer-Wolff transformations."""

import json as _json

from ._core import (
    SwolffError,
    bernoulli_coefficients,
    direct_rotation,
    exact_sw,
    generator_series,
    heff_series,
    heff_via_diagrams,
    tree_counts,
    verify,
)
from ._core import run_config as _run_config


def run(config, tolerance_scale=1.0, timestamp=""):
    """Run a config given as a dict or JSON string; returns (report, passed)."""
    text = config if isinstance(config, str) else _json.dumps(config)
    report, passed = _run_config(text, tolerance_scale, timestamp)
    return _json.loads(report), passed


__all__ = [
    "SwolffError",
    "bernoulli_coefficients",
    "direct_rotation",
    "exact_sw",
    "generator_series",
    "heff_series",
    "heff_via_diagrams",
    "run",
    "tree_counts",
    "verify",
]
