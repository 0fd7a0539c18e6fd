"""Exact Hochschild and cyclic homology of quotients of polynomial rings."""

import json as _json

from ._core import (
    GammaError,
    cyclic,
    hochschild,
    hodge_layers,
    oracle_cyclic,
    oracle_hochschild,
    smith,
    witness,
)
from ._core import run_job as _run_job


def run_job(text, command="", n_max=-1, seed=1):
    """Runs a batch job and returns (result dict, exit code)."""
    out, code = _run_job(text, command, n_max, seed)
    return _json.loads(out), code


__all__ = [
    "GammaError",
    "cyclic",
    "hochschild",
    "hodge_layers",
    "oracle_cyclic",
    "oracle_hochschild",
    "run_job",
    "smith",
    "witness",
]
