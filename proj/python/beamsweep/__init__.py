"""Python bindings for the beamsweep library."""

import json as _json

from ._core import (
    ConfigError,
    ContractViolation,
    InputError,
    beamformed_response,
    ca_cfar,
    catalog,
    dft_interpolate,
    dictionary,
    dirichlet_kernel,
    extract_peaks,
    minimal_naf_grid,
    naf_resolution,
    naf_to_cross_track_m,
    omp,
    oversampled_naf_grid,
    spline_interpolate,
    sweep_durations,
)
from ._core import evaluate as _evaluate


def evaluate(scenarios=(), methods=(), n_seeds=0, config=None):
    """Run the evaluation and return the parsed report."""
    text = _json.dumps(config) if config else ""
    return _json.loads(_evaluate(list(scenarios), list(methods), n_seeds, text))


__all__ = [
    "ConfigError",
    "ContractViolation",
    "InputError",
    "beamformed_response",
    "ca_cfar",
    "catalog",
    "dft_interpolate",
    "dictionary",
    "dirichlet_kernel",
    "evaluate",
    "extract_peaks",
    "minimal_naf_grid",
    "naf_resolution",
    "naf_to_cross_track_m",
    "omp",
    "oversampled_naf_grid",
    "spline_interpolate",
    "sweep_durations",
]
