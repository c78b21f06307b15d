"""Spectral laboratory for dispersive estimates and the generalized KdV equation."""

import json

from . import _core
from ._core import (
    ConfigError,
    Grid1D,
    SpectralField,
    airy_propagate,
    besov_norm,
    classify_pair,
    derivative,
    energy,
    estimate_ids,
    free_snorm,
    gaussian_datum,
    lebesgue_norm,
    lhat_norm,
    mass,
    picard_solve,
    reference_solve,
    run_cli,
    sobolev_norm,
    soliton_datum,
    weighted_norm,
)

__version__ = _core.__version__


def resolve_config(command, config=None, **flags):
    """Resolved configuration of a command; keyword flags use underscores for dashes."""
    flags = {k.replace("_", "-"): v for k, v in flags.items()}
    return json.loads(_core.resolve_config_json(command, json.dumps(config or {}), json.dumps(flags)))


def execute(command, config=None, **flags):
    """Runs a command in-process; returns (exit_code, report, csv) without writing files."""
    resolved = resolve_config(command, config, **flags)
    code, report, csv = _core.execute_json(command, json.dumps(resolved))
    return code, json.loads(report), csv


def verify(estimate_id, **params):
    """Ensemble verification of one inequality; returns the report's result block."""
    code, report, _ = execute("verify", id=estimate_id, **params)
    return report["result"]
