"""Twisted Neumann-Zagier matrices and twisted 1-loop invariants."""

import json as _json

from ._tnz import (
    InputError,
    SolverError,
    one_loop,
    run_command,
    shapes,
    twisted_one_loop,
    verify,
)
from . import _tnz


def parse(path):
    return _json.loads(_tnz.parse(path))


def gluing_matrices(path):
    return _json.loads(_tnz.gluing_matrices(path))


def nz_matrices(path):
    return _json.loads(_tnz.nz_matrices(path))


__all__ = [
    "InputError",
    "SolverError",
    "gluing_matrices",
    "nz_matrices",
    "one_loop",
    "parse",
    "run_command",
    "shapes",
    "twisted_one_loop",
    "verify",
]
