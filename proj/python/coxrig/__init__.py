"""Coxeter group splittings and torsion-rigidity reports.

Systems are given in the text form used by the command-line tool, e.g.
``"rank 3; m 1 3 = 3; m 2 3 = inf"``. Generators are 1-based.
"""

import json

from . import _core
from ._core import (
    CoxrigError,
    IndexOutOfRange,
    InvalidMatrix,
    OrderBoundExceeded,
    ParseError,
    UnsupportedType,
    counterexample_system,
    group_order,
    normalize_system,
    reduce_word,
)

__all__ = [
    "CoxrigError",
    "IndexOutOfRange",
    "InvalidMatrix",
    "OrderBoundExceeded",
    "ParseError",
    "UnsupportedType",
    "analyze",
    "ball",
    "classify",
    "counterexample_system",
    "group_order",
    "normalize_system",
    "reduce_word",
    "rigidity",
    "run_cli",
    "split",
    "verify_counterexample",
    "verify_dihedral",
]


def classify(system):
    return json.loads(_core.classify(system))


def split(system):
    return json.loads(_core.split(system))


def rigidity(system, order_bound=1_000_000):
    return json.loads(_core.rigidity(system, order_bound))


def analyze(system, order_bound=1_000_000):
    return json.loads(_core.analyze(system, order_bound))


def ball(system, radius=3):
    return json.loads(_core.ball(system, radius))


def verify_counterexample():
    return json.loads(_core.verify_counterexample())


def verify_dihedral():
    return json.loads(_core.verify_dihedral())


def run_cli(args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli(list(args))
