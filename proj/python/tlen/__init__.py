"""Translation lengths in Out(F_n): certified bounds, exact small-ball norms,
and filtered graph-map witnesses.  Thin wrapper over the C++ core; report
functions return the same JSON documents the CLI writes, as dicts."""

import json as _json

from ._tlen import Aut, Ball, GraphMap, alpha, alpha_tilde, reduce_word
from . import _tlen as _core

__all__ = [
    "Aut",
    "Ball",
    "GraphMap",
    "alpha",
    "alpha_tilde",
    "reduce_word",
    "tau_certificate",
    "recheck_certificate",
    "growth",
    "cancellation_constants",
    "verify_tau_bounds",
    "validate_graph",
    "graph_witness",
]


def tau_certificate(aut):
    """Self-contained certificate: {"aut": ..., "estimate": ...}."""
    return _json.loads(_core.tau_certificate_json(aut))


def recheck_certificate(cert):
    """Replay a certificate's evidence.  Returns (ok, inconclusive, problems)."""
    ok, inconclusive, problems = _core.recheck_certificate_json(_json.dumps(cert))
    return ok, inconclusive, list(problems)


def growth(aut):
    return _json.loads(_core.growth_json(aut))


def cancellation_constants(rank, depth=8):
    return _json.loads(_core.cancellation_json(rank, depth))


def verify_tau_bounds(ball, aut):
    return _json.loads(ball.verify_tau_bounds_json(aut))


def validate_graph(graph_map):
    return _json.loads(graph_map.validate_json())


def graph_witness(graph_map, k=50):
    return _json.loads(graph_map.witness_json(k))
