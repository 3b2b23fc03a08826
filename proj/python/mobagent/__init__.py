"""Mobile-agent triangle counting and truss decomposition simulator."""

import json
from fractions import Fraction

from ._mobagent import (
    ConfigError,
    GraphError,
    PortGraph,
    SimulationFault,
    generate,
    h_index,
    load_graph,
    oracle_triangles,
    oracle_truss,
    oracle_truss_hindex,
)
from . import _mobagent

__all__ = [
    "ConfigError",
    "GraphError",
    "PortGraph",
    "SimulationFault",
    "generate",
    "h_index",
    "load_graph",
    "oracle_triangles",
    "oracle_truss",
    "oracle_truss_hindex",
    "oracle_centrality",
    "oracle_lcc",
    "simulate",
    "run_report",
]


def _fractions(pairs):
    return [Fraction(num, den) for num, den in pairs]


def oracle_centrality(graph):
    """(defined, [Fraction per node])."""
    defined, values = _mobagent.oracle_centrality(graph)
    return defined, _fractions(values)


def oracle_lcc(graph, formula="paper"):
    return _fractions(_mobagent.oracle_lcc(graph, formula))


def simulate(graph, protocol, **options):
    """Run one protocol; rationals come back as Fractions."""
    out = _mobagent.simulate(graph, protocol, **options)
    if protocol in ("centrality", "lcc"):
        out["per_node"] = _fractions(out["per_node"])
    return out


def run_report(gen, protocol, **options):
    """Full run report (simulation, oracle, deltas, verdict) as a dict."""
    return json.loads(_mobagent.run_report(gen, protocol, **options))
