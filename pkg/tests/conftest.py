"""Shared test oracles: independent pure-python cut enumeration and LP references.

The oracles here deliberately avoid the library's vectorized code paths so
tests compare two independent routes to the same quantity.
"""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from bilingap.envelopes import EvaluationPoint
from bilingap.graph import SignedWeightedGraph, VertexSubset


def enumerate_cut_values(g: SignedWeightedGraph, x: VertexSubset) -> dict[int, float]:
    """mask -> signed cut weight inside x, by direct edge scanning."""
    verts = sorted(x.members)
    pos = {v: p for p, v in enumerate(verts)}
    inside = [(i, j, w) for i, j, w in g.edges if i in pos and j in pos]
    out = {}
    for mask in range(1 << len(verts)):
        total = 0.0
        for i, j, w in inside:
            if (mask >> pos[i] & 1) != (mask >> pos[j] & 1):
                total += w
        out[mask] = total
    return out


def oracle_mu(g: SignedWeightedGraph, x: VertexSubset) -> tuple[float, float]:
    """(mu_plus, mu_minus) inside x via the pure-python enumeration."""
    vals = enumerate_cut_values(g, x)
    return max(vals.values()), min(vals.values())


def oracle_hull(g: SignedWeightedGraph, coords) -> tuple[float, float]:
    """(cav, vex) at coords via scipy LP over all 2^n cube vertices."""
    from scipy.optimize import linprog

    from bilingap.envelopes import evaluate_bilinear

    n = g.n
    verts = list(itertools.product((0.0, 1.0), repeat=n))
    c = np.array([evaluate_bilinear(g, EvaluationPoint.from_iterable(v)) for v in verts])
    a_eq = np.vstack([np.ones(len(verts)), np.array(verts).T])
    b_eq = np.concatenate([[1.0], np.asarray(coords, dtype=np.float64)])
    lo = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    hi = linprog(-c, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    assert lo.status == 0 and hi.status == 0
    return -hi.fun, lo.fun


def random_int_graph(
    seed: int, n: int, low: int = -5, high: int = 5, edge_prob: float = 0.6
) -> SignedWeightedGraph:
    """Random graph with nonzero integer weights in [low, high], seeded."""
    rnd = random.Random(seed)
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rnd.random() < edge_prob:
                w = 0
                while w == 0:
                    w = rnd.randint(low, high)
                edges.append((i, j, float(w)))
    return SignedWeightedGraph(n, tuple(edges))


ACCEPTANCE_RESULTS: list[tuple[str, str, bool, str]] = []


def record_acceptance(criterion: str, name: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((criterion, name, ok, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, name, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        line = f"ACCEPTANCE {criterion} [{name}]: {status}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture
def tmp_instance_file(tmp_path):
    def _write(g: SignedWeightedGraph, name: str = "inst.json"):
        from bilingap.graph import write_instance

        path = tmp_path / name
        write_instance(g, path)
        return path

    return _write
