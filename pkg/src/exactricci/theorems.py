"""Executable checks of the minimum-degree curvature theorem, its diameter
lemma, the intermediate proof inequalities and the sharpness family.

Every check returns a :class:`TheoremReport`. A report is a violation when
its hypothesis holds but its conclusion does not.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

import numpy as np

from ._parallel import pmap
from .assignment import lly_equal_degree
from .curvature import kappa_lly, ricci_lower
from .graph import (
    Graph,
    GraphError,
    common_neighbors,
    diameter,
    distance,
    format_edge_list,
    generate_sharpness,
    min_degree,
    random_min_degree_graph,
)
from .transport import format_rational

MODES = ("threshold", "diameter", "proof_bound")
MAX_EXHAUSTIVE_N = 6


@dataclass
class TheoremReport:
    theorem: str
    hypothesis_holds: bool
    conclusion_holds: bool
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def violation(self) -> bool:
        return self.hypothesis_holds and not self.conclusion_holds

    def to_dict(self) -> dict:
        def plain(value):
            if isinstance(value, Fraction):
                return format_rational(value)
            if isinstance(value, dict):
                return {k: plain(v) for k, v in value.items()}
            if isinstance(value, (list, tuple)):
                return [plain(v) for v in value]
            return value

        return {
            "theorem": self.theorem,
            "hypothesis_holds": self.hypothesis_holds,
            "conclusion_holds": self.conclusion_holds,
            "violation": self.violation,
            "witness": plain(self.witness),
            "details": plain(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def degree_threshold_holds(G: Graph) -> bool:
    """``min degree >= 2n/3 - 1`` compared exactly as ``3 (delta + 1) >= 2n``."""
    return 3 * (min_degree(G) + 1) >= 2 * G.n


def check_degree_threshold(G: Graph, method: str = "auto") -> TheoremReport:
    if G.num_edges == 0:
        raise GraphError("graph has no edges")
    ric, (x, y) = ricci_lower(G, method=method)
    return TheoremReport(
        "degree_threshold",
        degree_threshold_holds(G),
        ric >= 0,
        witness={"x": x, "y": y, "kappa": ric},
        details={"n": G.n, "min_degree": min_degree(G), "ricci_lower": ric},
    )


def check_diameter_lemma(G: Graph) -> TheoremReport:
    delta = min_degree(G)
    diam = diameter(G)
    return TheoremReport(
        "diameter_lemma",
        2 * delta >= G.n - 1,
        diam <= 2,
        details={"n": G.n, "min_degree": delta,
                 "diameter": "inf" if diam == float("inf") else diam},
    )


def check_neighborhood_bounds(G: Graph) -> TheoremReport:
    """Per-edge counting facts used in the threshold proof.

    Under the threshold every edge has ``3 (|N_xy| + 2) >= n``; the degree
    bound ``d_y <= n - d_x + |N_xy|`` holds on any graph and is checked in
    both orientations. The first failing edge is the witness.
    """
    witness = None
    for x, y in G.edges():
        common = len(common_neighbors(G, x, y))
        dx, dy = G.degree(x), G.degree(y)
        ok = 3 * (common + 2) >= G.n or not degree_threshold_holds(G)
        ok = ok and dy <= G.n - dx + common and dx <= G.n - dy + common
        if not ok:
            witness = {"x": x, "y": y, "common": common, "dx": dx, "dy": dy}
            break
    return TheoremReport(
        "neighborhood_bounds",
        True,
        witness is None,
        witness=witness,
        details={"n": G.n, "min_degree": min_degree(G)},
    )


def proof_bound(G: Graph, x: int, y: int) -> Fraction:
    """Lower bound ``(2 |N_xy| + 3) / max(d_x, d_y) - 1`` on the LLY curvature."""
    common = len(common_neighbors(G, x, y))
    return Fraction(2 * common + 3, max(G.degree(x), G.degree(y))) - 1


def check_proof_bound(G: Graph, x: int | None = None, y: int | None = None) -> TheoremReport:
    """Compare LLY curvature with :func:`proof_bound` on one edge, or on every
    edge when ``x`` and ``y`` are omitted (witness = smallest slack).

    The bound is only claimed for diameter at most 2; otherwise the report's
    hypothesis is false and it is marked inapplicable.
    """
    edges = [(x, y)] if x is not None else G.edges()
    if x is not None and not G.has_edge(x, y):
        raise GraphError(f"({x}, {y}) is not an edge")
    diam = diameter(G)
    if diam > 2:
        return TheoremReport("proof_bound", False, True,
                             details={"applicable": False, "n": G.n})
    worst = None
    for u, v in edges:
        kappa = kappa_lly(G, u, v).kappa
        bound = proof_bound(G, u, v)
        if worst is None or kappa - bound < worst["slack"]:
            worst = {"x": u, "y": v, "kappa": kappa, "bound": bound, "slack": kappa - bound}
    return TheoremReport(
        "proof_bound",
        True,
        worst is None or worst["slack"] >= 0,
        witness=worst,
        details={"applicable": True, "n": G.n, "edges_checked": len(edges)},
    )


def check_sharpness(l: int) -> TheoremReport:
    """Verify the extremal construction for parameter ``l``.

    Checks ``n = 3l + 3``, minimum degree ``2l = 2n/3 - 2``, equal endpoint
    degrees, all cross distances between the private neighbourhoods equal
    to 2, and curvature ``-1/(2l)`` from both the transport route and the
    assignment formula.
    """
    s = generate_sharpness(l)
    G = s.graph
    expected = Fraction(-1, 2 * l)
    via_transport = kappa_lly(G, s.x, s.y, method="transport").kappa
    via_assignment = lly_equal_degree(G, s.x, s.y).kappa
    checks = {
        "vertex_count": G.n == 3 * l + 3,
        "min_degree": min_degree(G) == 2 * l and 3 * (min_degree(G) + 2) == 2 * G.n,
        "equal_degrees": G.degree(s.x) == G.degree(s.y) == 2 * l,
        "cross_distances": all(distance(G, a, b) == 2 for a in s.xs for b in s.ys),
        "kappa_transport": via_transport == expected,
        "kappa_assignment": via_assignment == expected,
    }
    return TheoremReport(
        "sharpness",
        True,
        all(checks.values()),
        witness={"x": s.x, "y": s.y, "kappa": via_transport},
        details={"l": l, "n": G.n, "min_degree": min_degree(G), "expected": expected,
                 "kappa_transport": via_transport, "kappa_assignment": via_assignment,
                 "checks": checks},
    )


# -- sweeps -------------------------------------------------------------------


def mode_min_degree(n: int, mode: str) -> int:
    """Smallest minimum degree meeting the hypothesis of ``mode`` on ``n`` vertices."""
    if mode == "threshold":
        return max(0, -(-(2 * n - 3) // 3))
    if mode in ("diameter", "proof_bound"):
        return n // 2
    raise ValueError(f"mode must be one of {MODES}")


def _run_mode(G: Graph, mode: str) -> TheoremReport:
    if mode == "threshold":
        return check_degree_threshold(G)
    if mode == "diameter":
        return check_diameter_lemma(G)
    return check_proof_bound(G)


def _sample(seed: int, n_min: int, n_max: int, mode: str, index: int) -> TheoremReport:
    rng = np.random.default_rng(np.random.SeedSequence([seed, index, 0]))
    n = int(rng.integers(n_min, n_max + 1))
    G = random_min_degree_graph(n, mode_min_degree(n, mode), [seed, index, 1])
    report = _run_mode(G, mode)
    report.details.update({"sample": index, "seed": seed})
    if report.violation:
        report.details["graph"] = format_edge_list(G)
    return report


def sweep_random(n_min: int, n_max: int, samples: int, seed: int, mode: str = "threshold",
                 workers: int | None = 1) -> list[TheoremReport]:
    """Falsification sweep over random graphs meeting the hypothesis of ``mode``.

    Sample ``i`` draws its vertex count from the stream ``(seed, i, 0)`` and
    its graph from ``(seed, i, 1)``, so results do not depend on ``workers``.
    Violating reports carry the witness graph in edge-list form.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if not 1 <= n_min <= n_max or samples < 1:
        raise ValueError("need 1 <= n_min <= n_max and samples >= 1")
    if n_min < 2 and mode == "threshold":
        raise GraphError("threshold mode needs n >= 2 so that graphs have edges")
    job = partial(_sample, seed, n_min, n_max, mode)
    return pmap(job, range(samples), workers)


def labeled_graphs(n: int, min_deg: int = 0):
    """Every labelled simple graph on ``n`` vertices with minimum degree >= ``min_deg``."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        deg = [0] * n
        edges = []
        for k, (u, v) in enumerate(pairs):
            if mask >> k & 1:
                deg[u] += 1
                deg[v] += 1
                edges.append((u, v))
        if min(deg) >= min_deg:
            yield Graph.from_edges(n, edges)


def sweep_exhaustive(n: int, mode: str = "threshold", allow_large: bool = False,
                     workers: int | None = 1) -> list[TheoremReport]:
    """Run ``mode`` on every labelled graph on ``n`` vertices satisfying its
    hypothesis. ``n = 7`` (about two million graphs) needs ``allow_large``."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if n > MAX_EXHAUSTIVE_N + (1 if allow_large else 0):
        raise ValueError(f"exhaustive enumeration is capped at n={MAX_EXHAUSTIVE_N}")
    graphs = [G for G in labeled_graphs(n, mode_min_degree(n, mode)) if G.num_edges]
    reports = pmap(partial(_run_mode, mode=mode), graphs, workers)
    for G, report in zip(graphs, reports):
        if report.violation:
            report.details["graph"] = format_edge_list(G)
    return reports
