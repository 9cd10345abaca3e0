"""Exact optimal transport between finitely supported measures on a graph.

Masses are :class:`fractions.Fraction`. Transportation problems are scaled to
integers by the lcm of all mass denominators and solved by successive
shortest paths, so every Wasserstein distance returned here is exact.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping

from .graph import Graph, GraphError

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class TransportError(ValueError):
    """Invalid measures or an unsolvable transportation problem."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Decimal notation is rejected."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"expected a rational 'p/q', got {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"exact rational required, got {type(value).__name__}")


class ProbMeasure(Mapping[int, Fraction]):
    """Finitely supported probability measure on graph vertices.

    Zero masses are dropped, so iteration only visits the support (sorted).
    """

    __slots__ = ("_masses",)

    def __init__(self, masses: Mapping[int, object]):
        clean = {}
        for v, m in sorted(masses.items()):
            m = as_fraction(m)
            if m < 0:
                raise TransportError(f"negative mass {m} at vertex {v}")
            if m:
                clean[int(v)] = m
        if sum(clean.values(), Fraction(0)) != 1:
            raise TransportError("masses must sum to exactly 1")
        self._masses = clean

    def __getitem__(self, v: int) -> Fraction:
        return self._masses[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self._masses)

    def __len__(self) -> int:
        return len(self._masses)

    def __repr__(self) -> str:
        body = ", ".join(f"{v}: {format_rational(m)}" for v, m in self._masses.items())
        return f"ProbMeasure({{{body}}})"

    def mass(self, v: int) -> Fraction:
        return self._masses.get(v, Fraction(0))


@dataclass(frozen=True)
class TransportPlan:
    """Coupling of ``source`` and ``target``; only positive entries are stored."""

    entries: Mapping[tuple[int, int], Fraction]
    source: ProbMeasure
    target: ProbMeasure

    def __post_init__(self):
        entries = {k: Fraction(m) for k, m in sorted(self.entries.items()) if m}
        rows: dict[int, Fraction] = {}
        cols: dict[int, Fraction] = {}
        for (u, v), m in entries.items():
            if m < 0:
                raise TransportError(f"negative plan entry at {(u, v)}")
            rows[u] = rows.get(u, 0) + m
            cols[v] = cols.get(v, 0) + m
        if rows != dict(self.source) or cols != dict(self.target):
            raise TransportError("plan marginals do not match the measures")
        object.__setattr__(self, "entries", entries)

    def cost(self, G: Graph) -> Fraction:
        dist = _pair_distances(G, self.entries)
        return sum((dist[k] * m for k, m in self.entries.items()), Fraction(0))

    def to_records(self) -> list[dict]:
        return [
            {"from": u, "to": v, "mass": format_rational(m)}
            for (u, v), m in self.entries.items()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records())


@dataclass(frozen=True)
class MassByDistance:
    """Mass moved over distance 0, 1, 2, 3 (``nu``) and beyond 3 (``overflow``)."""

    nu: tuple[Fraction, Fraction, Fraction, Fraction]
    overflow: Fraction = Fraction(0)

    @property
    def total(self) -> Fraction:
        return sum(self.nu, Fraction(0)) + self.overflow


def vertex_measure(G: Graph, x: int, alpha) -> ProbMeasure:
    """Lazy random-walk measure: ``alpha`` stays at ``x``, the rest is spread
    evenly over the neighbours of ``x``."""
    alpha = as_fraction(alpha)
    if not 0 <= alpha <= 1:
        raise TransportError(f"idleness {alpha} outside [0, 1]")
    d = G.degree(x)
    if d == 0:
        raise TransportError(f"vertex {x} is isolated")
    share = (1 - alpha) / d
    masses = {v: share for v in G.adj[x]}
    masses[x] = alpha
    return ProbMeasure(masses)


# -- distances --------------------------------------------------------------


def _distances_to(G: Graph, source: int, targets: set[int]) -> dict[int, int]:
    """BFS from ``source`` stopping once every target is labelled."""
    dist = {source: 0}
    missing = set(targets)
    missing.discard(source)
    queue = deque([source])
    while queue and missing:
        u = queue.popleft()
        du = dist[u] + 1
        for w in G.adj[u]:
            if w not in dist:
                dist[w] = du
                missing.discard(w)
                queue.append(w)
    if missing:
        raise TransportError(
            f"vertices {sorted(missing)} unreachable from {source}: infinite cost"
        )
    return dist


def _pair_distances(G: Graph, pairs) -> dict[tuple[int, int], int]:
    by_source: dict[int, set[int]] = {}
    for u, v in pairs:
        by_source.setdefault(u, set()).add(v)
    out = {}
    for u, vs in by_source.items():
        dist = _distances_to(G, u, vs)
        for v in vs:
            out[u, v] = dist[v]
    return out


def cost_matrix(G: Graph, sources: list[int], sinks: list[int]) -> list[list[int]]:
    sink_set = set(sinks)
    rows = []
    for u in sources:
        dist = _distances_to(G, u, sink_set)
        rows.append([dist[v] for v in sinks])
    return rows


# -- transportation solver --------------------------------------------------


def solve_transportation(supply: list[int], demand: list[int], cost: list[list[int]]):
    """Min-cost transportation with integer data.

    Successive shortest paths in primal-dual form: a Dijkstra pass on reduced
    costs ``cost[i][j] + ps[i] - pt[j]`` raises the potentials, then flow is
    pushed along every zero-reduced-cost augmenting path before the next
    pass. Hop costs give few distinct path lengths, hence few passes.
    Returns ``(total_cost, flow)`` with ``flow[i][j]`` an int matrix. Scans
    follow index order, so the flow is deterministic.
    """
    ns, nt = len(supply), len(demand)
    if sum(supply) != sum(demand):
        raise TransportError("supply and demand totals differ")
    if any(s < 0 for s in supply) or any(t < 0 for t in demand):
        raise TransportError("negative supply or demand")
    s_rem = list(supply)
    t_rem = list(demand)
    flow = [[0] * nt for _ in range(ns)]
    ps = [0] * ns
    pt = [0] * nt
    remaining = sum(s_rem)
    while remaining:
        _reprice(cost, flow, s_rem, t_rem, ps, pt)
        tight = [[j for j in range(nt) if cost[i][j] + ps[i] == pt[j]] for i in range(ns)]
        remaining -= _push_tight(tight, flow, s_rem, t_rem)
    total = sum(cost[i][j] * flow[i][j] for i in range(ns) for j in range(nt))
    return total, flow


def _reprice(cost, flow, s_rem, t_rem, ps, pt) -> None:
    """Dijkstra from every source with spare supply, stopped at the first
    sink with spare demand; potentials absorb the distances."""
    ns, nt = len(ps), len(pt)
    inf = math.inf
    ds = [0 if s else inf for s in s_rem]
    dt = [inf] * nt
    done_s = [False] * ns
    done_t = [False] * nt
    reach = inf
    while True:
        best, k = inf, -1
        for i in range(ns):
            if not done_s[i] and ds[i] < best:
                best, k = ds[i], i
        for j in range(nt):
            if not done_t[j] and dt[j] < best:
                best, k = dt[j], ns + j
        if k < 0:
            break
        if k < ns:
            done_s[k] = True
            row, base = cost[k], best + ps[k]
            for j in range(nt):
                if not done_t[j]:
                    nd = base + row[j] - pt[j]
                    if nd < dt[j]:
                        dt[j] = nd
        else:
            j = k - ns
            done_t[j] = True
            if t_rem[j]:
                reach = best
                break
            for i in range(ns):
                # arcs carrying flow have zero reduced cost
                if flow[i][j] and not done_s[i] and best < ds[i]:
                    ds[i] = best
    if reach == inf:
        raise TransportError("no augmenting path; inconsistent instance")
    for i in range(ns):
        ps[i] += min(ds[i], reach)
    for j in range(nt):
        pt[j] += min(dt[j], reach)


def _push_tight(tight, flow, s_rem, t_rem) -> int:
    """Dinic blocking flows restricted to zero-reduced-cost arcs."""
    ns, nt = len(s_rem), len(t_rem)
    pushed = 0
    while True:
        ls = [-1] * ns
        lt = [-1] * nt
        frontier = [i for i in range(ns) if s_rem[i]]
        for i in frontier:
            ls[i] = 0
        found = False
        depth = 0
        while frontier and not found:
            sinks = []
            for i in frontier:
                for j in tight[i]:
                    if lt[j] < 0:
                        lt[j] = depth + 1
                        sinks.append(j)
                        found = found or bool(t_rem[j])
            frontier = []
            if not found:
                for j in sinks:
                    for i in range(ns):
                        if flow[i][j] and ls[i] < 0:
                            ls[i] = depth + 2
                            frontier.append(i)
            depth += 2
        if not found:
            return pushed
        ptr_s = [0] * ns
        ptr_t = [0] * nt

        def from_source(i, limit):
            arcs = tight[i]
            while ptr_s[i] < len(arcs):
                j = arcs[ptr_s[i]]
                if lt[j] == ls[i] + 1:
                    got = from_sink(j, limit)
                    if got:
                        flow[i][j] += got
                        return got
                ptr_s[i] += 1
            return 0

        def from_sink(j, limit):
            if t_rem[j]:
                got = min(limit, t_rem[j])
                t_rem[j] -= got
                return got
            while ptr_t[j] < ns:
                i = ptr_t[j]
                if flow[i][j] and ls[i] == lt[j] + 1:
                    got = from_source(i, min(limit, flow[i][j]))
                    if got:
                        flow[i][j] -= got
                        return got
                ptr_t[j] += 1
            return 0

        progress = 0
        for i in range(ns):
            while s_rem[i] and ls[i] == 0:
                got = from_source(i, s_rem[i])
                if not got:
                    break
                s_rem[i] -= got
                progress += got
        if not progress:
            return pushed
        pushed += progress


def _solve(G: Graph, supply: Mapping[int, Fraction], demand: Mapping[int, Fraction]):
    sources = sorted(v for v, m in supply.items() if m)
    sinks = sorted(v for v, m in demand.items() if m)
    if not sources:
        return {}
    scale = math.lcm(*(supply[v].denominator for v in sources),
                     *(demand[v].denominator for v in sinks))
    a = [int(supply[v] * scale) for v in sources]
    b = [int(demand[v] * scale) for v in sinks]
    cost = cost_matrix(G, sources, sinks)
    _, flow = solve_transportation(a, b, cost)
    return {
        (u, v): Fraction(flow[i][j], scale)
        for i, u in enumerate(sources)
        for j, v in enumerate(sinks)
        if flow[i][j]
    }


def _check_pair(G: Graph, mu1: ProbMeasure, mu2: ProbMeasure) -> None:
    for v in list(mu1) + list(mu2):
        if not 0 <= v < G.n:
            raise GraphError(f"measure supported on vertex {v} outside graph")


def optimal_plan(G: Graph, mu1: ProbMeasure, mu2: ProbMeasure) -> TransportPlan:
    _check_pair(G, mu1, mu2)
    return TransportPlan(_solve(G, mu1, mu2), mu1, mu2)


def wasserstein(G: Graph, mu1: ProbMeasure, mu2: ProbMeasure) -> Fraction:
    """Exact W1 distance with the hop metric of ``G``."""
    return optimal_plan(G, mu1, mu2).cost(G)


def diagonal_fixed_plan(G: Graph, mu1: ProbMeasure, mu2: ProbMeasure) -> TransportPlan:
    """Optimal plan that leaves ``min(mu1(z), mu2(z))`` in place at every ``z``.

    The shared mass is frozen on the diagonal and only the leftover measures,
    which have disjoint supports, are transported.
    """
    _check_pair(G, mu1, mu2)
    diag = {z: min(mu1[z], mu2[z]) for z in mu1 if z in mu2}
    rest1 = {v: m - diag.get(v, 0) for v, m in mu1.items()}
    rest2 = {v: m - diag.get(v, 0) for v, m in mu2.items()}
    entries = _solve(G, rest1, rest2)
    for z, m in diag.items():
        entries[z, z] = m
    return TransportPlan(entries, mu1, mu2)


def mass_by_distance(G: Graph, plan: TransportPlan) -> MassByDistance:
    nu = [Fraction(0)] * 4
    overflow = Fraction(0)
    dist = _pair_distances(G, plan.entries)
    for key, m in plan.entries.items():
        d = dist[key]
        if d <= 3:
            nu[d] += m
        else:
            overflow += m
    return MassByDistance(tuple(nu), overflow)
