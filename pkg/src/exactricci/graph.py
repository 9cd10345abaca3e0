"""Finite simple graphs: metric queries, edge-list I/O and generators."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

INFINITE = math.inf
"""Distance between vertices in different connected components."""


class GraphError(ValueError):
    """Invalid graph construction or query."""


class EdgeListParseError(GraphError):
    """Malformed edge-list text. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adj[u]`` is the sorted tuple of neighbours of ``u``.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    _sets: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length must equal vertex count")
        adj = tuple(tuple(sorted(nbrs)) for nbrs in self.adj)
        sets = tuple(frozenset(nbrs) for nbrs in adj)
        for u, nbrs in enumerate(adj):
            if len(sets[u]) != len(nbrs):
                raise GraphError(f"multi-edge at vertex {u}")
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise GraphError(f"neighbour {v} of {u} out of range")
                if v == u:
                    raise GraphError(f"self-loop at vertex {u}")
                if u not in sets[v]:
                    raise GraphError(f"asymmetric adjacency {u}-{v}")
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "_sets", sets)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(s) for s in nbrs))

    def degree(self, x: int) -> int:
        self._check(x)
        return len(self.adj[x])

    def neighbors(self, x: int) -> tuple[int, ...]:
        self._check(x)
        return self.adj[x]

    def has_edge(self, x: int, y: int) -> bool:
        self._check(x)
        self._check(y)
        return y in self._sets[x]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @cached_property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def _check(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise GraphError(f"vertex {x} out of range for n={self.n}")


# -- metric queries ---------------------------------------------------------


def bfs_distances(G: Graph, source: int, cutoff: int | None = None) -> dict[int, int]:
    """Hop distances from ``source`` to every vertex reachable within ``cutoff``."""
    G._check(source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if cutoff is not None and du >= cutoff:
            continue
        for w in G.adj[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def distance(G: Graph, x: int, y: int) -> int | float:
    G._check(y)
    return bfs_distances(G, x).get(y, INFINITE)


def sphere(G: Graph, x: int, r: int) -> list[int]:
    """Vertices at distance exactly ``r`` from ``x``."""
    if r < 0:
        raise GraphError("radius must be nonnegative")
    dist = bfs_distances(G, x, cutoff=r)
    return sorted(v for v, d in dist.items() if d == r)


def ball(G: Graph, x: int, r: int) -> list[int]:
    """Vertices at distance at most ``r`` from ``x``."""
    if r < 0:
        raise GraphError("radius must be nonnegative")
    return sorted(bfs_distances(G, x, cutoff=r))


def common_neighbors(G: Graph, x: int, y: int) -> list[int]:
    G._check(x)
    G._check(y)
    if x == y:
        raise GraphError("common_neighbors needs two distinct vertices")
    return sorted(G._sets[x] & G._sets[y])


def min_degree(G: Graph) -> int:
    if G.n == 0:
        raise GraphError("empty graph has no minimum degree")
    return min(len(a) for a in G.adj)


def diameter(G: Graph) -> int | float:
    if G.n == 0:
        raise GraphError("empty graph has no diameter")
    best = 0
    for x in range(G.n):
        dist = bfs_distances(G, x)
        if len(dist) < G.n:
            return INFINITE
        best = max(best, max(dist.values()))
    return best


# -- edge-list format -------------------------------------------------------


def parse_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse the edge-list format.

    ``#`` starts a comment, blank lines are skipped, an optional first line
    ``n <count>`` fixes the vertex count, every other line is ``<u> <v>``.
    Without a header, ``n`` is one more than the largest id seen.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    declared: int | None = None
    seen_content = False
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if seen_content:
                raise EdgeListParseError(lineno, "header 'n <count>' must come first")
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise EdgeListParseError(lineno, f"bad header {line!r}")
            declared = int(tokens[1])
            seen_content = True
            continue
        seen_content = True
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, f"expected '<u> <v>', got {line!r}")
        if not (tokens[0].isdigit() and tokens[1].isdigit()):
            raise EdgeListParseError(lineno, f"non-integer token in {line!r}")
        u, v = int(tokens[0]), int(tokens[1])
        if u == v:
            raise EdgeListParseError(lineno, f"self-loop at vertex {u}")
        if declared is not None and max(u, v) >= declared:
            raise EdgeListParseError(
                lineno, f"vertex {max(u, v)} exceeds declared n={declared}"
            )
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListParseError(lineno, f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
    if declared is None:
        declared = max((v for e in edges for v in e), default=-1) + 1
    return Graph.from_edges(declared, edges)


def format_edge_list(G: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"n {G.n}")
    out.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(G: Graph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(G, comment))


# -- generators ---------------------------------------------------------------


@dataclass(frozen=True)
class SharpnessGraph:
    """Extremal construction together with its labelled vertex roles.

    Numbering: ``x = 0``, ``y = 1``, then ``z_0..z_{l-3}``, ``x_0..x_l``,
    ``y_0..y_l`` and finally ``v``.
    """

    graph: Graph
    l: int
    x: int
    y: int
    z: tuple[int, ...]
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    v: int

    @property
    def edge(self) -> tuple[int, int]:
        return self.x, self.y


def generate_sharpness(l: int) -> SharpnessGraph:
    """Graph on ``3l + 3`` vertices with minimum degree ``2l`` and a
    negatively curved edge ``(0, 1)``."""
    if l < 2:
        raise GraphError("sharpness construction needs l >= 2")
    x, y = 0, 1
    z = tuple(range(2, l))
    xs = tuple(range(l, 2 * l + 1))
    ys = tuple(range(2 * l + 1, 3 * l + 2))
    v = 3 * l + 2
    edges = [(x, y)]
    edges += [(x, zi) for zi in z] + [(y, zi) for zi in z]
    edges += [(x, a) for a in xs] + [(y, b) for b in ys]
    edges += [(zi, w) for zi in z for w in xs + ys]
    edges += [(a, b) for i, a in enumerate(xs) for b in xs[i + 1 :]]
    edges += [(a, b) for i, a in enumerate(ys) for b in ys[i + 1 :]]
    edges += [(v, w) for w in xs + ys]
    G = Graph.from_edges(v + 1, edges)
    return SharpnessGraph(G, l, x, y, z, xs, ys, v)


def generate_standard(kind: str, size: int) -> Graph:
    """``cycle``, ``complete``, ``path`` (``size`` vertices) or ``hypercube``
    (``size`` = dimension)."""
    if kind == "cycle":
        if size < 3:
            raise GraphError("cycle needs at least 3 vertices")
        return Graph.from_edges(size, [(i, (i + 1) % size) for i in range(size)])
    if size < 1:
        raise GraphError(f"{kind} needs size >= 1")
    if kind == "complete":
        return Graph.from_edges(
            size, [(i, j) for i in range(size) for j in range(i + 1, size)]
        )
    if kind == "path":
        return Graph.from_edges(size, [(i, i + 1) for i in range(size - 1)])
    if kind == "hypercube":
        if size > 16:
            raise GraphError("hypercube dimension is capped at 16")
        n = 1 << size
        return Graph.from_edges(
            n, [(u, u ^ (1 << b)) for u in range(n) for b in range(size) if u < u ^ (1 << b)]
        )
    raise GraphError(f"unknown graph kind {kind!r}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def _rng(seed: int | Sequence[int]) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def random_min_degree_graph(n: int, delta_min: int, seed: int | Sequence[int]) -> Graph:
    """Random simple graph on ``n`` vertices with minimum degree >= ``delta_min``.

    Draws G(n, p) with ``p = min(1, 1.1 (delta_min + 1) / (n - 1))`` and then,
    visiting vertices in order, joins each deficient vertex to uniformly chosen
    non-neighbours until it reaches ``delta_min``. ``seed`` may be a tuple such
    as ``(seed, sample_index)``.
    """
    if n < 1 or delta_min < 0:
        raise GraphError("need n >= 1 and delta_min >= 0")
    if delta_min >= n:
        raise GraphError(f"infeasible: delta_min={delta_min} >= n={n}")
    rng = _rng(seed)
    p = 1.0 if n == 1 else min(1.0, (delta_min + 1) / (n - 1) * 1.1)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    draws = rng.random(n * (n - 1) // 2)
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if draws[k] < p:
                nbrs[u].add(v)
                nbrs[v].add(u)
            k += 1
    for u in range(n):
        while len(nbrs[u]) < delta_min:
            options = [w for w in range(n) if w != u and w not in nbrs[u]]
            w = options[int(rng.integers(len(options)))]
            nbrs[u].add(w)
            nbrs[w].add(u)
    return Graph(n, tuple(tuple(s) for s in nbrs))
