"""Lin-Lu-Yau curvature of equal-degree edges through an optimal assignment.

For ``d_x = d_y = d`` the curvature is ``(d + 1 - C) / d`` where ``C`` is the
cheapest bijection between the private neighbourhoods of ``x`` and ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curvature import CurvatureError, LLYCurvature
from .graph import Graph, common_neighbors
from .transport import cost_matrix


@dataclass(frozen=True)
class AssignmentInstance:
    left: tuple[int, ...]
    right: tuple[int, ...]
    cost: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.left) != len(self.right):
            raise ValueError("assignment instance must be square")
        if len(self.cost) != len(self.left) or any(
            len(row) != len(self.right) for row in self.cost
        ):
            raise ValueError("cost matrix shape does not match vertex sets")


def _hungarian_potentials(cost):
    """Optimal dual potentials ``(u, v)`` for a square integer cost matrix."""
    n = len(cost)
    inf = float("inf")
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match_col = [0] * (n + 1)  # column j -> row (1-based), 0 = free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match_col[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match_col[j0]
            delta, j1 = inf, 0
            row = cost[i0 - 1]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j], way[j] = cur, j0
                    if minv[j] < delta:
                        delta, j1 = minv[j], j
            for j in range(n + 1):
                if used[j]:
                    u[match_col[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match_col[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match_col[j0] = match_col[j1]
            j0 = j1
    return u[1:], v[1:]


def _has_perfect_matching(adj: list[list[int]], rows: list[int], cols: set[int]) -> bool:
    match: dict[int, int] = {}

    def augment(r, seen):
        for c in adj[r]:
            if c in cols and c not in seen:
                seen.add(c)
                if c not in match or augment(match[c], seen):
                    match[c] = r
                    return True
        return False

    return all(augment(r, set()) for r in rows)


def solve_assignment(instance: AssignmentInstance | list[list[int]]):
    """Minimum-cost perfect matching on a square integer matrix.

    Returns ``(total_cost, matching)`` where ``matching[i]`` is the column
    assigned to row ``i``. Among optimal matchings the lexicographically least
    is returned: optimal matchings are exactly the perfect matchings of the
    zero-reduced-cost subgraph, which is searched greedily row by row.
    """
    cost = instance.cost if isinstance(instance, AssignmentInstance) else instance
    n = len(cost)
    if any(len(row) != n for row in cost):
        raise ValueError("assignment cost matrix must be square")
    if n == 0:
        return 0, ()
    u, v = _hungarian_potentials(cost)
    tight = [[j for j in range(n) if cost[i][j] - u[i] - v[j] == 0] for i in range(n)]
    free = set(range(n))
    matching = []
    for i in range(n):
        for j in tight[i]:
            if j in free and _has_perfect_matching(tight, list(range(i + 1, n)), free - {j}):
                matching.append(j)
                free.discard(j)
                break
        else:
            raise AssertionError("tight subgraph lost its perfect matching")
    return sum(cost[i][j] for i, j in enumerate(matching)), tuple(matching)


def assignment_instance(G: Graph, x: int, y: int) -> AssignmentInstance:
    """Private neighbourhoods ``S1(x) minus B1(y)`` and ``S1(y) minus B1(x)``
    with their hop distances."""
    shared = set(common_neighbors(G, x, y))
    left = tuple(z for z in G.adj[x] if z != y and z not in shared)
    right = tuple(z for z in G.adj[y] if z != x and z not in shared)
    if len(left) != len(right):
        raise CurvatureError(f"degrees of {x} and {y} differ")
    cost = cost_matrix(G, list(left), list(right)) if left else []
    return AssignmentInstance(left, right, tuple(tuple(r) for r in cost))


def lly_equal_degree(G: Graph, x: int, y: int) -> LLYCurvature:
    if not G.has_edge(x, y):
        raise CurvatureError(f"({x}, {y}) is not an edge")
    d = G.degree(x)
    if G.degree(y) != d:
        raise CurvatureError(
            f"assignment formula needs equal degrees, got {d} and {G.degree(y)}"
        )
    total, _ = solve_assignment(assignment_instance(G, x, y))
    return LLYCurvature(x, y, Fraction(d + 1 - total, d))
