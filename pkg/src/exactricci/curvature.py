"""Ollivier-Ricci curvature, Lin-Lu-Yau curvature and the idleness function."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from ._parallel import pmap
from .graph import Graph, GraphError
from .transport import (
    as_fraction,
    cost_matrix,
    format_rational,
    optimal_plan,
    solve_transportation,
    vertex_measure,
)

METHODS = ("auto", "transport", "assignment")


class CurvatureError(ValueError):
    pass


class IdlenessError(CurvatureError):
    """The idleness function could not be resolved exactly."""


class PieceCountFinding(UserWarning):
    """Emitted when an idleness function has more than three linear pieces."""


@dataclass(frozen=True)
class EdgeCurvature:
    x: int
    y: int
    alpha: Fraction
    kappa: Fraction

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "alpha": format_rational(self.alpha),
                "kappa": format_rational(self.kappa)}


@dataclass(frozen=True)
class LLYCurvature:
    x: int
    y: int
    kappa: Fraction

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "kappa": format_rational(self.kappa)}


def _check_edge(G: Graph, x: int, y: int) -> None:
    if not G.has_edge(x, y):
        raise CurvatureError(f"({x}, {y}) is not an edge")


def tail_start(G: Graph, x: int, y: int) -> Fraction:
    """Smallest idleness from which ``alpha -> kappa_alpha`` is known to be linear."""
    return Fraction(1, max(G.degree(x), G.degree(y)) + 1)


def _kappa(G: Graph, x: int, y: int, alpha: Fraction) -> Fraction:
    # Integer fast path: both lazy-walk measures are scaled by a common
    # denominator and the mass they share stays put (an optimal choice), so
    # only the disjoint leftovers reach the solver.
    share_x = (1 - alpha) / G.degree(x)
    share_y = (1 - alpha) / G.degree(y)
    scale = math.lcm(alpha.denominator, share_x.denominator, share_y.denominator)
    supply = dict.fromkeys(G.adj[x], int(share_x * scale))
    supply[x] = int(alpha * scale)
    demand = dict.fromkeys(G.adj[y], int(share_y * scale))
    demand[y] = int(alpha * scale)
    for z in supply.keys() & demand.keys():
        kept = min(supply[z], demand[z])
        supply[z] -= kept
        demand[z] -= kept
    sources = sorted(v for v, m in supply.items() if m)
    sinks = sorted(v for v, m in demand.items() if m)
    if not sources:
        return Fraction(1)
    cost = cost_matrix(G, sources, sinks)
    total, _ = solve_transportation(
        [supply[v] for v in sources], [demand[v] for v in sinks], cost
    )
    return 1 - Fraction(total, scale)


def kappa_alpha(G: Graph, x: int, y: int, alpha) -> EdgeCurvature:
    """``1 - W1(mu_x, mu_y)`` for the lazy walks with idleness ``alpha``."""
    _check_edge(G, x, y)
    alpha = as_fraction(alpha)
    if not 0 <= alpha <= 1:
        raise CurvatureError(f"idleness {alpha} outside [0, 1]")
    return EdgeCurvature(x, y, alpha, _kappa(G, x, y, alpha))


def curvature_plan(G: Graph, x: int, y: int, alpha):
    """Optimal plan between the two lazy-walk measures of edge ``(x, y)``."""
    _check_edge(G, x, y)
    return optimal_plan(G, vertex_measure(G, x, alpha), vertex_measure(G, y, alpha))


def kappa_lly(G: Graph, x: int, y: int, method: str = "transport") -> LLYCurvature:
    """Lin-Lu-Yau curvature of edge ``(x, y)``.

    ``transport`` evaluates ``kappa_alpha / (1 - alpha)`` at the start of the
    linear tail, which needs one transport solve. ``assignment`` uses the
    equal-degree matching formula and fails on unequal degrees. ``auto``
    picks ``assignment`` whenever the degrees agree.
    """
    _check_edge(G, x, y)
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if method == "auto":
        method = "assignment" if G.degree(x) == G.degree(y) else "transport"
    if method == "assignment":
        from .assignment import lly_equal_degree

        return lly_equal_degree(G, x, y)
    alpha = tail_start(G, x, y)
    return LLYCurvature(x, y, _kappa(G, x, y, alpha) / (1 - alpha))


def _edge_job(G: Graph, alpha: Fraction | None, method: str, edge):
    x, y = edge
    if alpha is None:
        return kappa_lly(G, x, y, method)
    return kappa_alpha(G, x, y, alpha)


def edge_curvatures(G: Graph, alpha=None, method: str = "auto", workers: int | None = 1):
    """Curvature of every edge in lexicographic order.

    LLY curvature by default; pass ``alpha`` for ``kappa_alpha`` instead.
    """
    if alpha is not None:
        alpha = as_fraction(alpha)
    return pmap(partial(_edge_job, G, alpha, method), G.edges(), workers)


def ricci_lower(G: Graph, method: str = "auto", workers: int | None = 1):
    """Minimum LLY curvature over all edges and the least edge attaining it."""
    if G.num_edges == 0:
        raise GraphError("graph has no edges")
    best = min(edge_curvatures(G, method=method, workers=workers),
               key=lambda c: (c.kappa, c.x, c.y))
    return best.kappa, (best.x, best.y)


# -- idleness function --------------------------------------------------------


@dataclass(frozen=True)
class PiecewiseLinearFn:
    """Continuous piecewise-linear function on ``[0, 1]`` given by its breakpoints."""

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        xs = [a for a, _ in self.breakpoints]
        if len(xs) < 2 or xs[0] != 0 or xs[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoint abscissae must increase strictly")

    def __call__(self, alpha) -> Fraction:
        alpha = as_fraction(alpha)
        if not 0 <= alpha <= 1:
            raise ValueError(f"{alpha} outside [0, 1]")
        pts = self.breakpoints
        for (a0, v0), (a1, v1) in zip(pts, pts[1:]):
            if alpha <= a1:
                return v0 + (v1 - v0) * (alpha - a0) / (a1 - a0)
        raise AssertionError("unreachable")

    @property
    def num_pieces(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def slopes(self) -> list[Fraction]:
        pts = self.breakpoints
        return [(v1 - v0) / (a1 - a0) for (a0, v0), (a1, v1) in zip(pts, pts[1:])]

    def is_concave(self) -> bool:
        s = self.slopes
        return all(b <= a for a, b in zip(s, s[1:]))

    def to_csv(self) -> str:
        rows = ["alpha,value"]
        rows += [f"{format_rational(a)},{format_rational(v)}" for a, v in self.breakpoints]
        return "\n".join(rows) + "\n"

    def to_json(self) -> str:
        return json.dumps([{"alpha": format_rational(a), "value": format_rational(v)}
                           for a, v in self.breakpoints])


@dataclass(frozen=True)
class _Line:
    slope: Fraction
    intercept: Fraction

    @classmethod
    def through(cls, a, fa, b, fb) -> "_Line":
        slope = (fb - fa) / (b - a)
        return cls(slope, fa - slope * a)

    def __call__(self, t):
        return self.slope * t + self.intercept


def denominator_bound(G: Graph, x: int, y: int) -> int:
    dx, dy = G.degree(x), G.degree(y)
    return 4 * dx * dy * (dx + 1) * (dy + 1)


def idleness_function(G: Graph, x: int, y: int) -> PiecewiseLinearFn:
    """Exact breakpoint form of ``alpha -> kappa_alpha(x, y)``.

    The tail from ``1/(max degree + 1)`` to 1 is a single line through
    ``(1, 0)``. On the remaining interval the function is concave, so the
    line valid just right of ``a`` and the line valid just left of ``b``
    intersect inside ``[a, b]``; evaluating there either confirms a single
    breakpoint or splits the interval. Lines are fitted from two evaluations
    closer together than any admissible pair of breakpoints, which is where
    the denominator bound enters.
    """
    _check_edge(G, x, y)
    bound = denominator_bound(G, x, y)
    cache: dict[Fraction, Fraction] = {}

    def f(a: Fraction) -> Fraction:
        if a not in cache:
            cache[a] = _kappa(G, x, y, a)
        return cache[a]

    def eps(c: Fraction) -> Fraction:
        # no breakpoint with denominator <= bound lies within this of c
        return Fraction(1, 2 * c.denominator * bound)

    def refine(a, la, b, lb, depth=0):
        if la == lb:
            return [(a, b, la)]
        if depth > 8:
            raise IdlenessError(f"edge ({x}, {y}): refinement did not terminate")
        if la.slope == lb.slope:
            raise IdlenessError(f"edge ({x}, {y}): parallel pieces, not concave")
        c = (lb.intercept - la.intercept) / (la.slope - lb.slope)
        if c == a:
            return [(a, b, lb)]
        if c == b:
            return [(a, b, la)]
        if not a < c < b:
            raise IdlenessError(f"edge ({x}, {y}): pieces meet outside [{a}, {b}]")
        if c.denominator > bound:
            raise IdlenessError(
                f"edge ({x}, {y}): breakpoint candidate {c} exceeds denominator bound {bound}"
            )
        fc = f(c)
        if fc == la(c):
            return [(a, c, la), (c, b, lb)]
        e = eps(c)
        left = _Line.through(c - e, f(c - e), c, fc)
        right = _Line.through(c, fc, c + e, f(c + e))
        return refine(a, la, c, left, depth + 1) + refine(c, right, b, lb, depth + 1)

    star = tail_start(G, x, y)
    zero, one = Fraction(0), Fraction(1)
    tail = _Line.through(star, f(star), one, Fraction(0))
    e0, es = eps(zero), eps(star)
    head = _Line.through(zero, f(zero), e0, f(e0))
    before_star = _Line.through(star - es, f(star - es), star, f(star))
    segments = refine(zero, head, star, before_star) + [(star, one, tail)]

    merged = [segments[0]]
    for seg in segments[1:]:
        if seg[2] == merged[-1][2]:
            merged[-1] = (merged[-1][0], seg[1], seg[2])
        else:
            merged.append(seg)
    knots = [s[0] for s in merged] + [one]
    for k in knots:
        if k.denominator > bound:
            raise IdlenessError(f"edge ({x}, {y}): breakpoint {k} exceeds bound {bound}")
    fn = PiecewiseLinearFn(tuple((k, f(k)) for k in knots))
    for (a0, _), (a1, _) in zip(fn.breakpoints, fn.breakpoints[1:]):
        mid = (a0 + a1) / 2
        if fn(mid) != f(mid):
            raise IdlenessError(f"edge ({x}, {y}): reconstruction mismatch at {mid}")
    if fn.num_pieces > 3:
        warnings.warn(
            f"edge ({x}, {y}): idleness function has {fn.num_pieces} linear pieces",
            PieceCountFinding,
            stacklevel=2,
        )
    return fn
