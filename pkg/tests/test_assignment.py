from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linear_sum_assignment

from exactricci.assignment import (
    AssignmentInstance,
    assignment_instance,
    lly_equal_degree,
    solve_assignment,
)
from exactricci.curvature import CurvatureError, kappa_lly
from exactricci.graph import (
    Graph,
    common_neighbors,
    generate_sharpness,
    generate_standard,
    petersen,
    random_min_degree_graph,
)
from oracles import brute_force_assignment, brute_force_lly


def test_empty_and_trivial():
    assert solve_assignment([]) == (0, ())
    assert solve_assignment([[2]]) == (2, (0,))
    assert solve_assignment([[2] * 3 for _ in range(3)]) == (6, (0, 1, 2))
    with pytest.raises(ValueError):
        solve_assignment([[1, 2]])
    with pytest.raises(ValueError):
        AssignmentInstance((0,), (), ((),))


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=150, deadline=None)
def test_matches_permutation_brute_force(cost):
    total, matching = solve_assignment(cost)
    assert (total, matching) == brute_force_assignment(cost)
    rows, cols = linear_sum_assignment(np.array(cost))
    assert total == int(np.array(cost)[rows, cols].sum())


def test_complete_graph_has_empty_instance():
    for n in range(3, 9):
        G = generate_standard("complete", n)
        inst = assignment_instance(G, 0, 1)
        assert inst.left == inst.right == ()
        assert lly_equal_degree(G, 0, 1).kappa == F(n, n - 1)


def test_c5_edge():
    C5 = generate_standard("cycle", 5)
    inst = assignment_instance(C5, 0, 1)
    assert (inst.left, inst.right, inst.cost) == ((4,), (2,), ((2,),))
    assert lly_equal_degree(C5, 0, 1).kappa == F(1, 2) == brute_force_lly(C5, 0, 1)


@pytest.mark.parametrize("l", range(2, 9))
def test_sharpness_cross_distances(l):
    s = generate_sharpness(l)
    inst = assignment_instance(s.graph, s.x, s.y)
    assert inst.left == s.xs and inst.right == s.ys
    assert all(c == 2 for row in inst.cost for c in row)
    assert lly_equal_degree(s.graph, s.x, s.y).kappa == F(-1, 2 * l)


@pytest.mark.parametrize("d", range(2, 7))
def test_hypercube(d):
    Q = generate_standard("hypercube", d)
    assert lly_equal_degree(Q, 0, 1).kappa == F(2, d)


def test_unequal_degrees_rejected():
    G = generate_standard("path", 3)
    with pytest.raises(CurvatureError):
        lly_equal_degree(G, 0, 1)
    with pytest.raises(CurvatureError):
        lly_equal_degree(G, 0, 2)


def _equal_degree_corpus():
    graphs = [generate_standard("cycle", n) for n in range(3, 10)]
    graphs += [generate_standard("complete", n) for n in range(3, 8)]
    graphs += [generate_standard("hypercube", d) for d in range(2, 7)]
    graphs += [petersen()] + [generate_sharpness(l).graph for l in range(2, 9)]
    rng = np.random.default_rng(99)
    for i in range(500):
        n = int(rng.integers(5, 15))
        graphs.append(random_min_degree_graph(n, int(rng.integers(2, n)), [99, i]))
    return graphs


def test_oracle_equivalence_on_equal_degree_edges():
    checked = 0
    for G in _equal_degree_corpus():
        for x, y in G.edges():
            if G.degree(x) != G.degree(y):
                continue
            d = G.degree(x)
            inst = assignment_instance(G, x, y)
            size = d - len(common_neighbors(G, x, y)) - 1
            assert len(inst.left) == len(inst.right) == size
            total, _ = solve_assignment(inst)
            assert size <= total <= 3 * size
            assert all(1 <= c <= 3 for row in inst.cost for c in row)
            assert lly_equal_degree(G, x, y) == kappa_lly(G, x, y, "transport")
            checked += 1
    assert checked > 1000
