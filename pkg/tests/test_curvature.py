import warnings
from fractions import Fraction as F

import numpy as np
import pytest

from exactricci.curvature import (
    CurvatureError,
    PiecewiseLinearFn,
    PieceCountFinding,
    curvature_plan,
    edge_curvatures,
    idleness_function,
    kappa_alpha,
    kappa_lly,
    ricci_lower,
    tail_start,
)
from exactricci.graph import (
    Graph,
    GraphError,
    generate_sharpness,
    generate_standard,
    petersen,
    random_min_degree_graph,
)
from exactricci.transport import mass_by_distance
from oracles import brute_force_kappa, brute_force_lly

K3 = generate_standard("complete", 3)
C6 = generate_standard("cycle", 6)
S2 = generate_sharpness(2).graph

# frozen from oracles.brute_force_lly (exhaustive integer flows)
GOLDEN_LLY = {
    **{f"K{n}": F(n, n - 1) for n in range(3, 9)},
    "C4": F(1), "C5": F(1, 2), **{f"C{n}": F(0) for n in range(6, 13)},
    **{f"Q{d}": F(2, d) for d in range(2, 7)},
    "Petersen": F(0),
}


def named(name):
    kind, size = name[0], name[1:]
    if name == "Petersen":
        return petersen()
    return generate_standard({"K": "complete", "C": "cycle", "Q": "hypercube"}[kind], int(size))


@pytest.mark.parametrize("name", sorted(GOLDEN_LLY))
def test_golden_lly(name):
    G = named(name)
    values = {c.kappa for c in edge_curvatures(G, method="transport")}
    assert values == {GOLDEN_LLY[name]}


@pytest.mark.parametrize("name", ["K3", "K5", "C4", "C5", "C6", "C7", "Q2", "Q3", "Q4", "Petersen"])
def test_golden_matches_oracle(name):
    G = named(name)
    x, y = G.edges()[0]
    assert brute_force_lly(G, x, y) == GOLDEN_LLY[name]


class TestKappaAlpha:
    def test_full_idleness_is_flat(self):
        for G in (K3, C6, S2, petersen()):
            for x, y in G.edges()[:5]:
                assert kappa_alpha(G, x, y, 1).kappa == 0

    def test_triangle(self):
        assert kappa_alpha(K3, 0, 1, F(1, 3)).kappa == 1
        assert kappa_alpha(K3, 0, 1, 0).kappa == F(1, 2)

    def test_sharpness_edge(self):
        assert kappa_alpha(S2, 0, 1, F(1, 5)).kappa == F(-1, 5)
        assert brute_force_kappa(S2, 0, 1, F(1, 5)) == F(-1, 5)

    def test_errors(self):
        with pytest.raises(CurvatureError):
            kappa_alpha(C6, 0, 2, F(1, 2))
        with pytest.raises(CurvatureError):
            kappa_alpha(C6, 0, 1, F(-1, 2))
        with pytest.raises(TypeError):
            kappa_alpha(C6, 0, 1, 0.5)

    def test_symmetry(self):
        G = random_min_degree_graph(12, 3, 4)
        for x, y in G.edges():
            assert kappa_alpha(G, x, y, F(1, 3)).kappa == kappa_alpha(G, y, x, F(1, 3)).kappa
            assert kappa_lly(G, x, y).kappa == kappa_lly(G, y, x).kappa

    def test_degree_one_endpoint(self):
        G = generate_standard("path", 3)
        # mu_0 = alpha at 0, 1 - alpha at 1; mu_1 spreads (1 - alpha)/2 to 0 and 2
        for alpha in (F(0), F(1, 3), F(1, 2), F(4, 5)):
            assert kappa_alpha(G, 0, 1, alpha).kappa == brute_force_kappa(G, 0, 1, alpha)
        assert kappa_lly(G, 0, 1).kappa == brute_force_lly(G, 0, 1)

    def test_matches_oracle_on_random_graphs(self):
        rng = np.random.default_rng(17)
        for i in range(15):
            G = random_min_degree_graph(int(rng.integers(4, 9)), 1, [17, i])
            x, y = G.edges()[int(rng.integers(G.num_edges))]
            alpha = F(int(rng.integers(0, 5)), 4)
            assert kappa_alpha(G, x, y, alpha).kappa == brute_force_kappa(G, x, y, alpha)

    def test_nu_decomposition(self):
        G = random_min_degree_graph(10, 3, 2)
        for x, y in G.edges():
            for alpha in (F(0), F(1, 4), F(2, 3)):
                m = mass_by_distance(G, curvature_plan(G, x, y, alpha))
                assert m.overflow == 0 and sum(m.nu) == 1
                assert kappa_alpha(G, x, y, alpha).kappa == m.nu[0] - m.nu[2] - 2 * m.nu[3]


class TestLLY:
    def test_sharpness(self):
        assert kappa_lly(S2, 0, 1).kappa == F(-1, 4)

    def test_methods_agree(self):
        G = generate_standard("hypercube", 4)
        for x, y in G.edges()[:8]:
            assert kappa_lly(G, x, y, "assignment") == kappa_lly(G, x, y, "transport")

    def test_assignment_needs_equal_degrees(self):
        G = generate_standard("path", 3)
        with pytest.raises(CurvatureError):
            kappa_lly(G, 0, 1, "assignment")
        assert kappa_lly(G, 0, 1, "auto") == kappa_lly(G, 0, 1, "transport")
        with pytest.raises(ValueError):
            kappa_lly(G, 0, 1, "limit")

    def test_tail_linearity(self):
        G = random_min_degree_graph(11, 2, 9)
        for x, y in G.edges():
            k = kappa_lly(G, x, y).kappa
            start = tail_start(G, x, y)
            for alpha in (start, (start + 1) / 2, F(99, 100)):
                assert kappa_alpha(G, x, y, alpha).kappa == (1 - alpha) * k


class TestRicciLower:
    def test_examples(self):
        assert ricci_lower(generate_standard("complete", 6)) == (F(6, 5), (0, 1))
        assert ricci_lower(S2) == (F(-1, 4), (0, 1))
        assert ricci_lower(C6) == (0, (0, 1))

    def test_parallel_is_deterministic(self):
        G = random_min_degree_graph(14, 4, 8)
        serial = edge_curvatures(G, workers=1)
        assert edge_curvatures(G, workers=2) == serial
        assert ricci_lower(G, workers=2) == ricci_lower(G)

    def test_edgeless(self):
        with pytest.raises(GraphError):
            ricci_lower(Graph.from_edges(3, []))


class TestIdleness:
    def test_triangle(self):
        # oracle grid: kappa_0 = 1/2, kappa_{1/6} = 3/4, kappa_{1/3} = 1, kappa_{2/3} = 1/2
        grid = {a: brute_force_kappa(K3, 0, 1, a) for a in (F(0), F(1, 6), F(1, 3), F(2, 3), F(1))}
        assert grid == {0: F(1, 2), F(1, 6): F(3, 4), F(1, 3): 1, F(2, 3): F(1, 2), 1: 0}
        fn = idleness_function(K3, 0, 1)
        assert fn.breakpoints == ((0, F(1, 2)), (F(1, 3), 1), (1, 0))
        assert all(fn(a) == v for a, v in grid.items())

    def test_sharpness(self):
        fn = idleness_function(S2, 0, 1)
        assert fn.breakpoints == ((0, F(-1, 2)), (F(1, 5), F(-1, 5)), (1, 0))

    def test_probes_and_structure(self):
        rng = np.random.default_rng(23)
        G = random_min_degree_graph(12, 3, 31)
        for x, y in G.edges():
            fn = idleness_function(G, x, y)
            assert fn(1) == 0 and fn.is_concave() and fn.num_pieces <= 3
            for _ in range(6):
                q = int(rng.integers(1, 500))
                a = F(int(rng.integers(0, q + 1)), q)
                assert fn(a) == kappa_alpha(G, x, y, a).kappa

    def test_serialisation(self):
        fn = idleness_function(S2, 0, 1)
        assert fn.to_csv() == "alpha,value\n0,-1/2\n1/5,-1/5\n1,0\n"
        assert '"alpha": "1/5"' in fn.to_json()

    def test_piecewise_validation(self):
        with pytest.raises(ValueError):
            PiecewiseLinearFn(((F(0), F(0)), (F(1, 2), F(0))))
        fn = PiecewiseLinearFn(((F(0), F(0)), (F(1, 2), F(1)), (F(1), F(0))))
        assert fn(F(1, 4)) == F(1, 2) and fn.slopes == [2, -2]
        assert PieceCountFinding.__mro__[1] is UserWarning
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            idleness_function(C6, 0, 1)
