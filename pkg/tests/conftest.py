import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from exactricci.graph import (  # noqa: E402
    generate_sharpness,
    generate_standard,
    petersen,
    random_min_degree_graph,
)

ACCEPTANCE_LINES: list[str] = []


def build_corpus(random_count: int = 100, seed: int = 20240601):
    """Named fixed graphs plus seeded random graphs on at most 20 vertices."""
    corpus = [
        ("K4", generate_standard("complete", 4)),
        ("K6", generate_standard("complete", 6)),
        ("C5", generate_standard("cycle", 5)),
        ("C6", generate_standard("cycle", 6)),
        ("Q3", generate_standard("hypercube", 3)),
        ("Q4", generate_standard("hypercube", 4)),
        ("Petersen", petersen()),
    ]
    corpus += [(f"sharpness{l}", generate_sharpness(l).graph) for l in (2, 3, 4)]
    rng = np.random.default_rng(seed)
    for i in range(random_count):
        n = int(rng.integers(4, 21))
        delta = int(rng.integers(1, n // 2 + 2))
        corpus.append((f"random{i}", random_min_degree_graph(n, delta, [seed, i])))
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
