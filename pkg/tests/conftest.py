from itertools import combinations, product

import numpy as np
import pytest

from qupitgraph.graph import LabeledGraph


def all_graphs(p, n):
    pairs = list(combinations(range(n), 2))
    for labels in product(range(p), repeat=len(pairs)):
        yield LabeledGraph.from_edges(p, n, [(u, v, c) for (u, v), c in zip(pairs, labels) if c])


def random_graph(rng, p, n, density=None):
    m = np.triu(rng.integers(0, p, (n, n)), 1)
    if density is not None:
        m = m * (rng.random((n, n)) < density)
    return LabeledGraph(p, m + m.T)


def random_generator_matrix(rng, p, n):
    """Random full-rank Lagrangian rows: a random graph state under a random local Clifford
    followed by a random invertible row transform."""
    from qupitgraph import gfp
    from qupitgraph.stabilizer import (GeneratorMatrix, apply_local_clifford,
                                       row_transform)

    g = random_graph(rng, p, n)
    y = random_local_clifford(rng, p, n)
    gm = apply_local_clifford(GeneratorMatrix.from_graph(g), y)
    while True:
        u = rng.integers(0, p, (n, n))
        if gfp.rank(u, p) == n:
            return row_transform(gm, u)


def random_local_clifford(rng, p, n):
    from qupitgraph.stabilizer import LocalCliffordDiag

    cols = []
    for _ in range(n):
        while True:
            e, f, ep, fp = (int(x) for x in rng.integers(0, p, 4))
            if (e * fp - f * ep) % p == 1:
                cols.append((e, f, ep, fp))
                break
    E, F, Ep, Fp = zip(*cols)
    return LocalCliffordDiag(p, E, F, Ep, Fp)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
