import json

import numpy as np
import pytest

from qupitgraph.equivalence import (are_equivalent, are_equivalent_components, build_system,
                                    equivalent_bruteforce, reconstructs, search_witness,
                                    verify_witness)
from qupitgraph.errors import InvalidInput, UnsupportedModulus
from qupitgraph.graph import LabeledGraph, complement_op, scale_op
from qupitgraph.stabilizer import LocalCliffordDiag

from conftest import random_graph

EDGE1 = LabeledGraph.from_edges(3, 2, [(0, 1, 1)])
EDGE2 = LabeledGraph.from_edges(3, 2, [(0, 1, 2)])


def orthogonality_residual(g, h, vec):
    """Direct evaluation of every (i, j) equation, independent of build_system."""
    p, n = g.p, g.n
    E, F, Ep, Fp = (vec[k * n:(k + 1) * n] for k in range(4))
    d = np.eye(n, dtype=int)
    out = []
    for i in range(n):
        for j in range(n):
            M, N = g.matrix[i], h.matrix[j]
            out.append((Ep @ (M * N) - Fp @ (M * d[j]) + E @ (d[i] * N) - F @ (d[i] * d[j])) % p)
    return np.array(out)


def test_build_system_single_vertex():
    e = LabeledGraph.empty(3, 1)
    sys = build_system(e, e)
    assert sys.coefficients.tolist() == [[0, 2, 0, 0]]  # -f_1 = 0


def test_build_system_matches_direct_evaluation(rng):
    for _ in range(30):
        g, h = random_graph(rng, 5, 3), random_graph(rng, 5, 3)
        sys = build_system(g, h)
        assert sys.coefficients.shape == (9, 12)
        v = rng.integers(0, 5, 12)
        assert np.array_equal(sys.coefficients @ v % 5, orthogonality_residual(g, h, v))


def test_edge_self_solution():
    v = np.array([1, 1, 0, 0, 0, 0, 1, 1])
    assert not (build_system(EDGE1, EDGE1).coefficients @ v % 3).any()


def test_identity_satisfies_system_for_equal_graphs(rng):
    for _ in range(20):
        g = random_graph(rng, 5, 4)
        ident = LocalCliffordDiag.identity(5, 4).vector()
        assert not (build_system(g, g).coefficients @ ident % 5).any()


def test_build_system_rejects():
    with pytest.raises(UnsupportedModulus):
        build_system(LabeledGraph.empty(2, 2), LabeledGraph.empty(2, 2))
    with pytest.raises(InvalidInput):
        build_system(LabeledGraph.empty(3, 2), LabeledGraph.empty(3, 3))


def test_search_witness_examples():
    ident = LocalCliffordDiag.identity(3, 2)
    assert search_witness([ident.vector()], 3, 2) == ident
    assert search_witness([], 3, 2) is None


def test_search_witness_edge_pair():
    w = search_witness(build_system(EDGE1, EDGE2).nullspace(), 3, 2)
    assert w is not None and verify_witness(EDGE1, EDGE2, w)


def test_verify_witness_examples():
    g = LabeledGraph.path(5, 3)
    assert verify_witness(g, g, LocalCliffordDiag.identity(5, 3))
    bad = LocalCliffordDiag(5, [1, 1, 2], [0, 0, 0], [0, 0, 0], [1, 1, 1], check=False)
    assert not verify_witness(g, g, bad)


def test_are_equivalent_examples(rng):
    g = random_graph(rng, 5, 4)
    ok, w = are_equivalent(g, g)
    assert ok and verify_witness(g, g, w)
    assert are_equivalent(EDGE1, EDGE2)[0]
    assert are_equivalent(EDGE1, LabeledGraph.empty(3, 2)) == (False, None)


def test_components_examples():
    g = LabeledGraph.from_edges(3, 3, [(0, 1, 1)])
    assert are_equivalent_components(g, g)
    assert not are_equivalent_components(g, LabeledGraph.complete(3, 3))
    h = LabeledGraph.from_edges(3, 3, [(0, 1, 2)])
    assert are_equivalent_components(g, h)
    # same shape on different vertex sets is not matched
    k = LabeledGraph.from_edges(3, 3, [(1, 2, 1)])
    assert not are_equivalent_components(g, k)


def test_disconnected_witness_is_assembled():
    g = LabeledGraph.from_edges(5, 5, [(0, 1, 1), (2, 3, 4), (3, 4, 1)])
    h = complement_op(scale_op(g, 0, 3), 3, 2)
    ok, w = are_equivalent(g, h)
    assert ok and verify_witness(g, h, w) and reconstructs(g, h, w)


def test_bruteforce_examples():
    g = LabeledGraph.path(3, 3)
    assert equivalent_bruteforce(g, g)
    assert equivalent_bruteforce(g, LabeledGraph.complete(3, 3))
    assert not equivalent_bruteforce(LabeledGraph.complete(2, 4), LabeledGraph.empty(2, 4))


def test_witness_json_roundtrip():
    ok, w = are_equivalent(EDGE1, EDGE2)
    data = json.loads(json.dumps(w.to_json()))
    assert set(data) == {"E", "F", "Ep", "Fp"}
    w2 = LocalCliffordDiag.from_json(3, data)
    assert w2 == w and verify_witness(EDGE1, EDGE2, w2)


def test_witness_deterministic(rng):
    for _ in range(10):
        g = random_graph(rng, 5, 3)
        h = complement_op(g, 1, 2)
        assert are_equivalent(g, h)[1] == are_equivalent(g, h)[1]


def test_single_moves_are_equivalences(rng):
    for _ in range(60):
        p = int(rng.choice([3, 5]))
        g = random_graph(rng, p, int(rng.integers(2, 5)))
        v = int(rng.integers(g.n))
        c = int(rng.integers(1, p))
        for h in (scale_op(g, v, c), complement_op(g, v, c)):
            ok, w = are_equivalent(g, h)
            assert ok and verify_witness(g, h, w) and reconstructs(g, h, w)
