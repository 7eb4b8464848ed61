from itertools import product

import numpy as np
import pytest

from qupitgraph import statevec as sv
from qupitgraph.errors import InvalidParameter, ResourceLimit
from qupitgraph.graph import LabeledGraph
from qupitgraph.stabilizer import (GeneratorMatrix, PauliElement, apply_local_clifford, commutes,
                                   pauli_compose, pauli_power, validate)

from conftest import all_graphs, random_generator_matrix, random_graph, random_local_clifford

TOL = 1e-9


def rand_pauli(rng, p, n, phase=True):
    while True:
        g = PauliElement(p, int(rng.integers(p)) if phase else 0,
                         rng.integers(0, p, n), rng.integers(0, p, n))
        if not g.is_scalar():
            return g


def close(a, b):
    return np.linalg.norm(np.asarray(a) - np.asarray(b)) < TOL


def test_apply_x_examples():
    s = sv.StateVector.basis(3, [0])
    assert close(sv.apply_x(s, 0, 1).amplitudes, sv.StateVector.basis(3, [1]).amplitudes)
    assert sv.apply_x(s, 0, 0) is s
    t = sv.StateVector.basis(5, [2, 3])
    u = t
    for _ in range(5):
        u = sv.apply_x(u, 1, 2)
    assert close(u.amplitudes, t.amplitudes)


def test_apply_z_examples():
    zero = sv.StateVector.basis(3, [0])
    assert close(sv.apply_z(zero, 0, 2).amplitudes, zero.amplitudes)
    one = sv.StateVector.basis(3, [1])
    assert close(sv.apply_z(one, 0, 1).amplitudes, sv.omega(3) * one.amplitudes)
    assert sv.apply_z(one, 0, 0) is one


def test_index_order_qupit0_most_significant():
    s = sv.StateVector.basis(3, [1, 0])
    assert np.argmax(np.abs(s.amplitudes)) == 3


def test_apply_pauli_matches_dense(rng):
    for p, n in [(3, 1), (3, 2), (5, 2), (3, 3)]:
        for _ in range(10):
            g = rand_pauli(rng, p, n)
            s = sv.StateVector(p, n, rng.normal(size=p**n) + 1j * rng.normal(size=p**n))
            assert close(sv.apply_pauli(s, g).amplitudes, sv.pauli_matrix(g) @ s.amplitudes)


def test_identity_pauli_acts_trivially(rng):
    s = sv.StateVector(3, 2, rng.normal(size=9) + 0j)
    assert close(sv.apply_pauli(s, PauliElement.identity(3, 2)).amplitudes, s.amplitudes)


def test_compose_matches_matrix_product(rng):
    for _ in range(50):
        g1, g2 = rand_pauli(rng, 3, 2), rand_pauli(rng, 3, 2)
        assert close(sv.pauli_matrix(pauli_compose(g1, g2)),
                     sv.pauli_matrix(g1) @ sv.pauli_matrix(g2))


@pytest.mark.parametrize("p", [3, 5])
def test_zx_commutation_relation_dense(p):
    x = sv.pauli_matrix(PauliElement(p, 0, [1], [0]))
    z = sv.pauli_matrix(PauliElement(p, 0, [0], [1]))
    assert close(z @ x, sv.omega(p) * x @ z)


def test_power_matches_matrix_power(rng):
    for n in (1, 2):
        for _ in range(20):
            g = rand_pauli(rng, 3, n)
            for k in range(7):
                assert close(sv.pauli_matrix(pauli_power(g, k)),
                             np.linalg.matrix_power(sv.pauli_matrix(g), k))


def test_commutes_matches_dense(rng):
    for _ in range(250):
        n = int(rng.integers(1, 4))
        g1, g2 = rand_pauli(rng, 3, n), rand_pauli(rng, 3, n)
        m1, m2 = sv.pauli_matrix(g1), sv.pauli_matrix(g2)
        assert commutes(g1, g2) == close(m1 @ m2, m2 @ m1)


def test_build_graph_state_examples():
    s = sv.build_graph_state(LabeledGraph.empty(5, 1))
    assert close(s.amplitudes, np.full(5, 5 ** -0.5))
    edge = LabeledGraph.from_edges(3, 2, [(0, 1, 1)])
    s = sv.build_graph_state(edge)
    w = sv.omega(3)
    expected = [w ** (x1 * x2) / 3 for x1, x2 in product(range(3), repeat=2)]
    assert close(s.amplitudes, expected)
    assert sv.is_stabilized(s, PauliElement(3, 0, [1, 0], [0, 1]))
    assert sv.is_stabilized(s, PauliElement(3, 0, [0, 1], [1, 0]))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_graph_states_stabilized_with_zero_phase(n):
    for g in all_graphs(3, n):
        assert all(sv.verify_graph_state(g))


def test_graph_states_stabilized_random(rng):
    for _ in range(50):
        p = int(rng.choice([3, 5, 7]))
        g = random_graph(rng, p, int(rng.integers(1, 5)))
        assert all(sv.verify_graph_state(g))
        assert abs(sv.build_graph_state(g).norm() - 1) < TOL


def test_build_graph_state_guard():
    with pytest.raises(ResourceLimit):
        sv.build_graph_state(LabeledGraph.empty(5, 9))


def test_eigenprojector_examples():
    g = PauliElement(3, 0, [0], [1])
    P0 = sv.eigenprojector(g, 0).matrix
    assert close(P0, np.diag([1, 0, 0]))
    with pytest.raises(InvalidParameter):
        sv.eigenprojector(PauliElement.identity(3, 1), 0)


def test_eigenprojector_properties(rng):
    for p in (3, 5):
        for n in (1, 2):
            for _ in range(10):
                g = rand_pauli(rng, p, n)
                gm = sv.pauli_matrix(g)
                total = np.zeros_like(gm)
                for j in range(p):
                    P = sv.eigenprojector(g, j)
                    assert np.linalg.norm(P.matrix @ P.matrix - P.matrix, 2) < TOL
                    assert close(gm @ P.matrix, sv.omega(p) ** j * P.matrix)
                    assert abs(P.trace() - p ** (n - 1)) < TOL
                    total = total + P.matrix
                assert close(total, np.eye(p**n))


def test_project_matches_dense_projector(rng):
    g = rand_pauli(rng, 3, 2)
    s = sv.StateVector(3, 2, rng.normal(size=9) + 0j)
    for j in range(3):
        assert close(sv.project(s, g, j).amplitudes, sv.eigenprojector(g, j).apply(s).amplitudes)


def test_stab_projector_graph_state(rng):
    for _ in range(10):
        g = random_graph(rng, 3, 3)
        P = sv.stab_projector(GeneratorMatrix.from_graph(g), [0, 0, 0])
        s = sv.build_graph_state(g)
        assert P.rank() == 1
        assert close(P.apply(s).amplitudes, s.amplitudes)


def test_stab_projector_equal_ranks_all_outcomes():
    gm = GeneratorMatrix.from_graph(LabeledGraph.from_edges(3, 2, [(0, 1, 2)]))
    for outcomes in product(range(3), repeat=2):
        assert sv.stab_projector(gm, outcomes).rank() == 1


def test_stab_projector_rank_random(rng):
    for _ in range(30):
        n = int(rng.integers(1, 4))
        k = int(rng.integers(1, n + 1))
        gm = random_generator_matrix(rng, 3, n)
        sub = GeneratorMatrix(3, gm.matrix[:k])
        assert validate(sub)
        outcomes = rng.integers(0, 3, k)
        P = sv.stab_projector(sub, outcomes)
        assert P.rank() == 3 ** (n - k)
        assert abs(P.trace() - 3 ** (n - k)) < TOL
        assert np.linalg.norm(P.matrix @ P.matrix - P.matrix, 2) < TOL


def test_is_stabilized_examples():
    assert sv.is_stabilized(sv.StateVector.uniform(3, 1), PauliElement(3, 0, [1], [0]))
    assert sv.is_stabilized(sv.StateVector.basis(3, [0]), PauliElement(3, 0, [0], [1]))
    assert not sv.is_stabilized(sv.StateVector.basis(3, [1]), PauliElement(3, 0, [0], [1]))


@pytest.mark.parametrize("p", [3, 5])
def test_clifford_unitary_conjugation(rng, p):
    for _ in range(20):
        y = random_local_clifford(rng, p, 1)
        (e, f), (ep, fp) = y.qupit(0).tolist()
        C = sv.clifford_unitary(p, y.qupit(0))
        assert close(C.conj().T @ C, np.eye(p))
        for src, (a, b) in (((1, 0), (e, f)), ((0, 1), (ep, fp))):
            lhs = C @ sv.pauli_matrix(PauliElement(p, 0, [src[0]], [src[1]])) @ C.conj().T
            rhs = sv.pauli_matrix(PauliElement(p, 0, [a], [b]))
            ratio = np.trace(rhs.conj().T @ lhs) / p
            assert abs(abs(ratio) - 1) < 1e-9 and close(lhs, ratio * rhs)


def test_local_clifford_state_follows_generator_matrix(rng):
    # h|G> is stabilized (up to eigenphases) by the rows of (I|M) Y
    for _ in range(20):
        g = random_graph(rng, 3, 3)
        y = random_local_clifford(rng, 3, 3)
        s = sv.apply_local_clifford_state(sv.build_graph_state(g), y)
        moved = apply_local_clifford(GeneratorMatrix.from_graph(g), y)
        assert sv.stabilizer_eigenvalues(s, moved) is not None
