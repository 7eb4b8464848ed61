"""Deciding local Clifford equivalence of two graph states.

For label matrices ``M`` and ``N`` the unknowns are four diagonals
``E, F, E', F'`` (a vector of length ``4n``).  Symplectic orthogonality of
row ``i`` of ``(I | M) Y`` against row ``j`` of ``(I | N)`` reads::

    E'.(M_i * N_j) - F'.(M_i * d_j) + E.(d_i * N_j) - F.(d_i * d_j) = 0

which is linear; the quadratic condition ``E * F' - E' * F = 1`` is then
searched over sparse combinations of a kernel basis (at most five basis
vectors).  A witness is re-checked from scratch by :func:`verify_witness`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from . import gfp
from .errors import InvalidInput, UnsupportedModulus
from .graph import (ORBIT_LIMIT, LabeledGraph, connected_components, induced_subgraph,
                    orbit)
from .stabilizer import (GeneratorMatrix, LocalCliffordDiag, apply_local_clifford,
                         symplectic_gram, to_graph_form)

SEARCH_DEPTH = 5

Witness = LocalCliffordDiag


@dataclass(frozen=True)
class EquivalenceSystem:
    """``n**2 x 4n`` coefficient matrix; row ``i*n + j`` is the (i, j) equation."""

    p: int
    n: int
    coefficients: np.ndarray

    def nullspace(self) -> list[np.ndarray]:
        return gfp.nullspace_basis(self.coefficients, self.p)


def _check_pair(g: LabeledGraph, h: LabeledGraph) -> None:
    if g.p != h.p or g.n != h.n:
        raise InvalidInput("graphs must share p and vertex count")
    if g.p == 2:
        raise UnsupportedModulus("the linear-system test needs odd p; use equivalent_bruteforce")


def build_system(g: LabeledGraph, h: LabeledGraph) -> EquivalenceSystem:
    _check_pair(g, h)
    p, n = g.p, g.n
    M, N = g.matrix, h.matrix
    eye = np.eye(n, dtype=gfp.DTYPE)
    # rows[i, j] = [d_i * N_j | -(d_i * d_j) | M_i * N_j | -(M_i * d_j)]
    blocks = [
        eye[:, None, :] * N[None, :, :],
        -(eye[:, None, :] * eye[None, :, :]),
        M[:, None, :] * N[None, :, :],
        -(M[:, None, :] * eye[None, :, :]),
    ]
    coeff = np.concatenate(blocks, axis=2).reshape(n * n, 4 * n) % p
    return EquivalenceSystem(p, n, coeff)


def _det_ok(vecs: np.ndarray, p: int, n: int) -> np.ndarray:
    E, F, Ep, Fp = vecs[:, :n], vecs[:, n:2 * n], vecs[:, 2 * n:3 * n], vecs[:, 3 * n:]
    return np.all((E * Fp - Ep * F) % p == 1, axis=1)


def _coefficient_tuples(p: int, size: int) -> np.ndarray:
    # odometer order, first coefficient nonzero, last position varies fastest
    ranges = [range(1, p)] + [range(p)] * (size - 1)
    return np.array(list(product(*ranges)), dtype=gfp.DTYPE).reshape(-1, size)


def candidate_vectors(basis: Sequence[np.ndarray], p: int,
                      depth: int = SEARCH_DEPTH) -> Iterator[np.ndarray]:
    """Blocks of candidate combinations in the canonical search order.

    Subset sizes ascend from 0 to ``depth``; subsets of one size are visited
    lexicographically; coefficients follow an odometer with the first one
    nonzero.  Each yielded array has one candidate per row.
    """
    if not basis:
        return
    B = np.asarray(basis, dtype=gfp.DTYPE)
    yield np.zeros((1, B.shape[1]), dtype=gfp.DTYPE)
    for size in range(1, min(depth, len(basis)) + 1):
        coeffs = _coefficient_tuples(p, size)
        for subset in combinations(range(len(basis)), size):
            yield (coeffs @ B[list(subset)]) % p


def search_witness(basis: Sequence[np.ndarray], p: int, n: int,
                   depth: int = SEARCH_DEPTH) -> Witness | None:
    """First combination of at most ``depth`` basis vectors with all determinants 1."""
    for block in candidate_vectors(basis, p, depth):
        if block.shape[1] != 4 * n:
            raise InvalidInput("basis vectors must have length 4n")
        hits = np.nonzero(_det_ok(block, p, n))[0]
        if hits.size:
            return LocalCliffordDiag.from_vector(p, block[hits[0]])
    return None


def verify_witness(g: LabeledGraph, h: LabeledGraph, w: Witness) -> bool:
    """Determinants all 1 and every row of ``(I|N)`` orthogonal to every row of ``(I|M) Y``."""
    if g.p != h.p or g.n != h.n or w.n != g.n or w.p != g.p:
        return False
    if not w.is_valid():
        return False
    A = GeneratorMatrix.from_graph(g)
    B = GeneratorMatrix.from_graph(h)
    AY = gfp.matmul(A.matrix, w.matrix(), g.p)
    return not symplectic_gram(B.matrix, AY, g.p).any()


def reconstructs(g: LabeledGraph, h: LabeledGraph, w: Witness) -> bool:
    """Whether canonicalising ``(I|M) Y`` lands exactly on ``h``."""
    ay = apply_local_clifford(GeneratorMatrix.from_graph(g), w)
    return to_graph_form(ay).graph == h


def _are_equivalent_connected(g: LabeledGraph, h: LabeledGraph) -> Witness | None:
    system = build_system(g, h)
    return search_witness(system.nullspace(), g.p, g.n)


def _component_witness(g: LabeledGraph, h: LabeledGraph) -> Witness | None:
    comps = connected_components(g)
    if comps != connected_components(h):
        return None
    p, n = g.p, g.n
    parts = np.zeros((4, n), dtype=gfp.DTYPE)
    for comp in comps:
        w = _are_equivalent_connected(induced_subgraph(g, comp), induced_subgraph(h, comp))
        if w is None:
            return None
        for row, diag in enumerate((w.E, w.F, w.Ep, w.Fp)):
            parts[row, comp] = diag
    return LocalCliffordDiag(p, *parts)


def are_equivalent(g: LabeledGraph, h: LabeledGraph) -> tuple[bool, Witness | None]:
    """Decide equivalence; disconnected inputs are split into components."""
    _check_pair(g, h)
    if len(connected_components(g)) > 1 or len(connected_components(h)) > 1:
        w = _component_witness(g, h)
    else:
        w = _are_equivalent_connected(g, h)
    return (w is not None, w)


def are_equivalent_components(g: LabeledGraph, h: LabeledGraph) -> bool:
    """Componentwise test.

    Components are matched only when they occupy the same vertex indices;
    vertices are never permuted.  Each matched pair is decided on its own.
    """
    _check_pair(g, h)
    return _component_witness(g, h) is not None


def equivalent_bruteforce(g: LabeledGraph, h: LabeledGraph, limit: int = ORBIT_LIMIT) -> bool:
    if g.p != h.p or g.n != h.n:
        raise InvalidInput("graphs must share p and vertex count")
    target = h.key()
    return any(x.key() == target for x in orbit(g, limit))
