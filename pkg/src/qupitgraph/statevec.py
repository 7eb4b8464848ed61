"""Dense state-vector oracle for small qupit systems.

Basis states ``|x_0 ... x_{n-1}>`` are indexed in base ``p`` with qupit 0 as
the most significant digit, so ``amplitudes.reshape((p,) * n)`` puts qupit
``i`` on axis ``i``.  ``X(a)|x> = |x + a>`` and ``Z(b)|x> = w**(b x)|x>``.

Nothing here is meant to scale; it exists to check the finite-field code.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold

import numpy as np

from . import gfp
from .errors import InvalidInput, InvalidParameter, ResourceLimit
from .graph import LabeledGraph
from .stabilizer import GeneratorMatrix, LocalCliffordDiag, PauliElement, pauli_power

TOL = 1e-9
STATE_LIMIT = 10**6
DENSE_LIMIT = 2048


def omega(p: int) -> complex:
    return np.exp(2j * np.pi / p)


def _roots(p: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(p) / p)


@dataclass(frozen=True, eq=False)
class StateVector:
    p: int
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.shape[0] != self.p ** self.n:
            raise InvalidInput(f"expected {self.p ** self.n} amplitudes, got {amp.shape[0]}")
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def basis(cls, p: int, digits) -> "StateVector":
        digits = [int(x) % p for x in digits]
        amp = np.zeros(p ** len(digits), dtype=complex)
        amp[int(np.ravel_multi_index(digits, (p,) * len(digits))) if digits else 0] = 1
        return cls(p, len(digits), amp)

    @classmethod
    def uniform(cls, p: int, n: int) -> "StateVector":
        return cls(p, n, np.full(p ** n, p ** (-n / 2), dtype=complex))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.p,) * self.n) if self.n else self.amplitudes

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "StateVector":
        nrm = self.norm()
        if nrm < TOL:
            raise InvalidParameter("cannot normalise the zero vector")
        return StateVector(self.p, self.n, self.amplitudes / nrm)

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def _check_dims(p: int, n: int, limit: int = STATE_LIMIT) -> None:
    if p ** n > limit:
        raise ResourceLimit(f"dimension {p}^{n} exceeds {limit}")


def _digit_grid(p: int, n: int, i: int) -> np.ndarray:
    shape = [1] * n
    shape[i] = p
    return np.arange(p).reshape(shape)


def apply_x(s: StateVector, i: int, a: int) -> StateVector:
    a = int(a) % s.p
    if a == 0:
        return s
    return StateVector(s.p, s.n, np.roll(s.tensor(), a, axis=i))


def apply_z(s: StateVector, i: int, b: int) -> StateVector:
    b = int(b) % s.p
    if b == 0:
        return s
    phases = _roots(s.p)[(b * _digit_grid(s.p, s.n, i)) % s.p]
    return StateVector(s.p, s.n, s.tensor() * phases)


def apply_pauli(s: StateVector, g: PauliElement) -> StateVector:
    """Apply ``w**c X(a) Z(b)``: the Z part acts first."""
    if g.p != s.p or g.n != s.n:
        raise InvalidInput("Pauli and state dimensions differ")
    t = s.tensor()
    if g.b.any():
        expo = sum((int(g.b[i]) * _digit_grid(s.p, s.n, i) for i in range(s.n)), 0)
        t = t * _roots(s.p)[np.mod(expo, s.p)]
    for i in range(s.n):
        if g.a[i]:
            t = np.roll(t, int(g.a[i]), axis=i)
    return StateVector(s.p, s.n, t * omega(s.p) ** g.phase)


def single_x(p: int) -> np.ndarray:
    return np.roll(np.eye(p, dtype=complex), 1, axis=0)


def single_z(p: int) -> np.ndarray:
    return np.diag(_roots(p))


def pauli_matrix(g: PauliElement) -> np.ndarray:
    _check_dims(g.p, g.n, DENSE_LIMIT)
    X, Z = single_x(g.p), single_z(g.p)
    factors = [np.linalg.matrix_power(X, int(a)) @ np.linalg.matrix_power(Z, int(b))
               for a, b in zip(g.a, g.b)]
    out = _fold(np.kron, factors, np.eye(1, dtype=complex))
    return out * omega(g.p) ** g.phase


def build_graph_state(g: LabeledGraph) -> StateVector:
    """Amplitudes ``p**(-n/2) w**q(x)`` with ``q(x) = sum_{i<j} M_ij x_i x_j``."""
    p, n = g.p, g.n
    _check_dims(p, n)
    grids = [_digit_grid(p, n, i) for i in range(n)]
    q = np.zeros((p,) * n, dtype=np.int64) if n else np.zeros(1, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            if g.matrix[i, j]:
                q = q + int(g.matrix[i, j]) * grids[i] * grids[j]
    amp = _roots(p)[np.mod(q, p)] * p ** (-n / 2)
    return StateVector(p, n, amp)


def is_stabilized(s: StateVector, g: PauliElement, tol: float = TOL) -> bool:
    return float(np.linalg.norm(apply_pauli(s, g).amplitudes - s.amplitudes)) < tol


def eigenvalue(s: StateVector, g: PauliElement, tol: float = TOL) -> int | None:
    """``j`` with ``g s = w**j s``, or None if ``s`` is not an eigenvector."""
    gs = apply_pauli(s, g).amplitudes
    for j, w in enumerate(_roots(s.p)):
        if np.linalg.norm(gs - w * s.amplitudes) < tol:
            return j
    return None


@dataclass(frozen=True, eq=False)
class Projector:
    p: int
    n: int
    matrix: np.ndarray

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def rank(self) -> int:
        return int(round(self.trace().real))

    def apply(self, s: StateVector) -> StateVector:
        return StateVector(s.p, s.n, self.matrix @ s.amplitudes)


def eigenprojector(g: PauliElement, j: int) -> Projector:
    """``(1/p) sum_k w**(-k j) g**k``: projector onto the ``w**j`` eigenspace."""
    if g.is_scalar():
        raise InvalidParameter("eigenprojector needs a non-scalar Pauli")
    p = g.p
    _check_dims(p, g.n, DENSE_LIMIT)
    w = omega(p)
    mat = sum(w ** (-k * j) * pauli_matrix(pauli_power(g, k)) for k in range(p)) / p
    return Projector(p, g.n, mat)


def project(s: StateVector, g: PauliElement, j: int) -> StateVector:
    """Apply the ``w**j`` eigenprojector of ``g`` without forming a matrix."""
    if g.is_scalar():
        raise InvalidParameter("eigenprojector needs a non-scalar Pauli")
    w = omega(s.p)
    acc = np.zeros_like(s.amplitudes)
    for k in range(s.p):
        acc = acc + w ** (-k * j) * apply_pauli(s, pauli_power(g, k)).amplitudes
    return StateVector(s.p, s.n, acc / s.p)


def stab_projector(gm: GeneratorMatrix, outcomes) -> Projector:
    """Product of the per-row eigenprojectors (rows taken with phase 0)."""
    outcomes = list(outcomes)
    if len(outcomes) != gm.k:
        raise InvalidInput("need one outcome per generator")
    _check_dims(gm.p, gm.n, DENSE_LIMIT)
    mat = np.eye(gm.p ** gm.n, dtype=complex)
    for g, j in zip(gm.rows(), outcomes):
        mat = mat @ eigenprojector(g, j).matrix
    return Projector(gm.p, gm.n, mat)


def clifford_unitary(p: int, block) -> np.ndarray:
    """Single-qupit unitary ``C`` for the symplectic block ``[[e, f], [e', f']]``.

    ``C X C^dag`` is proportional to ``X(e) Z(f)`` and ``C Z C^dag`` to
    ``X(e') Z(f')``.  Built directly: ``C|0>`` is the eigenvalue-1 vector of
    the image of Z and ``C|k> = (image of X)**k C|0>``.
    """
    (e, f), (ep, fp) = (np.asarray(block) % p).tolist()
    if (e * fp - f * ep) % p != 1:
        raise InvalidParameter("block must have determinant 1")
    X, Z = single_x(p), single_z(p)
    px = np.linalg.matrix_power(X, e) @ np.linalg.matrix_power(Z, f)
    pz = np.linalg.matrix_power(X, ep) @ np.linalg.matrix_power(Z, fp)
    vals, vecs = np.linalg.eig(pz)
    idx = int(np.argmin(np.abs(vals - 1)))
    if abs(vals[idx] - 1) > 1e-6:
        raise InvalidParameter("image of Z has no eigenvalue 1")
    v0 = vecs[:, idx] / np.linalg.norm(vecs[:, idx])
    cols = [v0]
    for _ in range(p - 1):
        cols.append(px @ cols[-1])
    return np.column_stack(cols)


def apply_local_unitary(s: StateVector, i: int, u: np.ndarray) -> StateVector:
    t = np.moveaxis(np.tensordot(u, s.tensor(), axes=([1], [i])), 0, i)
    return StateVector(s.p, s.n, t)


def apply_local_clifford_state(s: StateVector, y: LocalCliffordDiag) -> StateVector:
    """Apply ``h = h_0 ... h_{n-1}`` whose conjugation action is ``y``."""
    for i in range(s.n):
        blk = y.qupit(i)
        if not np.array_equal(blk, np.eye(2, dtype=blk.dtype)):
            s = apply_local_unitary(s, i, clifford_unitary(s.p, blk))
    return s


def stabilizer_eigenvalues(s: StateVector, gm: GeneratorMatrix) -> list[int] | None:
    """Eigenvalue exponents of ``s`` under every row of ``gm`` (phase 0), or None."""
    out = []
    for g in gm.rows():
        j = eigenvalue(s, g)
        if j is None:
            return None
        out.append(j)
    return out


def verify_graph_state(g: LabeledGraph) -> list[bool]:
    """Whether ``build_graph_state(g)`` is fixed by each row of ``(I | M)``."""
    s = build_graph_state(g)
    return [is_stabilized(s, r) for r in GeneratorMatrix.from_graph(g).rows()]
