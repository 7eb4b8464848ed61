"""Pauli algebra, generator matrices and the local Clifford action on them.

Conventions
-----------
A Pauli element is ``w**c X(a) Z(b)`` with ``w = exp(2 pi i / p)``; products
are returned in this X-before-Z normal form using ``Z(b) X(a) = w**(a.b) X(a) Z(b)``.

A generator matrix is a ``k x 2n`` array whose rows are ``(a | b)``; phases
are not stored.  A local Clifford is given by four diagonals ``E, F, E', F'``
and acts on rows from the right, i.e. qupit ``i`` maps
``(a_i, b_i) -> (a_i e_i + b_i e'_i, a_i f_i + b_i f'_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import gfp
from .errors import (InternalError, InvalidInput, InvalidParameter, NotInvertible,
                     UnsupportedModulus)
from .graph import LabeledGraph


def _vec(x, p: int) -> np.ndarray:
    v = gfp.reduce(x, p)
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class PauliElement:
    p: int
    phase: int
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phase", int(self.phase) % self.p)
        object.__setattr__(self, "a", _vec(self.a, self.p))
        object.__setattr__(self, "b", _vec(self.b, self.p))
        if self.a.shape != self.b.shape or self.a.ndim != 1:
            raise InvalidInput("a and b must be vectors of equal length")

    @classmethod
    def identity(cls, p: int, n: int) -> "PauliElement":
        return cls(p, 0, np.zeros(n, dtype=gfp.DTYPE), np.zeros(n, dtype=gfp.DTYPE))

    @classmethod
    def single(cls, p: int, n: int, i: int, a: int = 0, b: int = 0, phase: int = 0) -> "PauliElement":
        """``w**phase X_i(a) Z_i(b)`` acting on qupit ``i`` only."""
        av = np.zeros(n, dtype=gfp.DTYPE)
        bv = np.zeros(n, dtype=gfp.DTYPE)
        av[i], bv[i] = a, b
        return cls(p, phase, av, bv)

    @classmethod
    def from_row(cls, p: int, row, phase: int = 0) -> "PauliElement":
        row = np.asarray(row)
        n = row.shape[0] // 2
        return cls(p, phase, row[:n], row[n:])

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def row(self) -> np.ndarray:
        return np.concatenate([self.a, self.b])

    def is_scalar(self) -> bool:
        return not (self.a.any() or self.b.any())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliElement):
            return NotImplemented
        return (self.p == other.p and self.phase == other.phase
                and np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b))

    def __hash__(self) -> int:
        return hash((self.p, self.phase, self.a.tobytes(), self.b.tobytes()))

    def __repr__(self) -> str:
        return f"PauliElement(p={self.p}, phase={self.phase}, a={self.a.tolist()}, b={self.b.tolist()})"


def symplectic_product(r1, r2, p: int) -> int:
    """``a.b' - b.a'`` for rows ``(a | b)`` and ``(a' | b')``."""
    r1 = np.asarray(r1, dtype=gfp.DTYPE)
    r2 = np.asarray(r2, dtype=gfp.DTYPE)
    if r1.shape != r2.shape or r1.shape[-1] % 2:
        raise InvalidParameter("rows must have equal, even length")
    n = r1.shape[-1] // 2
    return int((r1[:n] @ r2[n:] - r1[n:] @ r2[:n]) % p)


def symplectic_gram(rows1, rows2, p: int) -> np.ndarray:
    """Matrix of symplectic products between every row of ``rows1`` and ``rows2``."""
    r1 = np.asarray(rows1, dtype=gfp.DTYPE)
    r2 = np.asarray(rows2, dtype=gfp.DTYPE)
    n = r1.shape[1] // 2
    return (r1[:, :n] @ r2[:, n:].T - r1[:, n:] @ r2[:, :n].T) % p


def _same_space(g1: PauliElement, g2: PauliElement) -> None:
    if g1.p != g2.p or g1.n != g2.n:
        raise InvalidInput("Pauli elements live on different systems")


def pauli_compose(g1: PauliElement, g2: PauliElement) -> PauliElement:
    _same_space(g1, g2)
    p = g1.p
    phase = g1.phase + g2.phase + int(g1.b @ g2.a)
    return PauliElement(p, phase, g1.a + g2.a, g1.b + g2.b)


def pauli_power(g: PauliElement, k: int) -> PauliElement:
    if k < 0:
        raise InvalidParameter("power must be non-negative")
    p = g.p
    phase = k * g.phase + comb(k, 2) * int(g.a @ g.b)
    return PauliElement(p, phase, k * g.a, k * g.b)


def commutes(g1: PauliElement, g2: PauliElement) -> bool:
    _same_space(g1, g2)
    return symplectic_product(g1.row(), g2.row(), g1.p) == 0


class GeneratorMatrix:
    """``k x 2n`` matrix of Pauli rows ``(a | b)`` over F_p, phases dropped."""

    __slots__ = ("p", "matrix")

    def __init__(self, p: int, matrix):
        self.p = gfp.check_modulus(p)
        m = gfp.reduce(matrix, self.p)
        if m.ndim != 2 or m.shape[1] % 2:
            raise InvalidInput("generator matrix must be k x 2n")
        m.setflags(write=False)
        self.matrix = m

    @classmethod
    def from_graph(cls, g: LabeledGraph) -> "GeneratorMatrix":
        return cls(g.p, np.hstack([gfp.identity(g.n), g.matrix]))

    @property
    def k(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1] // 2

    @property
    def a_block(self) -> np.ndarray:
        return self.matrix[:, :self.n]

    @property
    def b_block(self) -> np.ndarray:
        return self.matrix[:, self.n:]

    def rows(self) -> list[PauliElement]:
        return [PauliElement.from_row(self.p, r) for r in self.matrix]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneratorMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.matrix, other.matrix)

    def __repr__(self) -> str:
        return f"GeneratorMatrix(p={self.p}, rows={self.matrix.tolist()})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = ""
    rank: int | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(gm: GeneratorMatrix) -> ValidationReport:
    """Check full row rank and pairwise symplectic orthogonality."""
    rk = gfp.rank(gm.matrix, gm.p)
    if rk < gm.k:
        return ValidationReport(False, f"rank deficit: rank {rk} < k={gm.k}", rank=rk)
    gram = symplectic_gram(gm.matrix, gm.matrix, gm.p)
    bad = np.argwhere(np.triu(gram, 1))
    if bad.size:
        i, j = (int(x) for x in bad[0])
        return ValidationReport(False, f"rows {i} and {j} do not commute", rank=rk, pair=(i, j))
    return ValidationReport(True, rank=rk)


@dataclass(frozen=True, eq=False)
class LocalCliffordDiag:
    """Diagonals ``E, F, E', F'`` of a per-qupit symplectic matrix ``Y``."""

    p: int
    E: np.ndarray
    F: np.ndarray
    Ep: np.ndarray
    Fp: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        for name in ("E", "F", "Ep", "Fp"):
            object.__setattr__(self, name, _vec(getattr(self, name), self.p))
        if not (self.E.shape == self.F.shape == self.Ep.shape == self.Fp.shape):
            raise InvalidInput("diagonals must have equal length")
        if self.check and not self.is_valid():
            raise InvalidParameter("per-qupit determinants must all equal 1")

    @classmethod
    def identity(cls, p: int, n: int) -> "LocalCliffordDiag":
        one, zero = np.ones(n, dtype=gfp.DTYPE), np.zeros(n, dtype=gfp.DTYPE)
        return cls(p, one, zero, zero, one)

    @classmethod
    def from_vector(cls, p: int, v, check: bool = True) -> "LocalCliffordDiag":
        """Split a length-4n vector ordered ``[E | F | E' | F']``."""
        v = np.asarray(v)
        n = v.shape[0] // 4
        return cls(p, v[:n], v[n:2 * n], v[2 * n:3 * n], v[3 * n:], check=check)

    @property
    def n(self) -> int:
        return self.E.shape[0]

    def determinants(self) -> np.ndarray:
        return (self.E * self.Fp - self.F * self.Ep) % self.p

    def is_valid(self) -> bool:
        return bool(np.all(self.determinants() == 1))

    def qupit(self, i: int) -> np.ndarray:
        """2x2 block ``[[e, f], [e', f']]`` of qupit ``i``."""
        return np.array([[self.E[i], self.F[i]], [self.Ep[i], self.Fp[i]]], dtype=gfp.DTYPE)

    def matrix(self) -> np.ndarray:
        n = self.n
        return np.block([[np.diag(self.E), np.diag(self.F)],
                         [np.diag(self.Ep), np.diag(self.Fp)]]).astype(gfp.DTYPE)

    def vector(self) -> np.ndarray:
        return np.concatenate([self.E, self.F, self.Ep, self.Fp])

    def then(self, other: "LocalCliffordDiag") -> "LocalCliffordDiag":
        """``Y_self @ Y_other``: apply ``self`` first, then ``other``."""
        p = self.p
        return LocalCliffordDiag(
            p,
            self.E * other.E + self.F * other.Ep,
            self.E * other.F + self.F * other.Fp,
            self.Ep * other.E + self.Fp * other.Ep,
            self.Ep * other.F + self.Fp * other.Fp,
            check=self.check and other.check,
        )

    def inverse(self) -> "LocalCliffordDiag":
        # det-1 2x2 inverse: [[f', -f], [-e', e]]
        return LocalCliffordDiag(self.p, self.Fp, -self.F, -self.Ep, self.E)

    def to_json(self) -> dict:
        return {"E": self.E.tolist(), "F": self.F.tolist(),
                "Ep": self.Ep.tolist(), "Fp": self.Fp.tolist()}

    @classmethod
    def from_json(cls, p: int, data: dict, check: bool = True) -> "LocalCliffordDiag":
        try:
            return cls(p, data["E"], data["F"], data["Ep"], data["Fp"], check=check)
        except KeyError as exc:
            raise InvalidInput(f"witness JSON lacks {exc}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalCliffordDiag):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.vector(), other.vector())

    def __repr__(self) -> str:
        return f"LocalCliffordDiag(p={self.p}, {self.to_json()})"


def apply_local_clifford(gm: GeneratorMatrix, y: LocalCliffordDiag) -> GeneratorMatrix:
    """Generator matrix ``A @ Y`` of the conjugated stabilizer group."""
    if gm.p == 2:
        raise UnsupportedModulus("local Clifford action is implemented for odd p only")
    if y.n != gm.n or y.p != gm.p:
        raise InvalidInput("local Clifford does not match the generator matrix")
    return GeneratorMatrix(gm.p, gfp.matmul(gm.matrix, y.matrix(), gm.p))


def row_transform(gm: GeneratorMatrix, u) -> GeneratorMatrix:
    u = gfp.reduce(u, gm.p)
    if u.shape != (gm.k, gm.k):
        raise InvalidInput("row transform must be k x k")
    gfp.invert_matrix(u, gm.p)  # raises NotInvertible
    return GeneratorMatrix(gm.p, gfp.matmul(u, gm.matrix, gm.p))


@dataclass(frozen=True)
class GraphForm:
    """Result of :func:`to_graph_form`: ``u @ A @ Y == (I | graph.matrix)``."""

    graph: LabeledGraph
    y: LocalCliffordDiag
    u: np.ndarray


def _swap_clifford(p: int, n: int, qupits) -> LocalCliffordDiag:
    # (a, b) -> (b, -a) on the chosen qupits
    y = LocalCliffordDiag.identity(p, n)
    E, F, Ep, Fp = (x.copy() for x in (y.E, y.F, y.Ep, y.Fp))
    for i in qupits:
        E[i], F[i], Ep[i], Fp[i] = 0, -1, 1, 0
    return LocalCliffordDiag(p, E, F, Ep, Fp)


def to_graph_form(gm: GeneratorMatrix) -> GraphForm:
    """Bring a stabilizer state to graph form by local Cliffords and row operations.

    1. Row-reduce on the X block.  Rows whose X part vanished have Z parts of
       full rank on the non-pivot columns; the qupits at their pivots are
       swapped ``(a, b) -> (b, -a)``, which makes the X block invertible.
    2. Multiply by the inverse X block, leaving ``(I | S)`` with ``S``
       symmetric.
    3. Clear ``diag(S)`` with ``(a, b) -> (a, b - S_ii a)`` on each qupit.
    """
    p, n = gm.p, gm.n
    if p == 2:
        raise UnsupportedModulus("graph canonicalisation is implemented for odd p only")
    if gm.k != n:
        raise InvalidInput(f"need k = n generators, got k={gm.k}, n={n}")
    report = validate(gm)
    if not report:
        raise InvalidInput(f"invalid generator matrix: {report.message}")

    r, rk, pivots = gfp.rref(gm.matrix[:, :n], p)
    swaps: list[int] = []
    if rk < n:
        # same row operations applied to the full matrix
        full, _, _ = gfp.rref(gm.matrix, p)
        bottom = full[rk:, n:]
        free = [c for c in range(n) if c not in set(pivots)]
        _, brk, bpiv = gfp.rref(bottom[:, free], p)
        if brk != n - rk:
            raise InternalError("Z block of X-free rows is rank deficient")
        swaps = [free[c] for c in bpiv]
    y1 = _swap_clifford(p, n, swaps)
    a1 = apply_local_clifford(gm, y1)
    try:
        u = gfp.invert_matrix(a1.a_block, p)
    except NotInvertible:
        raise InternalError("X block still singular after qupit swaps") from None
    s = gfp.matmul(u, a1.b_block, p)
    if not np.array_equal(s, s.T):
        raise InternalError("Z block is not symmetric after reduction")
    d = np.diagonal(s).copy()
    one, zero = np.ones(n, dtype=gfp.DTYPE), np.zeros(n, dtype=gfp.DTYPE)
    y2 = LocalCliffordDiag(p, one, -d, zero, one)
    y = y1.then(y2)
    out = gfp.matmul(gfp.matmul(u, gm.matrix, p), y.matrix(), p)
    graph = LabeledGraph(p, out[:, n:])
    return GraphForm(graph, y, u)
