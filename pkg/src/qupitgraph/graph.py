"""Labeled graphs over F_p and the local rewrite operators acting on them.

A graph on ``n`` vertices is stored as its symmetric, zero-diagonal label
matrix.  The rewrite operators are

* ``scale_op(g, v, b)``: every label on an edge at ``v`` is multiplied by ``b``;
* ``complement_op(g, w, a)``: ``M[j, k] += a * M[w, j] * M[w, k]`` off the
  diagonal (at p = 2, a = 1 this is ordinary local complementation);
* ``zero_star(g, v)``: every edge at ``v`` is removed.

Orbits under ``scale_op``/``complement_op`` are explored by breadth-first
search keyed on :meth:`LabeledGraph.key`.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import gfp
from .errors import InvalidInput, InvalidParameter, ResourceLimit

ORBIT_LIMIT = 10**7


class LabeledGraph:
    """Immutable labeled graph: prime ``p`` and an ``n x n`` label matrix."""

    __slots__ = ("p", "matrix", "_key")

    def __init__(self, p: int, matrix, *, check: bool = True):
        p = gfp.check_modulus(p) if check else p
        m = gfp.reduce(matrix, p)
        if check:
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise InvalidInput("label matrix must be square")
            if not np.array_equal(m, m.T):
                raise InvalidInput("label matrix must be symmetric")
            if np.any(np.diagonal(m)):
                raise InvalidInput("label matrix must have zero diagonal")
        m.setflags(write=False)
        self.p = p
        self.matrix = m
        self._key = None

    @classmethod
    def from_edges(cls, p: int, n: int, edges: Iterable[Sequence[int]]) -> "LabeledGraph":
        m = np.zeros((n, n), dtype=gfp.DTYPE)
        for u, v, label in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise InvalidInput(f"bad edge ({u}, {v})")
            m[u, v] = m[v, u] = label
        return cls(p, m)

    @classmethod
    def empty(cls, p: int, n: int) -> "LabeledGraph":
        return cls(p, np.zeros((n, n), dtype=gfp.DTYPE))

    @classmethod
    def complete(cls, p: int, n: int, label: int = 1) -> "LabeledGraph":
        m = np.full((n, n), label, dtype=gfp.DTYPE)
        np.fill_diagonal(m, 0)
        return cls(p, m)

    @classmethod
    def path(cls, p: int, n: int, label: int = 1) -> "LabeledGraph":
        return cls.from_edges(p, n, [(i, i + 1, label) for i in range(n - 1)])

    @classmethod
    def star(cls, p: int, n: int, label: int = 1) -> "LabeledGraph":
        return cls.from_edges(p, n, [(0, i, label) for i in range(1, n)])

    @classmethod
    def from_key(cls, p: int, n: int, key: bytes) -> "LabeledGraph":
        m = np.zeros((n, n), dtype=gfp.DTYPE)
        iu = np.triu_indices(n, 1)
        m[iu] = np.frombuffer(key, dtype=np.uint16)
        return cls(p, m + m.T, check=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def key(self) -> bytes:
        """Canonical encoding: upper-triangle labels in row-major order."""
        if self._key is None:
            self._key = self.matrix[np.triu_indices(self.n, 1)].astype(np.uint16).tobytes()
        return self._key

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i, j, int(self.matrix[i, j]))
                for i, j in combinations(range(self.n), 2) if self.matrix[i, j]]

    def neighbors(self, v: int) -> list[int]:
        return [int(j) for j in np.nonzero(self.matrix[v])[0]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.p == other.p and self.n == other.n and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.key()))

    def __repr__(self) -> str:
        return f"LabeledGraph(p={self.p}, n={self.n}, edges={self.edges()})"


def _check_vertex(g: LabeledGraph, v: int) -> int:
    if not 0 <= v < g.n:
        raise InvalidParameter(f"vertex {v} out of range for n={g.n}")
    return int(v)


def scale_op(g: LabeledGraph, v: int, b: int) -> LabeledGraph:
    """Multiply every edge label at ``v`` by the nonzero scalar ``b``."""
    v = _check_vertex(g, v)
    b = int(b) % g.p
    if b == 0:
        raise InvalidParameter("scale factor must be nonzero")
    m = g.matrix.copy()
    m[v, :] *= b
    m[:, v] *= b
    return LabeledGraph(g.p, m % g.p, check=False)


def complement_op(g: LabeledGraph, w: int, a: int) -> LabeledGraph:
    """Add ``a * M[w, j] * M[w, k]`` to every label ``M[j, k]``, j != k."""
    w = _check_vertex(g, w)
    a = int(a) % g.p
    if a == 0:
        return g
    row = g.matrix[w]
    m = (g.matrix + a * np.outer(row, row)) % g.p
    np.fill_diagonal(m, 0)
    return LabeledGraph(g.p, m, check=False)


def zero_star(g: LabeledGraph, v: int) -> LabeledGraph:
    v = _check_vertex(g, v)
    m = g.matrix.copy()
    m[v, :] = 0
    m[:, v] = 0
    return LabeledGraph(g.p, m, check=False)


def apply_moves(g: LabeledGraph, moves: Iterable[tuple[str, int, int]]) -> LabeledGraph:
    """Replay a sequence of ``("circ", v, b)`` / ``("star", v, a)`` moves."""
    for op, v, c in moves:
        if op == "circ":
            g = scale_op(g, v, c)
        elif op == "star":
            g = complement_op(g, v, c)
        else:
            raise InvalidParameter(f"unknown operator {op!r}")
    return g


def connected_components(g: LabeledGraph) -> list[list[int]]:
    """Vertex partition by the relation ``M[i, j] != 0``, sorted by least vertex."""
    seen = [False] * g.n
    comps = []
    adj = g.matrix != 0
    for s in range(g.n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in np.nonzero(adj[u])[0]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        comps.append(sorted(comp))
    return comps


def is_connected(g: LabeledGraph) -> bool:
    return len(connected_components(g)) <= 1


def induced_subgraph(g: LabeledGraph, vertices: Sequence[int]) -> LabeledGraph:
    idx = np.asarray(vertices, dtype=int)
    return LabeledGraph(g.p, g.matrix[np.ix_(idx, idx)], check=False)


def permute(g: LabeledGraph, perm: Sequence[int]) -> LabeledGraph:
    """Graph ``h`` with ``h.M[i, j] = g.M[perm[i], perm[j]]``."""
    idx = np.asarray(perm, dtype=int)
    return LabeledGraph(g.p, g.matrix[np.ix_(idx, idx)], check=False)


def _vertex_invariant(m: np.ndarray, v: int) -> tuple:
    # sorted nonzero labels at v, then sorted (degree, label) of neighbours
    row = m[v]
    deg = np.count_nonzero(m, axis=1)
    return (tuple(sorted(int(x) for x in row if x)),
            tuple(sorted((int(deg[j]), int(row[j])) for j in np.nonzero(row)[0])))


def find_isomorphism(g: LabeledGraph, h: LabeledGraph) -> tuple[int, ...] | None:
    """Permutation ``pi`` with ``g.M[pi[i], pi[j]] == h.M[i, j]``, or None.

    Backtracking over vertices of ``h``; candidates are pruned by a local
    label/degree invariant and checked against every already-placed vertex.
    """
    if g.p != h.p or g.n != h.n:
        return None
    n = g.n
    M, N = g.matrix, h.matrix
    inv_g = [_vertex_invariant(M, v) for v in range(n)]
    inv_h = [_vertex_invariant(N, v) for v in range(n)]
    if sorted(inv_g) != sorted(inv_h):
        return None
    # place high-degree vertices of h first for early pruning
    order = sorted(range(n), key=lambda v: -np.count_nonzero(N[v]))
    cands = {v: [u for u in range(n) if inv_g[u] == inv_h[v]] for v in range(n)}
    pi = [-1] * n
    used = [False] * n

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        for u in cands[v]:
            if used[u]:
                continue
            if any(M[u, pi[w]] != N[v, w] for w in order[:depth]):
                continue
            pi[v], used[u] = u, True
            if extend(depth + 1):
                return True
            pi[v], used[u] = -1, False
        return False

    return tuple(pi) if extend(0) else None


def is_isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    return find_isomorphism(g, h) is not None


def local_moves(g: LabeledGraph, order: str = "vertex") -> Iterator[LabeledGraph]:
    """All single ``scale_op``/``complement_op`` images of ``g``.

    ``order`` selects the enumeration order ("vertex" or "reversed"); orbit
    contents do not depend on it.
    """
    units = range(1, g.p)
    moves = [("star", v, a) for v in range(g.n) for a in units]
    moves += [("circ", v, b) for v in range(g.n) for b in units if b != 1]
    if order == "reversed":
        moves.reverse()
    elif order != "vertex":
        raise InvalidParameter(f"unknown move order {order!r}")
    for op, v, c in moves:
        yield scale_op(g, v, c) if op == "circ" else complement_op(g, v, c)


def orbit(g: LabeledGraph, limit: int = ORBIT_LIMIT, order: str = "vertex") -> list[LabeledGraph]:
    """Closure of ``{g}`` under all scale/complement moves, in BFS order."""
    seen = {g.key(): g}
    queue = deque([g])
    while queue:
        cur = queue.popleft()
        for nxt in local_moves(cur, order):
            k = nxt.key()
            if k not in seen:
                seen[k] = nxt
                if len(seen) > limit:
                    raise ResourceLimit(f"orbit exceeds {limit} graphs")
                queue.append(nxt)
    return list(seen.values())
