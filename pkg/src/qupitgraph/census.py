"""Counting: non-isomorphic trees, Otter's asymptotic, and local-equivalence classes.

Free trees are generated as canonical level sequences with the algorithm of
Wright, Richmond, Odlyzko and McKay (each isomorphism class exactly once, in
constant amortised time).  Class counts sweep every labeled graph at once:
graphs become integers, each local move and a generating pair of vertex
permutations become index maps, and the classes are the connected
components of the resulting move graph restricted to connected graphs.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _components

from . import gfp
from .errors import InvalidParameter, ResourceLimit
from .graph import LabeledGraph

OTTER_ALPHA = 0.3383219
OTTER_BETA = 7.924780
TREE_LIMIT = 22
SWEEP_LIMIT = 10**7

# ln(chi_n)/n and ln(A_n)/n as printed for n = 5..12
TABLE1 = {
    5: (0.2772, 0.2197),
    6: (0.3996, 0.2310),
    7: (0.4654, 0.3138),
    8: (0.5768, 0.3612),
    9: (0.6763, 0.4012),
    10: (0.8049, 0.4465),
    11: (0.9643, 0.4821),
    12: (1.1714, 0.5137),
}
FLAG_TOLERANCE = 0.01


# -- trees -----------------------------------------------------------------

def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """Left subtree of the root (depths shifted up) and the remainder."""
    m = len(seq)
    for k in range(2, len(seq)):
        if seq[k] == 1:
            m = k
            break
    return [d - 1 for d in seq[1:m]], [0] + seq[m:]


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Successor in the Beyer-Hedetniemi order of rooted level sequences."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = seq[:]
    for k in range(p, len(out)):
        out[k] = out[k - p + q]
    return out


def _is_canonical_free(seq: list[int]) -> bool:
    left, rest = _split(seq)
    hl, hr = max(left), max(rest)
    if hr != hl:
        return hr > hl
    if len(left) != len(rest):
        return len(left) < len(rest)
    return left <= rest


def level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences, one per free tree on ``n`` vertices."""
    if n < 1:
        return
    if n <= 2:
        yield list(range(n))
        return
    # path rooted at its centre
    seq: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        if not _is_canonical_free(seq):
            p = len(_split(seq)[0])
            nxt = _next_rooted(seq, p)
            if nxt is not None and seq[p] > 2:
                hl = max(_split(nxt)[0])
                tail = list(range(1, hl + 2))
                nxt[-len(tail):] = tail
            seq = nxt
            continue
        yield seq
        seq = _next_rooted(seq)


def level_sequence_parents(seq: list[int]) -> list[int]:
    """Parent index of every vertex (-1 for the root) of a preorder level sequence."""
    parents, last_at = [], {}
    for v, d in enumerate(seq):
        parents.append(last_at[d - 1] if d else -1)
        last_at[d] = v
    return parents


def tree_from_level_sequence(seq: list[int], p: int = 2) -> LabeledGraph:
    n = len(seq)
    m = np.zeros((n, n), dtype=gfp.DTYPE)
    for v, u in enumerate(level_sequence_parents(seq)):
        if u >= 0:
            m[u, v] = m[v, u] = 1
    return LabeledGraph(p, m, check=False)


def generate_trees(n: int) -> Iterator[LabeledGraph]:
    """One tree per isomorphism class on ``n`` vertices (p = 2, labels 1)."""
    if n > TREE_LIMIT:
        raise ResourceLimit(f"tree generation is capped at n={TREE_LIMIT}")
    if n < 1:
        raise InvalidParameter("n must be positive")
    return (tree_from_level_sequence(s) for s in level_sequences(n))


def count_trees(n: int) -> int:
    if n > TREE_LIMIT:
        raise ResourceLimit(f"tree generation is capped at n={TREE_LIMIT}")
    return sum(1 for _ in level_sequences(n))


def otter_coefficient() -> float:
    return OTTER_BETA ** 3 * OTTER_ALPHA ** 4.5 / (4 * math.sqrt(math.pi))


def otter_estimate(n: int) -> float:
    if n < 1:
        raise InvalidParameter("n must be positive")
    return otter_coefficient() * OTTER_ALPHA ** (-n) / n ** 2.5


an_bound = otter_estimate


# -- class counting --------------------------------------------------------

def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _decode_all(p: int, n: int) -> np.ndarray:
    """Label matrices of all ``p**C(n,2)`` graphs, index = base-p upper triangle."""
    pairs = _pairs(n)
    total = p ** len(pairs)
    idx = np.arange(total, dtype=np.int64)
    mats = np.zeros((total, n, n), dtype=np.int8)
    for k, (i, j) in enumerate(pairs):
        digit = (idx // p ** (len(pairs) - 1 - k)) % p
        mats[:, i, j] = mats[:, j, i] = digit
    return mats


def _encode_all(mats: np.ndarray, p: int) -> np.ndarray:
    n = mats.shape[1]
    code = np.zeros(mats.shape[0], dtype=np.int64)
    for i, j in _pairs(n):
        code = code * p + mats[:, i, j]
    return code


def _connected_mask(mats: np.ndarray) -> np.ndarray:
    n = mats.shape[1]
    adj = mats != 0
    reach = np.zeros((mats.shape[0], n), dtype=bool)
    reach[:, 0] = True
    for _ in range(n):
        reach = reach | np.any(adj & reach[:, :, None], axis=1)
    return reach.all(axis=1)


def _move_images(mats: np.ndarray, p: int) -> Iterator[np.ndarray]:
    n = mats.shape[1]
    wide = mats.astype(np.int64)
    for v in range(n):
        row = wide[:, v, :]
        outer = row[:, :, None] * row[:, None, :]
        for a in range(1, p):
            out = (wide + a * outer) % p
            out[:, np.arange(n), np.arange(n)] = 0
            yield _encode_all(out, p)
        for b in range(2, p):
            out = wide.copy()
            out[:, v, :] *= b
            out[:, :, v] *= b
            yield _encode_all(out % p, p)
    for perm in ([1, 0] + list(range(2, n)), list(range(1, n)) + [0]):
        yield _encode_all(wide[:, perm][:, :, perm], p)


def lc_class_count(n: int, p: int = 2, limit: int = SWEEP_LIMIT) -> int:
    """Connected graphs on ``n`` vertices up to local moves and relabeling."""
    p = gfp.check_modulus(p)
    if n < 1:
        raise InvalidParameter("n must be positive")
    if n == 1:
        return 1
    total = p ** (n * (n - 1) // 2)
    if total > limit:
        raise ResourceLimit(f"{total} graphs exceed the sweep limit {limit}")
    mats = _decode_all(p, n)
    src = np.arange(total, dtype=np.int64)
    dst = np.concatenate(list(_move_images(mats, p)))
    reps = dst.shape[0] // total
    adj = coo_matrix((np.ones(dst.shape[0], dtype=np.int8), (np.tile(src, reps), dst)),
                     shape=(total, total))
    _, labels = _components(adj, directed=True, connection="weak")
    return int(np.unique(labels[_connected_mask(mats)]).size)


# -- reference report ------------------------------------------------------

@dataclass(frozen=True)
class CensusReport:
    n: int
    tree_count: int
    otter_estimate: float
    an_bound: float
    lc_class_count: int | None = None
    table1_reference: tuple[float, float] | None = None

    @property
    def tree_logvalue(self) -> float:
        return math.log(self.tree_count) / self.n

    @property
    def otter_logvalue(self) -> float:
        return math.log(self.otter_estimate) / self.n

    @property
    def chi_logvalue(self) -> float | None:
        if self.lc_class_count is None:
            return None
        return math.log(self.lc_class_count) / self.n

    def flags(self) -> list[str]:
        out = []
        if self.table1_reference is None:
            return out
        chi_ref, a_ref = self.table1_reference
        if abs(self.tree_logvalue - a_ref) > FLAG_TOLERANCE:
            out.append("A_n")
        if self.chi_logvalue is not None and abs(self.chi_logvalue - chi_ref) > FLAG_TOLERANCE:
            out.append("chi_n")
        return out


def table1_report(n_min: int, n_max: int, chi: bool = False, p: int = 2) -> list[CensusReport]:
    rows = []
    for n in range(n_min, n_max + 1):
        est = otter_estimate(n)
        rows.append(CensusReport(
            n=n,
            tree_count=count_trees(n),
            otter_estimate=est,
            an_bound=an_bound(n),
            lc_class_count=lc_class_count(n, p) if chi else None,
            table1_reference=TABLE1.get(n),
        ))
    return rows


CSV_COLUMNS = ["n", "T_n", "otter", "A_n_paper_logvalue", "chi_n_computed",
               "chi_n_paper_logvalue", "flags"]


def report_csv(rows: list[CensusReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        chi_ref, a_ref = r.table1_reference or ("", "")
        w.writerow([r.n, r.tree_count, f"{r.otter_estimate:.4f}", a_ref,
                    "" if r.lc_class_count is None else r.lc_class_count,
                    chi_ref, ";".join(r.flags())])
    return buf.getvalue()
