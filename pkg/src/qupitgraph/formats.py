"""Text and JSON formats for graphs, generator matrices and witnesses.

Graph text::

    p n
    u v label      # one line per nonzero edge, 0-based, label in [1, p)

The JSON mirror is ``{"p": 3, "n": 2, "edges": [[0, 1, 1]]}``.  Generator
matrices are ``p n k`` followed by ``k`` lines of ``2n`` residues.  Blank
lines and ``#`` comments are ignored in text input.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import gfp
from .errors import ParseError, QupitGraphError
from .graph import LabeledGraph
from .stabilizer import GeneratorMatrix, LocalCliffordDiag


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def _ints(tokens: list[str], where: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"{where}: expected integers, got {' '.join(tokens)!r}") from None


def _graph_from_parts(p: int, n: int, edges) -> LabeledGraph:
    try:
        p = gfp.check_modulus(p)
    except QupitGraphError as exc:
        raise ParseError(str(exc)) from None
    if n < 0:
        raise ParseError("vertex count must be non-negative")
    m = np.zeros((n, n), dtype=gfp.DTYPE)
    seen = set()
    for lineno, edge in edges:
        if len(edge) != 3:
            raise ParseError(f"{lineno}: an edge needs 'u v label'")
        u, v, label = edge
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"{lineno}: vertex out of range")
        if u == v:
            raise ParseError(f"{lineno}: self-loop")
        if not 1 <= label < p:
            raise ParseError(f"{lineno}: label {label} not in [1, {p})")
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise ParseError(f"{lineno}: duplicate pair {pair}")
        seen.add(pair)
        m[u, v] = m[v, u] = label
    return LabeledGraph(p, m)


def parse_graph(text: str) -> LabeledGraph:
    """Parse either format; JSON is detected by a leading ``{``."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            p, n, edges = int(data["p"]), int(data["n"]), data.get("edges", [])
            edges = [(f"edge {k}", [int(x) for x in e]) for k, e in enumerate(edges)]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad graph JSON: {exc}") from None
        return _graph_from_parts(p, n, edges)
    lines = _lines(text)
    if not lines:
        raise ParseError("empty graph file")
    head = _ints(lines[0], "line 1")
    if len(head) != 2:
        raise ParseError("line 1 must be 'p n'")
    edges = [(f"line {k + 2}", _ints(t, f"line {k + 2}")) for k, t in enumerate(lines[1:])]
    return _graph_from_parts(head[0], head[1], edges)


def format_graph(g: LabeledGraph) -> str:
    lines = [f"{g.p} {g.n}"] + [f"{u} {v} {label}" for u, v, label in g.edges()]
    return "\n".join(lines) + "\n"


def graph_to_json(g: LabeledGraph) -> dict:
    return {"p": g.p, "n": g.n, "edges": [list(e) for e in g.edges()]}


def parse_generator_matrix(text: str) -> GeneratorMatrix:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty generator-matrix file")
    head = _ints(lines[0], "line 1")
    if len(head) != 3:
        raise ParseError("line 1 must be 'p n k'")
    p, n, k = head
    rows = [_ints(t, f"line {i + 2}") for i, t in enumerate(lines[1:])]
    if len(rows) != k:
        raise ParseError(f"expected {k} rows, found {len(rows)}")
    for i, r in enumerate(rows):
        if len(r) != 2 * n:
            raise ParseError(f"line {i + 2}: expected {2 * n} entries")
    try:
        return GeneratorMatrix(p, np.array(rows, dtype=gfp.DTYPE).reshape(k, 2 * n))
    except QupitGraphError as exc:
        raise ParseError(str(exc)) from None


def format_generator_matrix(gm: GeneratorMatrix) -> str:
    lines = [f"{gm.p} {gm.n} {gm.k}"] + [" ".join(str(int(x)) for x in r) for r in gm.matrix]
    return "\n".join(lines) + "\n"


def witness_to_json(w: LocalCliffordDiag) -> str:
    return json.dumps(w.to_json(), sort_keys=True)


def witness_from_json(p: int, text: str) -> LocalCliffordDiag:
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise ParseError(f"bad witness JSON: {exc}") from None
    return LocalCliffordDiag.from_json(p, data, check=False)


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
